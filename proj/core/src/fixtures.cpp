#include "fairdiv/harness.hpp"

#include <stdexcept>

#include "fairdiv/errors.hpp"
#include "fairdiv/oracles.hpp"

namespace fairdiv::harness {

namespace {

Instance table(std::vector<std::vector<Value>> rows) {
  std::vector<Valuation> vals;
  for (auto& r : rows) vals.emplace_back(std::move(r));
  return make_instance(std::move(vals));
}

// Items are numbered from 1 here to match the usual g1, g2, ... names.
Bundle items(std::initializer_list<ItemIndex> one_based) {
  std::vector<ItemIndex> out;
  for (ItemIndex g : one_based) out.push_back(g - 1);
  return Bundle(std::move(out));
}

void require(bool ok, const std::string& fixture, const std::string& fact) {
  if (!ok) throw std::logic_error("fixture " + fixture + ": fact does not hold: " + fact);
}

std::vector<Fixture> build() {
  using oracles::exact_mms;
  std::vector<Fixture> out;

  {
    Fixture f;
    f.name = "immx-intro";
    f.description = "IMMX but not EFX: agent 1 envies agent 2 yet holds far more than her MMS";
    f.instance = table({{100, 101, 2, 0, 0}, {10, 4, 4, 2, 2}, {10, 4, 4, 2, 2}});
    const Bundle m = f.instance.ground();
    const auto& v = f.instance.valuations;
    Allocation a = Allocation::of({items({1}), items({2, 3}), items({4, 5})}, m);
    const Value mms1 = exact_mms(v[0], m, 3).value;
    const Value mms3 = exact_mms(v[2], m, 3).value;
    require(mms1 == Value(2), f.name, "MMS of agent 1 is 2");
    require(!oracles::is_efx_satisfied(v[0], a, 0), f.name, "agent 1 is not EFX-satisfied");
    require(oracles::is_efx_satisfied(v[1], a, 1) && oracles::is_efx_satisfied(v[2], a, 2), f.name,
            "agents 2 and 3 are EFX-satisfied");
    require(v[0](a[0]) == Value(100) && v[2](a[2]) < mms3, f.name,
            "agent 1 gets 100, agent 3 is below her MMS");
    f.partitions = {a.as_partition()};
    out.push_back(std::move(f));
  }

  {
    Fixture f;
    f.name = "cut-and-choose";
    f.description = "two agents whose approximate partitions break naive cut-and-choose";
    const Value h(1, 2);
    f.instance = table({{5, 3, 2, 4, 2, h, h}, {2, 1, 1, h, h, h, h}});
    const Bundle m = f.instance.ground();
    const auto& v = f.instance.valuations;
    Partition s1 = Partition::of({items({1, 2, 3}), items({4, 5, 6, 7})}, m);
    Partition s2 = Partition::of({items({1, 2}), items({3, 4, 5, 6, 7})}, m);
    require(exact_mms(v[0], m, 2).value == Value(17, 2), f.name, "MMS of agent 1 is 17/2");
    require(exact_mms(v[1], m, 2).value == Value(3), f.name, "MMS of agent 2 is 3");
    require(v[0](s1[0]) == Value(10) && v[0](s1[1]) == Value(7), f.name, "agent 1 seed values 10 and 7");
    require(v[0](s2[0]) == Value(8) && v[0](s2[1]) == Value(9), f.name, "agent 2 seed worth 8 and 9 to agent 1");
    require(v[1](s2[0]) == Value(3) && v[1](s2[1]) == Value(3), f.name, "agent 2 seed is an MMS partition");
    f.partitions = {s1, s2};
    out.push_back(std::move(f));
  }

  {
    Fixture f;
    f.name = "mismatched-bases";
    f.description = "identical agents with different (1-eps)-MMS partitions";
    f.eps = Value(1, 4);
    f.instance = table({{4, 2, 6, 5, 1}, {4, 2, 6, 5, 1}, {4, 2, 6, 5, 1}});
    const Bundle m = f.instance.ground();
    const auto& v = f.instance.valuations[0];
    Partition common = Partition::of({items({1, 2}), items({3}), items({4, 5})}, m);
    Partition third = Partition::of({items({2, 4}), items({3}), items({1, 5})}, m);
    const Value mms = exact_mms(v, m, 3).value;
    require(mms == Value(6) && prop_share(v, 3) == Value(6), f.name, "MMS and PROP are 6");
    require(common.min_value(v) == Value(6), f.name, "agents 1 and 2 hold an exact MMS partition");
    require(third.min_value(v) == Value(5) && Value(5) >= (Value(1) - f.eps) * mms, f.name,
            "agent 3's partition is a (1-eps)-MMS partition with minimum 5");
    f.partitions = {common, common, third};
    out.push_back(std::move(f));
  }

  {
    Fixture f;
    f.name = "bu-gap";
    f.description = "identical pair where the unmodified two-agent procedure reaches only 17/20 of MMS";
    f.instance = table({{16, 12, 8, 5}, {16, 12, 8, 5}});
    const Bundle m = f.instance.ground();
    const auto res = exact_mms(f.instance.valuations[0], m, 2);
    Partition witness = Partition::of({items({1, 4}), items({2, 3})}, m);
    require(res.value == Value(20) && witness.min_value(f.instance.valuations[0]) == Value(20), f.name,
            "MMS is 20, attained by {g1,g4},{g2,g3}");
    f.partitions = {witness, witness};
    out.push_back(std::move(f));
  }

  {
    Fixture f;
    f.name = "mms-42";
    f.description = "two-agent table whose first agent has MMS 42";
    f.instance = table({{15, 14, 13, 12, 10, 10, 10}, {13, 12, 9, 6, 5, 3, 3}});
    require(exact_mms(f.instance.valuations[0], f.instance.ground(), 2).value == Value(42), f.name,
            "MMS of agent 1 is 42");
    out.push_back(std::move(f));
  }

  {
    Fixture f;
    f.name = "rmms-gap";
    f.description = "identical agents whose RMMS is below 9/10 of the MMS";
    std::vector<Value> row{7, 7, 8, 1, 1, 1, 1, 1, 1, 1, 1};
    f.instance = table({row, row, row});
    const Bundle m = f.instance.ground();
    const auto& v = f.instance.valuations[0];
    Partition witness = Partition::of({items({1, 4, 5, 6}), items({2, 7, 8, 9}), items({3, 10, 11})}, m);
    require(exact_mms(v, m, 3).value == Value(10) && witness.min_value(v) == Value(10), f.name,
            "MMS is 10 with an all-10 witness");
    require(oracles::rmms(v, m, 3) < Value(9), f.name, "RMMS is below 9");
    out.push_back(std::move(f));
  }

  return out;
}

}  // namespace

std::vector<Fixture> fixtures() { return build(); }

const Fixture& fixture(const std::string& name) {
  static const std::vector<Fixture> all = build();
  for (const auto& f : all) {
    if (f.name == name) return f;
  }
  throw DomainError("unknown fixture '" + name + "'");
}

}  // namespace fairdiv::harness

#include <gtest/gtest.h>

#include "fairdiv/efx_tools.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/oracles.hpp"
#include "fairdiv/verify.hpp"
#include "support.hpp"

namespace fairdiv::efx {
namespace {

using fairdiv::testing::g;

bool all_efx(const Partition& p, const Valuation& v) {
  for (const auto& a : p) {
    for (const auto& b : p) {
      if (!oracles::efx_dominates(v, a, b)) return false;
    }
  }
  return true;
}

Partition random_split(harness::InstanceGenerator& rng, std::size_t m, std::size_t k) {
  std::vector<std::vector<ItemIndex>> parts(k);
  for (ItemIndex x = 0; x < m; ++x) parts[static_cast<std::size_t>(rng.draw(0, static_cast<std::int64_t>(k) - 1))].push_back(x);
  std::vector<Bundle> bundles;
  for (auto& p : parts) bundles.emplace_back(std::move(p));
  return Partition::of(std::move(bundles), Bundle::range(m));
}

TEST(Realloc, Examples) {
  const Valuation bu{16, 12, 8, 5};
  const Partition mms = Partition::of({g({1, 4}), g({2, 3})});
  const Partition out = realloc(mms, bu);
  EXPECT_TRUE(all_efx(out, bu));
  EXPECT_GE(out.min_value(bu), Value(20));

  const Valuation one{5};
  const Partition single = realloc(Partition::of({{}, g({1})}), one);
  EXPECT_TRUE(all_efx(single, one));
  EXPECT_EQ(single.min_value(one), Value(0));

  const Valuation flat{2, 2, 2};
  const Partition balanced = Partition::of({g({1}), g({2}), g({3})});
  EXPECT_EQ(realloc(balanced, flat).min_value(flat), Value(2));
}

TEST(Realloc, EfxAndMonotoneMinimum) {
  harness::InstanceGenerator rng({.seed = 41});
  for (const auto& inst : fairdiv::testing::random_instances(41, 1, 400, 10)) {
    const auto& v = inst.valuations[0];
    const Partition in = random_split(rng, inst.item_count(), 2 + static_cast<std::size_t>(rng.draw(0, 1)));
    std::vector<Value> trace;
    const Partition out = realloc(in, v, &trace);
    EXPECT_EQ(out.size(), in.size());
    EXPECT_TRUE(all_efx(out, v));
    Value last = in.min_value(v);
    for (const auto& x : trace) {
      EXPECT_GE(x, last);
      last = x;
    }
    EXPECT_GE(out.min_value(v), in.min_value(v));
  }
}

TEST(LocalSearch, Example) {
  const Valuation bu{16, 12, 8, 5};
  const auto [a, b] = local_search({}, Bundle::range(4), bu);
  EXPECT_EQ(a, g({2, 4}));
  EXPECT_EQ(b, g({1, 3}));
  EXPECT_EQ(bu(a), Value(17));
  EXPECT_EQ(bu(b), Value(24));
}

TEST(LocalSearch, BalancedEfxInputUnchanged) {
  const Valuation v{3, 3, 2, 4};
  const auto [a, b] = local_search(g({1, 2}), g({3, 4}), v);
  EXPECT_EQ(std::min(a, b), g({1, 2}));
  EXPECT_EQ(std::max(a, b), g({3, 4}));
}

TEST(LocalSearch, GapShrinksTotalKept) {
  harness::InstanceGenerator rng({.seed = 42});
  for (const auto& inst : fairdiv::testing::random_instances(42, 1, 400, 10)) {
    const auto& v = inst.valuations[0];
    const Partition in = random_split(rng, inst.item_count(), 2);
    const auto [a, b] = local_search(in[0], in[1], v);
    const Value gap = v(in[0]) > v(in[1]) ? v(in[0]) - v(in[1]) : v(in[1]) - v(in[0]);
    EXPECT_LE(v(a), v(b));
    EXPECT_LE(v(b) - v(a), gap);
    EXPECT_EQ(a.unite(b), inst.ground());
    EXPECT_FALSE(a.intersects(b));
    EXPECT_TRUE(oracles::efx_dominates(v, a, b));
  }
}

TEST(Repartition, ExactProviderReachesTwoWayMms) {
  const mms::SolverProvider exact({});
  harness::InstanceGenerator rng({.seed = 43});
  for (const auto& inst : fairdiv::testing::random_instances(43, 1, 200, 9)) {
    const auto& v = inst.valuations[0];
    const Partition in = random_split(rng, inst.item_count(), 2);
    const Partition out = mms_efx_improved_repartition(in[0], in[1], v, exact);
    EXPECT_EQ(out.ground(), inst.ground());
    EXPECT_TRUE(all_efx(out, v));
    const Value in_min = in.min_value(v);
    const Value best = oracles::exact_mms(v, inst.ground(), 2).value;
    EXPECT_GE(out.min_value(v), in_min);
    if (best > in_min) EXPECT_EQ(out.min_value(v), best);
  }
}

TEST(Repartition, FptasProviderNeverLowersMinimum) {
  const mms::SolverProvider approx({mms::SolverMode::fptas, Value(1, 10)});
  harness::InstanceGenerator rng({.seed = 44});
  for (const auto& inst : fairdiv::testing::random_instances(44, 1, 300, 10, 10000)) {
    const auto& v = inst.valuations[0];
    const Partition in = random_split(rng, inst.item_count(), 2);
    const Partition out = mms_efx_improved_repartition(in[0], in[1], v, approx);
    EXPECT_GE(out.min_value(v), in.min_value(v));
    EXPECT_TRUE(all_efx(out, v));
  }
}

TEST(Repartition, MmsEfxPairKeepsMinimum) {
  const Valuation bu{16, 12, 8, 5};
  const mms::SolverProvider exact({});
  EXPECT_EQ(mms_efx_improved_repartition(g({1, 4}), g({2, 3}), bu, exact).min_value(bu), Value(20));
}

TEST(EefxCertificate, Examples) {
  const Valuation intro{100, 101, 2, 0, 0};
  const Bundle m = Bundle::range(5);
  const Partition c = eefx_certificate_for_prop_bundle(g({2, 3}), m, intro);
  EXPECT_TRUE(c.contains(g({2, 3})));
  EXPECT_TRUE(verify::verify_certificate(intro, {0, g({2, 3}), c}));

  const Partition whole = eefx_certificate_for_prop_bundle(m, m, intro);
  EXPECT_TRUE(whole.contains(m));
  EXPECT_EQ(whole.size(), 3u);

  const Valuation same{1, 1, 1};
  EXPECT_EQ(eefx_certificate_for_prop_bundle(g({1}), Bundle::range(3), same), Partition::of({g({1}), g({2, 3}), Bundle()}, Bundle::range(3)));

  EXPECT_THROW(eefx_certificate_for_prop_bundle(g({3}), m, intro), DomainError);
}

TEST(EefxCertificate, PropBundlesGetVerifiedCertificates) {
  for (const auto& inst : fairdiv::testing::random_instances(45, 1, 200, 9)) {
    const auto& v = inst.valuations[0];
    const Bundle m = inst.ground();
    for (std::uint32_t mask = 0; mask < (1u << inst.item_count()); mask += 3) {
      std::vector<ItemIndex> xs;
      for (ItemIndex x = 0; x < inst.item_count(); ++x) {
        if (mask >> x & 1) xs.push_back(x);
      }
      const Bundle b(xs);
      if (Value(3) * v(b) < v.total()) continue;
      const Partition c = eefx_certificate_for_prop_bundle(b, m, v);
      EXPECT_TRUE(c.contains(b));
      for (const auto& other : c) EXPECT_TRUE(oracles::efx_dominates(v, b, other));
    }
  }
}

}  // namespace
}  // namespace fairdiv::efx

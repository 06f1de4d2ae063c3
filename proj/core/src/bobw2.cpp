#include "fairdiv/bobw2.hpp"

#include <stdexcept>

#include "fairdiv/efx_tools.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/scaled.hpp"

namespace fairdiv::bobw2 {

namespace {

bool is_efx_pair(const Candidate& c, const Valuation& v) {
  auto dominated = [&](const Bundle& x, const Bundle& y) {
    Value vx = v(x), vy = v(y);
    for (ItemIndex g : y) {
      if (vx < vy - v[g]) return false;
    }
    return true;
  };
  return dominated(c.first, c.second) && dominated(c.second, c.first);
}

Candidate ordered(const Candidate& c, const Valuation& v) {
  if (v(c.first) > v(c.second)) return {c.second, c.first};
  return c;
}

Candidate seed_pair(const Partition& seed) {
  if (seed.size() != 2) throw DomainError("two-agent seeds must have two bundles");
  return {seed[0], seed[1]};
}

Allocation allocate(const Candidate& c, std::size_t owner, const std::array<const Valuation*, 2>& v,
                    const Bundle& ground) {
  const std::size_t chooser = 1 - owner;
  auto [picked, left] = choose(c, *v[chooser], *v[owner]);
  std::vector<Bundle> bundles(2);
  bundles[chooser] = std::move(picked);
  bundles[owner] = std::move(left);
  return Allocation::of(std::move(bundles), ground);
}

// Loose cap on the number of loop rounds; every round strictly raises one
// agent's smaller bundle, which lives on a grid of 1/scale.
mpz_class round_bound(const Valuation& v1, const Valuation& v2, const Bundle& ground) {
  mpz_class bound = 2;
  for (const Valuation* v : {&v1, &v2}) {
    mpz_class scale = 1;
    for (ItemIndex g : ground) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), (*v)[g].raw().get_den_mpz_t());
    bound += 2 * ((*v)(ground) * Value(mpq_class(scale))).floor() + 2;
  }
  return bound;
}

}  // namespace

std::pair<Bundle, Bundle> choose(const Candidate& c, const Valuation& chooser, const Valuation& other) {
  const Value a = chooser(c.first), b = chooser(c.second);
  bool take_first;
  if (a != b) {
    take_first = a > b;
  } else if (other(c.first) != other(c.second)) {
    take_first = other(c.first) < other(c.second);
  } else {
    Partition p = Partition::of({c.first, c.second});
    take_first = p[0] == c.first;
  }
  if (take_first) return {c.first, c.second};
  return {c.second, c.first};
}

Lottery Outcome::lottery() const {
  std::vector<LotteryEntry> entries;
  const Value p = Value(1) / Value(allocations.size());
  for (const auto& [alloc, owner] : allocations) {
    entries.push_back({p, alloc, "A^" + std::to_string(owner + 1)});
  }
  return Lottery(std::move(entries));
}

Outcome run_two_agents(const Valuation& v1, const Valuation& v2, const Partition& seed1,
                       const Partition& seed2, Variant variant) {
  const Bundle ground = seed1.ground();
  if (seed2.ground() != ground) throw DomainError("two-agent seeds cover different item sets");
  const std::array<const Valuation*, 2> v{&v1, &v2};

  Outcome out;
  auto& cand = out.candidates;
  for (std::size_t i = 0; i < 2; ++i) {
    Candidate start = variant == Variant::original ? Candidate{ground, Bundle{}}
                                                   : seed_pair(i == 0 ? seed1 : seed2);
    cand[i] = efx::local_search(start.first, start.second, *v[i]);
  }

  auto early = [&]() -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < 2; ++i) {
      const Valuation& own = *v[i];
      const Valuation& oth = *v[1 - i];
      if (own(cand[i].first) == own(cand[i].second) ||
          oth(cand[i].first) >= oth(cand[i].second)) {
        return i;
      }
    }
    return std::nullopt;
  };
  auto finish_single = [&](std::size_t i) {
    out.early_return = true;
    out.allocations.push_back({allocate(cand[i], i, v, ground), i});
    return out;
  };
  auto finish_both = [&]() {
    for (std::size_t i = 0; i < 2; ++i) out.allocations.push_back({allocate(cand[i], i, v, ground), i});
    return out;
  };

  if (auto i = early()) return finish_single(*i);

  const mpz_class bound = round_bound(v1, v2, ground);
  while (true) {
    std::optional<std::size_t> active;
    for (std::size_t i = 0; i < 2 && !active; ++i) {
      const Valuation& oth = *v[1 - i];
      const bool by_min = oth(cand[i].first) > oth(cand[1 - i].first);
      // Same test phrased through the gaps v(larger) - v(smaller); the two
      // agree whenever no early return applies.
      const Value gap_here = oth(cand[i].second) - oth(cand[i].first);
      const Value gap_own = oth(cand[1 - i].second) - oth(cand[1 - i].first);
      const bool by_gap = gap_here < gap_own;
      if (by_min != by_gap) throw std::logic_error("two-agent loop tests disagree");
      if (by_min) active = i;
    }
    if (!active) break;
    if (++out.iterations > bound) throw std::logic_error("two-agent loop exceeded its round bound");

    const std::size_t i = *active, j = 1 - i;
    const Valuation& vj = *v[j];
    const Value before_j = vj(cand[j].first);
    cand[j] = efx::local_search(cand[i].first, cand[i].second, vj);
    out.steps.push_back({j, before_j, vj(cand[j].first), false});

    if (auto e = early()) return finish_single(*e);

    const Valuation& vi = *v[i];
    if (is_efx_pair(cand[j], vi)) {
      const Value before_i = vi(cand[i].first);
      const Candidate adopted = ordered(cand[j], vi);
      if (variant == Variant::original || before_i < vi(adopted.first)) {
        cand[i] = adopted;
        out.steps.push_back({i, before_i, vi(cand[i].first), true});
      }
      return finish_both();
    }
  }
  return finish_both();
}

Lottery bobw_two_agents(const Valuation& v1, const Valuation& v2, const Partition& seed1,
                        const Partition& seed2) {
  return run_two_agents(v1, v2, seed1, seed2).lottery();
}

Lottery bobw_two_agents(const Valuation& v1, const Valuation& v2, const mms::MmsProvider& provider) {
  if (v1.size() != v2.size()) throw DomainError("valuations cover different item counts");
  const Bundle ground = Bundle::range(v1.size());
  return bobw_two_agents(v1, v2, provider.partition(v1, ground, 2), provider.partition(v2, ground, 2));
}

Lottery bobw_two_agents_fptas(const Valuation& v1, const Valuation& v2, const Value& eps) {
  mms::SolverProvider provider({mms::SolverMode::fptas, eps});
  return bobw_two_agents(v1, v2, provider);
}

Lottery baseline_bu_alg3_original(const Valuation& v1, const Valuation& v2) {
  if (v1.size() != v2.size()) throw DomainError("valuations cover different item counts");
  const Bundle ground = Bundle::range(v1.size());
  Partition whole = Partition::of({ground, Bundle{}}, ground);
  return run_two_agents(v1, v2, whole, whole, Variant::original).lottery();
}

Lottery baseline_naive_cut_and_choose(const Valuation& v1, const Valuation& v2,
                                      const Partition& p1, const Partition& p2) {
  if (p1.ground() != p2.ground()) throw DomainError("cut partitions cover different item sets");
  const std::array<const Valuation*, 2> v{&v1, &v2};
  const Value half(1, 2);
  return Lottery({{half, allocate(seed_pair(p1), 0, v, p1.ground()), "cut^1"},
                  {half, allocate(seed_pair(p2), 1, v, p1.ground()), "cut^2"}});
}

}  // namespace fairdiv::bobw2

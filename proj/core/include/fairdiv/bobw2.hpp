#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/mms_solvers.hpp"
#include "fairdiv/types.hpp"

namespace fairdiv::bobw2 {

enum class Variant {
  /// Agents start from given partitions and a candidate is only copied when
  /// it raises the copying agent's smaller bundle.
  improved,
  /// Agents start from (M, {}) and copy unconditionally.
  original,
};

/// Candidate two-partition of one agent: (smaller, larger) under her own
/// valuation.
using Candidate = std::pair<Bundle, Bundle>;

/// One replacement of an agent's candidate, for invariant checks.
struct Step {
  std::size_t agent;
  Value min_before;
  Value min_after;
  bool copied;  // true for the final copy, false for a local-search update
};

struct Outcome {
  std::array<Candidate, 2> candidates;
  /// One allocation per candidate that made it into the lottery, together
  /// with the index of the candidate's owner (the other agent chose first).
  std::vector<std::pair<Allocation, std::size_t>> allocations;
  bool early_return = false;
  std::size_t iterations = 0;
  std::vector<Step> steps;

  Lottery lottery() const;
};

/// Agent `chooser` takes her preferred bundle of {c.first, c.second}; on a
/// tie she takes the one `other` values less, then the canonically first one.
/// Returns (chooser's bundle, other's bundle).
std::pair<Bundle, Bundle> choose(const Candidate& c, const Valuation& chooser, const Valuation& other);

/// Runs the two-agent procedure on the ground set shared by both seeds.
/// Allocations index agents as (v1, v2).
Outcome run_two_agents(const Valuation& v1, const Valuation& v2, const Partition& seed1,
                       const Partition& seed2, Variant variant = Variant::improved);

/// Lottery with support at most 2 that is ex-ante envy-free and ex-post EFX,
/// with each agent's realised bundle at least her smaller seed bundle.
Lottery bobw_two_agents(const Valuation& v1, const Valuation& v2, const Partition& seed1,
                        const Partition& seed2);

/// Seeds taken from `provider` over all items.
Lottery bobw_two_agents(const Valuation& v1, const Valuation& v2, const mms::MmsProvider& provider);

/// Seeds from the FPTAS with the given eps.
Lottery bobw_two_agents_fptas(const Valuation& v1, const Valuation& v2, const Value& eps);

/// Unmodified procedure: (M, {}) seeds and unconditional copy.
Lottery baseline_bu_alg3_original(const Valuation& v1, const Valuation& v2);

/// 50/50 over "agent 1 cuts by p1, agent 2 picks" and "agent 2 cuts by p2,
/// agent 1 picks".
Lottery baseline_naive_cut_and_choose(const Valuation& v1, const Valuation& v2,
                                      const Partition& p1, const Partition& p2);

}  // namespace fairdiv::bobw2

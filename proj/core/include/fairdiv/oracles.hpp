#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/types.hpp"

/// Brute-force reference implementations. They are deliberately simple and
/// exponential; every other module is tested against them.
namespace fairdiv::oracles {

struct OracleCaps {
  /// Upper bound on enumerated assignments for a single oracle call.
  std::uint64_t max_states = 50'000'000;
  /// Upper bound on the number of items handled by the RMMS bitmask search.
  std::size_t max_rmms_items = 16;
};

struct MmsResult {
  Value value;
  /// Lexicographically smallest optimal assignment (first item lowest).
  Partition witness;
};

/// max over k-partitions of `items` of the minimum bundle value. Beyond the
/// enumeration cap, integral valuations fall back to the exact DP solver;
/// fractional ones raise CapacityError.
MmsResult exact_mms(const Valuation& v, const Bundle& items, std::size_t k,
                    const OracleCaps& caps = {});

/// X EFX-dominates Y: v(X) >= v(Y \ {g}) for every g in Y, including
/// zero-valued g. True whenever Y is empty.
bool efx_dominates(const Valuation& v, const Bundle& x, const Bundle& y);

/// The agent's bundle EFX-dominates every other bundle.
bool is_efx_satisfied(const Valuation& v, const Allocation& a, std::size_t agent);

struct EefxResult {
  bool satisfied = false;
  /// Partition of the ground set containing X whose other bundles are all
  /// EFX-dominated by X. First found in lexicographic assignment order.
  std::optional<Partition> certificate;
};

/// Searches all (n-1)-partitions of ground \ X.
EefxResult is_eefx_satisfied(const Valuation& v, const Bundle& x, const Bundle& ground,
                             std::size_t n, const OracleCaps& caps = {});

/// Minimum v(Z_0) over all n-allocations of `ground` in which bundle Z_0
/// EFX-dominates every other bundle.
Value mxs(const Valuation& v, const Bundle& ground, std::size_t n, const OracleCaps& caps = {});

/// Largest t such that removing any k < n bundles, each worth less than t,
/// leaves an (n-k)-partition of the rest with all parts worth at least t.
Value rmms(const Valuation& v, const Bundle& ground, std::size_t n, const OracleCaps& caps = {});

struct CheckOptions {
  bool eefx = true;
  bool rmms = true;
  bool mxs = false;
};

/// Oracle view of one agent in one allocation.
struct FairnessReport {
  Value value;
  Value prop;
  Value mms;
  bool efx_satisfied = false;
  std::optional<bool> eefx_satisfied;
  std::optional<Value> mxs;
  std::optional<Value> rmms;
  bool meets_mms_1me = false;    // value >= (1 - eps) * MMS
  bool meets_mms_910me = false;  // value >= (9/10 - eps) * MMS
  std::optional<bool> meets_rmms;
};

struct AllocationCheck {
  std::string label;
  std::vector<FairnessReport> agents;
  /// Every agent is EFX-satisfied or holds at least (1 - eps) * MMS.
  bool immx = false;
};

struct LotteryCheck {
  std::vector<Value> expected;
  std::vector<Value> prop;
  std::vector<Value> mms;
  std::vector<std::optional<Value>> rmms;
  std::vector<std::optional<Value>> mxs;
  std::vector<bool> ex_ante_prop;
  std::vector<AllocationCheck> allocations;
};

/// Evaluates a lottery with the oracles above. eps = 0 gives exact
/// thresholds.
LotteryCheck check_lottery(const Lottery& lottery, const Instance& instance, const Value& eps,
                           const CheckOptions& options = {}, const OracleCaps& caps = {});

}  // namespace fairdiv::oracles

#pragma once

#include <cstddef>
#include <cstdint>

#include "fairdiv/types.hpp"

namespace fairdiv::mms {

enum class SolverMode {
  exact,  // sparse DP over integer-scaled values
  fptas,  // same DP over rounded values, (1 - eps) guarantee
  ptas,   // enumeration over the F_{m,2} family, k = 2 only
};

struct MmsSolverConfig {
  SolverMode mode = SolverMode::exact;
  Value eps = 0;
  /// Total DP states over all layers before CapacityError.
  std::size_t max_dp_states = 3'000'000;
  /// Enumeration cap for the PTAS family.
  std::uint64_t max_ptas_states = 20'000'000;
};

/// Throws DomainError unless eps lies in (0, 1) for the approximate modes.
void validate(const MmsSolverConfig& config);

/// k-partition of `items` maximising the minimum bundle value (exact mode) or
/// approximately so. Supported k: 1, 2, 3 (the PTAS only takes k = 2).
/// Deterministic for a fixed input.
Partition mms_partition(const Valuation& v, const Bundle& items, std::size_t k,
                        const MmsSolverConfig& config = {});

/// Two-partition from the F_{m,2} family: any subset of the top block of
/// ceil(3/(2 eps)) items plus a suffix of the remaining items in
/// non-increasing order. Minimum is at least
/// min{MMS, (1 - 1/(block+1)) * v(items)/2}.
Partition ptas_f_m2(const Valuation& v, const Bundle& items, const Value& eps,
                    const MmsSolverConfig& config = {});

/// ceil(3 / (2 eps)).
std::size_t ptas_block_size(const Value& eps);

/// Largest c with c = sum_g min(v_g, c) / k. Never below the k-MMS.
Value fractional_upper_bound(const Valuation& v, const Bundle& items, std::size_t k);

/// Longest-processing-time greedy: items in non-increasing value order go to
/// the currently poorest bundle.
Partition greedy_lpt(const Valuation& v, const Bundle& items, std::size_t k);

/// Source of partitions for the allocation algorithms.
class MmsProvider {
 public:
  virtual ~MmsProvider() = default;
  virtual Partition partition(const Valuation& v, const Bundle& items, std::size_t k) const = 0;
};

/// Provider backed by mms_partition with a fixed configuration.
class SolverProvider final : public MmsProvider {
 public:
  explicit SolverProvider(MmsSolverConfig config);
  Partition partition(const Valuation& v, const Bundle& items, std::size_t k) const override;
  const MmsSolverConfig& config() const { return config_; }

 private:
  MmsSolverConfig config_;
};

}  // namespace fairdiv::mms

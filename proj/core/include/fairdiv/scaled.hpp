#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "fairdiv/types.hpp"

namespace fairdiv {

/// Items of a bundle with values multiplied by the LCM of their
/// denominators, so that every weight is an integer.
struct ScaledWeights {
  std::vector<ItemIndex> items;
  std::vector<std::int64_t> weights;
  mpz_class scale;
  std::int64_t total = 0;
};

/// Throws CapacityError when a weight or the total does not fit comfortably
/// in int64 (total must stay below 2^62).
ScaledWeights scale_to_integers(const Valuation& v, const Bundle& items);

/// floor(x) as int64; CapacityError when out of range.
std::int64_t to_int64(const mpz_class& x);

}  // namespace fairdiv

#include "fairdiv/scaled.hpp"

#include <limits>

#include "fairdiv/errors.hpp"

namespace fairdiv {

std::int64_t to_int64(const mpz_class& x) {
  if (!x.fits_slong_p()) throw CapacityError("integer weight exceeds int64 range");
  return x.get_si();
}

ScaledWeights scale_to_integers(const Valuation& v, const Bundle& items) {
  ScaledWeights out;
  out.scale = 1;
  for (ItemIndex g : items) {
    mpz_lcm(out.scale.get_mpz_t(), out.scale.get_mpz_t(), v[g].raw().get_den_mpz_t());
  }
  mpz_class total = 0;
  for (ItemIndex g : items) {
    mpz_class w = v[g].raw().get_num() * (out.scale / v[g].raw().get_den());
    total += w;
    out.items.push_back(g);
    out.weights.push_back(to_int64(w));
  }
  if (total > mpz_class(std::numeric_limits<std::int64_t>::max() / 2)) {
    throw CapacityError("scaled valuation total exceeds int64 headroom");
  }
  out.total = total.get_si();
  return out;
}

}  // namespace fairdiv

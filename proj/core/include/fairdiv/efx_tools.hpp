#pragma once

#include <utility>
#include <vector>

#include "fairdiv/mms_solvers.hpp"
#include "fairdiv/types.hpp"

namespace fairdiv::efx {

/// Visits items in non-increasing value order (ties by index). Each item is
/// taken out of its bundle and put into a bundle of minimum value; the item
/// stays where it was when its source bundle is among the minima, otherwise
/// the lowest-index minimum wins. The result is EFX for `v` and its minimum
/// is never below the input's. If `min_trace` is given, the minimum after
/// every step is appended to it.
Partition realloc(const Partition& p, const Valuation& v, std::vector<Value>* min_trace = nullptr);

/// Two-bundle local search. Returns (A', B') with v(A') <= v(B') that is EFX
/// for `v`, including zero-valued items.
std::pair<Bundle, Bundle> local_search(Bundle a, Bundle b, const Valuation& v);

/// EFX two-partition of A u B built from the provider's partition, falling
/// back to reallocating {A, B} itself when the provider's result has a lower
/// minimum than min{v(A), v(B)}.
Partition mms_efx_improved_repartition(const Bundle& a, const Bundle& b, const Valuation& v,
                                       const mms::MmsProvider& provider);

/// For v(X) >= v(ground)/3: a three-bundle partition of `ground` containing X
/// whose other bundles are EFX-dominated by X. Throws DomainError below the
/// proportional share.
Partition eefx_certificate_for_prop_bundle(const Bundle& x, const Bundle& ground,
                                           const Valuation& v);

}  // namespace fairdiv::efx

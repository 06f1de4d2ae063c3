#include "fairdiv/efx_tools.hpp"

#include <algorithm>

#include "fairdiv/errors.hpp"

namespace fairdiv::efx {

namespace {

std::vector<ItemIndex> by_value_desc(const Valuation& v, const Bundle& items) {
  std::vector<ItemIndex> order(items.begin(), items.end());
  std::stable_sort(order.begin(), order.end(),
                   [&](ItemIndex a, ItemIndex b) { return v[a] > v[b]; });
  return order;
}

}  // namespace

Partition realloc(const Partition& p, const Valuation& v, std::vector<Value>* min_trace) {
  const std::size_t k = p.size();
  if (k == 0) throw DomainError("realloc: empty partition");
  std::vector<std::size_t> owner(v.size(), k);
  std::vector<Value> sums(k);
  for (std::size_t j = 0; j < k; ++j) {
    for (ItemIndex g : p[j]) owner[g] = j;
    sums[j] = v(p[j]);
  }
  for (ItemIndex g : by_value_desc(v, p.ground())) {
    const std::size_t from = owner[g];
    sums[from] -= v[g];
    std::size_t to = from;
    for (std::size_t j = 0; j < k; ++j) {
      if (sums[j] < sums[to]) to = j;
    }
    sums[to] += v[g];
    owner[g] = to;
    if (min_trace) min_trace->push_back(*std::min_element(sums.begin(), sums.end()));
  }
  std::vector<std::vector<ItemIndex>> raw(k);
  for (ItemIndex g : p.ground()) raw[owner[g]].push_back(g);
  std::vector<Bundle> bundles;
  for (auto& r : raw) bundles.emplace_back(std::move(r));
  return Partition::of(std::move(bundles), p.ground());
}

std::pair<Bundle, Bundle> local_search(Bundle a, Bundle b, const Valuation& v) {
  if (a.intersects(b)) throw DomainError("local_search: bundles overlap");
  Value va = v(a), vb = v(b);
  if (va > vb) {
    std::swap(a, b);
    std::swap(va, vb);
  }
  while (true) {
    std::optional<ItemIndex> pick;
    for (ItemIndex g : b) {
      if (va + v[g] < vb && (!pick || v[g] > v[*pick])) pick = g;
    }
    if (!pick) break;
    a = a.with(*pick);
    b = b.without(*pick);
    va += v[*pick];
    vb -= v[*pick];
    if (va > vb) {
      std::swap(a, b);
      std::swap(va, vb);
    }
  }
  return {std::move(a), std::move(b)};
}

Partition mms_efx_improved_repartition(const Bundle& a, const Bundle& b, const Valuation& v,
                                       const mms::MmsProvider& provider) {
  const Bundle both = a.unite(b);
  Partition r = realloc(provider.partition(v, both, 2), v);
  if (r.min_value(v) < std::min(v(a), v(b))) r = realloc(Partition::of({a, b}, both), v);
  return r;
}

Partition eefx_certificate_for_prop_bundle(const Bundle& x, const Bundle& ground,
                                           const Valuation& v) {
  if (!x.subset_of(ground)) throw DomainError("certificate bundle outside ground set");
  const Value vx = v(x);
  if (Value(3) * vx < v(ground)) throw DomainError("bundle is below the proportional share");
  const Bundle rest = ground.minus(x);
  if (v(rest) <= vx) return Partition::of({x, rest, Bundle{}}, ground);
  // Shortest prefix of the rest, largest items first, worth more than X.
  std::vector<ItemIndex> prefix;
  Value acc;
  for (ItemIndex g : by_value_desc(v, rest)) {
    prefix.push_back(g);
    acc += v[g];
    if (acc > vx) break;
  }
  Bundle y(std::move(prefix));
  return Partition::of({x, y, rest.minus(y)}, ground);
}

}  // namespace fairdiv::efx

#include "fairdiv/mms_solvers.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_map>

#include "fairdiv/errors.hpp"
#include "fairdiv/scaled.hpp"

namespace fairdiv::mms {

namespace {

using Sums = std::array<std::int64_t, 3>;

struct SumsHash {
  std::size_t operator()(const Sums& s) const noexcept {
    std::size_t h = 0;
    for (auto x : s) h = h * 1000003u ^ std::hash<std::int64_t>{}(x);
    return h;
  }
};

struct Node {
  Sums sums;
  std::uint32_t parent;
  std::uint8_t slot;
};

void sort_desc(Sums& s, std::size_t k) {
  std::sort(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k), std::greater<>());
}

// Exact max-min k-partition of integer weights (k <= 3). Bundle sums are
// clamped at `clamp`, which must be at least the optimum; sums beyond it
// never decide the minimum. States are sorted sum tuples, so bundle labels
// are interchangeable.
std::vector<std::vector<ItemIndex>> max_min_dp(const std::vector<ItemIndex>& items,
                                               const std::vector<std::int64_t>& w,
                                               std::size_t k, std::int64_t clamp,
                                               std::size_t max_states) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });

  std::vector<std::vector<Node>> layers;
  layers.push_back({Node{{0, 0, 0}, 0, 0}});
  std::size_t total = 1;
  for (std::size_t t = 0; t < order.size(); ++t) {
    const std::int64_t wt = w[order[t]];
    const auto& cur = layers.back();
    std::vector<Node> next;
    std::unordered_map<Sums, std::uint32_t, SumsHash> seen;
    seen.reserve(cur.size() * k);
    for (std::uint32_t p = 0; p < cur.size(); ++p) {
      for (std::size_t j = 0; j < k; ++j) {
        if (j > 0 && cur[p].sums[j] == cur[p].sums[j - 1]) continue;
        Sums s = cur[p].sums;
        s[j] = std::min(s[j] + wt, clamp);
        sort_desc(s, k);
        if (seen.emplace(s, static_cast<std::uint32_t>(next.size())).second) {
          next.push_back(Node{s, p, static_cast<std::uint8_t>(j)});
          if (++total > max_states) throw CapacityError("MMS dynamic program exceeded its state cap");
        }
      }
    }
    layers.push_back(std::move(next));
  }

  const auto& last = layers.back();
  std::uint32_t best = 0;
  for (std::uint32_t i = 1; i < last.size(); ++i) {
    if (last[i].sums[k - 1] > last[best].sums[k - 1]) best = i;
  }
  std::vector<std::size_t> slots(order.size());
  for (std::size_t t = order.size(); t-- > 0;) {
    const Node& node = layers[t + 1][best];
    slots[t] = node.slot;
    best = node.parent;
  }

  // Replay the chosen transitions with real bundles, sorted the same way.
  std::vector<std::pair<std::int64_t, std::vector<ItemIndex>>> bundles(k);
  for (std::size_t t = 0; t < order.size(); ++t) {
    auto& target = bundles[slots[t]];
    target.first = std::min(target.first + w[order[t]], clamp);
    target.second.push_back(items[order[t]]);
    std::stable_sort(bundles.begin(), bundles.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
  }
  std::vector<std::vector<ItemIndex>> out;
  for (auto& b : bundles) out.push_back(std::move(b.second));
  return out;
}

Partition to_partition(std::vector<std::vector<ItemIndex>> raw, const Bundle& items) {
  std::vector<Bundle> bundles;
  for (auto& r : raw) bundles.emplace_back(std::move(r));
  return Partition::of(std::move(bundles), items);
}

std::vector<ItemIndex> by_value_desc(const Valuation& v, const Bundle& items) {
  std::vector<ItemIndex> order(items.begin(), items.end());
  std::stable_sort(order.begin(), order.end(),
                   [&](ItemIndex a, ItemIndex b) { return v[a] > v[b]; });
  return order;
}

}  // namespace

void validate(const MmsSolverConfig& config) {
  if (config.mode == SolverMode::exact) return;
  if (config.eps <= Value(0) || config.eps >= Value(1)) {
    throw DomainError("eps must lie in (0, 1), got " + config.eps.str());
  }
}

Value fractional_upper_bound(const Valuation& v, const Bundle& items, std::size_t k) {
  if (k == 0) throw DomainError("fractional_upper_bound: k must be positive");
  std::vector<Value> vals;
  for (ItemIndex g : by_value_desc(v, items)) vals.push_back(v[g]);
  Value rest = v(items);
  const std::size_t m = vals.size();
  for (std::size_t j = 0; j < k && j <= m; ++j) {
    if (j > 0) rest -= vals[j - 1];
    Value c = rest / Value(k - j);
    if ((j == m || vals[j] <= c) && (j == 0 || vals[j - 1] >= c)) return c;
  }
  return v(items) / Value(k);
}

Partition greedy_lpt(const Valuation& v, const Bundle& items, std::size_t k) {
  if (k == 0) throw DomainError("greedy_lpt: k must be positive");
  std::vector<std::vector<ItemIndex>> raw(k);
  std::vector<Value> sums(k);
  for (ItemIndex g : by_value_desc(v, items)) {
    std::size_t j = static_cast<std::size_t>(std::min_element(sums.begin(), sums.end()) - sums.begin());
    raw[j].push_back(g);
    sums[j] += v[g];
  }
  return to_partition(std::move(raw), items);
}

std::size_t ptas_block_size(const Value& eps) {
  if (eps <= Value(0)) throw DomainError("ptas_block_size: eps must be positive");
  mpz_class b = (Value(3) / (Value(2) * eps)).ceil();
  if (!b.fits_ulong_p()) throw CapacityError("PTAS block size out of range");
  return b.get_ui();
}

Partition mms_partition(const Valuation& v, const Bundle& items, std::size_t k,
                        const MmsSolverConfig& config) {
  validate(config);
  if (k == 0 || k > 3) throw DomainError("mms_partition supports k in {1, 2, 3}");
  if (!items.empty() && items.items().back() >= v.size()) {
    throw DomainError("mms_partition: unknown item index");
  }
  if (k == 1) return Partition::of({items}, items);
  if (config.mode == SolverMode::ptas) {
    if (k != 2) throw DomainError("the PTAS family is defined for two bundles only");
    return ptas_f_m2(v, items, config.eps, config);
  }
  if (items.empty()) return Partition::of(std::vector<Bundle>(k), items);

  Partition lpt = greedy_lpt(v, items, k);
  Value lower = lpt.min_value(v);
  // Fewer than k positive items: every partition is optimal.
  if (lower.sign() == 0) return lpt;
  Value upper = fractional_upper_bound(v, items, k);

  std::vector<ItemIndex> ids(items.begin(), items.end());
  std::vector<std::int64_t> w;
  std::int64_t clamp = 0;
  if (config.mode == SolverMode::exact) {
    ScaledWeights sw = scale_to_integers(v, items);
    w = sw.weights;
    clamp = to_int64((upper * Value(mpq_class(sw.scale))).floor());
  } else {
    // Rounding each value down to a multiple of delta loses less than
    // m * delta <= eps * lower <= eps * MMS per bundle. A unit fraction keeps
    // integral inputs exact.
    Value delta = config.eps * lower / Value(ids.size());
    Value scale = delta <= Value(1) ? Value(mpq_class((Value(1) / delta).ceil())) : Value(1) / delta;
    mpz_class total = 0;
    for (ItemIndex g : ids) {
      mpz_class x = (v[g] * scale).floor();
      total += x;
      w.push_back(to_int64(x));
    }
    to_int64(total * 2);
    clamp = to_int64((upper * scale).floor());
  }
  return to_partition(max_min_dp(ids, w, k, clamp, config.max_dp_states), items);
}

Partition ptas_f_m2(const Valuation& v, const Bundle& items, const Value& eps,
                    const MmsSolverConfig& config) {
  if (eps <= Value(0) || eps >= Value(1)) throw DomainError("eps must lie in (0, 1)");
  const std::size_t m = items.size();
  if (Value(m) < Value(3) / eps) {
    MmsSolverConfig exact = config;
    exact.mode = SolverMode::exact;
    return mms_partition(v, items, 2, exact);
  }
  const std::size_t block = ptas_block_size(eps);
  if (block >= 40 || ((std::uint64_t{1} << block) * (m + 1)) > config.max_ptas_states) {
    throw CapacityError("PTAS enumeration exceeds its state cap");
  }
  std::vector<ItemIndex> order = by_value_desc(v, items);
  ScaledWeights sw = scale_to_integers(v, Bundle(order));
  std::vector<std::int64_t> w(m);
  for (std::size_t i = 0; i < m; ++i) {
    w[i] = sw.weights[static_cast<std::size_t>(
        std::lower_bound(sw.items.begin(), sw.items.end(), order[i]) - sw.items.begin())];
  }
  const std::size_t rest = m - block;
  // suffix[L] = weight of the last L items of the tail.
  std::vector<std::int64_t> suffix(rest + 1, 0);
  for (std::size_t l = 1; l <= rest; ++l) suffix[l] = suffix[l - 1] + w[m - l];
  const std::size_t masks = std::size_t{1} << block;
  std::vector<std::int64_t> head(masks, 0);
  for (std::size_t mask = 1; mask < masks; ++mask) {
    head[mask] = head[mask & (mask - 1)] + w[static_cast<std::size_t>(__builtin_ctzll(mask))];
  }
  std::int64_t best = -1;
  std::size_t best_mask = 0, best_len = 0;
  for (std::size_t mask = 0; mask < masks; ++mask) {
    for (std::size_t l = 0; l <= rest; ++l) {
      std::int64_t side = head[mask] + suffix[l];
      std::int64_t low = std::min(side, sw.total - side);
      if (low > best) {
        best = low;
        best_mask = mask;
        best_len = l;
      }
    }
  }
  std::vector<ItemIndex> first;
  for (std::size_t i = 0; i < block; ++i) {
    if (best_mask >> i & 1) first.push_back(order[i]);
  }
  for (std::size_t l = 1; l <= best_len; ++l) first.push_back(order[m - l]);
  Bundle b1(std::move(first));
  return Partition::of({b1, items.minus(b1)}, items);
}

SolverProvider::SolverProvider(MmsSolverConfig config) : config_(std::move(config)) {
  validate(config_);
}

Partition SolverProvider::partition(const Valuation& v, const Bundle& items, std::size_t k) const {
  return mms_partition(v, items, k, config_);
}

}  // namespace fairdiv::mms

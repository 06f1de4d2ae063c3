#include "fairdiv/oracles.hpp"

#include <algorithm>
#include <limits>

#include "fairdiv/errors.hpp"
#include "fairdiv/mms_solvers.hpp"
#include "fairdiv/scaled.hpp"

namespace fairdiv::oracles {

namespace {

// k^e, saturating at max + 1.
std::uint64_t power_capped(std::uint64_t k, std::size_t e, std::uint64_t max) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (k != 0 && r > (max + 1) / k) return max + 1;
    r *= k;
    if (r > max) return max + 1;
  }
  return r;
}

// Odometer over assignments of m digits in [0, k), last digit fastest.
// Returns false once every assignment from `first` on has been visited.
bool advance(std::vector<std::size_t>& digits, std::size_t k, std::size_t first) {
  for (std::size_t pos = digits.size(); pos-- > first;) {
    if (digits[pos] + 1 < k) {
      ++digits[pos];
      return true;
    }
    digits[pos] = 0;
  }
  return false;
}

std::vector<Bundle> bundles_from(const std::vector<std::size_t>& digits,
                                 const std::vector<ItemIndex>& items, std::size_t k) {
  std::vector<std::vector<ItemIndex>> raw(k);
  for (std::size_t j = 0; j < items.size(); ++j) raw[digits[j]].push_back(items[j]);
  std::vector<Bundle> out;
  out.reserve(k);
  for (auto& r : raw) out.emplace_back(std::move(r));
  return out;
}

}  // namespace

MmsResult exact_mms(const Valuation& v, const Bundle& items, std::size_t k,
                    const OracleCaps& caps) {
  if (k == 0) throw DomainError("exact_mms: k must be positive");
  ScaledWeights sw = scale_to_integers(v, items);
  const std::size_t m = sw.items.size();
  if (m == 0) {
    Partition p = Partition::of(std::vector<Bundle>(k), items);
    return {Value(0), p};
  }
  // The lexicographically smallest optimum always puts the first item in
  // bundle 0, so that digit is fixed.
  if (power_capped(k, m - 1, caps.max_states) > caps.max_states) {
    bool integral = true;
    for (ItemIndex g : items) integral = integral && v[g].is_integer();
    if (!integral) throw CapacityError("exact_mms: enumeration cap exceeded");
    Partition p = mms::mms_partition(v, items, k);
    return {p.min_value(v), p};
  }

  std::vector<std::size_t> digits(m, 0);
  std::vector<std::int64_t> sums(k, 0);
  sums[0] = sw.total;
  std::int64_t best = -1;
  std::vector<std::size_t> best_digits;
  do {
    std::int64_t low = *std::min_element(sums.begin(), sums.end());
    if (low > best) {
      best = low;
      best_digits = digits;
    }
    // Incremental update of the sums for the next odometer step.
    std::size_t pos = m;
    while (pos-- > 1) {
      if (digits[pos] + 1 < k) {
        sums[digits[pos]] -= sw.weights[pos];
        ++digits[pos];
        sums[digits[pos]] += sw.weights[pos];
        break;
      }
      sums[digits[pos]] -= sw.weights[pos];
      digits[pos] = 0;
      sums[0] += sw.weights[pos];
    }
    if (pos == 0) break;
  } while (true);

  Partition witness = Partition::of(bundles_from(best_digits, sw.items, k), items);
  return {witness.min_value(v), witness};
}

bool efx_dominates(const Valuation& v, const Bundle& x, const Bundle& y) {
  Value vx = v(x);
  for (ItemIndex g : y) {
    if (vx < v(y.without(g))) return false;
  }
  return true;
}

bool is_efx_satisfied(const Valuation& v, const Allocation& a, std::size_t agent) {
  if (agent >= a.agents()) throw DomainError("is_efx_satisfied: unknown agent");
  for (std::size_t j = 0; j < a.agents(); ++j) {
    if (j != agent && !efx_dominates(v, a[agent], a[j])) return false;
  }
  return true;
}

EefxResult is_eefx_satisfied(const Valuation& v, const Bundle& x, const Bundle& ground,
                             std::size_t n, const OracleCaps& caps) {
  if (n == 0) throw DomainError("is_eefx_satisfied: n must be positive");
  if (!x.subset_of(ground)) throw DomainError("is_eefx_satisfied: bundle outside ground set");
  Bundle rest = ground.minus(x);
  if (n == 1) {
    if (!rest.empty()) return {false, std::nullopt};
    return {true, Partition::of({x}, ground)};
  }
  const std::size_t parts = n - 1;
  if (power_capped(parts, rest.size(), caps.max_states) > caps.max_states) {
    throw CapacityError("is_eefx_satisfied: enumeration cap exceeded");
  }
  ScaledWeights sw = scale_to_integers(v, ground);
  std::vector<std::int64_t> w;
  std::int64_t vx = 0;
  for (std::size_t j = 0; j < sw.items.size(); ++j) {
    if (x.contains(sw.items[j])) {
      vx += sw.weights[j];
    } else {
      w.push_back(sw.weights[j]);
    }
  }
  const std::size_t r = rest.size();
  std::vector<std::size_t> digits(r, 0);
  std::vector<std::int64_t> sum(parts), low(parts);
  do {
    std::fill(sum.begin(), sum.end(), 0);
    std::fill(low.begin(), low.end(), std::numeric_limits<std::int64_t>::max());
    for (std::size_t j = 0; j < r; ++j) {
      sum[digits[j]] += w[j];
      low[digits[j]] = std::min(low[digits[j]], w[j]);
    }
    bool ok = true;
    for (std::size_t b = 0; b < parts && ok; ++b) {
      if (sum[b] > 0 && sum[b] - low[b] > vx) ok = false;
    }
    if (ok) {
      auto bundles = bundles_from(digits, rest.items(), parts);
      bundles.push_back(x);
      return {true, Partition::of(std::move(bundles), ground)};
    }
  } while (advance(digits, parts, 0));
  return {false, std::nullopt};
}

Value mxs(const Valuation& v, const Bundle& ground, std::size_t n, const OracleCaps& caps) {
  if (n == 0) throw DomainError("mxs: n must be positive");
  const std::size_t m = ground.size();
  if (power_capped(n, m, caps.max_states) > caps.max_states) {
    throw CapacityError("mxs: enumeration cap exceeded");
  }
  ScaledWeights sw = scale_to_integers(v, ground);
  std::vector<std::size_t> digits(m, 0);
  std::vector<std::int64_t> sum(n), low(n);
  std::int64_t best = sw.total;
  do {
    std::fill(sum.begin(), sum.end(), 0);
    std::fill(low.begin(), low.end(), std::numeric_limits<std::int64_t>::max());
    for (std::size_t j = 0; j < m; ++j) {
      sum[digits[j]] += sw.weights[j];
      low[digits[j]] = std::min(low[digits[j]], sw.weights[j]);
    }
    if (sum[0] >= best) continue;
    bool ok = true;
    for (std::size_t b = 1; b < n && ok; ++b) {
      if (sum[b] > 0 && sum[b] - low[b] > sum[0]) ok = false;
    }
    if (ok) best = sum[0];
  } while (advance(digits, n, 0));
  return Value(mpq_class(mpz_class(static_cast<long>(best)), sw.scale));
}

namespace {

class RmmsSearch {
 public:
  RmmsSearch(std::vector<std::int64_t> w, std::size_t n) : w_(std::move(w)), n_(n) {
    const std::size_t full = std::size_t{1} << w_.size();
    sums_.assign(full, 0);
    for (std::size_t mask = 1; mask < full; ++mask) {
      std::size_t bit = static_cast<std::size_t>(__builtin_ctzll(mask));
      sums_[mask] = sums_[mask & (mask - 1)] + w_[bit];
    }
  }

  const std::vector<std::int64_t>& sums() const { return sums_; }

  bool feasible(std::int64_t t) {
    t_ = t;
    const std::size_t full = sums_.size();
    partition_memo_.assign((n_ + 1) * full, -1);
    robust_memo_.assign((n_ + 1) * full, -1);
    return robust(full - 1, n_);
  }

 private:
  // mask splits into p parts, each worth at least t.
  bool splits(std::size_t mask, std::size_t p) {
    if (p == 1) return sums_[mask] >= t_;
    auto& memo = partition_memo_[p * sums_.size() + mask];
    if (memo >= 0) return memo != 0;
    bool ok = false;
    if (t_ <= 0) {
      ok = true;
    } else if (mask != 0) {
      // The part holding the lowest item is enumerated explicitly.
      std::size_t low = mask & (~mask + 1);
      std::size_t others = mask ^ low;
      for (std::size_t sub = others;; sub = (sub - 1) & others) {
        std::size_t part = sub | low;
        if (sums_[part] >= t_ && splits(mask ^ part, p - 1)) {
          ok = true;
          break;
        }
        if (sub == 0) break;
      }
    }
    memo = ok ? 1 : 0;
    return ok;
  }

  // Every way of discarding parts worth less than t, one at a time, leaves
  // a remainder that still splits.
  bool robust(std::size_t mask, std::size_t p) {
    if (p == 1) return sums_[mask] >= t_;
    auto& memo = robust_memo_[p * sums_.size() + mask];
    if (memo >= 0) return memo != 0;
    bool ok = splits(mask, p);
    for (std::size_t sub = mask; ok; sub = (sub - 1) & mask) {
      if (sums_[sub] < t_ && !robust(mask ^ sub, p - 1)) ok = false;
      if (sub == 0) break;
    }
    memo = ok ? 1 : 0;
    return ok;
  }

  std::vector<std::int64_t> w_;
  std::size_t n_;
  std::vector<std::int64_t> sums_;
  std::int64_t t_ = 0;
  std::vector<signed char> partition_memo_;
  std::vector<signed char> robust_memo_;
};

}  // namespace

Value rmms(const Valuation& v, const Bundle& ground, std::size_t n, const OracleCaps& caps) {
  if (n == 0) throw DomainError("rmms: n must be positive");
  if (ground.size() > caps.max_rmms_items ||
      power_capped(3, ground.size(), caps.max_states) > caps.max_states) {
    throw CapacityError("rmms: item count above the bitmask search cap");
  }
  ScaledWeights sw = scale_to_integers(v, ground);
  RmmsSearch search(sw.weights, n);
  std::vector<std::int64_t> candidates = search.sums();
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  // candidates[0] == 0 is always feasible; find the last feasible index.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo + 1) / 2;
    if (search.feasible(candidates[mid])) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return Value(mpq_class(mpz_class(static_cast<long>(candidates[lo])), sw.scale));
}

LotteryCheck check_lottery(const Lottery& lottery, const Instance& instance, const Value& eps,
                           const CheckOptions& options, const OracleCaps& caps) {
  const std::size_t n = instance.agents();
  const Bundle ground = instance.ground();
  LotteryCheck out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = instance.valuations[i];
    out.prop.push_back(prop_share(v, n));
    out.mms.push_back(exact_mms(v, ground, n, caps).value);
    out.rmms.push_back(options.rmms ? std::optional<Value>(rmms(v, ground, n, caps)) : std::nullopt);
    out.mxs.push_back(options.mxs ? std::optional<Value>(mxs(v, ground, n, caps)) : std::nullopt);
    out.expected.push_back(lottery.expected_value(i, v));
    out.ex_ante_prop.push_back(out.expected[i] >= out.prop[i]);
  }
  const Value one_minus = Value(1) - eps;
  const Value nine_tenths = Value(9, 10) - eps;
  for (const auto& entry : lottery) {
    AllocationCheck ac;
    ac.label = entry.label;
    ac.immx = true;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& v = instance.valuations[i];
      FairnessReport r;
      r.value = v(entry.allocation[i]);
      r.prop = out.prop[i];
      r.mms = out.mms[i];
      r.efx_satisfied = is_efx_satisfied(v, entry.allocation, i);
      if (options.eefx) {
        r.eefx_satisfied = is_eefx_satisfied(v, entry.allocation[i], ground, n, caps).satisfied;
      }
      r.mxs = out.mxs[i];
      r.rmms = out.rmms[i];
      r.meets_mms_1me = r.value >= one_minus * r.mms;
      r.meets_mms_910me = r.value >= nine_tenths * r.mms;
      if (r.rmms) r.meets_rmms = r.value >= *r.rmms;
      ac.immx = ac.immx && (r.efx_satisfied || r.meets_mms_1me);
      ac.agents.push_back(std::move(r));
    }
    out.allocations.push_back(std::move(ac));
  }
  return out;
}

}  // namespace fairdiv::oracles

#include "fairdiv/types.hpp"

#include <algorithm>
#include <iterator>

#include "fairdiv/errors.hpp"

namespace fairdiv {

Bundle::Bundle(std::initializer_list<ItemIndex> items)
    : Bundle(std::vector<ItemIndex>(items)) {}

Bundle::Bundle(std::vector<ItemIndex> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  if (std::adjacent_find(items_.begin(), items_.end()) != items_.end()) {
    throw DomainError("bundle lists an item twice");
  }
}

Bundle Bundle::range(std::size_t m) {
  Bundle b;
  b.items_.resize(m);
  for (std::size_t i = 0; i < m; ++i) b.items_[i] = i;
  return b;
}

bool Bundle::contains(ItemIndex g) const {
  return std::binary_search(items_.begin(), items_.end(), g);
}

Bundle Bundle::unite(const Bundle& other) const {
  Bundle r;
  std::set_union(items_.begin(), items_.end(), other.items_.begin(),
                 other.items_.end(), std::back_inserter(r.items_));
  return r;
}

Bundle Bundle::minus(const Bundle& other) const {
  Bundle r;
  std::set_difference(items_.begin(), items_.end(), other.items_.begin(),
                      other.items_.end(), std::back_inserter(r.items_));
  return r;
}

bool Bundle::intersects(const Bundle& other) const {
  auto a = items_.begin();
  auto b = other.items_.begin();
  while (a != items_.end() && b != other.items_.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

bool Bundle::subset_of(const Bundle& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(),
                       items_.end());
}

Bundle Bundle::with(ItemIndex g) const {
  Bundle r = *this;
  auto it = std::lower_bound(r.items_.begin(), r.items_.end(), g);
  if (it == r.items_.end() || *it != g) r.items_.insert(it, g);
  return r;
}

Bundle Bundle::without(ItemIndex g) const {
  Bundle r = *this;
  auto it = std::lower_bound(r.items_.begin(), r.items_.end(), g);
  if (it != r.items_.end() && *it == g) r.items_.erase(it);
  return r;
}

ItemSet::ItemSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (ItemIndex i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw InputError("item " + std::to_string(i) + " has an empty name");
    if (!index_.emplace(names_[i], i).second) {
      throw InputError("duplicate item name '" + names_[i] + "'");
    }
  }
}

ItemSet ItemSet::numbered(std::size_t m) {
  std::vector<std::string> names;
  names.reserve(m);
  for (std::size_t i = 0; i < m; ++i) names.push_back("g" + std::to_string(i + 1));
  return ItemSet(std::move(names));
}

const std::string& ItemSet::name(ItemIndex g) const {
  if (g >= names_.size()) throw DomainError("unknown item index " + std::to_string(g));
  return names_[g];
}

ItemIndex ItemSet::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw DomainError("unknown item '" + name + "'");
  return it->second;
}

Valuation::Valuation(std::initializer_list<Value> values)
    : Valuation(std::vector<Value>(values)) {}

Valuation::Valuation(std::vector<Value> values) : values_(std::move(values)) {
  for (std::size_t g = 0; g < values_.size(); ++g) {
    if (values_[g].sign() < 0) {
      throw DomainError("negative value for item index " + std::to_string(g));
    }
  }
}

const Value& Valuation::operator[](ItemIndex g) const {
  if (g >= values_.size()) throw DomainError("unknown item index " + std::to_string(g));
  return values_[g];
}

Value Valuation::operator()(const Bundle& s) const {
  Value total;
  for (ItemIndex g : s) total += (*this)[g];
  return total;
}

Value Valuation::total() const {
  Value t;
  for (const auto& x : values_) t += x;
  return t;
}

Value bundle_value(const Valuation& v, const Bundle& s) { return v(s); }

Value prop_share(const Valuation& v, std::size_t n) {
  if (n == 0) throw DomainError("prop_share: no agents");
  return v.total() / Value(n);
}

Instance make_instance(std::vector<Valuation> valuations) {
  if (valuations.empty()) throw InputError("instance without agents");
  std::size_t m = valuations.front().size();
  for (std::size_t i = 0; i < valuations.size(); ++i) {
    if (valuations[i].size() != m) {
      throw InputError("agent " + std::to_string(i) + " has " +
                       std::to_string(valuations[i].size()) + " values, expected " +
                       std::to_string(m));
    }
  }
  return Instance{ItemSet::numbered(m), std::move(valuations)};
}

void validate_instance(const Instance& instance) {
  if (instance.agents() == 0) throw InputError("instance without agents");
  for (std::size_t i = 0; i < instance.agents(); ++i) {
    const auto& row = instance.valuations[i];
    if (row.size() != instance.item_count()) {
      throw InputError("agent " + std::to_string(i) + " has " + std::to_string(row.size()) +
                       " values, expected " + std::to_string(instance.item_count()));
    }
    for (std::size_t g = 0; g < row.size(); ++g) {
      if (row[g].sign() < 0) {
        throw InputError("agent " + std::to_string(i) + " item " + std::to_string(g) +
                         " has a negative value");
      }
    }
  }
}

std::vector<Bundle> canonical_order(std::vector<Bundle> bundles) {
  std::stable_sort(bundles.begin(), bundles.end(), [](const Bundle& a, const Bundle& b) {
    if (a.empty() || b.empty()) return !a.empty() && b.empty();
    return *a.begin() < *b.begin();
  });
  return bundles;
}

namespace {

void check_cover(const std::vector<Bundle>& bundles, const Bundle& ground, const char* what) {
  std::size_t count = 0;
  for (const auto& b : bundles) count += b.size();
  Bundle all;
  for (const auto& b : bundles) {
    if (!b.subset_of(ground)) throw DomainError(std::string(what) + ": item outside ground set");
    all = all.unite(b);
  }
  if (all.size() != count) throw DomainError(std::string(what) + ": bundles overlap");
  if (all != ground) throw DomainError(std::string(what) + ": bundles do not cover the ground set");
}

}  // namespace

Partition Partition::of(std::vector<Bundle> bundles, const Bundle& ground) {
  check_cover(bundles, ground, "partition");
  Partition p;
  p.bundles_ = canonical_order(std::move(bundles));
  p.ground_ = ground;
  return p;
}

Partition Partition::of(std::vector<Bundle> bundles) {
  Bundle ground;
  for (const auto& b : bundles) ground = ground.unite(b);
  return of(std::move(bundles), ground);
}

bool Partition::contains(const Bundle& b) const { return index_of(b).has_value(); }

std::optional<std::size_t> Partition::index_of(const Bundle& b) const {
  for (std::size_t i = 0; i < bundles_.size(); ++i) {
    if (bundles_[i] == b) return i;
  }
  return std::nullopt;
}

Value Partition::min_value(const Valuation& v) const {
  if (bundles_.empty()) throw DomainError("min_value of an empty partition");
  Value best = v(bundles_.front());
  for (std::size_t i = 1; i < bundles_.size(); ++i) best = std::min(best, v(bundles_[i]));
  return best;
}

Allocation Allocation::of(std::vector<Bundle> bundles, const Bundle& ground) {
  check_cover(bundles, ground, "allocation");
  Allocation a;
  a.bundles_ = std::move(bundles);
  a.ground_ = ground;
  return a;
}

Lottery::Lottery(std::vector<LotteryEntry> entries) : entries_(std::move(entries)) {}

Lottery Lottery::uniform(std::vector<std::pair<Allocation, std::string>> support) {
  if (support.empty()) throw DomainError("uniform lottery over an empty support");
  Value p = Value(1) / Value(support.size());
  std::vector<LotteryEntry> entries;
  entries.reserve(support.size());
  for (auto& [alloc, label] : support) entries.push_back({p, std::move(alloc), std::move(label)});
  return Lottery(std::move(entries));
}

void Lottery::validate(std::size_t max_support) const {
  if (entries_.empty()) throw DomainError("lottery has no entries");
  if (entries_.size() > max_support) {
    throw DomainError("lottery support " + std::to_string(entries_.size()) + " exceeds " +
                      std::to_string(max_support));
  }
  Value sum;
  for (const auto& e : entries_) {
    if (e.probability.sign() <= 0) throw DomainError("non-positive probability in '" + e.label + "'");
    if (e.allocation.agents() != entries_.front().allocation.agents() ||
        e.allocation.ground() != entries_.front().allocation.ground()) {
      throw DomainError("allocations in the lottery disagree on agents or items");
    }
    sum += e.probability;
  }
  if (sum != Value(1)) throw DomainError("lottery probabilities sum to " + sum.str());
}

Value Lottery::expected_value(std::size_t agent, const Valuation& v) const {
  Value total;
  for (const auto& e : entries_) {
    if (agent >= e.allocation.agents()) throw DomainError("unknown agent " + std::to_string(agent));
    total += e.probability * v(e.allocation[agent]);
  }
  return total;
}

Lottery Lottery::merged() const {
  std::vector<LotteryEntry> out;
  for (const auto& e : entries_) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const LotteryEntry& o) { return o.allocation == e.allocation; });
    if (it == out.end()) {
      out.push_back(e);
    } else {
      it->probability += e.probability;
      it->label += "+" + e.label;
    }
  }
  return Lottery(std::move(out));
}

std::string label_group(const std::string& label) {
  auto caret = label.find('^');
  return caret == std::string::npos ? label : label.substr(caret + 1);
}

}  // namespace fairdiv

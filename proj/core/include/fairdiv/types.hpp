#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/value.hpp"

namespace fairdiv {

using ItemIndex = std::size_t;

/// A set of items, kept as a sorted vector of indices.
class Bundle {
 public:
  Bundle() = default;
  Bundle(std::initializer_list<ItemIndex> items);
  /// Sorts the indices. Throws DomainError on duplicates.
  explicit Bundle(std::vector<ItemIndex> items);

  /// {0, 1, ..., m-1}
  static Bundle range(std::size_t m);

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  bool contains(ItemIndex g) const;
  const std::vector<ItemIndex>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  Bundle unite(const Bundle& other) const;
  Bundle minus(const Bundle& other) const;
  bool intersects(const Bundle& other) const;
  bool subset_of(const Bundle& other) const;
  Bundle with(ItemIndex g) const;
  Bundle without(ItemIndex g) const;

  friend bool operator==(const Bundle&, const Bundle&) = default;
  friend auto operator<=>(const Bundle&, const Bundle&) = default;

 private:
  std::vector<ItemIndex> items_;
};

/// Item identifiers. Index i is the i-th item; names default to g1, g2, ...
class ItemSet {
 public:
  ItemSet() = default;
  /// Throws InputError on duplicate or empty names.
  explicit ItemSet(std::vector<std::string> names);
  static ItemSet numbered(std::size_t m);

  std::size_t size() const { return names_.size(); }
  const std::string& name(ItemIndex g) const;
  /// Throws DomainError for an unknown name.
  ItemIndex index_of(const std::string& name) const;
  const std::vector<std::string>& names() const { return names_; }
  Bundle all() const { return Bundle::range(size()); }

 private:
  std::vector<std::string> names_;
  std::map<std::string, ItemIndex> index_;
};

/// Additive valuation: one non-negative value per item.
class Valuation {
 public:
  Valuation() = default;
  Valuation(std::initializer_list<Value> values);
  /// Throws DomainError on a negative value.
  explicit Valuation(std::vector<Value> values);

  std::size_t size() const { return values_.size(); }
  /// Throws DomainError for an index outside the item set.
  const Value& operator[](ItemIndex g) const;
  Value operator()(const Bundle& s) const;
  Value total() const;
  const std::vector<Value>& values() const { return values_; }

 private:
  std::vector<Value> values_;
};

/// v(S); throws DomainError if S mentions an unknown item.
Value bundle_value(const Valuation& v, const Bundle& s);
/// v(M) / n.
Value prop_share(const Valuation& v, std::size_t n);

struct Instance {
  ItemSet items;
  std::vector<Valuation> valuations;

  std::size_t agents() const { return valuations.size(); }
  std::size_t item_count() const { return items.size(); }
  Bundle ground() const { return items.all(); }
};

/// Builds an instance with items g1..gm. Throws InputError when the rows have
/// different lengths.
Instance make_instance(std::vector<Valuation> valuations);

/// Throws InputError naming the offending agent/item index on a ragged row,
/// negative value, or an instance without agents.
void validate_instance(const Instance& instance);

/// Orders bundles by smallest contained item, empty bundles last.
std::vector<Bundle> canonical_order(std::vector<Bundle> bundles);

/// Unordered partition of a ground set into a fixed number of possibly empty
/// bundles, stored in canonical order.
class Partition {
 public:
  Partition() = default;
  /// Throws DomainError unless the bundles are pairwise disjoint and cover
  /// exactly `ground`.
  static Partition of(std::vector<Bundle> bundles, const Bundle& ground);
  /// Ground set is the union of the bundles.
  static Partition of(std::vector<Bundle> bundles);

  std::size_t size() const { return bundles_.size(); }
  const Bundle& operator[](std::size_t i) const { return bundles_[i]; }
  const std::vector<Bundle>& bundles() const { return bundles_; }
  const Bundle& ground() const { return ground_; }
  auto begin() const { return bundles_.begin(); }
  auto end() const { return bundles_.end(); }

  bool contains(const Bundle& b) const;
  std::optional<std::size_t> index_of(const Bundle& b) const;
  Value min_value(const Valuation& v) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<Bundle> bundles_;
  Bundle ground_;
};

/// Bundle per agent; agent i receives bundles()[i].
class Allocation {
 public:
  Allocation() = default;
  /// Throws DomainError unless the bundles are disjoint and cover `ground`.
  static Allocation of(std::vector<Bundle> bundles, const Bundle& ground);

  std::size_t agents() const { return bundles_.size(); }
  const Bundle& operator[](std::size_t agent) const { return bundles_[agent]; }
  const std::vector<Bundle>& bundles() const { return bundles_; }
  const Bundle& ground() const { return ground_; }
  Partition as_partition() const { return Partition::of(bundles_, ground_); }

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::vector<Bundle> bundles_;
  Bundle ground_;
};

struct LotteryEntry {
  Value probability;
  Allocation allocation;
  std::string label;
};

/// Distribution over allocations. Entries are kept as produced, so two equal
/// allocations may appear as separate entries; merged() combines them.
class Lottery {
 public:
  Lottery() = default;
  explicit Lottery(std::vector<LotteryEntry> entries);

  /// Equal probability on every allocation.
  static Lottery uniform(std::vector<std::pair<Allocation, std::string>> support);

  const std::vector<LotteryEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Throws DomainError unless probabilities are positive, sum to exactly 1,
  /// the support has at most `max_support` entries and all allocations share
  /// one ground set and agent count.
  void validate(std::size_t max_support) const;

  Value expected_value(std::size_t agent, const Valuation& v) const;
  Lottery merged() const;

 private:
  std::vector<LotteryEntry> entries_;
};

/// Certificates keyed by lottery group (the part of an entry label after
/// '^', e.g. "2" for X^2 and Y^2) and then by agent index.
using CertificateTable = std::map<std::string, std::map<std::size_t, Partition>>;

/// Group key of a lottery label, or the whole label if it has no '^'.
std::string label_group(const std::string& label);

}  // namespace fairdiv

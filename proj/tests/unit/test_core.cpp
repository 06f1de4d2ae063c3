#include <gtest/gtest.h>

#include <algorithm>

#include "fairdiv/errors.hpp"
#include "fairdiv/types.hpp"
#include "support.hpp"

namespace fairdiv {
namespace {

using testing::g;

TEST(Value, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(Value::parse("7"), Value(7));
  EXPECT_EQ(Value::parse("2/4"), Value(1, 2));
  EXPECT_EQ(Value::parse("0.25"), Value(1, 4));
  EXPECT_EQ(Value::parse(" 3/9 "), Value(1, 3));
  EXPECT_EQ(Value::parse("2/4").str(), "1/2");
  EXPECT_THROW(Value::parse("1/0"), InputError);
  EXPECT_THROW(Value::parse("abc"), InputError);
  EXPECT_THROW(Value::parse(""), InputError);
}

TEST(Value, ExactArithmetic) {
  const Value third(1, 3);
  EXPECT_EQ(third + third + third, Value(1));
  EXPECT_EQ(Value(17) / Value(2), Value(17, 2));
  EXPECT_LT(Value(5, 6), Value(6, 7));
  EXPECT_EQ(Value(7, 2).floor(), 3);
  EXPECT_EQ(Value(7, 2).ceil(), 4);
  EXPECT_EQ(Value(-7, 2).floor(), -4);
  EXPECT_THROW(Value(1) / Value(0), DomainError);
}

TEST(Bundle, SetOperations) {
  const Bundle a{0, 2, 4};
  const Bundle b{4, 1};
  EXPECT_EQ(a.unite(b), (Bundle{0, 1, 2, 4}));
  EXPECT_EQ(a.minus(b), (Bundle{0, 2}));
  EXPECT_TRUE(a.intersects(b));
  EXPECT_TRUE((Bundle{2}).subset_of(a));
  EXPECT_EQ(a.with(3).without(0), (Bundle{2, 3, 4}));
  EXPECT_THROW(Bundle({1, 1}), DomainError);
}

TEST(BundleValue, Examples) {
  const Valuation v{16, 12, 8, 5};
  EXPECT_EQ(bundle_value(v, g({1, 4})), Value(21));
  EXPECT_EQ(bundle_value(v, g({2, 3})), Value(20));
  EXPECT_EQ(bundle_value(v, {}), Value(0));
  const Value h(1, 2);
  const Valuation d1{5, 3, 2, 4, 2, h, h};
  EXPECT_EQ(bundle_value(d1, Bundle::range(7)), Value(17));
  EXPECT_THROW(bundle_value(v, Bundle{7}), DomainError);
}

TEST(BundleValue, AdditiveOnRandomSplits) {
  for (const auto& inst : testing::random_instances(11, 1, 200, 12)) {
    const auto& v = inst.valuations[0];
    harness::InstanceGenerator rng({.seed = inst.item_count()});
    std::vector<ItemIndex> s, t;
    for (ItemIndex x = 0; x < inst.item_count(); ++x) (rng.draw(0, 1) ? s : t).push_back(x);
    const Bundle bs(s), bt(t);
    EXPECT_EQ(v(bs.unite(bt)), v(bs) + v(bt));
  }
}

TEST(PropShare, Examples) {
  const Value h(1, 2);
  EXPECT_EQ(prop_share(Valuation{5, 3, 2, 4, 2, h, h}, 2), Value(17, 2));
  EXPECT_EQ(prop_share(Valuation{0, 0}, 3), Value(0));
  EXPECT_EQ(prop_share(Valuation{4, 2, 6, 5, 1}, 3), Value(6));
  EXPECT_THROW(prop_share(Valuation{1}, 0), DomainError);
}

TEST(ValidateInstance, Rejections) {
  EXPECT_NO_THROW(validate_instance(testing::table({{1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}, {0, 0, 0, 0, 1}})));
  EXPECT_THROW(Valuation({Value(1), Value(-1)}), DomainError);
  Instance ragged;
  ragged.items = ItemSet::numbered(3);
  ragged.valuations = {Valuation{1, 2, 3}, Valuation{1, 2}};
  EXPECT_THROW(validate_instance(ragged), InputError);
  EXPECT_THROW(make_instance({Valuation{1, 2, 3}, Valuation{1, 2}}), InputError);
  EXPECT_THROW(ItemSet({"a", "a"}), InputError);
}

TEST(Partition, CanonicalFormIgnoresInputOrder) {
  const Bundle m = Bundle::range(5);
  std::vector<Bundle> bundles{g({3}), {}, g({4, 5}), g({1, 2})};
  const Partition p = Partition::of(bundles, m);
  EXPECT_EQ(p[0], g({1, 2}));
  EXPECT_EQ(p[1], g({3}));
  EXPECT_EQ(p[2], g({4, 5}));
  EXPECT_TRUE(p[3].empty());
  std::sort(bundles.begin(), bundles.end());
  do {
    EXPECT_EQ(Partition::of(bundles, m), p);
  } while (std::next_permutation(bundles.begin(), bundles.end()));
  EXPECT_EQ(Partition::of(p.bundles(), m), p);
}

TEST(Partition, RejectsOverlapAndGaps) {
  const Bundle m = Bundle::range(3);
  EXPECT_THROW(Partition::of({g({1, 2}), g({2, 3})}, m), DomainError);
  EXPECT_THROW(Partition::of({g({1}), g({2})}, m), DomainError);
  EXPECT_THROW(Partition::of({g({1, 2, 3, 4})}, m), DomainError);
}

TEST(Allocation, KeepsAgentOrder) {
  const Allocation a = Allocation::of({g({3}), g({1, 2})}, Bundle::range(3));
  EXPECT_EQ(a[0], g({3}));
  EXPECT_EQ(a.as_partition()[0], g({1, 2}));
}

TEST(Lottery, ProbabilitiesMustSumToExactlyOne) {
  const Bundle m = Bundle::range(2);
  const Allocation a = Allocation::of({g({1}), g({2})}, m);
  const Allocation b = Allocation::of({g({2}), g({1})}, m);
  Lottery ok = Lottery::uniform({{a, "A^1"}, {b, "A^2"}});
  EXPECT_NO_THROW(ok.validate(2));
  EXPECT_THROW(ok.validate(1), DomainError);
  Lottery off({{Value(1, 3), a, "A^1"}, {Value(1, 2), b, "A^2"}});
  EXPECT_THROW(off.validate(2), DomainError);
  Lottery zero({{Value(0), a, "A^1"}, {Value(1), b, "A^2"}});
  EXPECT_THROW(zero.validate(2), DomainError);

  const Valuation v{3, 1};
  EXPECT_EQ(ok.expected_value(0, v), Value(2));
  EXPECT_EQ(Lottery::uniform({{a, "X"}, {a, "Y"}}).merged().size(), 1u);
}

TEST(Lottery, LabelGroup) {
  EXPECT_EQ(label_group("X^2"), "2");
  EXPECT_EQ(label_group("cut"), "cut");
}

}  // namespace
}  // namespace fairdiv

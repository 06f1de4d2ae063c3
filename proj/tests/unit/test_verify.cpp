#include <gtest/gtest.h>

#include <random>

#include "fairdiv/bobw2.hpp"
#include "fairdiv/bobw3.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/oracles.hpp"
#include "fairdiv/verify.hpp"
#include "support.hpp"

namespace fairdiv::verify {
namespace {

using fairdiv::testing::g;

Partition random_partition(std::mt19937_64& rng, std::size_t m, std::size_t k) {
  std::vector<std::vector<ItemIndex>> parts(k);
  for (ItemIndex x = 0; x < m; ++x) parts[rng() % k].push_back(x);
  std::vector<Bundle> bundles;
  for (auto& p : parts) bundles.emplace_back(std::move(p));
  return Partition::of(std::move(bundles), Bundle::range(m));
}

TEST(VerifyCertificate, AgreesWithPairwiseDomination) {
  std::mt19937_64 rng(71);
  std::size_t accepted = 0, rejected = 0;
  for (const auto& inst : fairdiv::testing::random_instances(71, 1, 500, 8)) {
    const Valuation& v = inst.valuations[0];
    const Partition p = random_partition(rng, inst.item_count(), 3);
    for (const auto& b : p) {
      bool expect = true;
      for (const auto& other : p) {
        if (other != b) expect = expect && oracles::efx_dominates(v, b, other);
      }
      const bool got = verify_certificate(v, {0, b, p});
      EXPECT_EQ(got, expect);
      ++(got ? accepted : rejected);
    }
  }
  EXPECT_GT(accepted, 0u);
  EXPECT_GT(rejected, 0u);
}

TEST(VerifyCertificate, WholeSetPasses) {
  const Valuation v({Value(5), Value(1), Value(2)});
  const Bundle all = Bundle::range(3);
  EXPECT_TRUE(verify_certificate(v, {0, all, Partition::of({all, Bundle(), Bundle()}, all)}));
}

TEST(VerifyCertificate, MissingBundleThrows) {
  const Valuation v({Value(5), Value(1), Value(2)});
  const Partition p = Partition::of({g({1}), g({2}), g({3})});
  EXPECT_THROW(verify_certificate(v, {0, g({1, 2}), p}), DomainError);
}

TEST(Dominates, Examples) {
  const Valuation v({Value(4), Value(1), Value(3)});
  EXPECT_TRUE(dominates(v, g({1}), g({2, 3})));   // 4 >= 4 - 1
  EXPECT_FALSE(dominates(v, g({2}), g({1, 3})));  // 1 < 7 - 3
  EXPECT_TRUE(dominates(v, Bundle(), Bundle()));
}

TEST(VerifyLotteryReport, ExactPipelinePasses) {
  const auto& f = harness::fixture("immx-intro");
  const auto res = bobw3::bobw3_exact(f.instance);
  VerifyOptions opts;
  opts.approx = mms::MmsSolverConfig{};
  const auto report = verify_lottery_report(res.lottery, f.instance, res.certificates(), 0, opts);
  EXPECT_TRUE(report.ok()) << report.problems().front();
}

TEST(VerifyLotteryReport, ShiftedProbabilityFailsExAnte) {
  const Instance inst = fairdiv::testing::table({{3, 1}, {3, 1}});
  const Allocation a = Allocation::of({g({1}), g({2})}, inst.ground());
  const Allocation b = Allocation::of({g({2}), g({1})}, inst.ground());
  const Lottery fair({{Value(1, 2), a, "A"}, {Value(1, 2), b, "B"}});
  EXPECT_TRUE(verify_lottery_report(fair, inst, {}, Value(1, 10)).ok());
  const Lottery shifted({{Value(1, 4), a, "A"}, {Value(3, 4), b, "B"}});
  const auto report = verify_lottery_report(shifted, inst, {}, Value(1, 10));
  EXPECT_FALSE(report.ok());
  EXPECT_FALSE(report.agents[0].ex_ante_ok);
  EXPECT_TRUE(report.agents[1].ex_ante_ok);
  EXPECT_EQ(report.agents[0].expected, Value(3, 2));
}

TEST(VerifyLotteryReport, ShiftedMassOnRandomRuns) {
  for (const auto& inst : fairdiv::testing::random_instances(72, 3, 100, 8)) {
    const auto res = bobw3::bobw3_exact(inst);
    const auto& v = inst.valuations[0];
    std::vector<LotteryEntry> entries = res.lottery.entries();
    auto by_value = [&](const LotteryEntry& x, const LotteryEntry& y) { return v(x.allocation[0]) < v(y.allocation[0]); };
    auto lo = std::min_element(entries.begin(), entries.end(), by_value);
    auto hi = std::max_element(entries.begin(), entries.end(), by_value);
    if (v(lo->allocation[0]) == v(hi->allocation[0])) continue;
    const Value d(1, 12);
    hi->probability -= d;
    lo->probability += d;
    const Lottery shifted(entries);
    VerifyOptions opts;
    opts.approx = mms::MmsSolverConfig{};
    const auto report = verify_lottery_report(shifted, inst, res.certificates(), 0, opts);
    const Value expected = shifted.expected_value(0, v);
    EXPECT_EQ(report.agents[0].expected, expected);
    EXPECT_EQ(report.agents[0].ex_ante_ok, expected >= prop_share(v, 3));
  }
}

TEST(VerifyLotteryReport, MissingCertificatesReported) {
  std::size_t needed = 0;
  for (const auto& inst : fairdiv::testing::random_instances(73, 3, 150, 8)) {
    const auto res = bobw3::bobw3_exact(inst);
    VerifyOptions opts;
    opts.approx = mms::MmsSolverConfig{};
    const auto report = verify_lottery_report(res.lottery, inst, {}, 0, opts);
    bool all_efx = true;
    for (const auto& e : res.lottery) {
      for (std::size_t i = 0; i < 3; ++i) all_efx = all_efx && oracles::is_efx_satisfied(inst.valuations[i], e.allocation, i);
    }
    EXPECT_EQ(report.ok(), all_efx);
    if (!all_efx) {
      ++needed;
      const auto problems = report.problems();
      EXPECT_TRUE(std::any_of(problems.begin(), problems.end(), [](const std::string& p) {
        return p.find("no certificate") != std::string::npos;
      }));
    }
    // With the certificates restored the run passes again.
    EXPECT_TRUE(verify_lottery_report(res.lottery, inst, res.certificates(), 0, opts).ok());
  }
  EXPECT_GT(needed, 0u);
}

TEST(VerifyLotteryReport, CertificateWithoutTheBundleRejected) {
  std::size_t consulted = 0;
  for (const auto& inst : fairdiv::testing::random_instances(76, 3, 150, 8)) {
    const auto res = bobw3::bobw3_exact(inst);
    const Bundle m = inst.ground();
    CertificateTable bad = res.certificates();
    for (auto& [group, table] : bad) {
      for (auto& [agent, p] : table) p = Partition::of({m, Bundle(), Bundle()}, m);
    }
    VerifyOptions opts;
    opts.approx = mms::MmsSolverConfig{};
    const auto report = verify_lottery_report(res.lottery, inst, bad, 0, opts);
    for (const auto& a : report.agents) {
      for (const auto& al : a.allocations) {
        if (!al.certificate_ok) continue;
        ++consulted;
        // Only an agent holding everything could be covered by {M, {}, {}}.
        EXPECT_FALSE(*al.certificate_ok);
        EXPECT_FALSE(report.ok());
      }
    }
  }
  EXPECT_GT(consulted, 0u);
}

TEST(VerifyLotteryReport, IdenticalTwoAgentSeedsGiveProp) {
  for (const auto& inst : fairdiv::testing::random_instances(74, 2, 200, 10, 30, harness::Distribution::identical)) {
    const auto& v = inst.valuations;
    const Partition seed = mms::mms_partition(v[0], inst.ground(), 2);
    const Lottery l = bobw2::bobw_two_agents(v[0], v[1], seed, seed);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(l.expected_value(i, v[i]), prop_share(v[i], 2));
    EXPECT_TRUE(verify_lottery_report(l, inst, {}, Value(1, 10)).ok());
  }
}

TEST(VerifyLotteryReport, PolyRunsWithoutEefxRequirement) {
  for (const auto& inst : fairdiv::testing::random_instances(75, 3, 100, 9, 1000)) {
    const Value eps(1, 4);
    const auto res = bobw3::bobw3_poly(inst, eps);
    VerifyOptions opts;
    opts.require_eefx = false;
    const auto report = verify_lottery_report(res.lottery, inst, res.certificates(), eps, opts);
    EXPECT_TRUE(report.ok()) << report.problems().front();
  }
}

}  // namespace
}  // namespace fairdiv::verify

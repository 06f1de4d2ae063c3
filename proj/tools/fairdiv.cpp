// Command line front end: solve, verify and inspect allocation instances.
//
// Exit codes: 0 ok, 1 verification failure, 2 capacity error, 3 input error.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fairdiv/bobw2.hpp"
#include "fairdiv/bobw3.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/harness.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/oracles.hpp"
#include "fairdiv/verify.hpp"

namespace {

using namespace fairdiv;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kCapacity = 2;
constexpr int kInput = 3;

struct Common {
  std::string instance;
  std::string eps = "1/10";
  std::string out;
  std::uint64_t caps = 0;
  bool no_oracle = false;
};

oracles::OracleCaps oracle_caps(const Common& c) {
  oracles::OracleCaps caps;
  if (c.caps) caps.max_states = c.caps;
  return caps;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text << '\n';
  } else {
    io::write_file(c.out, text + "\n");
  }
}

std::optional<oracles::LotteryCheck> oracle_verdicts(const Common& c, const Lottery& lottery,
                                                     const Instance& inst, const Value& eps) {
  if (c.no_oracle) return std::nullopt;
  oracles::CheckOptions opts;
  opts.eefx = inst.agents() == 3;
  opts.rmms = inst.agents() == 3;
  return oracles::check_lottery(lottery, inst, eps, opts, oracle_caps(c));
}

int solve2(const Common& c, const std::string& seed_mode, const std::string& seeds_file,
           const std::string& baseline) {
  const Instance inst = io::parse_instance(io::read_file(c.instance));
  if (inst.agents() != 2) throw InputError("solve2 needs an instance with two agents");
  const Value eps = Value::parse(c.eps);
  const auto& v = inst.valuations;
  const Bundle m = inst.ground();

  std::vector<Partition> seeds;
  if (seed_mode == "explicit") {
    if (seeds_file.empty()) throw InputError("--seed-mode explicit needs --seeds FILE");
    seeds = io::parse_partitions(io::read_file(seeds_file), inst);
    if (seeds.size() != 2) throw InputError("--seeds must hold two partitions");
  } else {
    mms::MmsSolverConfig cfg;
    cfg.eps = eps;
    if (seed_mode == "fptas") {
      cfg.mode = mms::SolverMode::fptas;
    } else if (seed_mode == "ptas") {
      cfg.mode = mms::SolverMode::ptas;
    } else if (seed_mode != "exact") {
      throw InputError("unknown seed mode '" + seed_mode + "'");
    }
    if (c.caps) cfg.max_dp_states = c.caps;
    seeds = {mms::mms_partition(v[0], m, 2, cfg), mms::mms_partition(v[1], m, 2, cfg)};
  }

  Lottery lottery;
  std::vector<std::string> trace;
  if (baseline == "none") {
    auto out = bobw2::run_two_agents(v[0], v[1], seeds[0], seeds[1]);
    lottery = out.lottery();
    trace.push_back("rounds " + std::to_string(out.iterations) + (out.early_return ? ", early return" : ""));
  } else if (baseline == "bu") {
    lottery = bobw2::baseline_bu_alg3_original(v[0], v[1]);
  } else if (baseline == "naive") {
    lottery = bobw2::baseline_naive_cut_and_choose(v[0], v[1], seeds[0], seeds[1]);
  } else {
    throw InputError("unknown baseline '" + baseline + "'");
  }
  emit(c, io::report_to_json(inst, lottery, {}, oracle_verdicts(c, lottery, inst, eps), trace));
  return kOk;
}

int solve3(const Common& c, const std::string& mode, const std::string& bases_file) {
  const Instance inst = io::parse_instance(io::read_file(c.instance));
  if (inst.agents() != 3) throw InputError("solve3 needs an instance with three agents");
  const Value eps = Value::parse(c.eps);
  std::optional<bobw3::BasePartitions> bases;
  if (!bases_file.empty()) {
    auto parts = io::parse_partitions(io::read_file(bases_file), inst);
    if (parts.size() != 3) throw InputError("--bases must hold three partitions");
    bases = bobw3::BasePartitions{parts[0], parts[1], parts[2]};
  }
  bobw3::ThreeAgentResult res;
  Value check_eps = eps;
  if (mode == "exact") {
    mms::MmsSolverConfig cfg;
    if (c.caps) cfg.max_dp_states = c.caps;
    if (bases) {
      mms::SolverProvider provider(cfg);
      res = bobw3::bobw3_with(inst, *bases, provider);
    } else {
      res = bobw3::bobw3_exact(inst, cfg);
    }
    check_eps = 0;
  } else if (mode == "fptas") {
    res = bobw3::bobw3_fptas(inst, eps, bases);
  } else if (mode == "poly") {
    res = bobw3::bobw3_poly(inst, eps, bases);
  } else {
    throw InputError("unknown mode '" + mode + "'");
  }
  emit(c, io::report_to_json(inst, res.lottery, res.certificates(),
                             oracle_verdicts(c, res.lottery, inst, check_eps), res.trace()));
  return kOk;
}

int verify_cmd(const Common& c, const std::string& report_file, bool no_eefx, const std::string& approx) {
  const Instance inst = io::parse_instance(io::read_file(c.instance));
  const auto report = io::parse_report(io::read_file(report_file), inst);
  const Value eps = Value::parse(c.eps);
  verify::VerifyOptions opts;
  opts.require_eefx = !no_eefx;
  if (approx == "exact") {
    opts.approx = mms::MmsSolverConfig{};
  } else if (approx != "fptas") {
    throw InputError("unknown approximation '" + approx + "'");
  }
  verify::VerificationReport verdict;
  try {
    verdict = verify::verify_lottery_report(report.lottery, inst, report.certificates, eps, opts);
  } catch (const DomainError& e) {
    throw InputError(std::string("report: ") + e.what());
  }
  emit(c, io::verification_to_json(verdict));
  return verdict.ok() ? kOk : kFailed;
}

int oracle_cmd(const Common& c, bool with_mxs) {
  const Instance inst = io::parse_instance(io::read_file(c.instance));
  const auto caps = oracle_caps(c);
  const std::size_t n = inst.agents();
  const Bundle m = inst.ground();
  json agents = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = inst.valuations[i];
    const auto mms = oracles::exact_mms(v, m, n, caps);
    json witness = json::array();
    for (const auto& b : mms.witness) {
      json names = json::array();
      for (ItemIndex g : b) names.push_back(inst.items.name(g));
      witness.push_back(std::move(names));
    }
    json a = {{"agent", i + 1},
              {"prop", prop_share(v, n).str()},
              {"mms", mms.value.str()},
              {"mms_witness", std::move(witness)},
              {"rmms", oracles::rmms(v, m, n, caps).str()}};
    if (with_mxs) a["mxs"] = oracles::mxs(v, m, n, caps).str();
    agents.push_back(std::move(a));
  }
  emit(c, json{{"agents", std::move(agents)}}.dump(2));
  return kOk;
}

harness::GeneratorConfig generator_config(std::uint64_t seed, std::size_t agents, std::size_t min_items,
                                          std::size_t max_items, std::int64_t max_value,
                                          const std::string& dist, std::int64_t perturbation) {
  harness::GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.agents = agents;
  cfg.min_items = min_items;
  cfg.max_items = max_items;
  cfg.max_value = max_value;
  cfg.distribution = harness::parse_distribution(dist);
  cfg.perturbation = perturbation;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair allocation of indivisible goods: randomized allocations with ex-post guarantees"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool needs_instance) {
    auto* opt = sub->add_option("--instance", common.instance, "Instance JSON file");
    if (needs_instance) opt->required();
    sub->add_option("--eps", common.eps, "Approximation parameter as p/q")->capture_default_str();
    sub->add_option("--out", common.out, "Write the result here instead of stdout");
    sub->add_option("--caps", common.caps, "State cap for exact solvers and oracles");
  };

  auto* s2 = app.add_subcommand("solve2", "Two-agent lottery");
  add_common(s2, true);
  std::string seed_mode = "fptas", seeds_file, baseline = "none";
  s2->add_option("--seed-mode", seed_mode, "fptas | ptas | exact | explicit")->capture_default_str();
  s2->add_option("--seeds", seeds_file, "JSON with two partitions for --seed-mode explicit");
  s2->add_option("--baseline", baseline, "none | bu | naive")->capture_default_str();
  s2->add_flag("--no-oracle", common.no_oracle, "Skip the brute-force verdicts");

  auto* s3 = app.add_subcommand("solve3", "Three-agent lottery");
  add_common(s3, true);
  std::string mode = "poly", bases_file;
  s3->add_option("--mode", mode, "exact | fptas | poly")->capture_default_str();
  s3->add_option("--bases", bases_file, "JSON with three base partitions");
  s3->add_flag("--no-oracle", common.no_oracle, "Skip the brute-force verdicts");

  auto* ver = app.add_subcommand("verify", "Check a report using each agent's own valuation");
  add_common(ver, true);
  std::string report_file, approx = "fptas";
  bool no_eefx = false;
  ver->add_option("--report", report_file, "Report JSON file")->required();
  ver->add_option("--approx", approx, "MMS estimate: fptas | exact")->capture_default_str();
  ver->add_flag("--no-eefx", no_eefx, "Do not require EFX or a certificate");

  auto* ora = app.add_subcommand("oracle", "Brute-force shares of every agent");
  add_common(ora, true);
  bool with_mxs = false;
  ora->add_flag("--mxs", with_mxs, "Also compute the MXS share");

  auto* gen = app.add_subcommand("gen", "Print random instances, one JSON document per line");
  std::uint64_t seed = 0;
  std::size_t count = 1, agents = 3, min_items = 3, max_items = 9;
  std::int64_t max_value = 20, perturbation = 2;
  std::string dist = "uniform";
  auto add_generator = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Generator seed")->capture_default_str();
    sub->add_option("--count", count, "Number of instances")->capture_default_str();
    sub->add_option("--min-items", min_items)->capture_default_str();
    sub->add_option("--max-items", max_items)->capture_default_str();
    sub->add_option("--max-value", max_value)->capture_default_str();
    sub->add_option("--dist", dist, "uniform | identical | near-identical | heavy-item")->capture_default_str();
    sub->add_option("--perturbation", perturbation)->capture_default_str();
  };
  add_generator(gen);
  gen->add_option("--agents", agents)->capture_default_str();

  auto* suite = app.add_subcommand("suite", "Run a pipeline on random instances and check it");
  add_generator(suite);
  std::string pipeline = "bobw3_exact", out_dir;
  suite->add_option("--pipeline", pipeline,
                    "bobw2 | bobw3_exact | bobw3_fptas | bobw3_poly | baseline_bu | baseline_naive")
      ->capture_default_str();
  suite->add_option("--eps", common.eps)->capture_default_str();
  suite->add_option("--out-dir", out_dir, "Directory for reproducers of violations");
  suite->add_option("--caps", common.caps, "State cap for the oracles");
  std::size_t threads = 0;
  suite->add_option("--threads", threads, "Worker threads, 0 for one per hardware thread")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }

  try {
    if (*s2) return solve2(common, seed_mode, seeds_file, baseline);
    if (*s3) return solve3(common, mode, bases_file);
    if (*ver) return verify_cmd(common, report_file, no_eefx, approx);
    if (*ora) return oracle_cmd(common, with_mxs);
    if (*gen) {
      harness::InstanceGenerator g(generator_config(seed, agents, min_items, max_items, max_value, dist, perturbation));
      for (std::size_t i = 0; i < count; ++i) std::cout << io::instance_to_json(g.next()) << '\n';
      return kOk;
    }
    if (*suite) {
      harness::SuiteOptions opts;
      opts.eps = Value::parse(common.eps);
      opts.reproducer_dir = out_dir;
      opts.threads = threads;
      if (common.caps) opts.caps.max_states = common.caps;
      const auto p = harness::parse_pipeline(pipeline);
      const auto summary = harness::run_suite(
          p, generator_config(seed, 3, min_items, max_items, max_value, dist, perturbation), count, opts);
      json counts = json::object();
      for (const auto& [k, n] : summary.counts) counts[k] = n;
      json j = {{"pipeline", pipeline},
                {"instances", summary.instances},
                {"violations", summary.violations.size()},
                {"counts", std::move(counts)},
                {"worst_mms_ratio", summary.worst_mms_ratio ? json(summary.worst_mms_ratio->str()) : json(nullptr)},
                {"reproducers", summary.reproducers}};
      std::cout << j.dump(2) << '\n';
      return summary.violations.empty() ? kOk : kFailed;
    }
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kCapacity;
  } catch (const InputError& e) {
    std::cerr << "input: " << e.what() << '\n';
    return kInput;
  } catch (const DomainError& e) {
    std::cerr << "input: " << e.what() << '\n';
    return kInput;
  }
  return kOk;
}

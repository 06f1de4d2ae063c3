#include <algorithm>
#include <array>
#include <atomic>
#include <filesystem>
#include <numeric>
#include <thread>

#include "fairdiv/bobw2.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/harness.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/verify.hpp"
#include "json.hpp"

namespace fairdiv::harness {

using nlohmann::json;

Pipeline parse_pipeline(const std::string& name) {
  if (name == "bobw2") return Pipeline::bobw2;
  if (name == "bobw3_exact") return Pipeline::bobw3_exact;
  if (name == "bobw3_fptas") return Pipeline::bobw3_fptas;
  if (name == "bobw3_poly") return Pipeline::bobw3_poly;
  if (name == "baseline_bu") return Pipeline::baseline_bu;
  if (name == "baseline_naive") return Pipeline::baseline_naive;
  throw InputError("unknown pipeline '" + name + "'");
}

std::string to_string(Pipeline p) {
  switch (p) {
    case Pipeline::bobw2: return "bobw2";
    case Pipeline::bobw3_exact: return "bobw3_exact";
    case Pipeline::bobw3_fptas: return "bobw3_fptas";
    case Pipeline::bobw3_poly: return "bobw3_poly";
    case Pipeline::baseline_bu: return "baseline_bu";
    case Pipeline::baseline_naive: return "baseline_naive";
  }
  return "unknown";
}

namespace {

bool two_agent(Pipeline p) {
  return p == Pipeline::bobw2 || p == Pipeline::baseline_bu || p == Pipeline::baseline_naive;
}

std::optional<bobw3::BasePartitions> bases_from(const std::vector<Partition>& partitions) {
  if (partitions.empty()) return std::nullopt;
  if (partitions.size() != 3) throw DomainError("three-agent pipelines take three base partitions");
  return bobw3::BasePartitions{partitions[0], partitions[1], partitions[2]};
}

RunOutput from_three(const bobw3::ThreeAgentResult& res) {
  return {res.lottery, res.certificates(), res.eefx_certificates(), res.trace()};
}

// Roles: predicate[role][agent]; true if some assignment of the three roles
// to distinct agents satisfies all of them.
bool roles_hold(const std::array<std::array<bool, 3>, 3>& ok) {
  std::array<std::size_t, 3> perm{0, 1, 2};
  do {
    if (ok[0][perm[0]] && ok[1][perm[1]] && ok[2][perm[2]]) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

RunOutput run_pipeline(Pipeline pipeline, const Instance& instance, const Value& eps,
                       const std::vector<Partition>& partitions) {
  validate_instance(instance);
  const auto& v = instance.valuations;
  if (two_agent(pipeline)) {
    if (instance.agents() != 2) throw DomainError(to_string(pipeline) + " needs exactly two agents");
    if (!partitions.empty() && partitions.size() != 2) throw DomainError("two-agent pipelines take two partitions");
  }
  switch (pipeline) {
    case Pipeline::bobw2: {
      bobw2::Outcome out;
      if (partitions.empty()) {
        mms::SolverProvider provider({mms::SolverMode::fptas, eps});
        const Bundle m = instance.ground();
        out = bobw2::run_two_agents(v[0], v[1], provider.partition(v[0], m, 2), provider.partition(v[1], m, 2));
      } else {
        out = bobw2::run_two_agents(v[0], v[1], partitions[0], partitions[1]);
      }
      std::vector<std::string> trace{"rounds " + std::to_string(out.iterations) +
                                     (out.early_return ? ", early return" : "")};
      return {out.lottery(), {}, {}, trace};
    }
    case Pipeline::baseline_bu:
      return {bobw2::baseline_bu_alg3_original(v[0], v[1]), {}, {}, {}};
    case Pipeline::baseline_naive: {
      if (partitions.empty()) {
        mms::SolverProvider provider({mms::SolverMode::fptas, eps});
        const Bundle m = instance.ground();
        return {bobw2::baseline_naive_cut_and_choose(v[0], v[1], provider.partition(v[0], m, 2),
                                                     provider.partition(v[1], m, 2)),
                {},
                {},
                {}};
      }
      return {bobw2::baseline_naive_cut_and_choose(v[0], v[1], partitions[0], partitions[1]), {}, {}, {}};
    }
    case Pipeline::bobw3_exact: {
      if (auto bases = bases_from(partitions)) {
        mms::SolverProvider provider({});
        return from_three(bobw3::bobw3_with(instance, *bases, provider));
      }
      return from_three(bobw3::bobw3_exact(instance));
    }
    case Pipeline::bobw3_fptas:
      return from_three(bobw3::bobw3_fptas(instance, eps, bases_from(partitions)));
    case Pipeline::bobw3_poly:
      return from_three(bobw3::bobw3_poly(instance, eps, bases_from(partitions)));
  }
  throw DomainError("unknown pipeline");
}

std::vector<Violation> check_run(Pipeline pipeline, const Instance& instance, const RunOutput& run,
                                 const SuiteOptions& options, Value* worst_ratio) {
  std::vector<Violation> out;
  auto add = [&](const std::string& property, const std::string& detail) {
    out.push_back({0, property, detail});
  };
  const std::size_t n = instance.agents();
  const bool three = n == 3;
  try {
    run.lottery.validate(three ? 6 : 2);
  } catch (const DomainError& e) {
    add("support", e.what());
    return out;
  }
  const Value eps = pipeline == Pipeline::bobw3_exact ? Value(0) : options.eps;
  oracles::CheckOptions copts;
  copts.eefx = three;
  copts.rmms = pipeline == Pipeline::bobw3_exact;
  const auto chk = oracles::check_lottery(run.lottery, instance, eps, copts, options.caps);

  if (worst_ratio) {
    for (const auto& ac : chk.allocations) {
      for (const auto& r : ac.agents) {
        if (r.mms.sign() > 0) *worst_ratio = std::min(*worst_ratio, r.value / r.mms);
      }
    }
  }
  auto who = [](std::size_t i, const std::string& label) {
    return "agent " + std::to_string(i + 1) + " in " + label;
  };

  if (!three) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!chk.ex_ante_prop[i]) {
        add("ex_ante", "agent " + std::to_string(i + 1) + " expects " + chk.expected[i].str() +
                           " < half of her total " + chk.prop[i].str());
      }
    }
    for (const auto& ac : chk.allocations) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto& r = ac.agents[i];
        if (!r.efx_satisfied) add("efx", who(i, ac.label) + " is not EFX-satisfied");
        if (pipeline == Pipeline::bobw2 && !r.meets_mms_1me) {
          add("mms_floor", who(i, ac.label) + " gets " + r.value.str() + " < (1-eps)*MMS, MMS " + r.mms.str());
        }
      }
    }
    return out;
  }

  const Value one_minus = Value(1) - eps;
  for (std::size_t i = 0; i < 3; ++i) {
    const Value floor = pipeline == Pipeline::bobw3_fptas ? one_minus * chk.prop[i] : chk.prop[i];
    if (chk.expected[i] < floor) {
      add("ex_ante", "agent " + std::to_string(i + 1) + " expects " + chk.expected[i].str() +
                         ", proportional share " + chk.prop[i].str());
    }
  }
  for (std::size_t k = 0; k < chk.allocations.size(); ++k) {
    const auto& ac = chk.allocations[k];
    if (!ac.immx) add("immx", ac.label + " is not " + (eps.sign() ? "(1-eps)-" : "") + "IMMX");
    std::array<std::array<bool, 3>, 3> roles{};
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& r = ac.agents[i];
      const bool eefx = r.eefx_satisfied.value_or(false);
      if (!r.meets_mms_910me) {
        add("mms_910", who(i, ac.label) + " gets " + r.value.str() + ", MMS " + r.mms.str());
      }
      if (pipeline != Pipeline::bobw3_poly && !eefx) add("eefx", who(i, ac.label) + " is not EEFX-satisfied");
      if (r.meets_rmms && !*r.meets_rmms) {
        add("rmms", who(i, ac.label) + " gets " + r.value.str() + " < RMMS " + r.rmms->str());
      }
      const bool prop = r.value >= r.prop;
      roles[0][i] = r.efx_satisfied && prop;
      switch (pipeline) {
        case Pipeline::bobw3_exact:
          roles[1][i] = r.efx_satisfied && r.meets_mms_910me;
          roles[2][i] = eefx && r.value >= r.mms;
          break;
        case Pipeline::bobw3_fptas:
          roles[1][i] = r.efx_satisfied && r.meets_mms_910me;
          roles[2][i] = eefx && r.meets_mms_1me;
          break;
        default:
          roles[1][i] = (r.efx_satisfied && r.meets_mms_910me) || r.meets_mms_1me;
          roles[2][i] = r.meets_mms_1me;
          break;
      }
    }
    if (pipeline == Pipeline::bobw3_exact) {
      const std::size_t divider = static_cast<std::size_t>(std::stoul(label_group(ac.label))) - 1;
      const auto& r = ac.agents[divider];
      if (r.value < r.mms) add("divider_mms", who(divider, ac.label) + " gets " + r.value.str() + " < MMS " + r.mms.str());
    }
    if (!roles_hold(roles)) add("roles", ac.label + ": no assignment of the three guarantee roles");
  }

  if (pipeline == Pipeline::bobw3_exact || pipeline == Pipeline::bobw3_poly) {
    verify::VerifyOptions vopts;
    if (pipeline == Pipeline::bobw3_exact) {
      vopts.approx = mms::MmsSolverConfig{};
    } else {
      vopts.require_eefx = false;
    }
    const auto report = verify::verify_lottery_report(run.lottery, instance, run.certificates, eps, vopts);
    for (const auto& p : report.problems()) add("verify", p);
  }
  return out;
}

namespace {

json violations_json(const std::vector<Violation>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back({{"property", v.property}, {"detail", v.detail}});
  return arr;
}

std::string dump_reproducer(const std::string& dir, Pipeline pipeline, std::size_t index,
                            const Instance& instance, const std::vector<Partition>& partitions,
                            const SuiteOptions& options, const std::optional<GeneratorConfig>& origin,
                            const std::vector<Violation>& violations, const std::vector<std::string>& trace) {
  std::filesystem::create_directories(dir);
  json parts = json::array();
  for (const auto& p : partitions) {
    json bundles = json::array();
    for (const auto& b : p) {
      json names = json::array();
      for (ItemIndex g : b) names.push_back(instance.items.name(g));
      bundles.push_back(std::move(names));
    }
    parts.push_back(std::move(bundles));
  }
  json j = {{"pipeline", to_string(pipeline)},
            {"eps", options.eps.str()},
            {"index", index},
            {"instance", json::parse(io::instance_to_json(instance))},
            {"partitions", std::move(parts)},
            {"violations", violations_json(violations)},
            {"trace", trace}};
  if (origin) {
    j["generator"] = {{"seed", origin->seed},
                      {"agents", origin->agents},
                      {"min_items", origin->min_items},
                      {"max_items", origin->max_items},
                      {"max_value", origin->max_value},
                      {"distribution", to_string(origin->distribution)},
                      {"perturbation", origin->perturbation}};
  }
  const std::string path =
      (std::filesystem::path(dir) / (to_string(pipeline) + "-" + std::to_string(index) + ".json")).string();
  io::write_file(path, j.dump(2));
  return path;
}

}  // namespace

SuiteSummary run_cases(Pipeline pipeline, const std::vector<Instance>& instances,
                       const SuiteOptions& options, const std::vector<std::vector<Partition>>& partitions,
                       const std::optional<GeneratorConfig>& origin) {
  struct Outcome {
    RunOutput run;
    std::vector<Violation> found;
    std::optional<Value> worst;
    bool checked = false;
  };
  const std::size_t count = instances.size();
  auto parts_of = [&](std::size_t idx) {
    return idx < partitions.size() ? partitions[idx] : std::vector<Partition>{};
  };
  std::vector<Outcome> outcomes(count);
  auto work = [&](std::size_t idx) {
    const Instance& inst = instances[idx];
    Outcome& o = outcomes[idx];
    try {
      o.run = run_pipeline(pipeline, inst, options.eps, parts_of(idx));
      Value worst = Value(1000000);
      o.found = check_run(pipeline, inst, o.run, options, &worst);
      if (worst != Value(1000000)) o.worst = worst;
      o.checked = true;
    } catch (const CapacityError& e) {
      o.found.push_back({idx, "capacity", e.what()});
    } catch (const DomainError& e) {
      o.found.push_back({idx, "error", e.what()});
    } catch (const std::logic_error& e) {
      o.found.push_back({idx, "error", e.what()});
    }
  };

  std::size_t threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t idx = 0; idx < count; ++idx) work(idx);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t idx = next++; idx < count; idx = next++) work(idx);
      });
    }
    for (auto& th : pool) th.join();
  }

  SuiteSummary summary;
  summary.pipeline = pipeline;
  for (std::size_t idx = 0; idx < count; ++idx) {
    Outcome& o = outcomes[idx];
    if (o.worst) summary.worst_mms_ratio = summary.worst_mms_ratio ? std::min(*summary.worst_mms_ratio, *o.worst) : *o.worst;
    if (o.checked && options.on_result) options.on_result(instances[idx], o.run);
    for (auto& v : o.found) {
      v.index = idx;
      ++summary.counts[v.property];
    }
    if (!o.found.empty() && !options.reproducer_dir.empty()) {
      summary.reproducers.push_back(dump_reproducer(options.reproducer_dir, pipeline, idx, instances[idx], parts_of(idx),
                                                    options, origin, o.found, o.run.trace));
    }
    summary.violations.insert(summary.violations.end(), o.found.begin(), o.found.end());
    ++summary.instances;
  }
  return summary;
}

SuiteSummary run_suite(Pipeline pipeline, const GeneratorConfig& config, std::size_t count,
                       const SuiteOptions& options) {
  GeneratorConfig cfg = config;
  cfg.agents = two_agent(pipeline) ? 2 : 3;
  return run_cases(pipeline, generate(cfg, count), options, {}, cfg);
}

std::vector<Violation> replay_reproducer(const std::string& path) {
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed reproducer: ") + e.what());
  }
  const Pipeline pipeline = parse_pipeline(j.at("pipeline").get<std::string>());
  const Instance inst = io::parse_instance(j.at("instance").dump());
  const std::vector<Partition> parts = io::parse_partitions(j.at("partitions").dump(), inst);
  SuiteOptions options;
  options.eps = Value::parse(j.at("eps").get<std::string>());
  const std::size_t index = j.at("index").get<std::size_t>();
  auto found = check_run(pipeline, inst, run_pipeline(pipeline, inst, options.eps, parts), options);
  for (auto& v : found) v.index = index;
  return found;
}

}  // namespace fairdiv::harness

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fairdiv/bobw3.hpp"
#include "fairdiv/oracles.hpp"
#include "fairdiv/types.hpp"

namespace fairdiv::harness {

enum class Distribution {
  uniform,         // independent integers in [0, max_value]
  identical,       // one uniform row shared by all agents
  near_identical,  // shared row plus per-agent noise in [-perturbation, perturbation]
  heavy_item,      // uniform, then one item raised to at least the proportional share
};

Distribution parse_distribution(const std::string& name);
std::string to_string(Distribution d);

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::size_t agents = 3;
  std::size_t min_items = 3;
  std::size_t max_items = 9;
  std::int64_t max_value = 20;
  Distribution distribution = Distribution::uniform;
  std::int64_t perturbation = 2;
};

/// Deterministic instance stream: the same config yields the same instances
/// on every platform (no library distributions are involved).
class InstanceGenerator {
 public:
  explicit InstanceGenerator(GeneratorConfig config);
  Instance next();
  /// Uniform integer in [lo, hi].
  std::int64_t draw(std::int64_t lo, std::int64_t hi);

 private:
  GeneratorConfig config_;
  std::mt19937_64 rng_;
};

std::vector<Instance> generate(const GeneratorConfig& config, std::size_t count);

/// A hand-checked instance with the facts that must hold for it.
struct Fixture {
  std::string name;
  std::string description;
  Instance instance;
  Value eps = 0;
  /// Per-agent partitions the scenario prescribes, if any.
  std::vector<Partition> partitions;
};

/// All fixtures. Each fixture's facts are re-checked on every call; a
/// mismatch throws std::logic_error.
std::vector<Fixture> fixtures();
const Fixture& fixture(const std::string& name);

enum class Pipeline { bobw2, bobw3_exact, bobw3_fptas, bobw3_poly, baseline_bu, baseline_naive };

Pipeline parse_pipeline(const std::string& name);
std::string to_string(Pipeline p);

struct Violation {
  std::size_t index = 0;  // position in the suite
  std::string property;
  std::string detail;
};

/// Output of one pipeline run.
struct RunOutput {
  Lottery lottery;
  CertificateTable certificates;
  /// Certificates with the bundle each one certifies (three-agent runs).
  std::vector<verify::EEFXCertificate> certified;
  std::vector<std::string> trace;
};

/// Runs the pipeline. `partitions` overrides the seeds / base partitions
/// where the pipeline takes them.
RunOutput run_pipeline(Pipeline pipeline, const Instance& instance, const Value& eps,
                       const std::vector<Partition>& partitions = {});

struct SuiteOptions {
  Value eps{1, 10};
  /// Reproducers go here when non-empty.
  std::string reproducer_dir;
  oracles::OracleCaps caps;
  /// Called after every run, in instance order, e.g. to collect certificates.
  std::function<void(const Instance&, const RunOutput&)> on_result;
  /// Worker threads for independent instances; 0 means one per hardware
  /// thread. Results do not depend on this.
  std::size_t threads = 0;
};

/// Oracle checks of one run. Property names: support, ex_ante, efx,
/// mms_floor, divider_mms, mms_910, eefx, immx, rmms, roles, verify.
std::vector<Violation> check_run(Pipeline pipeline, const Instance& instance, const RunOutput& run,
                                 const SuiteOptions& options, Value* worst_ratio = nullptr);

struct SuiteSummary {
  Pipeline pipeline = Pipeline::bobw3_exact;
  std::size_t instances = 0;
  std::vector<Violation> violations;
  std::map<std::string, std::size_t> counts;
  /// Smallest realised value / MMS over all agents and allocations with
  /// positive MMS.
  std::optional<Value> worst_mms_ratio;
  std::vector<std::string> reproducers;
};

/// Generates `count` instances and checks every run.
SuiteSummary run_suite(Pipeline pipeline, const GeneratorConfig& config, std::size_t count,
                       const SuiteOptions& options = {});

/// Same, over explicit instances (optionally with prescribed partitions).
SuiteSummary run_cases(Pipeline pipeline, const std::vector<Instance>& instances,
                       const SuiteOptions& options,
                       const std::vector<std::vector<Partition>>& partitions = {},
                       const std::optional<GeneratorConfig>& origin = std::nullopt);

/// Re-runs a reproducer file and returns its violations.
std::vector<Violation> replay_reproducer(const std::string& path);

}  // namespace fairdiv::harness

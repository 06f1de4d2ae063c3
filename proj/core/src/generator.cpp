#include "fairdiv/harness.hpp"

#include <algorithm>
#include <limits>

#include "fairdiv/errors.hpp"

namespace fairdiv::harness {

Distribution parse_distribution(const std::string& name) {
  if (name == "uniform") return Distribution::uniform;
  if (name == "identical") return Distribution::identical;
  if (name == "near-identical") return Distribution::near_identical;
  if (name == "heavy-item") return Distribution::heavy_item;
  throw InputError("unknown distribution '" + name + "'");
}

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::uniform: return "uniform";
    case Distribution::identical: return "identical";
    case Distribution::near_identical: return "near-identical";
    case Distribution::heavy_item: return "heavy-item";
  }
  return "uniform";
}

InstanceGenerator::InstanceGenerator(GeneratorConfig config)
    : config_(config), rng_(config.seed) {
  if (config_.agents == 0) throw DomainError("generator: need at least one agent");
  if (config_.min_items > config_.max_items) throw DomainError("generator: empty item range");
  if (config_.max_value < 0 || config_.perturbation < 0) {
    throw DomainError("generator: negative value bound");
  }
}

std::int64_t InstanceGenerator::draw(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = rng_();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % range);
}

Instance InstanceGenerator::next() {
  const std::size_t n = config_.agents;
  const auto m = static_cast<std::size_t>(draw(static_cast<std::int64_t>(config_.min_items),
                                               static_cast<std::int64_t>(config_.max_items)));
  const std::int64_t top = config_.max_value;
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(m));

  switch (config_.distribution) {
    case Distribution::uniform:
    case Distribution::heavy_item:
      for (auto& row : rows) {
        for (auto& x : row) x = draw(0, top);
      }
      break;
    case Distribution::identical:
    case Distribution::near_identical: {
      std::vector<std::int64_t> base(m);
      for (auto& x : base) x = draw(0, top);
      const std::int64_t p = config_.distribution == Distribution::near_identical ? config_.perturbation : 0;
      for (auto& row : rows) {
        for (std::size_t g = 0; g < m; ++g) row[g] = std::max<std::int64_t>(0, base[g] + (p ? draw(-p, p) : 0));
      }
      break;
    }
  }

  if (config_.distribution == Distribution::heavy_item && m > 0 && n > 1) {
    const auto agent = static_cast<std::size_t>(draw(0, static_cast<std::int64_t>(n) - 1));
    const auto g = static_cast<std::size_t>(draw(0, static_cast<std::int64_t>(m) - 1));
    std::int64_t others = 0;
    for (std::size_t h = 0; h < m; ++h) others += h == g ? 0 : rows[agent][h];
    const auto k = static_cast<std::int64_t>(n - 1);
    rows[agent][g] = std::max(rows[agent][g], (others + k - 1) / k);
  }

  std::vector<Valuation> valuations;
  for (const auto& row : rows) {
    std::vector<Value> vals(row.begin(), row.end());
    valuations.emplace_back(std::move(vals));
  }
  return make_instance(std::move(valuations));
}

std::vector<Instance> generate(const GeneratorConfig& config, std::size_t count) {
  InstanceGenerator gen(config);
  std::vector<Instance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(gen.next());
  return out;
}

}  // namespace fairdiv::harness

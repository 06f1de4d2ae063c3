#pragma once

#include <initializer_list>
#include <vector>

#include "fairdiv/harness.hpp"
#include "fairdiv/types.hpp"

namespace fairdiv::testing {

/// Bundle from 1-based item numbers, as in g1, g2, ...
inline Bundle g(std::initializer_list<ItemIndex> one_based) {
  std::vector<ItemIndex> out;
  for (ItemIndex x : one_based) out.push_back(x - 1);
  return Bundle(std::move(out));
}

inline Instance table(std::vector<std::vector<Value>> rows) {
  std::vector<Valuation> vals;
  for (auto& r : rows) vals.emplace_back(std::move(r));
  return make_instance(std::move(vals));
}

inline std::vector<Instance> random_instances(std::uint64_t seed, std::size_t agents, std::size_t count,
                                              std::size_t max_items = 8, std::int64_t max_value = 20,
                                              harness::Distribution d = harness::Distribution::uniform) {
  harness::GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.agents = agents;
  cfg.min_items = 1;
  cfg.max_items = max_items;
  cfg.max_value = max_value;
  cfg.distribution = d;
  return harness::generate(cfg, count);
}

}  // namespace fairdiv::testing

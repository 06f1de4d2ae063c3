#include "fairdiv/bobw3.hpp"

#include <algorithm>
#include <sstream>

#include "fairdiv/bobw2.hpp"
#include "fairdiv/efx_tools.hpp"
#include "fairdiv/errors.hpp"

namespace fairdiv::bobw3 {

namespace {

Allocation assemble(const std::array<Bundle, 3>& by_agent, const Bundle& ground) {
  return Allocation::of({by_agent[0], by_agent[1], by_agent[2]}, ground);
}

std::pair<std::size_t, std::size_t> others(std::size_t i) {
  std::size_t a = i == 0 ? 1 : 0;
  std::size_t b = 3 - i - a;
  return {a, b};
}

std::vector<std::size_t> top_bundles(const Valuation& v, const Partition& p) {
  Value best = v(p[0]);
  for (std::size_t j = 1; j < p.size(); ++j) best = std::max(best, v(p[j]));
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (v(p[j]) == best) out.push_back(j);
  }
  return out;
}

// Index of the agent's favourite among `avail`, first one on ties.
std::size_t favourite(const Valuation& v, const Partition& p, const std::vector<std::size_t>& avail) {
  std::size_t best = avail.front();
  for (std::size_t j : avail) {
    if (v(p[j]) > v(p[best])) best = j;
  }
  return best;
}

Value min_of_pair(const Valuation& v, const Bundle& x, const Bundle& y) {
  return std::min(v(x), v(y));
}

}  // namespace

std::string to_string(PairCase c) {
  switch (c) {
    case PairCase::case1: return "case1";
    case PairCase::case2a: return "case2a";
    case PairCase::case2b: return "case2b";
  }
  return "unknown";
}

PairResult construct_pair(std::size_t divider, const Instance& instance, const Partition& base,
                          const mms::MmsProvider& two_way) {
  if (instance.agents() != 3) throw DomainError("construct_pair needs exactly three agents");
  if (divider >= 3) throw DomainError("construct_pair: divider out of range");
  const Bundle ground = instance.ground();
  if (base.size() != 3 || base.ground() != ground) {
    throw DomainError("construct_pair: base must be a three-bundle partition of all items");
  }
  const std::size_t i = divider;
  const auto [a, b] = others(i);
  const auto& v = instance.valuations;

  PairResult out;
  out.divider = i;
  out.base = efx::realloc(base, v[i]);
  const Partition& p = out.base;
  out.certificates[i] = p;

  const auto top_a = top_bundles(v[a], p);
  const auto top_b = top_bundles(v[b], p);

  if (top_a != top_b || top_a.size() > 1) {
    out.kind = PairCase::case1;
    std::array<Bundle, 3> alloc;
    bool done = false;
    for (std::size_t pa : top_a) {
      for (std::size_t pb : top_b) {
        if (pa == pb || done) continue;
        alloc[a] = p[pa];
        alloc[b] = p[pb];
        alloc[i] = p[3 - pa - pb];
        done = true;
      }
    }
    out.x = out.y = assemble(alloc, ground);
    out.certificates[a] = out.certificates[b] = out.x.as_partition();
    return out;
  }

  // Both non-dividers strictly prefer the same bundle.
  const std::size_t t = top_a.front();
  const Bundle& fav = p[t];
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < 3; ++j) {
    if (j != t) rest.push_back(j);
  }
  if (v[i](p[rest[1]]) > v[i](p[rest[0]])) std::swap(rest[0], rest[1]);
  const Bundle& bb = p[rest[0]];
  const Bundle& cc = p[rest[1]];

  std::array<Repartition, 3> rep;
  for (std::size_t l : {a, b}) {
    Partition with_b = efx::mms_efx_improved_repartition(fav, bb, v[l], two_way);
    Partition with_c = efx::mms_efx_improved_repartition(fav, cc, v[l], two_way);
    if (with_b.min_value(v[l]) >= with_c.min_value(v[l])) {
      rep[l] = {l, bb, std::move(with_b), cc};
    } else {
      rep[l] = {l, cc, std::move(with_c), bb};
    }
    out.repartitions.push_back(rep[l]);
  }

  // r keeps the favourite when l prefers the leftover to both halves of r's
  // repartition.
  auto qualifies = [&](std::size_t r) {
    std::size_t l = r == a ? b : a;
    const auto& rp = rep[r];
    return std::max(v[l](rp.chosen[0]), v[l](rp.chosen[1])) < v[l](rp.leftover);
  };
  auto leftover_partition = [&](std::size_t r) {
    return Partition::of({rep[r].chosen[0], rep[r].chosen[1], rep[r].leftover}, ground);
  };

  std::optional<std::size_t> keeper;
  if (qualifies(a)) {
    keeper = a;
  } else if (qualifies(b)) {
    keeper = b;
  }
  if (keeper) {
    const std::size_t r = *keeper;
    const std::size_t l = r == a ? b : a;
    out.kind = PairCase::case2a;
    std::array<Bundle, 3> x;
    x[r] = fav;
    x[l] = rep[r].leftover;
    x[i] = rep[r].partner;
    out.x = assemble(x, ground);
    out.certificates[l] = leftover_partition(r);
    if (qualifies(l)) {
      out.both_qualify = true;
      std::array<Bundle, 3> y;
      y[l] = fav;
      y[r] = rep[l].leftover;
      y[i] = rep[l].partner;
      out.y = assemble(y, ground);
      out.certificates[r] = leftover_partition(l);
      out.certified[r] = Slot::y;
    } else {
      out.y = out.x;
      out.certificates[r] = out.x.as_partition();
    }
    return out;
  }

  // Cut and choose: subdivider j splits by its repartition, k picks first.
  out.kind = PairCase::case2b;
  auto cut = [&](std::size_t j, std::size_t k) {
    const auto& rp = rep[j];
    auto [picked, left] = bobw2::choose({rp.chosen[0], rp.chosen[1]}, v[k], v[j]);
    std::array<Bundle, 3> alloc;
    alloc[k] = picked;
    alloc[j] = left;
    alloc[i] = rp.leftover;
    return assemble(alloc, ground);
  };
  out.x = cut(a, b);
  out.certificates[b] = out.x.as_partition();
  out.y = cut(b, a);
  out.certificates[a] = out.y.as_partition();
  out.certified[a] = Slot::y;
  return out;
}

CertificateTable ThreeAgentResult::certificates() const {
  CertificateTable table;
  for (const auto& pr : pairs) {
    auto& group = table[std::to_string(pr.divider + 1)];
    for (std::size_t agent = 0; agent < 3; ++agent) {
      if (pr.certificates[agent]) group.emplace(agent, *pr.certificates[agent]);
    }
  }
  return table;
}

std::vector<verify::EEFXCertificate> ThreeAgentResult::eefx_certificates() const {
  std::vector<verify::EEFXCertificate> out;
  for (const auto& pr : pairs) {
    for (std::size_t agent = 0; agent < 3; ++agent) {
      if (!pr.certificates[agent]) continue;
      const Allocation& a = pr.certified[agent] == Slot::x ? pr.x : pr.y;
      out.push_back({agent, a[agent], *pr.certificates[agent]});
    }
  }
  return out;
}

std::vector<std::string> ThreeAgentResult::trace() const {
  std::vector<std::string> lines;
  for (const auto& pr : pairs) {
    std::ostringstream os;
    os << "pair " << pr.divider + 1 << ": " << to_string(pr.kind);
    if (pr.both_qualify) os << " (both directions)";
    if (pr.stage3_fixed) os << ", two-agent fix" << (pr.stage3_single ? " (single allocation)" : "");
    if (pr.adopted_in_stage) os << ", replaced by adoption in stage " << *pr.adopted_in_stage;
    lines.push_back(os.str());
  }
  for (std::size_t k = 0; k < 3; ++k) {
    if (base_owner[k] != k) {
      lines.push_back("agent " + std::to_string(k + 1) + " uses the partition of agent " +
                      std::to_string(base_owner[k] + 1));
    }
  }
  for (const auto& a : adoptions) {
    lines.push_back("stage " + std::to_string(a.stage) + ": agent " + std::to_string(a.agent + 1) +
                    " adopts certificate of pair " + std::to_string(a.source + 1) + " (min " +
                    a.new_min.str() + ")");
  }
  return lines;
}

namespace {

Lottery lottery_of(const std::array<PairResult, 3>& pairs) {
  std::vector<std::pair<Allocation, std::string>> support;
  for (const auto& pr : pairs) {
    support.emplace_back(pr.x, "X^" + std::to_string(pr.divider + 1));
    support.emplace_back(pr.y, "Y^" + std::to_string(pr.divider + 1));
  }
  return Lottery::uniform(std::move(support));
}

BasePartitions provider_bases(const Instance& instance, const mms::MmsProvider& provider) {
  const Bundle ground = instance.ground();
  return {provider.partition(instance.valuations[0], ground, 3),
          provider.partition(instance.valuations[1], ground, 3),
          provider.partition(instance.valuations[2], ground, 3)};
}

// Replaces a cut-and-choose pair by the output of the two-agent procedure
// when one non-divider is worse off in its own split than in the other's.
void fix_cut_and_choose(ThreeAgentResult& res, std::size_t i, const Instance& instance) {
  PairResult& pr = res.pairs[i];
  const auto [a, b] = others(i);
  const auto& v = instance.valuations;
  // (r, allocation where r subdivides, allocation where the partner does)
  const std::array<std::tuple<std::size_t, const Allocation*, const Allocation*>, 2> checks{
      std::tuple{a, &pr.x, &pr.y}, std::tuple{b, &pr.y, &pr.x}};
  for (const auto& [r, own, other] : checks) {
    const std::size_t l = r == a ? b : a;
    if (!(min_of_pair(v[r], (*own)[r], (*own)[l]) < min_of_pair(v[r], (*other)[r], (*other)[l]))) {
      continue;
    }
    const Bundle t = (*other)[i];
    const Bundle rest = (*other)[r].unite((*other)[l]);
    const Partition seed = Partition::of({(*other)[r], (*other)[l]}, rest);
    bobw2::Outcome two = bobw2::run_two_agents(v[r], v[l], seed, seed);
    auto lift = [&](const Allocation& sub) {
      std::array<Bundle, 3> alloc;
      alloc[r] = sub[0];
      alloc[l] = sub[1];
      alloc[i] = t;
      return assemble(alloc, instance.ground());
    };
    if (two.allocations.size() == 1) {
      pr.x = pr.y = lift(two.allocations.front().first);
      pr.stage3_single = true;
    } else {
      for (const auto& [sub, owner] : two.allocations) {
        // owner 0 is r: l chose first from r's partition.
        if (owner == 0) {
          pr.x = lift(sub);
        } else {
          pr.y = lift(sub);
        }
      }
    }
    pr.certificates[l] = pr.x.as_partition();
    pr.certificates[r] = pr.y.as_partition();
    pr.certified[l] = Slot::x;
    pr.certified[r] = Slot::y;
    pr.stage3_fixed = true;
    res.stage3.push_back({i, r, pr.stage3_single});
    return;
  }
}

// k takes the best certificate of the other pairs when it beats the minimum
// of one of her current partitions; the other two agents pick from it in
// both orders.
void adoption_round(ThreeAgentResult& res, std::size_t stage, const Instance& instance) {
  const auto& v = instance.valuations;
  const Bundle ground = instance.ground();
  for (std::size_t k = 0; k < 3; ++k) {
    std::optional<std::size_t> source;
    Value best;
    for (std::size_t r = 0; r < 3; ++r) {
      if (r == k || !res.pairs[r].certificates[k]) continue;
      Value m = res.pairs[r].certificates[k]->min_value(v[k]);
      if (!source || m > best) {
        source = r;
        best = m;
      }
    }
    if (!source) continue;
    PairResult& own = res.pairs[k];
    // Measured on the adopter's own bundles: those are what the adoption
    // must not make worse.
    const Value min_x = v[k](own.x[k]);
    const Value min_y = v[k](own.y[k]);
    if (!(best > min_x || best > min_y)) continue;

    const Partition s = *res.pairs[*source].certificates[k];
    const auto [j, i] = others(k);
    auto pick = [&](std::size_t first, std::size_t second) {
      std::vector<std::size_t> avail{0, 1, 2};
      std::array<Bundle, 3> alloc;
      std::size_t f = favourite(v[first], s, avail);
      alloc[first] = s[f];
      avail.erase(std::find(avail.begin(), avail.end(), f));
      std::size_t g = favourite(v[second], s, avail);
      alloc[second] = s[g];
      avail.erase(std::find(avail.begin(), avail.end(), g));
      alloc[k] = s[avail.front()];
      return assemble(alloc, ground);
    };
    own.x = pick(j, i);
    own.y = pick(i, j);
    own.certificates = {};
    own.certificates[j] = own.x.as_partition();
    own.certificates[i] = own.y.as_partition();
    own.certified = {};
    own.certified[i] = Slot::y;
    own.adopted_in_stage = stage;
    res.adoptions.push_back({stage, k, *source, min_x, min_y, best});
  }
}

}  // namespace

ThreeAgentResult bobw3_with(const Instance& instance, const BasePartitions& bases,
                            const mms::MmsProvider& two_way) {
  validate_instance(instance);
  if (instance.agents() != 3) throw DomainError("three-agent pipeline needs exactly three agents");
  ThreeAgentResult res;
  res.bases = bases;
  for (std::size_t i = 0; i < 3; ++i) res.pairs[i] = construct_pair(i, instance, bases[i], two_way);
  res.lottery = lottery_of(res.pairs);
  return res;
}

ThreeAgentResult bobw3_exact(const Instance& instance, const mms::MmsSolverConfig& caps) {
  mms::MmsSolverConfig config = caps;
  config.mode = mms::SolverMode::exact;
  mms::SolverProvider provider(config);
  if (instance.agents() != 3) throw DomainError("three-agent pipeline needs exactly three agents");
  return bobw3_with(instance, provider_bases(instance, provider), provider);
}

ThreeAgentResult bobw3_fptas(const Instance& instance, const Value& eps,
                             const std::optional<BasePartitions>& bases) {
  mms::SolverProvider provider({mms::SolverMode::fptas, eps});
  if (instance.agents() != 3) throw DomainError("three-agent pipeline needs exactly three agents");
  return bobw3_with(instance, bases ? *bases : provider_bases(instance, provider), provider);
}

ThreeAgentResult bobw3_poly(const Instance& instance, const Value& eps,
                            const std::optional<BasePartitions>& bases) {
  mms::SolverProvider provider({mms::SolverMode::fptas, eps});
  if (instance.agents() != 3) throw DomainError("three-agent pipeline needs exactly three agents");
  const BasePartitions own = bases ? *bases : provider_bases(instance, provider);

  // Every agent works from the partition with the best minimum in her eyes.
  BasePartitions chosen;
  std::array<std::size_t, 3> owner{};
  for (std::size_t t = 0; t < 3; ++t) {
    const Valuation& vt = instance.valuations[t];
    owner[t] = 0;
    for (std::size_t o = 1; o < 3; ++o) {
      if (own[o].min_value(vt) > own[owner[t]].min_value(vt)) owner[t] = o;
    }
    chosen[t] = own[owner[t]];
  }

  ThreeAgentResult res = bobw3_with(instance, chosen, provider);
  res.base_owner = owner;
  for (std::size_t i = 0; i < 3; ++i) {
    if (res.pairs[i].kind == PairCase::case2b) fix_cut_and_choose(res, i, instance);
  }
  adoption_round(res, 4, instance);
  adoption_round(res, 5, instance);
  res.lottery = lottery_of(res.pairs);
  return res;
}

}  // namespace fairdiv::bobw3

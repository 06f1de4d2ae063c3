#include "fairdiv/verify.hpp"

#include <algorithm>

#include "fairdiv/errors.hpp"

namespace fairdiv::verify {

bool dominates(const Valuation& v, const Bundle& x, const Bundle& y) {
  if (y.empty()) return true;
  Value low = v[*y.begin()];
  for (ItemIndex g : y) low = std::min(low, v[g]);
  return v(x) >= v(y) - low;
}

bool verify_certificate(const Valuation& v, const EEFXCertificate& cert) {
  if (!cert.partition.contains(cert.bundle)) {
    throw DomainError("certificate partition does not contain the certified bundle");
  }
  for (const auto& other : cert.partition) {
    if (other != cert.bundle && !dominates(v, cert.bundle, other)) return false;
  }
  return true;
}

bool VerificationReport::ok() const {
  return std::all_of(agents.begin(), agents.end(),
                     [&](const AgentVerdict& a) { return a.ok(require_eefx); });
}

std::vector<std::string> VerificationReport::problems() const {
  std::vector<std::string> out;
  for (const auto& a : agents) {
    const std::string who = "agent " + std::to_string(a.agent + 1);
    if (!a.ex_ante_ok) {
      out.push_back(who + ": expected value " + a.expected.str() + " below proportional share " +
                    a.prop.str());
    }
    for (const auto& al : a.allocations) {
      if (!al.problem.empty()) out.push_back(who + " in " + al.label + ": " + al.problem);
    }
  }
  return out;
}

VerificationReport verify_lottery_report(const Lottery& lottery, const Instance& instance,
                                         const CertificateTable& certificates, const Value& eps,
                                         const VerifyOptions& options) {
  validate_instance(instance);
  const std::size_t n = instance.agents();
  lottery.validate(n == 2 ? 2 : 6);
  mms::MmsSolverConfig approx = options.approx.value_or(mms::MmsSolverConfig{mms::SolverMode::fptas, eps});
  const Bundle ground = instance.ground();
  const Value one_minus = Value(1) - eps;
  const Value nine_tenths = Value(9, 10) - eps;

  VerificationReport report;
  report.require_eefx = options.require_eefx;
  for (std::size_t i = 0; i < n; ++i) {
    const Valuation& v = instance.valuations[i];
    AgentVerdict av;
    av.agent = i;
    av.expected = lottery.expected_value(i, v);
    av.prop = prop_share(v, n);
    av.ex_ante_ok = av.expected >= av.prop;
    av.approx_mms = mms::mms_partition(v, ground, n, approx).min_value(v);
    for (const auto& entry : lottery) {
      AllocationVerdict al;
      al.label = entry.label;
      const Bundle& own = entry.allocation[i];
      al.value = v(own);
      al.efx = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && !dominates(v, own, entry.allocation[j])) al.efx = false;
      }
      if (al.efx) {
        al.eefx_ok = true;
      } else if (options.require_eefx) {
        auto group = certificates.find(label_group(entry.label));
        const Partition* cert = nullptr;
        if (group != certificates.end()) {
          auto it = group->second.find(i);
          if (it != group->second.end()) cert = &it->second;
        }
        if (!cert) {
          al.problem = "not EFX-satisfied and no certificate";
        } else if (cert->ground() != ground || !cert->contains(own)) {
          al.certificate_ok = false;
          al.problem = "certificate does not contain the agent's bundle";
        } else {
          al.certificate_ok = verify_certificate(v, {i, own, *cert});
          if (!*al.certificate_ok) al.problem = "certificate does not verify";
        }
        al.eefx_ok = al.certificate_ok.value_or(false);
      }
      al.share_ok = al.value >= one_minus * av.approx_mms ||
                    (al.efx && al.value >= nine_tenths * av.approx_mms);
      if (!al.share_ok) {
        if (!al.problem.empty()) al.problem += "; ";
        al.problem += "value " + al.value.str() + " below the MMS floor (estimate " +
                      av.approx_mms.str() + ")";
      }
      av.eefx_ok = av.eefx_ok && (al.eefx_ok || !options.require_eefx);
      av.share_ok = av.share_ok && al.share_ok;
      av.allocations.push_back(std::move(al));
    }
    report.agents.push_back(std::move(av));
  }
  return report;
}

}  // namespace fairdiv::verify

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/mms_solvers.hpp"
#include "fairdiv/types.hpp"

namespace fairdiv::verify {

/// Claim that `bundle` EFX-dominates every other bundle of `partition` for
/// the agent.
struct EEFXCertificate {
  std::size_t agent;
  Bundle bundle;
  Partition partition;
};

/// Checks the claim with one value computation per bundle. Throws
/// DomainError if the bundle is not part of the partition.
bool verify_certificate(const Valuation& v, const EEFXCertificate& cert);

/// X dominates Y iff v(X) >= v(Y) - min_{g in Y} v(g).
bool dominates(const Valuation& v, const Bundle& x, const Bundle& y);

struct VerifyOptions {
  /// Partition used for the per-agent MMS estimate. Defaults to the FPTAS
  /// with the eps passed to verify_lottery_report.
  std::optional<mms::MmsSolverConfig> approx;
  /// Require EFX or a valid certificate for every agent in every allocation.
  bool require_eefx = true;
};

struct AllocationVerdict {
  std::string label;
  Value value;
  bool efx = false;
  std::optional<bool> certificate_ok;  // set when a certificate was consulted
  bool eefx_ok = false;
  bool share_ok = false;  // >= (1-eps)*approx, or EFX and >= (9/10-eps)*approx
  std::string problem;
};

struct AgentVerdict {
  std::size_t agent = 0;
  Value expected;
  Value prop;
  bool ex_ante_ok = false;
  Value approx_mms;
  std::vector<AllocationVerdict> allocations;
  bool eefx_ok = true;
  bool share_ok = true;

  bool ok(bool require_eefx) const { return ex_ante_ok && share_ok && (!require_eefx || eefx_ok); }
};

struct VerificationReport {
  bool require_eefx = true;
  std::vector<AgentVerdict> agents;

  bool ok() const;
  /// Human readable reasons for every failed check.
  std::vector<std::string> problems() const;
};

/// Per-agent check of a lottery using only the agent's own valuation:
/// ex-ante proportionality, EFX-or-certified EEFX per allocation, and the
/// value floor against the agent's approximate MMS.
VerificationReport verify_lottery_report(const Lottery& lottery, const Instance& instance,
                                         const CertificateTable& certificates, const Value& eps,
                                         const VerifyOptions& options = {});

}  // namespace fairdiv::verify

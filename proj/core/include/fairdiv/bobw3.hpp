#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/mms_solvers.hpp"
#include "fairdiv/types.hpp"
#include "fairdiv/verify.hpp"

namespace fairdiv::bobw3 {

enum class PairCase {
  case1,   // non-dividers have distinct favourite bundles
  case2a,  // one non-divider keeps the common favourite, the other takes the leftover
  case2b,  // cut-and-choose over a repartition
};

std::string to_string(PairCase c);

/// Allocation of a pair whose bundle a certificate is about.
enum class Slot { x, y };

/// Repartition computed by a non-divider in case 2.
struct Repartition {
  std::size_t agent;
  Bundle partner;    // Z: bundle merged with the common favourite
  Partition chosen;  // EFX two-partition of favourite u Z
  Bundle leftover;   // L = M \ (favourite u Z)
};

/// The two allocations X^i, Y^i derived from divider i's partition, with the
/// EEFX certificates C^i_j.
struct PairResult {
  std::size_t divider = 0;
  Partition base;  // divider's partition after realloc
  Allocation x;
  Allocation y;
  std::array<std::optional<Partition>, 3> certificates;
  std::array<Slot, 3> certified{};  // which allocation certificates[j] covers
  PairCase kind = PairCase::case1;
  bool both_qualify = false;  // case 2.A held in both directions
  std::vector<Repartition> repartitions;

  bool stage3_fixed = false;
  bool stage3_single = false;  // two-agent fix ended with a single allocation
  std::optional<std::size_t> adopted_in_stage;
};

/// Builds X^i and Y^i for divider `divider` from `base`, a three-bundle
/// partition of all items. `two_way` supplies the two-bundle partitions used
/// by the repartition step.
PairResult construct_pair(std::size_t divider, const Instance& instance, const Partition& base,
                          const mms::MmsProvider& two_way);

struct Stage3Record {
  std::size_t divider;
  std::size_t agent;  // agent whose comparison triggered the fix
  bool single;
};

struct AdoptionRecord {
  std::size_t stage;
  std::size_t agent;
  std::size_t source;  // divider of the certificate that was adopted
  Value old_min_x;  // adopter's own value in X^k before adopting
  Value old_min_y;  // same in Y^k
  Value new_min;
};

struct ThreeAgentResult {
  Lottery lottery;  // X^1, Y^1, X^2, Y^2, X^3, Y^3, each with probability 1/6
  std::array<PairResult, 3> pairs;
  std::array<Partition, 3> bases;
  std::array<std::size_t, 3> base_owner{0, 1, 2};
  std::vector<Stage3Record> stage3;
  std::vector<AdoptionRecord> adoptions;

  /// Certificates keyed by divider group "1", "2", "3".
  CertificateTable certificates() const;
  /// The same certificates, each with the bundle it certifies.
  std::vector<verify::EEFXCertificate> eefx_certificates() const;
  /// One line per pair and stage event.
  std::vector<std::string> trace() const;
};

using BasePartitions = std::array<Partition, 3>;

/// Exact MMS partitions and exact repartitions.
ThreeAgentResult bobw3_exact(const Instance& instance, const mms::MmsSolverConfig& caps = {});

/// FPTAS partitions (or the given ones) and FPTAS repartitions.
ThreeAgentResult bobw3_fptas(const Instance& instance, const Value& eps,
                             const std::optional<BasePartitions>& bases = std::nullopt);

/// Polynomial-time variant: shared choice of base partitions, two-agent fix
/// of cut-and-choose pairs and two adoption rounds.
ThreeAgentResult bobw3_poly(const Instance& instance, const Value& eps,
                            const std::optional<BasePartitions>& bases = std::nullopt);

/// Runs construct_pair for every divider on the given bases.
ThreeAgentResult bobw3_with(const Instance& instance, const BasePartitions& bases,
                            const mms::MmsProvider& two_way);

}  // namespace fairdiv::bobw3

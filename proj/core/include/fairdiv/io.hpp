#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/oracles.hpp"
#include "fairdiv/types.hpp"
#include "fairdiv/verify.hpp"

/// JSON documents exchanged by the command line tool.
///
/// Instance: {"agents": n, "items": ["g1", ...], "valuations": [["3", "1/2", ...], ...]}
/// ("items" is optional; values may be JSON integers or strings "p", "p/q").
///
/// Report: {"lottery": [{"p": "1/6", "allocation": [["g1"], ...], "label": "X^1"}],
///          "certificates": {"1": {"2": [["g1"], ...]}}, "verdicts": {...}, "trace": [...]}
/// Agents in certificates are numbered from 1.
namespace fairdiv::io {

Instance parse_instance(std::string_view json);
std::string instance_to_json(const Instance& instance);

/// Partitions given as lists of bundles of item names, one per agent.
std::vector<Partition> parse_partitions(std::string_view json, const Instance& instance);

struct Report {
  Lottery lottery;
  CertificateTable certificates;
};

Report parse_report(std::string_view json, const Instance& instance);

std::string report_to_json(const Instance& instance, const Lottery& lottery,
                           const CertificateTable& certificates,
                           const std::optional<oracles::LotteryCheck>& verdicts,
                           const std::vector<std::string>& trace);

std::string verification_to_json(const verify::VerificationReport& report);

std::string check_to_json(const oracles::LotteryCheck& check);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace fairdiv::io

#include "fairdiv/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fairdiv/errors.hpp"

namespace fairdiv::io {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Value value_of(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Value(j.get<std::int64_t>());
  if (j.is_string()) return Value::parse(j.get<std::string>());
  throw InputError(where + ": values must be integers or strings \"p\" / \"p/q\"");
}

Bundle bundle_of(const json& j, const Instance& instance, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": bundle must be an array of item names");
  std::vector<ItemIndex> ids;
  for (const auto& name : j) {
    if (!name.is_string()) throw InputError(where + ": item names must be strings");
    try {
      ids.push_back(instance.items.index_of(name.get<std::string>()));
    } catch (const DomainError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  try {
    return Bundle(std::move(ids));
  } catch (const DomainError& e) {
    throw InputError(where + ": " + e.what());
  }
}

json bundle_json(const Bundle& b, const Instance& instance) {
  json arr = json::array();
  for (ItemIndex g : b) arr.push_back(instance.items.name(g));
  return arr;
}

json partition_json(const Partition& p, const Instance& instance) {
  json arr = json::array();
  for (const auto& b : p) arr.push_back(bundle_json(b, instance));
  return arr;
}

Partition partition_of(const json& j, const Instance& instance, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": partition must be an array of bundles");
  std::vector<Bundle> bundles;
  for (std::size_t k = 0; k < j.size(); ++k) {
    bundles.push_back(bundle_of(j[k], instance, where + " bundle " + std::to_string(k)));
  }
  try {
    return Partition::of(std::move(bundles), instance.ground());
  } catch (const DomainError& e) {
    throw InputError(where + ": " + e.what());
  }
}

json optional_value(const std::optional<Value>& v) { return v ? json(v->str()) : json(nullptr); }

json check_json(const oracles::LotteryCheck& check) {
  json agents = json::array();
  for (std::size_t i = 0; i < check.expected.size(); ++i) {
    agents.push_back({{"agent", i + 1},
                      {"expected", check.expected[i].str()},
                      {"prop", check.prop[i].str()},
                      {"mms", check.mms[i].str()},
                      {"rmms", optional_value(check.rmms[i])},
                      {"mxs", optional_value(check.mxs[i])},
                      {"ex_ante_prop", static_cast<bool>(check.ex_ante_prop[i])}});
  }
  json allocs = json::array();
  for (const auto& ac : check.allocations) {
    json per = json::array();
    for (const auto& r : ac.agents) {
      json e = {{"value", r.value.str()},
                {"efx", r.efx_satisfied},
                {"mms_1me", r.meets_mms_1me},
                {"mms_910me", r.meets_mms_910me}};
      e["eefx"] = r.eefx_satisfied ? json(*r.eefx_satisfied) : json(nullptr);
      e["rmms"] = r.meets_rmms ? json(*r.meets_rmms) : json(nullptr);
      per.push_back(std::move(e));
    }
    allocs.push_back({{"label", ac.label}, {"immx", ac.immx}, {"agents", std::move(per)}});
  }
  return {{"agents", std::move(agents)}, {"allocations", std::move(allocs)}};
}

}  // namespace

Instance parse_instance(std::string_view text) {
  json j = parse_json(text);
  if (!j.is_object()) throw InputError("instance must be a JSON object");
  if (!j.contains("valuations") || !j["valuations"].is_array()) {
    throw InputError("instance: missing \"valuations\" array");
  }
  const auto& rows = j["valuations"];
  if (j.contains("agents")) {
    if (!j["agents"].is_number_integer() || j["agents"].get<std::int64_t>() != static_cast<std::int64_t>(rows.size())) {
      throw InputError("instance: \"agents\" does not match the number of valuation rows");
    }
  }
  std::vector<Valuation> vals;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array()) throw InputError("instance: valuation row " + std::to_string(i) + " is not an array");
    std::vector<Value> row;
    for (std::size_t g = 0; g < rows[i].size(); ++g) {
      Value x = value_of(rows[i][g], "agent " + std::to_string(i) + " item " + std::to_string(g));
      if (x.sign() < 0) {
        throw InputError("agent " + std::to_string(i) + " item " + std::to_string(g) + " has a negative value");
      }
      row.push_back(std::move(x));
    }
    vals.emplace_back(std::move(row));
  }
  Instance inst = make_instance(std::move(vals));
  if (j.contains("items")) {
    const auto& names = j["items"];
    if (!names.is_array() || names.size() != inst.item_count()) {
      throw InputError("instance: \"items\" must list one name per value column");
    }
    std::vector<std::string> ns;
    for (const auto& n : names) {
      if (!n.is_string()) throw InputError("instance: item names must be strings");
      ns.push_back(n.get<std::string>());
    }
    inst.items = ItemSet(std::move(ns));
  }
  validate_instance(inst);
  return inst;
}

std::string instance_to_json(const Instance& instance) {
  json rows = json::array();
  for (const auto& v : instance.valuations) {
    json row = json::array();
    for (const auto& x : v.values()) row.push_back(x.str());
    rows.push_back(std::move(row));
  }
  json j = {{"agents", instance.agents()}, {"items", instance.items.names()}, {"valuations", std::move(rows)}};
  return j.dump();
}

std::vector<Partition> parse_partitions(std::string_view text, const Instance& instance) {
  json j = parse_json(text);
  if (j.is_object() && j.contains("partitions")) j = j["partitions"];
  if (!j.is_array()) throw InputError("partitions: expected an array with one partition per agent");
  std::vector<Partition> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(partition_of(j[i], instance, "partition " + std::to_string(i)));
  }
  return out;
}

Report parse_report(std::string_view text, const Instance& instance) {
  json j = parse_json(text);
  if (!j.is_object() || !j.contains("lottery") || !j["lottery"].is_array()) {
    throw InputError("report: missing \"lottery\" array");
  }
  Report r;
  std::vector<LotteryEntry> entries;
  for (std::size_t k = 0; k < j["lottery"].size(); ++k) {
    const auto& e = j["lottery"][k];
    const std::string where = "lottery entry " + std::to_string(k);
    if (!e.is_object() || !e.contains("p") || !e.contains("allocation")) {
      throw InputError(where + ": needs \"p\" and \"allocation\"");
    }
    std::vector<Bundle> bundles;
    for (std::size_t a = 0; a < e["allocation"].size(); ++a) {
      bundles.push_back(bundle_of(e["allocation"][a], instance, where + " agent " + std::to_string(a + 1)));
    }
    if (bundles.size() != instance.agents()) throw InputError(where + ": one bundle per agent expected");
    Allocation alloc;
    try {
      alloc = Allocation::of(std::move(bundles), instance.ground());
    } catch (const DomainError& err) {
      throw InputError(where + ": " + err.what());
    }
    entries.push_back({value_of(e["p"], where), std::move(alloc), e.value("label", std::to_string(k + 1))});
  }
  r.lottery = Lottery(std::move(entries));
  if (j.contains("certificates")) {
    for (const auto& [group, per_agent] : j["certificates"].items()) {
      for (const auto& [agent, part] : per_agent.items()) {
        std::size_t idx = 0;
        try {
          idx = std::stoul(agent);
        } catch (const std::exception&) {
          throw InputError("certificates: agent key '" + agent + "' is not a number");
        }
        if (idx == 0 || idx > instance.agents()) throw InputError("certificates: unknown agent " + agent);
        r.certificates[group].emplace(idx - 1, partition_of(part, instance, "certificate " + group + "/" + agent));
      }
    }
  }
  return r;
}

std::string report_to_json(const Instance& instance, const Lottery& lottery,
                           const CertificateTable& certificates,
                           const std::optional<oracles::LotteryCheck>& verdicts,
                           const std::vector<std::string>& trace) {
  json entries = json::array();
  for (const auto& e : lottery) {
    json alloc = json::array();
    for (const auto& b : e.allocation.bundles()) alloc.push_back(bundle_json(b, instance));
    entries.push_back({{"p", e.probability.str()}, {"allocation", std::move(alloc)}, {"label", e.label}});
  }
  json certs = json::object();
  for (const auto& [group, per_agent] : certificates) {
    json g = json::object();
    for (const auto& [agent, part] : per_agent) g[std::to_string(agent + 1)] = partition_json(part, instance);
    certs[group] = std::move(g);
  }
  json j = {{"lottery", std::move(entries)}, {"certificates", std::move(certs)}};
  j["verdicts"] = verdicts ? check_json(*verdicts) : json::object();
  j["trace"] = trace;
  return j.dump(2);
}

std::string verification_to_json(const verify::VerificationReport& report) {
  json agents = json::array();
  for (const auto& a : report.agents) {
    json allocs = json::array();
    for (const auto& al : a.allocations) {
      json e = {{"label", al.label}, {"value", al.value.str()}, {"efx", al.efx},
                {"eefx_ok", al.eefx_ok}, {"share_ok", al.share_ok}};
      if (al.certificate_ok) e["certificate_ok"] = *al.certificate_ok;
      if (!al.problem.empty()) e["problem"] = al.problem;
      allocs.push_back(std::move(e));
    }
    agents.push_back({{"agent", a.agent + 1},
                      {"expected", a.expected.str()},
                      {"prop", a.prop.str()},
                      {"ex_ante_ok", a.ex_ante_ok},
                      {"approx_mms", a.approx_mms.str()},
                      {"eefx_ok", a.eefx_ok},
                      {"share_ok", a.share_ok},
                      {"allocations", std::move(allocs)}});
  }
  json j = {{"ok", report.ok()}, {"require_eefx", report.require_eefx},
            {"agents", std::move(agents)}, {"problems", report.problems()}};
  return j.dump(2);
}

std::string check_to_json(const oracles::LotteryCheck& check) { return check_json(check).dump(2); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

}  // namespace fairdiv::io

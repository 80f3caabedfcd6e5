#include "jobmatch/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace jobmatch {

using nlohmann::json;

namespace {

template <typename Json>
const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw FormatError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(where + ": missing key '" + key + "'");
  return *it;
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw FormatError(where + ": expected a string");
  return v.get<std::string>();
}

std::int64_t as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw FormatError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw FormatError(where + ": expected a number");
  return v.get<double>();
}

const json& as_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw FormatError(where + ": expected an array");
  return v;
}

Salary parse_salary_key(const std::string& key, const std::string& where) {
  Salary z = 0;
  const char* end = key.data() + key.size();
  auto res = std::from_chars(key.data(), end, z);
  if (res.ec != std::errc() || res.ptr != end) throw FormatError(where + ": table key '" + key + "' is not an integer");
  return z;
}

RawValuation valuation_from_json(const json& v, const std::string& where) {
  if (v.is_string()) return {v.get<std::string>()};
  if (v.is_object() && v.contains("table")) {
    const json& table = v.at("table");
    if (!table.is_object()) throw FormatError(where + ".table: expected an object");
    std::map<Salary, double> out;
    for (const auto& [key, value] : table.items()) {
      out[parse_salary_key(key, where)] = as_number(value, where + ".table." + key);
    }
    return {out};
  }
  throw FormatError(where + ": expected an expression string or {\"table\": {...}}");
}

ordered_json table_to_json(const std::map<Salary, double>& table) {
  ordered_json t = ordered_json::object();
  for (const auto& [z, v] : table) t[std::to_string(z)] = v;
  return ordered_json{{"table", t}};
}

ordered_json valuation_to_json(const RawValuation& v) {
  return std::visit(
      [](const auto& body) -> ordered_json {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return body;
        } else if constexpr (std::is_same_v<T, std::map<Salary, double>>) {
          return table_to_json(body);
        } else {
          if (body.expression()) return body.expression()->to_string();
          std::map<Salary, double> table;
          const auto values = body.values();
          for (std::size_t k = 0; k < values.size(); ++k) table[body.domain().lo + static_cast<Salary>(k)] = values[k];
          return table_to_json(table);
        }
      },
      v.body);
}

ordered_json pair_ids(const MarketInstance& market, PairIndex e) {
  const auto& p = market.pair(e);
  return ordered_json::array({market.workers()[p.worker], market.firms()[p.firm].id});
}

PairIndex pair_from_ids(const json& v, const MarketInstance& market, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw FormatError(where + ": expected [worker, firm]");
  const auto worker = as_string(v[0], where);
  const auto firm = as_string(v[1], where);
  const auto w = market.worker_index(worker);
  const auto f = market.firm_index(firm);
  if (!w) throw FormatError(where + ": unknown worker '" + worker + "'");
  if (!f) throw FormatError(where + ": unknown firm '" + firm + "'");
  const auto e = market.find_pair(*w, *f);
  if (!e) throw FormatError(where + ": (" + worker + "," + firm + ") is not an admissible pair");
  return *e;
}

std::vector<double> payoff_map(const json& v, const std::vector<std::string>& ids, const std::string& where) {
  if (!v.is_object()) throw FormatError(where + ": expected an object");
  std::set<std::string> expected(ids.begin(), ids.end());
  for (const auto& [key, value] : v.items()) {
    if (!expected.count(key)) throw FormatError(where + ": unknown id '" + key + "'");
  }
  std::vector<double> out;
  for (const auto& id : ids) {
    auto it = v.find(id);
    if (it == v.end()) throw FormatError(where + ": missing id '" + id + "'");
    out.push_back(as_number(*it, where + "." + id));
  }
  return out;
}

}  // namespace

RawInstance raw_instance_from_json(const json& doc) {
  RawInstance raw;
  const json& workers = as_array(field(doc, "workers", "instance"), "workers");
  for (std::size_t k = 0; k < workers.size(); ++k) {
    raw.workers.push_back(as_string(workers[k], "workers[" + std::to_string(k) + "]"));
  }
  const json& firms = as_array(field(doc, "firms", "instance"), "firms");
  for (std::size_t k = 0; k < firms.size(); ++k) {
    const std::string where = "firms[" + std::to_string(k) + "]";
    raw.firms.push_back({as_string(field(firms[k], "id", where), where + ".id"),
                         as_integer(field(firms[k], "quota", where), where + ".quota")});
  }
  const json& pairs = as_array(field(doc, "pairs", "instance"), "pairs");
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const std::string where = "pairs[" + std::to_string(k) + "]";
    const json& p = pairs[k];
    RawPair rp;
    rp.worker = as_string(field(p, "worker", where), where + ".worker");
    rp.firm = as_string(field(p, "firm", where), where + ".firm");
    rp.min_salary = as_integer(field(p, "min_salary", where), where + ".min_salary");
    rp.max_salary = as_integer(field(p, "max_salary", where), where + ".max_salary");
    rp.worker_valuation = valuation_from_json(field(p, "worker_valuation", where), where + ".worker_valuation");
    rp.firm_valuation = valuation_from_json(field(p, "firm_valuation", where), where + ".firm_valuation");
    raw.pairs.push_back(std::move(rp));
  }
  return raw;
}

ordered_json raw_instance_to_json(const RawInstance& raw) {
  ordered_json doc;
  doc["workers"] = raw.workers;
  doc["firms"] = ordered_json::array();
  for (const auto& f : raw.firms) doc["firms"].push_back({{"id", f.id}, {"quota", f.quota}});
  doc["pairs"] = ordered_json::array();
  for (const auto& p : raw.pairs) {
    ordered_json item;
    item["worker"] = p.worker;
    item["firm"] = p.firm;
    item["min_salary"] = p.min_salary;
    item["max_salary"] = p.max_salary;
    item["worker_valuation"] = valuation_to_json(p.worker_valuation);
    item["firm_valuation"] = valuation_to_json(p.firm_valuation);
    doc["pairs"].push_back(std::move(item));
  }
  return doc;
}

ordered_json instance_to_json(const MarketInstance& market) {
  RawInstance raw;
  raw.workers = market.workers();
  for (const auto& f : market.firms()) raw.firms.push_back({f.id, f.quota});
  for (const auto& p : market.pairs()) {
    raw.pairs.push_back({market.workers()[p.worker], market.firms()[p.firm].id, p.min_salary(), p.max_salary(),
                         {p.worker_valuation}, {p.firm_valuation}});
  }
  return raw_instance_to_json(raw);
}

MarketInstance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw FormatError(std::string("instance is not valid JSON: ") + ex.what());
  }
  return validate_instance(raw_instance_from_json(doc));
}

MarketInstance load_instance(const std::filesystem::path& path) { return parse_instance(read_file(path)); }

ordered_json outcome_to_json(const MarketInstance& market, const Outcome& outcome, std::size_t iterations,
                             bool stable) {
  ordered_json doc;
  doc["matches"] = ordered_json::array();
  for (FirmIndex f = 0; f < market.firms().size(); ++f) {
    const auto hired = outcome.allocation.hired_by(f);
    if (hired.empty()) continue;
    ordered_json workers = ordered_json::array();
    for (WorkerIndex w : hired) {
      const PairIndex e = *market.find_pair(w, f);
      workers.push_back({{"worker", market.workers()[w]}, {"salary", outcome.salaries[e]}});
    }
    doc["matches"].push_back({{"firm", market.firms()[f].id}, {"workers", std::move(workers)}});
  }
  doc["worker_payoffs"] = ordered_json::object();
  for (WorkerIndex w = 0; w < market.workers().size(); ++w) {
    doc["worker_payoffs"][market.workers()[w]] = outcome.worker_payoffs[w];
  }
  doc["firm_payoffs"] = ordered_json::object();
  for (FirmIndex f = 0; f < market.firms().size(); ++f) {
    doc["firm_payoffs"][market.firms()[f].id] = outcome.firm_payoffs[f];
  }
  doc["unmatched_workers"] = ordered_json::array();
  for (WorkerIndex w = 0; w < market.workers().size(); ++w) {
    if (!outcome.allocation.firm_of(w)) doc["unmatched_workers"].push_back(market.workers()[w]);
  }
  doc["iterations"] = iterations;
  doc["stable"] = stable;
  doc["salaries"] = ordered_json::array();
  for (PairIndex e = 0; e < market.pairs().size(); ++e) {
    const auto& p = market.pair(e);
    doc["salaries"].push_back({{"worker", market.workers()[p.worker]},
                               {"firm", market.firms()[p.firm].id},
                               {"salary", outcome.salaries[e]}});
  }
  return doc;
}

OutcomeDocument outcome_from_json(const json& doc, const MarketInstance& market) {
  const std::size_t nw = market.workers().size();
  const std::size_t nf = market.firms().size();
  JobAllocation allocation(nw, nf);
  std::vector<Salary> salaries(market.pairs().size());
  for (PairIndex e = 0; e < salaries.size(); ++e) salaries[e] = market.pair(e).min_salary();

  auto lookup_pair = [&](const std::string& worker, const std::string& firm, const std::string& where) {
    const auto w = market.worker_index(worker);
    const auto f = market.firm_index(firm);
    if (!w) throw FormatError(where + ": unknown worker '" + worker + "'");
    if (!f) throw FormatError(where + ": unknown firm '" + firm + "'");
    const auto e = market.find_pair(*w, *f);
    if (!e) throw FormatError(where + ": (" + worker + "," + firm + ") is not an admissible pair");
    return *e;
  };
  auto set_salary = [&](PairIndex e, const json& v, const std::string& where) {
    const Salary s = as_integer(v, where);
    if (!market.pair(e).salary_range.contains(s)) {
      throw FormatError(where + ": salary " + std::to_string(s) + " outside [" +
                        std::to_string(market.pair(e).min_salary()) + ", " +
                        std::to_string(market.pair(e).max_salary()) + "]");
    }
    salaries[e] = s;
  };

  if (auto it = doc.find("salaries"); doc.is_object() && it != doc.end()) {
    const json& all = as_array(*it, "salaries");
    for (std::size_t k = 0; k < all.size(); ++k) {
      const std::string where = "salaries[" + std::to_string(k) + "]";
      const PairIndex e = lookup_pair(as_string(field(all[k], "worker", where), where + ".worker"),
                                      as_string(field(all[k], "firm", where), where + ".firm"), where);
      set_salary(e, field(all[k], "salary", where), where + ".salary");
    }
  }

  const json& matches = as_array(field(doc, "matches", "outcome"), "matches");
  for (std::size_t k = 0; k < matches.size(); ++k) {
    const std::string where = "matches[" + std::to_string(k) + "]";
    const std::string firm = as_string(field(matches[k], "firm", where), where + ".firm");
    if (!market.firm_index(firm)) throw FormatError(where + ": unknown firm '" + firm + "'");
    const json& hired = as_array(field(matches[k], "workers", where), where + ".workers");
    for (std::size_t h = 0; h < hired.size(); ++h) {
      const std::string wh = where + ".workers[" + std::to_string(h) + "]";
      const std::string worker = as_string(field(hired[h], "worker", wh), wh + ".worker");
      const PairIndex e = lookup_pair(worker, firm, wh);
      const auto& p = market.pair(e);
      if (allocation.firm_of(p.worker)) throw FormatError(wh + ": worker '" + worker + "' matched twice");
      const Salary before = salaries[e];
      const bool listed = doc.contains("salaries");
      set_salary(e, field(hired[h], "salary", wh), wh + ".salary");
      if (listed && before != salaries[e]) throw FormatError(wh + ": salary disagrees with the salaries list");
      allocation.assign(p.worker, p.firm);
    }
  }
  for (const auto& issue : check_allocation(allocation, market)) {
    throw FormatError("matches: " + issue.subject + ": " + issue.message);
  }

  if (auto it = doc.find("unmatched_workers"); it != doc.end()) {
    std::set<std::string> listed;
    const json& unmatched = as_array(*it, "unmatched_workers");
    for (std::size_t k = 0; k < unmatched.size(); ++k) {
      const std::string id = as_string(unmatched[k], "unmatched_workers[" + std::to_string(k) + "]");
      const auto w = market.worker_index(id);
      if (!w) throw FormatError("unmatched_workers: unknown worker '" + id + "'");
      if (allocation.firm_of(*w)) throw FormatError("unmatched_workers: '" + id + "' is matched");
      listed.insert(id);
    }
    if (listed.size() != nw - allocation.size()) {
      throw FormatError("unmatched_workers: list does not cover every unmatched worker");
    }
  }

  OutcomeDocument out;
  out.recorded_worker_payoffs = payoff_map(field(doc, "worker_payoffs", "outcome"), market.workers(), "worker_payoffs");
  std::vector<std::string> firm_ids;
  for (const auto& f : market.firms()) firm_ids.push_back(f.id);
  out.recorded_firm_payoffs = payoff_map(field(doc, "firm_payoffs", "outcome"), firm_ids, "firm_payoffs");
  const json& iterations = field(doc, "iterations", "outcome");
  if (!iterations.is_number_unsigned() && !(iterations.is_number_integer() && iterations.get<std::int64_t>() >= 0)) {
    throw FormatError("iterations: expected a non-negative integer");
  }
  out.iterations = iterations.get<std::size_t>();
  const json& stable = field(doc, "stable", "outcome");
  if (!stable.is_boolean()) throw FormatError("stable: expected a boolean");
  out.stable = stable.get<bool>();
  out.outcome = make_outcome(market, std::move(allocation), SalaryVector(std::move(salaries)));
  return out;
}

OutcomeDocument load_outcome(const std::filesystem::path& path, const MarketInstance& market) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw FormatError(std::string("outcome is not valid JSON: ") + ex.what());
  }
  return outcome_from_json(doc, market);
}

ordered_json trace_event_to_json(const MarketInstance& market, const TraceEvent& event) {
  ordered_json doc;
  doc["iter"] = event.iteration;
  doc["kind"] = std::string(to_string(event.kind));
  if (event.pair) doc["pair"] = pair_ids(market, *event.pair);
  if (event.firm) doc["firm"] = market.firms().at(*event.firm).id;
  if (event.old_value) doc["old"] = *event.old_value;
  if (event.new_value) doc["new"] = *event.new_value;
  if (event.m) doc["m"] = *event.m;
  if (event.r) doc["r"] = *event.r;
  return doc;
}

TraceEvent trace_event_from_json(const json& doc, const MarketInstance& market) {
  TraceEvent event;
  event.iteration = static_cast<std::size_t>(as_integer(field(doc, "iter", "trace"), "iter"));
  const auto kind = trace_kind_from_string(as_string(field(doc, "kind", "trace"), "kind"));
  if (!kind) throw FormatError("trace: unknown kind");
  event.kind = *kind;
  if (doc.contains("pair")) event.pair = pair_from_ids(doc.at("pair"), market, "pair");
  if (doc.contains("firm")) {
    const auto f = market.firm_index(as_string(doc.at("firm"), "firm"));
    if (!f) throw FormatError("trace: unknown firm");
    event.firm = *f;
  }
  if (doc.contains("old")) event.old_value = as_integer(doc.at("old"), "old");
  if (doc.contains("new")) event.new_value = as_integer(doc.at("new"), "new");
  if (doc.contains("m")) event.m = as_integer(doc.at("m"), "m");
  if (doc.contains("r")) event.r = as_number(doc.at("r"), "r");
  return event;
}

std::string trace_to_jsonl(const MarketInstance& market, const Trace& trace) {
  std::string out;
  for (const auto& event : trace) {
    out += trace_event_to_json(market, event).dump();
    out += '\n';
  }
  return out;
}

Trace trace_from_jsonl(std::string_view text, const MarketInstance& market) {
  Trace trace;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      trace.push_back(trace_event_from_json(json::parse(line), market));
    } catch (const json::parse_error& ex) {
      throw FormatError(std::string("trace line is not valid JSON: ") + ex.what());
    }
  }
  return trace;
}

ordered_json certificate_to_json(const MarketInstance& market, const BlockingCertificate& c) {
  ordered_json doc;
  doc["kind"] = "blocking_pair";
  doc["pair"] = pair_ids(market, c.pair);
  doc["salary"] = c.salary;
  doc["worker_gain"] = c.worker_gain;
  doc["firm_gain"] = c.firm_gain;
  doc["worker_payoff"] = c.worker_payoff;
  doc["firm_payoff"] = c.firm_payoff;
  return doc;
}

ordered_json ps1_violation_to_json(const MarketInstance& market, const Ps1Violation& v) {
  ordered_json doc;
  doc["kind"] = "ps1_violation";
  doc["pair"] = pair_ids(market, v.pair);
  doc["salary"] = v.salary;
  doc["worker_value"] = v.worker_value;
  doc["firm_value"] = v.firm_value;
  return doc;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw FormatError("write to '" + path.string() + "' failed");
}

}  // namespace jobmatch

#include "kleq_cli/report.hpp"

#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

namespace kleq::cli {

std::string hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

namespace {

nlohmann::ordered_json counters_json(const CostCounters& c) {
  nlohmann::ordered_json j;
  j["construction_queries_classical"] = c.construction_queries_classical;
  j["construction_queries_superposition"] = c.construction_queries_superposition;
  j["cipher_evals"] = c.cipher_evals;
  j["grover_iterations"] = c.grover_iterations;
  j["predicate_evals"] = c.predicate_evals;
  j["qram_entries"] = c.qram_entries;
  j["classical_memory_entries"] = c.classical_memory_entries;
  j["comparisons"] = c.comparisons;
  return j;
}

nlohmann::ordered_json exponent(const std::optional<Rational>& r) {
  return r ? nlohmann::ordered_json(r->to_string()) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json exponent_decimal(const std::optional<Rational>& r) {
  return r ? nlohmann::ordered_json(r->to_double()) : nlohmann::ordered_json(nullptr);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

void flatten_into(const nlohmann::ordered_json& j, const std::string& prefix,
                  std::vector<std::pair<std::string, std::string>>& out) {
  for (const auto& [key, v] : j.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (v.is_object()) {
      flatten_into(v, path, out);
    } else if (v.is_null()) {
      out.emplace_back(path, "");
    } else if (v.is_string()) {
      out.emplace_back(path, v.get<std::string>());
    } else {
      out.emplace_back(path, v.dump());
    }
  }
}

std::optional<double> as_number(const std::string& s) {
  if (s.empty()) {
    return std::nullopt;
  }
  if (s == "true") {
    return 1.0;
  }
  if (s == "false") {
    return 0.0;
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) {
    return std::nullopt;
  }
  return v;
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

nlohmann::ordered_json report_json(const AttackReport& rep) {
  nlohmann::ordered_json j;
  j["attack"] = std::string(attack_name(rep.attack));
  j["scheme"] = std::string(scheme_name(rep.scheme));
  j["middle"] = std::string(middle_kind_name(rep.middle));
  j["kappa"] = rep.kappa;
  j["n"] = rep.n;
  j["t"] = rep.t;
  j["r"] = rep.r;
  j["model"] = std::string(access_model_name(rep.model));
  j["backend"] = std::string(backend_name(rep.backend));
  j["seed"] = rep.seed;
  j["success"] = rep.success;
  if (rep.recovered) {
    nlohmann::ordered_json keys;
    for (std::size_t i = 0; i < rep.key_slots.size() && i < rep.recovered->parts.size(); ++i) {
      keys[rep.key_slots[i].name] = hex(rep.recovered->parts[i]);
    }
    j["recovered_keys"] = keys;
  } else {
    nlohmann::ordered_json keys;
    for (const auto& slot : rep.key_slots) {
      keys[slot.name] = nullptr;
    }
    j["recovered_keys"] = keys;
  }
  j["failure"] = rep.success ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(rep.failure);
  auto ledger = counters_json(rep.ledger);
  ledger["preprocessing"] = counters_json(rep.preprocessing);
  j["ledger"] = ledger;
  nlohmann::ordered_json pred;
  pred["time_exponent"] = rep.predicted.time_exponent.to_string();
  pred["time_exponent_decimal"] = rep.predicted.time_exponent.to_double();
  pred["qram_exponent"] = exponent(rep.predicted.qram_exponent);
  pred["qram_exponent_decimal"] = exponent_decimal(rep.predicted.qram_exponent);
  pred["bruteforce_exponent"] = rep.predicted.bruteforce_exponent.to_string();
  pred["worse_than_bruteforce"] = rep.predicted.worse_than_bruteforce;
  j["predicted"] = pred;
  j["regime"] = rep.regime ? nlohmann::ordered_json(std::string(claw_regime_name(*rep.regime)))
                           : nlohmann::ordered_json(nullptr);
  j["search_calls"] = rep.search_calls;
  j["iterations_per_call"] = rep.iterations_per_call;
  j["sub_table_calls"] = rep.sub_table_calls;
  j["candidates_rejected"] = rep.candidates_rejected;
  j["attempts"] = rep.attempts;
  j["wall_clock_seconds"] =
      rep.wall_clock_seconds ? nlohmann::ordered_json(*rep.wall_clock_seconds) : nlohmann::ordered_json(nullptr);
  return j;
}

std::vector<std::pair<std::string, std::string>> flatten(const nlohmann::ordered_json& j) {
  std::vector<std::pair<std::string, std::string>> out;
  flatten_into(j, "", out);
  return out;
}

std::string reports_csv(const std::vector<AttackReport>& reports, const std::vector<std::string>& groups) {
  std::ostringstream out;
  if (reports.empty()) {
    return {};
  }
  std::vector<std::vector<std::pair<std::string, std::string>>> rows;
  rows.reserve(reports.size());
  for (const auto& rep : reports) {
    rows.push_back(flatten(report_json(rep)));
  }
  out << "row,group";
  for (const auto& [key, value] : rows.front()) {
    out << ',' << key;
  }
  out << '\n';

  std::size_t begin = 0;
  while (begin < rows.size()) {
    std::size_t end = begin;
    while (end < rows.size() && groups[end] == groups[begin]) {
      ++end;
    }
    for (std::size_t i = begin; i < end; ++i) {
      out << "trial," << csv_escape(groups[i]);
      for (const auto& [key, value] : rows[i]) {
        out << ',' << csv_escape(value);
      }
      out << '\n';
    }
    out << "summary," << csv_escape(groups[begin]);
    const std::size_t columns = rows[begin].size();
    for (std::size_t c = 0; c < columns; ++c) {
      const auto& key = rows[begin][c].first;
      const bool per_trial = key == "seed" || key == "failure" || key.rfind("recovered_keys.", 0) == 0;
      bool numeric = !per_trial;
      bool constant = !per_trial;
      double sum = 0.0;
      for (std::size_t i = begin; i < end; ++i) {
        const auto v = as_number(rows[i][c].second);
        numeric = numeric && v.has_value();
        sum += v.value_or(0.0);
        constant = constant && rows[i][c].second == rows[begin][c].second;
      }
      out << ',';
      if (numeric) {
        out << fixed(sum / static_cast<double>(end - begin));
      } else if (constant) {
        out << csv_escape(rows[begin][c].second);
      }
    }
    out << '\n';
    begin = end;
  }
  return out.str();
}

}  // namespace kleq::cli

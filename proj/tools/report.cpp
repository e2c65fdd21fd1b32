#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace manlp::cli {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Interpretation parse_interpretation(std::string_view text, LatticeKind kind) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("interpretation file: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("interpretation file: expected a JSON object");
  std::map<std::string, TruthValue> values;
  for (const auto& [name, v] : doc.items()) {
    if (v.is_number()) {
      if (kind != LatticeKind::unit_interval) {
        throw DomainError("symbol '" + name + "': expected an interval [lo, hi]");
      }
      values.emplace(name, TruthValue::unit(v.get<double>()));
    } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      if (kind != LatticeKind::subinterval) {
        throw DomainError("symbol '" + name + "': expected a number in [0, 1]");
      }
      values.emplace(name, TruthValue::interval(v[0].get<double>(), v[1].get<double>()));
    } else {
      throw std::invalid_argument("symbol '" + name + "': expected a number or [lo, hi]");
    }
  }
  return Interpretation::from_map(kind, values);
}

Json to_json(const TruthValue& v) {
  if (v.is_unit()) return v.value();
  return Json::array({v.lo(), v.hi()});
}

Json to_json(const Interpretation& i) {
  Json out = Json::object();
  for (std::size_t k = 0; k < i.size(); ++k) out[i.symbols()[k]] = to_json(i.values()[k]);
  return out;
}

Json to_json(const FixpointTrace& trace) {
  Json iterates = Json::array();
  for (const auto& it : trace.iterates) iterates.push_back(to_json(it));
  return {{"converged", trace.converged},
          {"steps", trace.steps()},
          {"residual", trace.residual},
          {"iterates", std::move(iterates)}};
}

Json to_json(const CertificateReport& report) {
  Json out;
  out["eligible"] = report.eligible;
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json entry;
    if (v.rule == Violation::npos) {
      entry["rule"] = nullptr;
    } else {
      entry["rule"] = v.rule + 1;
    }
    entry["reason"] = v.reason;
    violations.push_back(std::move(entry));
  }
  out["violations"] = std::move(violations);
  Json bounds = Json::object();
  for (const auto& b : report.head_bounds) bounds[b.symbol] = to_json(b.bound);
  out["head_bounds"] = std::move(bounds);
  Json rules = Json::array();
  for (const auto& r : report.per_rule) {
    rules.push_back({{"rule", r.rule + 1},
                     {"lambda1", r.lambda1},
                     {"lambda2", r.lambda2},
                     {"passes", r.passes}});
  }
  out["per_rule"] = std::move(rules);
  out["verdict"] = report.verdict ? Json(*report.verdict) : Json(nullptr);
  out["lambda2_verdict"] = report.lambda2_verdict ? Json(*report.lambda2_verdict) : Json(nullptr);
  out["global_lipschitz"] = report.global_lipschitz;
  return out;
}

std::string table_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string table_value(const TruthValue& v) {
  if (v.is_unit()) return table_number(v.value());
  return "[" + table_number(v.lo()) + ", " + table_number(v.hi()) + "]";
}

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      s += cells[c];
      if (c + 1 < cells.size()) s += std::string(width[c] - cells[c].size() + 2, ' ');
    }
    out << s << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
}

void print_interpretations(std::ostream& out, const std::string& label_header,
                           const std::vector<std::string>& labels,
                           const std::vector<Interpretation>& interps) {
  std::vector<std::string> header{label_header};
  if (!interps.empty()) {
    for (const auto& s : interps.front().symbols()) header.push_back(s);
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < interps.size(); ++k) {
    std::vector<std::string> row{labels[k]};
    for (const auto& v : interps[k].values()) row.push_back(table_value(v));
    rows.push_back(std::move(row));
  }
  print_table(out, header, rows);
}

}  // namespace manlp::cli

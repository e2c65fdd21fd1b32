#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "manlp/semantics.hpp"
#include "manlp/syntax.hpp"

namespace manlp::testkit {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(MANLP_FIXTURE_DIR) / name;
}

inline std::string fixture_text(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Program load_program(const std::string& name) {
  const std::string text = fixture_text(name);
  return parse_program(text, infer_lattice_kind(text));
}

inline Interpretation unit_interp(std::initializer_list<std::pair<const std::string, double>> v) {
  std::map<std::string, TruthValue> m;
  for (const auto& [k, x] : v) m.emplace(k, TruthValue::unit(x));
  return Interpretation::from_map(LatticeKind::unit_interval, m);
}

inline Interpretation interval_interp(
    std::initializer_list<std::pair<const std::string, std::pair<double, double>>> v) {
  std::map<std::string, TruthValue> m;
  for (const auto& [k, x] : v) m.emplace(k, TruthValue::interval(x.first, x.second));
  return Interpretation::from_map(LatticeKind::subinterval, m);
}

}  // namespace manlp::testkit

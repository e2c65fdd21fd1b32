#pragma once

// Interpretation files, structured run reports and plain-text tables.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "manlp/engine.hpp"
#include "manlp/oracle.hpp"
#include "manlp/semantics.hpp"
#include "manlp/uniqueness.hpp"

namespace manlp::cli {

using Json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path);

/// FNV-1a 64-bit, as 16 lowercase hex digits.
std::string digest(std::string_view text);

/// Flat map {"p": 0.5} or {"p": [0.1, 0.4]}. Throws std::invalid_argument
/// on malformed input and DomainError on values outside the lattice.
Interpretation parse_interpretation(std::string_view text, LatticeKind kind);

Json to_json(const TruthValue& v);
/// Flat map in symbol order; the same shape parse_interpretation reads.
Json to_json(const Interpretation& i);
Json to_json(const FixpointTrace& trace);
Json to_json(const CertificateReport& report);

/// "%.10g", or "[lo, hi]" with each endpoint so formatted.
std::string table_value(const TruthValue& v);
std::string table_number(double x);

/// Left-aligned columns separated by two spaces.
void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows);

/// One row per interpretation, one column per symbol.
void print_interpretations(std::ostream& out, const std::string& label_header,
                           const std::vector<std::string>& labels,
                           const std::vector<Interpretation>& interps);

}  // namespace manlp::cli

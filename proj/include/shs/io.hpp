#pragma once

#include <string>

#include <json.hpp>

#include "shs/harte.hpp"
#include "shs/propcheck.hpp"
#include "shs/truncation.hpp"

// JSON formats shared by the command-line front end and the tests. Matrices
// travel as {"rows", "cols", "data": [[[re, im], ...], ...]} row-major with an
// optional "name"; every report is a single JSON document with a fixed set of
// top-level keys. Serialization is canonical (alphabetical keys, shortest
// round-trip numbers), so writing a parsed canonical file is byte-identical.

namespace shs {

inline constexpr const char* kVersion = "0.1.0";

struct NamedMatrix {
    ComplexMatrix matrix;
    std::string name;
};

nlohmann::json matrix_to_json(const ComplexMatrix& m, const std::string& name = "");
NamedMatrix matrix_from_json(const nlohmann::json& j);

NamedMatrix load_matrix_file(const std::string& path);
std::string canonical_dump(const nlohmann::json& j);

// FNV-1a over the file bytes, 16 hex digits; used for input provenance.
std::string file_digest(const std::string& path);

nlohmann::json to_json(const SpectrumReport& rep);
nlohmann::json to_json(const HarteReport& rep);
nlohmann::json to_json(const TrendReport& rep);
nlohmann::json to_json(const SuiteReport& rep);

std::string trend_csv(const TrendReport& rep);

// Assembles the common report envelope.
class ReportBuilder {
public:
    explicit ReportBuilder(const std::string& command);

    ReportBuilder& input(const std::string& path);
    ReportBuilder& tolerance(const std::string& name, double value);
    ReportBuilder& seed(std::uint64_t seed);
    ReportBuilder& warning(const std::string& text);
    ReportBuilder& residual(const std::string& name, double value);
    ReportBuilder& results(nlohmann::json results);

    const nlohmann::json& body() const { return body_; }

private:
    nlohmann::json body_;
};

} // namespace shs

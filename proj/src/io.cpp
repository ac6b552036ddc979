#include "shs/io.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace shs {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m, const std::string& name) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        data.push_back(std::move(row));
    }
    json out = {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
    if (!name.empty()) out["name"] = name;
    return out;
}

NamedMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw Error(errc::bad_input, "matrix file needs rows, cols and data");
    auto rows = j.at("rows").get<Eigen::Index>();
    auto cols = j.at("cols").get<Eigen::Index>();
    if (rows < 1 || cols < 1)
        throw Error(errc::bad_input, "matrix file: rows and cols must be >= 1");
    const json& data = j.at("data");
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows)
        throw Error(errc::bad_input, "matrix file: data has the wrong number of rows");

    NamedMatrix out;
    out.matrix.resize(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = data.at(static_cast<size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw Error(errc::bad_input, "matrix file: data has the wrong number of columns");
        for (Eigen::Index jx = 0; jx < cols; ++jx) {
            const json& cell = row.at(static_cast<size_t>(jx));
            if (!cell.is_array() || cell.size() != 2 || !cell.at(0).is_number() ||
                !cell.at(1).is_number())
                throw Error(errc::bad_input, "matrix file: entries must be [re, im] pairs");
            out.matrix(i, jx) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    if (!all_finite(out.matrix))
        throw Error(errc::bad_input, "matrix file: non-finite entries");
    if (j.contains("name")) out.name = j.at("name").get<std::string>();
    return out;
}

NamedMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::bad_input, "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(errc::bad_input, "cannot parse '" + path + "': " + e.what());
    }
    return matrix_from_json(j);
}

std::string canonical_dump(const json& j) {
    return j.dump();
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::bad_input, "cannot open '" + path + "'");
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    char c;
    while (in.get(c)) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001B3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << hash;
    return out.str();
}

namespace {

json complex_to_json(Complex z) {
    return {z.real(), z.imag()};
}

json gelfand_to_json(const std::vector<GelfandEntry>& entries) {
    json out = json::array();
    for (const GelfandEntry& e : entries)
        out.push_back({{"n", e.n}, {"estimate", e.estimate}});
    return out;
}

} // namespace

json to_json(const SpectrumReport& rep) {
    json sigma = json::array();
    for (const SpectrumPoint& pt : rep.sigma_a) {
        json entry = {{"lambda", complex_to_json(pt.lambda)},
                      {"multiplicity", pt.multiplicity},
                      {"sigma_min", pt.sigma_min}};
        if (pt.oracle_checked) entry["oracle_feasible"] = pt.oracle_feasible;
        sigma.push_back(std::move(entry));
    }
    return {{"sigma_a", std::move(sigma)},
            {"sup_sigma", rep.sup_sigma},
            {"sigma_empty", rep.sigma_empty},
            {"r_a", rep.r_a},
            {"r_a_diamond", rep.r_a_diamond},
            {"radius_formula", rep.formula_value},
            {"dominant_side", rep.dominant_side},
            {"norm_bound", rep.norm_bound},
            {"gelfand", gelfand_to_json(rep.gelfand)},
            {"certificates", rep.certificates}};
}

json to_json(const HarteReport& rep) {
    json points = json::array();
    for (const JointPoint& pt : rep.joint_points) {
        json lambda = json::array();
        for (const Complex& z : pt.lambda) lambda.push_back(complex_to_json(z));
        json entry = {{"lambda", std::move(lambda)}, {"multiplicity", pt.multiplicity}};
        if (pt.oracle_checked) {
            entry["oracle_feasible"] = pt.oracle_feasible;
            entry["oracle_residual"] = pt.oracle_residual;
        }
        points.push_back(std::move(entry));
    }
    return {{"radius_estimates", gelfand_to_json(rep.radius_estimates)},
            {"best_upper", rep.best_upper},
            {"recurrence_check", rep.recurrence_check},
            {"joint_points", std::move(points)},
            {"sup_l2", rep.sup_l2},
            {"margin", rep.margin},
            {"bound_holds", rep.bound_holds},
            {"commutation_residual", rep.commutation_residual}};
}

json to_json(const TrendReport& rep) {
    json rows = json::array();
    for (const TrendRow& row : rep.rows)
        rows.push_back({{"truncation", row.truncation},
                        {"power", row.power},
                        {"gelfand", row.gelfand},
                        {"sup_sigma", row.sup_sigma},
                        {"radius_formula", row.formula_value},
                        {"r_a", row.r_a},
                        {"r_a_diamond", row.r_a_diamond}});
    return {{"rows", std::move(rows)}, {"annotations", rep.annotations}};
}

json to_json(const SuiteReport& rep) {
    json checks = json::array();
    for (const CheckStat& c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"passes", c.passes},
                          {"failures", c.failures},
                          {"worst_residual", c.worst_residual},
                          {"failing_seeds", c.failing_seeds}});
    return {{"trials", rep.trials},
            {"checks", std::move(checks)},
            {"worst_metric_cond", rep.worst_metric_cond},
            {"all_passed", rep.all_passed()}};
}

std::string trend_csv(const TrendReport& rep) {
    std::ostringstream out;
    out.precision(17);
    out << "truncation,power,gelfand,sup_sigma,radius_formula,r_a,r_a_diamond\n";
    for (const TrendRow& row : rep.rows)
        out << row.truncation << ',' << row.power << ',' << row.gelfand << ','
            << row.sup_sigma << ',' << row.formula_value << ',' << row.r_a << ','
            << row.r_a_diamond << '\n';
    return out.str();
}

ReportBuilder::ReportBuilder(const std::string& command) {
    body_["command"] = command;
    body_["version"] = kVersion;
    body_["inputs"] = json::object();
    body_["tolerances"] = json::object();
    body_["residuals"] = json::object();
    body_["warnings"] = json::array();
    body_["results"] = json::object();
    body_["seed"] = nullptr;
}

ReportBuilder& ReportBuilder::input(const std::string& path) {
    body_["inputs"][path] = file_digest(path);
    return *this;
}

ReportBuilder& ReportBuilder::tolerance(const std::string& name, double value) {
    body_["tolerances"][name] = value;
    return *this;
}

ReportBuilder& ReportBuilder::seed(std::uint64_t seed) {
    body_["seed"] = seed;
    return *this;
}

ReportBuilder& ReportBuilder::warning(const std::string& text) {
    body_["warnings"].push_back(text);
    return *this;
}

ReportBuilder& ReportBuilder::residual(const std::string& name, double value) {
    body_["residuals"][name] = value;
    return *this;
}

ReportBuilder& ReportBuilder::results(json results) {
    body_["results"] = std::move(results);
    return *this;
}

} // namespace shs

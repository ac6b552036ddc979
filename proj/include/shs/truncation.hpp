#pragma once

#include <string>
#include <vector>

#include "shs/spectrum.hpp"

namespace shs {

inline constexpr long kTrendCostGuard = 100000; // on truncation * n_max per row block

enum class ExampleName { ex1, ex2, ex3 };

ExampleName parse_example_name(const std::string& s);
const char* example_name_str(ExampleName name);

// A dimension-N truncation of one of the built-in sequence-space families.
// ex1/ex2 live on coordinates indexed -N..N (stored in that order), with the
// diagonal metric 1/k on negative indices, 1/k^2 on positive ones and zero
// weight on |index| <= 1; ex3 is the left shift on coordinates 1..N against
// the diagonal metric 4^{-(k-1)}.
struct ExampleInstance {
    ExampleName name;
    int truncation = 0;
    MetricPtr metric;
    AOperator op;
    std::vector<int> index_map; // coordinate -> sequence index
};

ExampleInstance make_example(ExampleName name, int truncation);

struct TrendRow {
    int truncation;
    int power;
    double gelfand;
    double sup_sigma;
    double formula_value;
    double r_a;
    double r_a_diamond;
};

struct TrendReport {
    std::vector<TrendRow> rows;
    std::vector<std::string> annotations;
};

TrendReport trend_report(ExampleName name, const std::vector<int>& truncations, int n_max);

} // namespace shs

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "shs/harte.hpp"
#include "shs/truncation.hpp"

namespace shs {

// Counter-splittable deterministic generator: every draw is a pure function
// of the 64-bit seed, so failing trials replay byte-identically. Gaussians
// come from Box-Muller over explicitly constructed 53-bit uniforms (the
// standard-library distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng split(std::uint64_t seed, std::uint64_t counter) {
        Rng mix(seed ^ (0x9E3779B97F4A7C15ULL * (counter + 1)));
        mix.next();
        return mix;
    }

    std::uint64_t next();
    double uniform();                  // [0, 1)
    double gauss();                    // standard normal
    Complex cgauss();                  // standard complex Gaussian
    ComplexMatrix cgauss_matrix(Eigen::Index rows, Eigen::Index cols);

private:
    std::uint64_t state_;
};

MetricPtr random_semimetric(int n, int r, std::uint64_t seed);

// Member of the certified class: block lower triangular in the (range, null)
// splitting, rotated back to the ambient coordinates. spectrum_scale scales
// the range-range block only, so 0 collapses the compression.
AOperator random_a_operator(const MetricPtr& metric, std::uint64_t seed,
                            double spectrum_scale = 1.0);

// A-unitary instance: a unitary commuting with the positive eigenvalues on
// the range (blockwise Haar per repeated-eigenvalue cluster) plus an
// arbitrary block on the null space; certified before being returned.
AOperator random_a_unitary(const MetricPtr& metric, std::uint64_t seed);

struct SuiteConfig {
    std::uint64_t seed = 42;
    int trials = 200;
    int dim = 6;
    int rank = 3;
    std::map<std::string, double> tolerances; // overrides of the named defaults
};

struct CheckStat {
    std::string name;
    int passes = 0;
    int failures = 0;
    double worst_residual = 0.0;
    std::vector<std::uint64_t> failing_seeds;
};

struct SuiteReport {
    int trials = 0;
    std::vector<CheckStat> checks;
    double worst_metric_cond = 0.0;
    bool all_passed() const {
        for (const CheckStat& c : checks)
            if (c.failures > 0) return false;
        return true;
    }
};

// The named thresholds the suite runs at; config.tolerances overrides by key.
std::map<std::string, double> default_suite_tolerances();

// Runs every randomized identity check over `trials` instances. Trial 0 is
// the injected classical case (identity metric); the rest draw rank-deficient
// metrics from the config. Thresholds widen by min(kappa/1e6, 1e3) whenever
// the positive spectrum has condition number above 1e6.
SuiteReport verify_suite(const SuiteConfig& config);

} // namespace shs

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shs/opspace.hpp"

namespace shs {

inline constexpr double kDefaultInvertTol = 1e-8;
// The least-squares feasibility oracle solves an (3 n^2) x (n^2) system;
// refuse beyond this size.
inline constexpr Eigen::Index kOracleDimGuard = 12;

struct InvertCertificate {
    bool invertible = false;
    double sigma_min = 0.0; // of (lambda I_r - compression)
    double scale = 1.0;     // threshold scale: invertible iff sigma_min > tol*scale
    ComplexMatrix inverse;  // explicit A-inverse on R(A), empty when not invertible
    double residual_left = 0.0;  // ||A (lambda-T) S - A|| / ||A||
    double residual_right = 0.0; // ||A S (lambda-T) - A|| / ||A||
};

struct OracleResult {
    bool feasible = false;
    double residual = 0.0; // least-squares residual relative to ||P||_F
};

struct SpectrumPoint {
    Complex lambda;
    int multiplicity = 1;
    double sigma_min = 0.0; // invertibility test value at this point
    bool oracle_checked = false;
    bool oracle_feasible = false;
};

struct GelfandEntry {
    int n;
    double estimate; // ||T^n||_A^{1/n}
};

struct SpectrumReport {
    std::vector<SpectrumPoint> sigma_a;
    double r_a = 0.0;         // spectral radius of the compression
    double r_a_diamond = 0.0; // same for the lifted diamond
    std::vector<GelfandEntry> gelfand;
    double formula_value = 0.0; // (r + r' + |r' - r|) / 2
    double sup_sigma = 0.0;
    bool sigma_empty = false;         // flagged, cannot occur for rank >= 1
    std::string dominant_side;        // "operator" | "diamond" | "both" | "neither"
    double norm_bound = 0.0;          // max(||T||_A, ||T_diamond||_A)
    std::map<std::string, double> certificates;
};

// Invertibility of (lambda - T) in the A-sense, decided on the compression
// and certified by an explicit inverse built on R(A).
InvertCertificate a_invertible(const AOperator& op, Complex lambda,
                               double tol = kDefaultInvertTol);

// Independent route: minimum-norm least-squares feasibility of
// P(lambda-T)S = P, PS(lambda-T) = P, PS(I-P) = 0 in the unknown S.
OracleResult a_invertible_oracle(const AOperator& op, Complex lambda,
                                 double tol = kDefaultInvertTol);

std::vector<SpectrumPoint> a_spectrum(const AOperator& op, double tol = kDefaultInvertTol);

double r_a_exact(const AOperator& op);

std::vector<GelfandEntry> r_a_gelfand(const AOperator& op, int n_max, bool scaling = true);

// Full report: spectrum, both radii, the max formula, Gelfand table, bounds.
SpectrumReport spectrum_report(const AOperator& op, int gelfand_n_max = 16,
                               double tol = kDefaultInvertTol);

// Explicit A-inverse of T itself when the compression is invertible.
std::optional<ComplexMatrix> find_a_inverse(const AOperator& op,
                                            double tol = kDefaultInvertTol);

struct PerturbationCheck {
    bool hypothesis_held = false;
    bool conclusion_verified = false;
    double norm_ts = 0.0;         // ||T' S||_A
    double norm_ts_diamond = 0.0; // ||(T' S)_diamond||_A
};

// Small-perturbation invertibility: if ||T'S||_A < 1 and ||(T'S)_diamond||_A < 1
// for an A-inverse S of T, then T + T' must test A-invertible.
PerturbationCheck perturbation_check(const AOperator& t, const AOperator& t_prime,
                                     double tol = kDefaultInvertTol);

} // namespace shs

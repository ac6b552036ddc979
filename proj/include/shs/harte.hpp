#pragma once

#include <cstdint>
#include <vector>

#include "shs/spectrum.hpp"

namespace shs {

inline constexpr double kDefaultCommTol = 1e-8;
inline constexpr long kHarteCostGuard = 10000;       // on d * n_max
inline constexpr double kDirectSumGuard = 1e5;       // on d^n for the direct route
inline constexpr Eigen::Index kJointOracleDimGuard = 10;

// Commuting d-tuple of certified operators over one shared metric.
struct OperatorTuple {
    std::vector<AOperator> ops;
    double commutation_residual = 0.0;             // max_{i<j} ||TiTj - TjTi|| / scale
    double compression_commutation_residual = 0.0; // same for the compressions
};

OperatorTuple make_operator_tuple(std::vector<AOperator> ops,
                                  double tol_comm = kDefaultCommTol);

struct JointPoint {
    std::vector<Complex> lambda;
    int multiplicity = 1;
    bool oracle_checked = false;
    bool oracle_feasible = false; // expected false for spectrum points
    double oracle_residual = 0.0;
};

struct HarteReport {
    std::vector<GelfandEntry> radius_estimates; // (n, ||Q_n||_A^{1/2n})
    double best_upper = 0.0;                    // min over computed n
    double recurrence_check = 0.0; // deviation vs direct multi-index sums (small n)
    std::vector<JointPoint> joint_points;
    double sup_l2 = 0.0;
    double margin = 0.0;     // sup_l2 - best_upper
    bool bound_holds = false;
    double commutation_residual = 0.0;
};

// Radius estimates by the recurrence Q_{n+1} = sum_j Tj_diamond Q_n Tj,
// cross-checked against the direct multi-index summation where affordable.
HarteReport harte_radius(const OperatorTuple& tuple, int n_max);

// Same estimates computed from the representations on the A^{1/2}-range
// space (classical adjoints of the compressions); agrees with harte_radius
// when every operator commutes with the metric.
std::vector<GelfandEntry> harte_radius_sqrt_range_route(const OperatorTuple& tuple,
                                                        int n_max);

// Joint eigenvalues of the commuting compressions via a simultaneous Schur
// triangularization of a random unit-modulus linear combination; points are
// verified against the resolvent feasibility oracle in small dimensions.
std::vector<JointPoint> joint_eigenvalues(const OperatorTuple& tuple,
                                          double tol = kDefaultCommTol,
                                          std::uint64_t seed = 1);

// Feasibility of the joint resolvent condition at a candidate point: both
// one-sided combination identities solvable with membership constraints.
OracleResult harte_point_oracle(const OperatorTuple& tuple,
                                const std::vector<Complex>& lambda,
                                double tol = kDefaultInvertTol);

// Full report including the radius-vs-joint-points margin. The inequality is
// asserted only in the direction the finite estimates support: every
// estimate upper-bounds the limit, so bound_holds is sup_l2 >= best_upper -
// slack (exact, margin ~ 0, on diagonal-compression commuting families).
HarteReport harte_report(const OperatorTuple& tuple, int n_max,
                         double tol = kDefaultCommTol, double slack = 1e-6);

} // namespace shs

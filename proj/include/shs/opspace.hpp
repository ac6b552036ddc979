#pragma once

#include <optional>

#include "shs/metric.hpp"

namespace shs {

inline constexpr double kDefaultMemberTol = 1e-8;

struct IsometryCheck {
    bool holds = false;
    double residual = 0.0; // ||T#T - P||
};

struct UnitaryCheck {
    bool holds = false;
    double residual = 0.0;        // ||U#U - P||
    double sharp_residual = 0.0;  // ||(U#)#U# - P||
    double norm_defect = 0.0;     // | ||U||_A - 1 | when holds
};

// An operator certified to map N(A) into N(A), i.e. a member of the class of
// A^{1/2}-adjointable operators for the given metric (in finite dimensions
// this coincides with A-adjointability: R(A) is closed). All derived objects
// are cached eagerly at lift time and reported in the metric's range basis.
//
// Internal r x r representatives, with C = V*TV the compression and
// D the positive eigenvalues of A:
//   compression()          C           spectrum = sigma_A(T)
//   diamond_compression()  D^-1/2 C* D^1/2   realizes the adjoint action on
//                                      R(A); spectrum = conj(sigma_A(T))
//   sqrt_range_rep()       C           action on the A^{1/2}-range space;
//                                      classical norm = ||T_diamond||_A
//   norm_rep()             D^1/2 C D^-1/2    classical norm / numerical
//                                      radius equal the A-versions for T
class AOperator {
public:
    static AOperator lift(MetricPtr metric, const ComplexMatrix& t,
                          double tol_member = kDefaultMemberTol);

    const MetricPtr& metric() const { return metric_; }
    const ComplexMatrix& matrix() const { return t_; }
    const ComplexMatrix& diamond() const { return diamond_; } // (A^{1/2})^dagger T* A^{1/2}
    const ComplexMatrix& sharp() const { return sharp_; }     // A^dagger T* A
    const ComplexMatrix& compression() const { return compression_; }
    double membership_residual() const { return membership_residual_; }

    Eigen::Index dim() const { return t_.rows(); }
    Eigen::Index rank() const { return metric_->rank(); }

    ComplexMatrix diamond_compression() const;
    ComplexMatrix sqrt_range_rep() const { return compression_; }
    ComplexMatrix norm_rep() const;

    // Lift of a matrix already known to satisfy the membership criterion by
    // construction (diamond, sharp, products of members); shares the metric.
    AOperator lift_sibling(const ComplexMatrix& t) const {
        return lift(metric_, t, tol_member_);
    }

private:
    AOperator() = default;

    MetricPtr metric_;
    ComplexMatrix t_;
    ComplexMatrix diamond_;
    ComplexMatrix sharp_;
    ComplexMatrix compression_;
    double membership_residual_ = 0.0;
    double tol_member_ = kDefaultMemberTol;
};

// ||T||_A = ||A^{1/2} T (A^{1/2})^dagger||, the largest singular value of the
// norm representative.
double a_norm(const AOperator& op);

// ||T^n||_A via powers of the norm representative (exact identity: the
// representative of T^n is the n-th power of the representative of T).
double a_norm_power(const AOperator& op, int n);

// A-numerical radius via the rotated-Hermitian-part sweep on norm_rep():
// max over theta of lambda_max((e^{i theta} B + e^{-i theta} B*)/2),
// angle_samples initial angles then golden-section refinement.
double a_numerical_radius(const AOperator& op, int angle_samples = 64);

// A-reduced minimum modulus: smallest nonzero singular value of the diamond
// (0 by convention when the diamond vanishes).
double reduced_min_modulus(const AOperator& op);

IsometryCheck is_a_isometry(const AOperator& op, double tol = kDefaultMemberTol);
UnitaryCheck is_a_unitary(const AOperator& op, double tol = kDefaultMemberTol);

} // namespace shs

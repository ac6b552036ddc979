#pragma once

#include <memory>

#include "shs/numkernel.hpp"

namespace shs {

// A validated positive-semidefinite metric together with everything derived
// from it: the range basis, A^{1/2} and its pseudoinverse, A^dagger, and the
// orthogonal projector P onto R(A). Immutable once built; operators certify
// against a shared_ptr so a whole analysis shares one set of caches.
//
// Coordinate convention used across the toolkit: V holds the orthonormal
// eigenvectors of the positive eigenvalues (columns, eigenvalues descending
// in D). Every r x r "compression" reported by dependent modules is stated
// in this basis. Eigenvector phases are not canonical, but every published
// quantity (norms, spectra, residuals) is invariant under them.
class SemiMetric {
public:
    static std::shared_ptr<const SemiMetric> make(const ComplexMatrix& a,
                                                  double tol_rank = kDefaultRankTol);

    Eigen::Index dim() const { return a_.rows(); }
    Eigen::Index rank() const { return pos_eigs_.size(); }
    double tol_rank() const { return tol_rank_; }

    const ComplexMatrix& matrix() const { return a_; }            // Hermitized A
    const ComplexMatrix& range_basis() const { return v_; }       // n x r
    const RealVector& pos_eigs() const { return pos_eigs_; }      // descending
    const ComplexMatrix& sqrt() const { return sqrt_; }           // A^{1/2}
    const ComplexMatrix& sqrt_pinv() const { return sqrt_pinv_; } // (A^{1/2})^dagger
    const ComplexMatrix& pinv() const { return pinv_; }           // A^dagger
    const ComplexMatrix& proj() const { return proj_; }           // P onto R(A)

    double norm() const { return pos_eigs_(0); } // ||A||_2 = largest eigenvalue
    // Condition number of the positive part, kappa(D).
    double pos_cond() const { return pos_eigs_(0) / pos_eigs_(rank() - 1); }

    Complex a_inner(const ComplexVector& x, const ComplexVector& y) const;
    double a_seminorm(const ComplexVector& x) const;

private:
    SemiMetric() = default;

    ComplexMatrix a_;
    double tol_rank_ = kDefaultRankTol;
    ComplexMatrix v_;
    RealVector pos_eigs_;
    ComplexMatrix sqrt_;
    ComplexMatrix sqrt_pinv_;
    ComplexMatrix pinv_;
    ComplexMatrix proj_;
};

using MetricPtr = std::shared_ptr<const SemiMetric>;

inline MetricPtr new_metric(const ComplexMatrix& a, double tol_rank = kDefaultRankTol) {
    return SemiMetric::make(a, tol_rank);
}

} // namespace shs

#include "shs/metric.hpp"

#include <cmath>

namespace shs {

std::shared_ptr<const SemiMetric> SemiMetric::make(const ComplexMatrix& a, double tol_rank) {
    require_finite(a, "new_metric");
    require_square(a, "new_metric");
    if (!(tol_rank > 0.0))
        throw Error(errc::bad_input, "new_metric: tol_rank must be positive");

    double defect = hermitian_defect(a);
    if (defect > kDefaultHermTol)
        throw Error(errc::not_hermitian, "metric is not Hermitian within tolerance", defect);
    if (a.norm() == 0.0)
        throw Error(errc::zero_metric, "metric must be a non-zero PSD operator");

    auto m = std::shared_ptr<SemiMetric>(new SemiMetric());
    m->a_ = 0.5 * (a + a.adjoint());
    m->tol_rank_ = tol_rank;

    HermitianEigen f = herm_eig(m->a_, kDefaultHermTol);
    const Eigen::Index n = a.rows();
    double lambda_max = f.values(n - 1);
    double lambda_min = f.values(0);
    double scale = std::max(std::abs(lambda_max), std::abs(lambda_min));
    if (lambda_min < -kDefaultPsdTol * scale)
        throw Error(errc::not_psd, "metric has a negative eigenvalue beyond tolerance",
                    -lambda_min);
    if (!(lambda_max > 0.0))
        throw Error(errc::zero_metric, "metric must be a non-zero PSD operator");

    // Positive eigenpairs, descending. Eigenvalues within tol_rank of the top
    // of the spectrum count toward the rank; the clamped tail defines N(A).
    double cutoff = tol_rank * lambda_max;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (f.values(i) > cutoff) ++r;

    m->pos_eigs_ = RealVector(r);
    m->v_ = ComplexMatrix(n, r);
    for (Eigen::Index k = 0; k < r; ++k) {
        Eigen::Index src = n - 1 - k; // ascending -> descending
        m->pos_eigs_(k) = f.values(src);
        m->v_.col(k) = f.vectors.col(src);
    }

    RealVector d_sqrt = m->pos_eigs_.cwiseSqrt();
    RealVector d_sqrt_inv = d_sqrt.cwiseInverse();
    RealVector d_inv = m->pos_eigs_.cwiseInverse();

    m->sqrt_ = m->v_ * d_sqrt.asDiagonal() * m->v_.adjoint();
    m->sqrt_pinv_ = m->v_ * d_sqrt_inv.asDiagonal() * m->v_.adjoint();
    m->pinv_ = m->v_ * d_inv.asDiagonal() * m->v_.adjoint();
    m->proj_ = m->v_ * m->v_.adjoint();
    return m;
}

Complex SemiMetric::a_inner(const ComplexVector& x, const ComplexVector& y) const {
    if (x.size() != dim() || y.size() != dim())
        throw Error(errc::dimension_mismatch, "a_inner: vector length differs from metric dim");
    // <Ax, y> with Eigen's convention y^* (A x).
    return y.dot(a_ * x);
}

double SemiMetric::a_seminorm(const ComplexVector& x) const {
    if (x.size() != dim())
        throw Error(errc::dimension_mismatch, "a_seminorm: vector length differs from metric dim");
    // sqrt(<Ax, x>) evaluated as ||A^{1/2} x|| so roundoff cannot push the
    // radicand negative.
    return (sqrt_ * x).norm();
}

} // namespace shs

#include "shs/opspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shs {

AOperator AOperator::lift(MetricPtr metric, const ComplexMatrix& t, double tol_member) {
    require_finite(t, "try_lift");
    require_square(t, "try_lift");
    if (!metric)
        throw Error(errc::bad_input, "try_lift: null metric");
    if (t.rows() != metric->dim())
        throw Error(errc::dimension_mismatch, "try_lift: operator size differs from metric");

    const ComplexMatrix& p = metric->proj();
    const Eigen::Index n = t.rows();
    ComplexMatrix leak = p * t * (ComplexMatrix::Identity(n, n) - p);
    double residual = spectral_norm(leak);
    double scale = std::max(spectral_norm(t), 1.0);
    if (residual > tol_member * scale)
        throw Error(errc::not_a_member,
                    "operator moves N(A) out of N(A); ||P T (I-P)|| too large",
                    residual / scale);

    AOperator op;
    op.metric_ = std::move(metric);
    op.t_ = t;
    op.tol_member_ = tol_member;
    op.membership_residual_ = residual / scale;
    op.diamond_ = op.metric_->sqrt_pinv() * t.adjoint() * op.metric_->sqrt();
    op.sharp_ = op.metric_->pinv() * t.adjoint() * op.metric_->matrix();
    op.compression_ = op.metric_->range_basis().adjoint() * t * op.metric_->range_basis();
    return op;
}

ComplexMatrix AOperator::diamond_compression() const {
    RealVector s = metric_->pos_eigs().cwiseSqrt();
    return s.cwiseInverse().asDiagonal() * compression_.adjoint() * s.asDiagonal();
}

ComplexMatrix AOperator::norm_rep() const {
    RealVector s = metric_->pos_eigs().cwiseSqrt();
    return s.asDiagonal() * compression_ * s.cwiseInverse().asDiagonal();
}

double a_norm(const AOperator& op) {
    return spectral_norm(op.norm_rep());
}

double a_norm_power(const AOperator& op, int n) {
    if (n < 1) throw Error(errc::bad_input, "a_norm_power: n must be >= 1");
    ComplexMatrix b = op.norm_rep();
    ComplexMatrix acc = b;
    for (int k = 1; k < n; ++k) acc = acc * b;
    return spectral_norm(acc);
}

namespace {

double rotated_top_eig(const ComplexMatrix& b, double theta) {
    Complex phase = std::polar(1.0, theta);
    ComplexMatrix h = 0.5 * (phase * b + std::conj(phase) * b.adjoint());
    HermitianEigen f = herm_eig(h, 1e-8);
    return f.values(f.values.size() - 1);
}

} // namespace

double a_numerical_radius(const AOperator& op, int angle_samples) {
    if (angle_samples < 8)
        throw Error(errc::bad_input, "a_numerical_radius: need at least 8 angle samples");
    ComplexMatrix b = op.norm_rep();
    if (spectral_norm(b) == 0.0) return 0.0;

    const double two_pi = 2.0 * std::numbers::pi;
    double best = -1.0;
    double best_theta = 0.0;
    for (int k = 0; k < angle_samples; ++k) {
        double theta = two_pi * k / angle_samples;
        double val = rotated_top_eig(b, theta);
        if (val > best) {
            best = val;
            best_theta = theta;
        }
    }

    // Golden-section refinement inside the bracket around the best sample.
    double span = two_pi / angle_samples;
    double lo = best_theta - span, hi = best_theta + span;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = rotated_top_eig(b, c);
    double fd = rotated_top_eig(b, d);
    while (hi - lo > 1e-8) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = rotated_top_eig(b, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = rotated_top_eig(b, d);
        }
    }
    return std::max(best, std::max(fc, fd));
}

double reduced_min_modulus(const AOperator& op) {
    SvdResult f = svd(op.diamond());
    double cutoff = f.singular_values.size() > 0
                        ? op.metric()->tol_rank() * f.singular_values(0)
                        : 0.0;
    double smallest = 0.0;
    for (Eigen::Index i = 0; i < f.singular_values.size(); ++i)
        if (f.singular_values(i) > cutoff) smallest = f.singular_values(i);
    return smallest; // descending order: last one above the cutoff
}

IsometryCheck is_a_isometry(const AOperator& op, double tol) {
    ComplexMatrix gap = op.sharp() * op.matrix() - op.metric()->proj();
    double residual = spectral_norm(gap);
    return IsometryCheck{residual <= tol, residual};
}

UnitaryCheck is_a_unitary(const AOperator& op, double tol) {
    UnitaryCheck out;
    IsometryCheck direct = is_a_isometry(op, tol);
    out.residual = direct.residual;

    AOperator sharp_op = op.lift_sibling(op.sharp());
    IsometryCheck of_sharp = is_a_isometry(sharp_op, tol);
    out.sharp_residual = of_sharp.residual;

    out.holds = direct.holds && of_sharp.holds;
    if (out.holds) out.norm_defect = std::abs(a_norm(op) - 1.0);
    return out;
}

} // namespace shs

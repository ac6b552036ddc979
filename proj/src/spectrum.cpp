#include "shs/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace shs {

namespace {

double invert_scale(const AOperator& op, Complex lambda) {
    return std::max(1.0, std::abs(lambda) + spectral_norm(op.compression()));
}

} // namespace

InvertCertificate a_invertible(const AOperator& op, Complex lambda, double tol) {
    const Eigen::Index r = op.rank();
    ComplexMatrix shifted = lambda * ComplexMatrix::Identity(r, r) - op.compression();
    SvdResult f = svd(shifted);

    InvertCertificate cert;
    cert.sigma_min = f.singular_values(r - 1);
    cert.scale = invert_scale(op, lambda);
    cert.invertible = cert.sigma_min > tol * cert.scale;
    if (!cert.invertible) return cert;

    // Inverse of the compression embedded on R(A), zero on N(A). Membership
    // of both (lambda - T) and this S makes everything block lower
    // triangular, so the compression identity is the whole story.
    const ComplexMatrix& v = op.metric()->range_basis();
    ComplexMatrix s_small = f.v * f.singular_values.cwiseInverse().asDiagonal() * f.u.adjoint();
    cert.inverse = v * s_small * v.adjoint();

    const ComplexMatrix& a = op.metric()->matrix();
    ComplexMatrix m = lambda * ComplexMatrix::Identity(op.dim(), op.dim()) - op.matrix();
    double a_norm2 = spectral_norm(a);
    cert.residual_left = spectral_norm(a * m * cert.inverse - a) / a_norm2;
    cert.residual_right = spectral_norm(a * cert.inverse * m - a) / a_norm2;
    return cert;
}

OracleResult a_invertible_oracle(const AOperator& op, Complex lambda, double tol) {
    const Eigen::Index n = op.dim();
    if (n > kOracleDimGuard)
        throw Error(errc::too_large, "a_invertible_oracle: dimension exceeds the cost guard");

    const ComplexMatrix& p = op.metric()->proj();
    ComplexMatrix eye = ComplexMatrix::Identity(n, n);
    ComplexMatrix m = lambda * eye - op.matrix();

    // Linear constraints on vec(S), column-major:
    //   P m S     = P   ->  (I  (x) P m) vec S = vec P
    //   P S m     = P   ->  (m^T (x) P)  vec S = vec P
    //   P S (I-P) = 0   ->  ((I-P)^T (x) P) vec S = 0
    ComplexMatrix big(3 * n * n, n * n);
    big.topRows(n * n) = kron(eye, p * m);
    big.middleRows(n * n, n * n) = kron(m.transpose(), p);
    big.bottomRows(n * n) = kron((eye - p).transpose(), p);

    ComplexVector rhs(3 * n * n);
    rhs.head(n * n) = vec_cols(p);
    rhs.segment(n * n, n * n) = vec_cols(p);
    rhs.tail(n * n).setZero();

    LstsqResult ls = lstsq_min_norm(big, rhs);
    double p_scale = p.norm(); // ||P||_F = sqrt(rank)
    OracleResult out;
    out.residual = ls.residual_norm / p_scale;
    out.feasible = out.residual <= tol;
    return out;
}

std::vector<SpectrumPoint> a_spectrum(const AOperator& op, double tol) {
    GeneralEigenvalues eig = general_eig(op.compression());
    std::vector<Complex> values = eig.values;
    std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    std::vector<SpectrumPoint> points;
    size_t i = 0;
    while (i < values.size()) {
        Complex sum = values[i];
        size_t j = i + 1;
        double cluster = 1e-8 * (1.0 + std::abs(values[i]));
        while (j < values.size() && std::abs(values[j] - values[i]) <= cluster) {
            sum += values[j];
            ++j;
        }
        SpectrumPoint pt;
        pt.multiplicity = static_cast<int>(j - i);
        pt.lambda = sum / static_cast<double>(pt.multiplicity);
        points.push_back(pt);
        i = j;
    }

    for (SpectrumPoint& pt : points) {
        InvertCertificate cert = a_invertible(op, pt.lambda, tol);
        pt.sigma_min = cert.sigma_min;
        if (op.dim() <= kOracleDimGuard) {
            OracleResult oracle = a_invertible_oracle(op, pt.lambda, tol);
            pt.oracle_checked = true;
            pt.oracle_feasible = oracle.feasible;
        }
    }
    return points;
}

double r_a_exact(const AOperator& op) {
    return spectral_radius(op.compression());
}

std::vector<GelfandEntry> r_a_gelfand(const AOperator& op, int n_max, bool scaling) {
    if (n_max < 1) throw Error(errc::bad_input, "r_a_gelfand: n_max must be >= 1");
    ComplexMatrix b = op.norm_rep();
    const Eigen::Index r = b.rows();
    std::vector<GelfandEntry> out;
    out.reserve(static_cast<size_t>(n_max));

    double base = spectral_norm(b);
    if (base == 0.0) {
        for (int n = 1; n <= n_max; ++n) out.push_back({n, 0.0});
        return out;
    }

    if (!scaling) {
        ComplexMatrix acc = ComplexMatrix::Identity(r, r);
        for (int n = 1; n <= n_max; ++n) {
            acc = acc * b;
            if (!acc.allFinite())
                throw Error(errc::overflow, "r_a_gelfand: powers overflowed with scaling off");
            out.push_back({n, std::pow(spectral_norm(acc), 1.0 / n)});
        }
        return out;
    }

    // Powers of b/||b|| with Frobenius renormalization each step; norms are
    // re-accumulated in log space so 2^n-type growth cannot overflow.
    ComplexMatrix hat = b / base;
    ComplexMatrix y = ComplexMatrix::Identity(r, r);
    double log_acc = 0.0;
    bool dead = false;
    for (int n = 1; n <= n_max; ++n) {
        if (!dead) {
            y = y * hat;
            double fro = y.norm();
            if (fro == 0.0) {
                dead = true;
            } else {
                y /= fro;
                log_acc += std::log(fro);
            }
        }
        if (dead) {
            out.push_back({n, 0.0});
        } else {
            double log_norm = log_acc + std::log(spectral_norm(y));
            out.push_back({n, base * std::exp(log_norm / n)});
        }
    }
    return out;
}

SpectrumReport spectrum_report(const AOperator& op, int gelfand_n_max, double tol) {
    SpectrumReport rep;
    rep.sigma_a = a_spectrum(op, tol);
    rep.r_a = r_a_exact(op);

    AOperator diamond_op = op.lift_sibling(op.diamond());
    rep.r_a_diamond = r_a_exact(diamond_op);

    rep.gelfand = r_a_gelfand(op, gelfand_n_max);
    rep.formula_value =
        0.5 * (rep.r_a + rep.r_a_diamond + std::abs(rep.r_a_diamond - rep.r_a));

    rep.sigma_empty = rep.sigma_a.empty();
    rep.sup_sigma = 0.0;
    for (const SpectrumPoint& pt : rep.sigma_a)
        rep.sup_sigma = std::max(rep.sup_sigma, std::abs(pt.lambda));

    double match_tol = 1e-7 * std::max(1.0, rep.sup_sigma);
    bool op_side = std::abs(rep.r_a - rep.sup_sigma) <= match_tol;
    bool diamond_side = std::abs(rep.r_a_diamond - rep.sup_sigma) <= match_tol;
    rep.dominant_side = op_side && diamond_side ? "both"
                        : op_side               ? "operator"
                        : diamond_side          ? "diamond"
                                                : "neither";

    rep.norm_bound = std::max(a_norm(op), a_norm(diamond_op));

    double worst_sigma_min = 0.0;
    for (const SpectrumPoint& pt : rep.sigma_a)
        worst_sigma_min = std::max(worst_sigma_min, pt.sigma_min);
    rep.certificates["sigma_point_worst_sigma_min"] = worst_sigma_min;
    rep.certificates["formula_vs_sup_sigma"] = std::abs(rep.formula_value - rep.sup_sigma);
    rep.certificates["exact_vs_sup_sigma"] = std::abs(rep.r_a - rep.sup_sigma);
    if (!rep.gelfand.empty()) {
        double last = rep.gelfand.back().estimate;
        rep.certificates["gelfand_final_gap"] = std::abs(last - rep.r_a);
        rep.certificates["gelfand_gap_constant"] = gelfand_n_max * std::abs(last - rep.r_a);
    }
    double bound_excess = 0.0;
    for (const SpectrumPoint& pt : rep.sigma_a)
        bound_excess = std::max(bound_excess, std::abs(pt.lambda) - rep.norm_bound);
    rep.certificates["norm_bound_excess"] = bound_excess;
    return rep;
}

std::optional<ComplexMatrix> find_a_inverse(const AOperator& op, double tol) {
    const Eigen::Index r = op.rank();
    SvdResult f = svd(op.compression());
    double scale = std::max(1.0, spectral_norm(op.compression()));
    if (f.singular_values(r - 1) <= tol * scale) return std::nullopt;

    const ComplexMatrix& v = op.metric()->range_basis();
    ComplexMatrix inv_small =
        f.v * f.singular_values.cwiseInverse().asDiagonal() * f.u.adjoint();
    ComplexMatrix s = v * inv_small * v.adjoint();

    const ComplexMatrix& a = op.metric()->matrix();
    double a_scale = spectral_norm(a);
    double left = spectral_norm(a * op.matrix() * s - a) / a_scale;
    double right = spectral_norm(a * s * op.matrix() - a) / a_scale;
    if (left > std::max(tol, 1e-6) || right > std::max(tol, 1e-6)) return std::nullopt;
    return s;
}

PerturbationCheck perturbation_check(const AOperator& t, const AOperator& t_prime,
                                     double tol) {
    if (t.metric() != t_prime.metric())
        throw Error(errc::metric_mismatch, "perturbation_check: operators share no metric");
    std::optional<ComplexMatrix> s = find_a_inverse(t, tol);
    if (!s)
        throw Error(errc::not_invertible, "perturbation_check: T has no A-inverse");

    PerturbationCheck out;
    AOperator ts = t.lift_sibling(t_prime.matrix() * (*s));
    out.norm_ts = a_norm(ts);
    // ||X_diamond||_A equals the classical norm of the compression of X.
    out.norm_ts_diamond = spectral_norm(ts.compression());
    out.hypothesis_held = out.norm_ts < 1.0 && out.norm_ts_diamond < 1.0;
    if (out.hypothesis_held) {
        AOperator sum = t.lift_sibling(t.matrix() + t_prime.matrix());
        out.conclusion_verified = a_invertible(sum, Complex(0.0), tol).invertible;
    }
    return out;
}

} // namespace shs

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "shs/propcheck.hpp"
#include "shs/spectrum.hpp"

using namespace shs;

namespace {

MetricPtr proj_metric() {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    return new_metric(a);
}

AOperator hand_operator(const MetricPtr& m) {
    ComplexMatrix t(2, 2);
    t << 3.0, 0.0, 5.0, 7.0;
    return AOperator::lift(m, t);
}

} // namespace

TEST_CASE("invertibility at and away from the compressed eigenvalue") {
    MetricPtr m = proj_metric();
    AOperator op = hand_operator(m);

    InvertCertificate at = a_invertible(op, Complex(3.0));
    CHECK_FALSE(at.invertible);
    CHECK(at.sigma_min <= 1e-12);

    InvertCertificate away = a_invertible(op, Complex(6.0));
    CHECK(away.invertible);
    CHECK(away.residual_left <= 1e-10);
    CHECK(away.residual_right <= 1e-10);

    // The certificate inverse keeps the null space invariant.
    CHECK(spectral_norm(m->proj() * away.inverse *
                        (ComplexMatrix::Identity(2, 2) - m->proj())) <= 1e-12);
}

TEST_CASE("identity metric reduces to classical invertibility") {
    MetricPtr m = new_metric(ComplexMatrix::Identity(4, 4));
    AOperator op = AOperator::lift(m, Rng(7).cgauss_matrix(4, 4));
    for (Complex lambda : general_eig(op.matrix()).values)
        CHECK_FALSE(a_invertible(op, lambda).invertible);
    double exterior = spectral_norm(op.matrix()) + 1.0;
    CHECK(a_invertible(op, Complex(exterior)).invertible);
}

TEST_CASE("feasibility oracle basic cases") {
    MetricPtr m = new_metric(ComplexMatrix::Identity(2, 2));
    AOperator zero = AOperator::lift(m, ComplexMatrix::Zero(2, 2));
    OracleResult res = a_invertible_oracle(zero, Complex(0.0));
    CHECK_FALSE(res.feasible);
    CHECK(res.residual > 0.5);

    CHECK(a_invertible_oracle(zero, Complex(1.0)).feasible);
}

TEST_CASE("oracle refuses oversized problems") {
    MetricPtr m = new_metric(ComplexMatrix::Identity(13, 13));
    AOperator op = AOperator::lift(m, ComplexMatrix::Identity(13, 13));
    CHECK_THROWS_AS(a_invertible_oracle(op, Complex(0.5)), Error);
}

TEST_CASE("points beyond both norms are feasible for the oracle") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        MetricPtr m = random_semimetric(6, 3, seed);
        AOperator op = random_a_operator(m, seed ^ 0x11);
        AOperator diamond_op = op.lift_sibling(op.diamond());
        double bound = std::max(a_norm(op), a_norm(diamond_op));
        Complex lambda = std::polar(1.3 * bound + 0.1, 0.4 * seed);
        CHECK(a_invertible_oracle(op, lambda).feasible);
        CHECK(a_invertible(op, lambda).invertible);
    }
}

TEST_CASE("spectrum of the hand instance is the compressed eigenvalue") {
    MetricPtr m = proj_metric();
    AOperator op = hand_operator(m);
    std::vector<SpectrumPoint> sigma = a_spectrum(op);
    REQUIRE(sigma.size() == 1);
    CHECK(std::abs(sigma[0].lambda - Complex(3.0)) <= 1e-12);
    CHECK(sigma[0].oracle_checked);
    CHECK_FALSE(sigma[0].oracle_feasible);
    CHECK(r_a_exact(op) == doctest::Approx(3.0));
}

TEST_CASE("identity metric spectrum matches the classical eigenvalues") {
    MetricPtr m = new_metric(ComplexMatrix::Identity(5, 5));
    ComplexMatrix t = Rng(19).cgauss_matrix(5, 5);
    AOperator op = AOperator::lift(m, t);
    std::vector<SpectrumPoint> sigma = a_spectrum(op);

    std::vector<Complex> classical = general_eig(t).values;
    REQUIRE(sigma.size() == classical.size()); // simple spectrum a.s.
    for (const SpectrumPoint& pt : sigma) {
        double best = 1e9;
        for (Complex z : classical) best = std::min(best, std::abs(z - pt.lambda));
        CHECK(best <= 1e-9);
    }
}

TEST_CASE("repeated eigenvalues cluster into one point with multiplicity") {
    MetricPtr m = new_metric(ComplexMatrix::Identity(3, 3));
    AOperator op = AOperator::lift(m, 2.0 * ComplexMatrix::Identity(3, 3));
    std::vector<SpectrumPoint> sigma = a_spectrum(op);
    REQUIRE(sigma.size() == 1);
    CHECK(sigma[0].multiplicity == 3);
    CHECK(std::abs(sigma[0].lambda - Complex(2.0)) <= 1e-12);
}

TEST_CASE("gelfand sequence of a nilpotent operator dies at the index") {
    MetricPtr m = new_metric(ComplexMatrix::Identity(3, 3));
    ComplexMatrix t = ComplexMatrix::Zero(3, 3);
    t(0, 1) = 2.0;
    t(1, 2) = 3.0;
    AOperator op = AOperator::lift(m, t);
    std::vector<GelfandEntry> g = r_a_gelfand(op, 6);
    CHECK(g[0].estimate > 0.0);
    CHECK(g[1].estimate > 0.0);
    for (int n = 3; n <= 6; ++n) CHECK(g[static_cast<size_t>(n - 1)].estimate == 0.0);
}

TEST_CASE("gelfand estimates dominate the exact radius and match raw powers") {
    MetricPtr m = random_semimetric(6, 3, 59);
    AOperator op = random_a_operator(m, 61);
    double r = r_a_exact(op);
    std::vector<GelfandEntry> scaled = r_a_gelfand(op, 10, true);
    std::vector<GelfandEntry> raw = r_a_gelfand(op, 10, false);
    for (int i = 0; i < 10; ++i) {
        CHECK(scaled[static_cast<size_t>(i)].estimate ==
              doctest::Approx(raw[static_cast<size_t>(i)].estimate).epsilon(1e-10));
        CHECK(scaled[static_cast<size_t>(i)].estimate >= r - 1e-9 * std::max(1.0, r));
    }
    // Direct norm of the n-th power as an independent route.
    for (int n : {1, 2, 5}) {
        double direct = std::pow(a_norm_power(op, n), 1.0 / n);
        CHECK(scaled[static_cast<size_t>(n - 1)].estimate ==
              doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("gelfand without scaling overflows on astronomically scaled input") {
    MetricPtr m = new_metric(ComplexMatrix::Identity(2, 2));
    AOperator op = AOperator::lift(m, 1e100 * ComplexMatrix::Identity(2, 2));
    CHECK_THROWS_AS(r_a_gelfand(op, 8, false), Error);
    std::vector<GelfandEntry> ok = r_a_gelfand(op, 8, true);
    CHECK(ok.back().estimate == doctest::Approx(1e100).epsilon(1e-10));
}

TEST_CASE("full report on the hand instance") {
    MetricPtr m = proj_metric();
    AOperator op = hand_operator(m);
    SpectrumReport rep = spectrum_report(op, 8);
    CHECK(rep.r_a == doctest::Approx(3.0));
    CHECK(rep.r_a_diamond == doctest::Approx(3.0));
    CHECK(rep.formula_value == doctest::Approx(3.0));
    CHECK(rep.sup_sigma == doctest::Approx(3.0));
    CHECK(rep.dominant_side == "both");
    CHECK_FALSE(rep.sigma_empty);
    CHECK(rep.norm_bound >= 3.0);
    CHECK(rep.certificates.at("formula_vs_sup_sigma") <= 1e-12);
}

TEST_CASE("report collapses to classical quantities for the identity metric") {
    MetricPtr m = new_metric(ComplexMatrix::Identity(4, 4));
    ComplexMatrix t = Rng(73).cgauss_matrix(4, 4);
    AOperator op = AOperator::lift(m, t);
    SpectrumReport rep = spectrum_report(op, 6);
    CHECK(rep.r_a == doctest::Approx(spectral_radius(t)).epsilon(1e-10));
    CHECK(rep.formula_value == doctest::Approx(rep.sup_sigma).epsilon(1e-9));
}

TEST_CASE("radius formula and norm bound across random instances") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        MetricPtr m = random_semimetric(6, 3, seed ^ 0x21);
        AOperator op = random_a_operator(m, seed ^ 0x22);
        SpectrumReport rep = spectrum_report(op, 8);
        CHECK(std::abs(rep.formula_value - rep.sup_sigma) <=
              1e-7 * std::max(1.0, rep.sup_sigma));
        CHECK(std::abs(rep.r_a - rep.sup_sigma) <= 1e-7 * std::max(1.0, rep.r_a));
        for (const SpectrumPoint& pt : rep.sigma_a) {
            CHECK(std::abs(pt.lambda) <= rep.norm_bound + 1e-8);
            CHECK_FALSE(a_invertible(op, pt.lambda).invertible);
        }
        CHECK(rep.sup_sigma <= rep.gelfand.back().estimate + 1e-6);
    }
}

TEST_CASE("find_a_inverse on the hand instance") {
    MetricPtr m = proj_metric();
    AOperator op = hand_operator(m);
    std::optional<ComplexMatrix> s = find_a_inverse(op);
    REQUIRE(s.has_value());
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(0, 0) = 1.0 / 3.0;
    CHECK(spectral_norm(*s - expected) <= 1e-12);

    AOperator inv = op.lift_sibling(*s);
    CHECK(r_a_exact(op) * r_a_exact(inv) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("find_a_inverse returns nothing for a singular compression") {
    MetricPtr m = proj_metric();
    ComplexMatrix t = ComplexMatrix::Zero(2, 2);
    t(1, 0) = 5.0;
    t(1, 1) = 7.0;
    AOperator op = AOperator::lift(m, t);
    CHECK_FALSE(find_a_inverse(op).has_value());
}

TEST_CASE("inverse certificates on random certified instances") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        MetricPtr m = random_semimetric(5, 3, seed ^ 0x31);
        AOperator op = random_a_operator(m, seed ^ 0x32);
        std::optional<ComplexMatrix> s = find_a_inverse(op);
        if (!s) continue;
        const ComplexMatrix& a = m->matrix();
        CHECK(spectral_norm(a * op.matrix() * *s - a) <= 1e-7 * spectral_norm(a));
        CHECK(spectral_norm(a * *s * op.matrix() - a) <= 1e-7 * spectral_norm(a));
        AOperator inv = op.lift_sibling(*s);
        CHECK(r_a_exact(op) * r_a_exact(inv) >= 1.0 - 1e-7);
    }
}

TEST_CASE("perturbation by zero verifies trivially") {
    MetricPtr m = new_metric(ComplexMatrix::Identity(3, 3));
    AOperator t = AOperator::lift(m, ComplexMatrix::Identity(3, 3));
    AOperator zero = AOperator::lift(m, ComplexMatrix::Zero(3, 3));
    PerturbationCheck check = perturbation_check(t, zero);
    CHECK(check.hypothesis_held);
    CHECK(check.conclusion_verified);
    CHECK(check.norm_ts <= 1e-12);
}

TEST_CASE("halving the identity stays invertible") {
    MetricPtr m = new_metric(ComplexMatrix::Identity(3, 3));
    AOperator t = AOperator::lift(m, ComplexMatrix::Identity(3, 3));
    AOperator minus_half = AOperator::lift(m, -0.5 * ComplexMatrix::Identity(3, 3));
    PerturbationCheck check = perturbation_check(t, minus_half);
    CHECK(check.hypothesis_held);
    CHECK(check.norm_ts == doctest::Approx(0.5));
    CHECK(check.conclusion_verified);
}

TEST_CASE("perturbation check requires an invertible base operator") {
    MetricPtr m = proj_metric();
    ComplexMatrix t = ComplexMatrix::Zero(2, 2);
    t(1, 1) = 1.0;
    AOperator op = AOperator::lift(m, t); // compression is 0
    AOperator other = AOperator::lift(m, ComplexMatrix::Identity(2, 2));
    CHECK_THROWS_AS(perturbation_check(op, other), Error);
}

TEST_CASE("randomized perturbations within the hypothesis stay invertible") {
    int verified = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        MetricPtr m = random_semimetric(5, 2, seed ^ 0x41);
        AOperator t = random_a_operator(m, seed ^ 0x42);
        std::optional<ComplexMatrix> s = find_a_inverse(t);
        if (!s) continue;
        AOperator raw = random_a_operator(m, seed ^ 0x43);
        AOperator ts = t.lift_sibling(raw.matrix() * *s);
        double size = std::max(a_norm(ts), spectral_norm(ts.compression()));
        if (size == 0.0) continue;
        AOperator scaled = t.lift_sibling(raw.matrix() * (0.5 / size));
        PerturbationCheck check = perturbation_check(t, scaled);
        CHECK(check.hypothesis_held);
        CHECK(check.conclusion_verified);
        ++verified;
    }
    CHECK(verified >= 90);
}

TEST_CASE("dual-route invertibility agreement on sampled points") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        MetricPtr m = random_semimetric(6, 3, seed ^ 0x51);
        AOperator op = random_a_operator(m, seed ^ 0x52);
        Rng rng(seed ^ 0x53);
        std::vector<Complex> samples;
        for (const SpectrumPoint& pt : a_spectrum(op)) samples.push_back(pt.lambda);
        for (int k = 0; k < 5; ++k)
            samples.push_back(Complex(3.0 * rng.uniform() - 1.5, 3.0 * rng.uniform() - 1.5));
        samples.push_back(Complex(a_norm(op) + 1.0, 0.0));
        for (Complex lambda : samples)
            CHECK(a_invertible(op, lambda, 1e-7).invertible ==
                  a_invertible_oracle(op, lambda, 1e-7).feasible);
    }
}

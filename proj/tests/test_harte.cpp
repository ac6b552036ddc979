#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "shs/harte.hpp"
#include "shs/propcheck.hpp"

using namespace shs;

namespace {

MetricPtr proj_metric() {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    return new_metric(a);
}

// Commuting pair with diagonal compressions over a random rank-deficient
// metric; returns the expected joint points as the diagonal pairs.
OperatorTuple diagonal_pair(const MetricPtr& m, std::uint64_t seed,
                            std::vector<std::array<Complex, 2>>* expected) {
    Rng rng(seed);
    const Eigen::Index r = m->rank();
    const ComplexMatrix& v = m->range_basis();
    ComplexMatrix vn = orth_range(ComplexMatrix::Identity(m->dim(), m->dim()) - m->proj());
    std::vector<AOperator> ops;
    std::vector<ComplexVector> diags(2, ComplexVector(r));
    for (int j = 0; j < 2; ++j) {
        for (Eigen::Index k = 0; k < r; ++k) diags[static_cast<size_t>(j)](k) = rng.cgauss();
        ComplexMatrix t = v * diags[static_cast<size_t>(j)].asDiagonal() * v.adjoint();
        if (vn.cols() > 0) {
            ComplexVector kd(vn.cols());
            for (Eigen::Index k = 0; k < vn.cols(); ++k) kd(k) = rng.cgauss();
            t += vn * kd.asDiagonal() * vn.adjoint();
        }
        ops.push_back(AOperator::lift(m, t));
    }
    if (expected) {
        expected->clear();
        for (Eigen::Index k = 0; k < r; ++k)
            expected->push_back({diags[0](k), diags[1](k)});
    }
    return make_operator_tuple(std::move(ops));
}

} // namespace

TEST_CASE("tuple construction accepts powers and rejects non-commuting pairs") {
    MetricPtr m = new_metric(ComplexMatrix::Identity(4, 4));
    ComplexMatrix t = Rng(3).cgauss_matrix(4, 4);
    AOperator op = AOperator::lift(m, t);
    AOperator sq = AOperator::lift(m, t * t);
    OperatorTuple tuple = make_operator_tuple({op, sq});
    CHECK(tuple.commutation_residual <= 1e-12);
    CHECK(tuple.compression_commutation_residual <= 1e-10);

    AOperator adj = AOperator::lift(m, t.adjoint()); // non-normal t
    CHECK_THROWS_AS(make_operator_tuple({op, adj}), Error);
}

TEST_CASE("tuple construction rejects mixed metrics") {
    MetricPtr m1 = new_metric(ComplexMatrix::Identity(3, 3));
    MetricPtr m2 = new_metric(ComplexMatrix::Identity(3, 3));
    AOperator a = AOperator::lift(m1, ComplexMatrix::Identity(3, 3));
    AOperator b = AOperator::lift(m2, ComplexMatrix::Identity(3, 3));
    CHECK_THROWS_AS(make_operator_tuple({a, b}), Error);
}

TEST_CASE("single-operator accumulant starts at the squared norm") {
    MetricPtr m = proj_metric();
    ComplexMatrix t(2, 2);
    t << 3.0, 0.0, 5.0, 7.0;
    AOperator op = AOperator::lift(m, t);
    OperatorTuple tuple = make_operator_tuple({op});
    HarteReport rep = harte_radius(tuple, 4);
    CHECK(rep.radius_estimates[0].estimate == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rep.recurrence_check <= 1e-12);
}

TEST_CASE("single operator over the identity metric matches the classical sequence") {
    MetricPtr m = new_metric(ComplexMatrix::Identity(4, 4));
    ComplexMatrix t = Rng(11).cgauss_matrix(4, 4);
    AOperator op = AOperator::lift(m, t);
    HarteReport rep = harte_radius(make_operator_tuple({op}), 6);
    ComplexMatrix power = ComplexMatrix::Identity(4, 4);
    for (int n = 1; n <= 6; ++n) {
        power = power * t;
        double classic = std::pow(spectral_norm(power.adjoint() * power), 1.0 / (2.0 * n));
        CHECK(rep.radius_estimates[static_cast<size_t>(n - 1)].estimate ==
              doctest::Approx(classic).epsilon(1e-9));
    }
}

TEST_CASE("pair of identities gives the multinomial constant") {
    MetricPtr m = new_metric(ComplexMatrix::Identity(3, 3));
    AOperator one = AOperator::lift(m, ComplexMatrix::Identity(3, 3));
    OperatorTuple tuple = make_operator_tuple({one, one});
    HarteReport rep = harte_report(tuple, 6);
    for (const GelfandEntry& e : rep.radius_estimates)
        CHECK(e.estimate == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(rep.sup_l2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(rep.margin) <= 1e-12);
    CHECK(rep.bound_holds);
    CHECK(rep.recurrence_check <= 1e-12);
}

TEST_CASE("first estimate is capped by the product-norm bound") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        MetricPtr m = random_semimetric(5, 3, seed ^ 0x91);
        AOperator op = random_a_operator(m, seed ^ 0x92);
        AOperator sq = op.lift_sibling(op.matrix() * op.matrix());
        OperatorTuple tuple = make_operator_tuple({op, sq});
        HarteReport rep = harte_radius(tuple, 3);
        double cap = 0.0;
        for (const AOperator& t : tuple.ops)
            cap += a_norm(t.lift_sibling(t.diamond())) * a_norm(t);
        cap = std::sqrt(cap);
        for (const GelfandEntry& e : rep.radius_estimates) CHECK(e.estimate >= 0.0);
        CHECK(rep.radius_estimates[0].estimate <= cap * (1.0 + 1e-9));
    }
}

TEST_CASE("recurrence agrees with the direct multi-index sums at depth three") {
    MetricPtr m = random_semimetric(5, 3, 21);
    AOperator op = random_a_operator(m, 23, 0.7);
    ComplexMatrix t = op.matrix();
    AOperator sq = op.lift_sibling(t * t);
    AOperator cu = op.lift_sibling(t * t * t);
    OperatorTuple tuple = make_operator_tuple({op, sq, cu});
    HarteReport rep = harte_radius(tuple, 4);
    CHECK(rep.recurrence_check <= 1e-9);
}

TEST_CASE("estimates and joint points are invariant under permuting the tuple") {
    MetricPtr m = random_semimetric(5, 3, 31);
    std::vector<std::array<Complex, 2>> expected;
    OperatorTuple ab = diagonal_pair(m, 33, &expected);
    OperatorTuple ba = make_operator_tuple({ab.ops[1], ab.ops[0]});

    HarteReport ra = harte_report(ab, 5);
    HarteReport rb = harte_report(ba, 5);
    for (size_t i = 0; i < ra.radius_estimates.size(); ++i)
        CHECK(ra.radius_estimates[i].estimate ==
              doctest::Approx(rb.radius_estimates[i].estimate).epsilon(1e-9));
    CHECK(ra.sup_l2 == doctest::Approx(rb.sup_l2).epsilon(1e-9));

    REQUIRE(ra.joint_points.size() == rb.joint_points.size());
    for (const JointPoint& pt : ra.joint_points) {
        double best = 1e9;
        for (const JointPoint& qt : rb.joint_points)
            best = std::min(best, std::max(std::abs(pt.lambda[0] - qt.lambda[1]),
                                           std::abs(pt.lambda[1] - qt.lambda[0])));
        CHECK(best <= 1e-9);
    }
}

TEST_CASE("joint points of (T, T^2) lie on the squaring curve") {
    MetricPtr m = random_semimetric(5, 3, 41);
    AOperator op = random_a_operator(m, 43);
    AOperator sq = op.lift_sibling(op.matrix() * op.matrix());
    OperatorTuple tuple = make_operator_tuple({op, sq});
    std::vector<JointPoint> joint = joint_eigenvalues(tuple);
    REQUIRE(!joint.empty());
    for (const JointPoint& pt : joint) {
        CHECK(std::abs(pt.lambda[0] * pt.lambda[0] - pt.lambda[1]) <= 1e-7);
        if (pt.oracle_checked) CHECK_FALSE(pt.oracle_feasible);
    }
}

TEST_CASE("diagonal pair over the rank-one projector metric") {
    MetricPtr m = proj_metric();
    ComplexMatrix t1 = ComplexMatrix::Zero(2, 2);
    t1(0, 0) = 3.0;
    t1(1, 1) = 9.0; // null-space action is invisible to the joint spectrum
    ComplexMatrix t2 = ComplexMatrix::Zero(2, 2);
    t2(0, 0) = 2.0;
    t2(1, 1) = 1.0;
    OperatorTuple tuple =
        make_operator_tuple({AOperator::lift(m, t1), AOperator::lift(m, t2)});
    std::vector<JointPoint> joint = joint_eigenvalues(tuple);
    REQUIRE(joint.size() == 1);
    CHECK(std::abs(joint[0].lambda[0] - Complex(3.0)) <= 1e-10);
    CHECK(std::abs(joint[0].lambda[1] - Complex(2.0)) <= 1e-10);
}

TEST_CASE("single-operator joint points equal the spectrum exactly") {
    MetricPtr m = random_semimetric(6, 4, 51);
    AOperator op = random_a_operator(m, 53);
    OperatorTuple tuple = make_operator_tuple({op});
    std::vector<JointPoint> joint = joint_eigenvalues(tuple);
    std::vector<SpectrumPoint> sigma = a_spectrum(op);
    REQUIRE(joint.size() == sigma.size());
    for (size_t i = 0; i < joint.size(); ++i) {
        CHECK(joint[i].lambda[0] == sigma[i].lambda); // same pipeline, same bits
        CHECK(joint[i].multiplicity == sigma[i].multiplicity);
    }
}

TEST_CASE("weighted-coordinate route matches for tuples commuting with the metric") {
    MetricPtr m = random_semimetric(6, 3, 61);
    OperatorTuple tuple = diagonal_pair(m, 63, nullptr);
    HarteReport rep = harte_radius(tuple, 5);
    std::vector<GelfandEntry> other = harte_radius_sqrt_range_route(tuple, 5);
    for (size_t i = 0; i < other.size(); ++i)
        CHECK(rep.radius_estimates[i].estimate ==
              doctest::Approx(other[i].estimate).epsilon(1e-8));
}

TEST_CASE("diagonal commuting pairs meet the joint-radius bound exactly") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        MetricPtr m = random_semimetric(5, 3, seed ^ 0x71);
        std::vector<std::array<Complex, 2>> expected;
        OperatorTuple tuple = diagonal_pair(m, seed ^ 0x72, &expected);
        HarteReport rep = harte_report(tuple, 6);

        double expected_sup = 0.0;
        for (const auto& pair : expected)
            expected_sup = std::max(expected_sup,
                                    std::hypot(std::abs(pair[0]), std::abs(pair[1])));
        CHECK(rep.sup_l2 == doctest::Approx(expected_sup).epsilon(1e-9));
        CHECK(rep.bound_holds);
        CHECK(std::abs(rep.margin) <= 1e-9);
        CHECK(rep.best_upper == doctest::Approx(expected_sup).epsilon(1e-9));
    }
}

TEST_CASE("joint resolvent oracle separates spectrum points from exterior points") {
    MetricPtr m = random_semimetric(5, 3, 81);
    OperatorTuple tuple = diagonal_pair(m, 83, nullptr);
    std::vector<JointPoint> joint = joint_eigenvalues(tuple);
    REQUIRE(!joint.empty());
    CHECK(joint[0].oracle_checked);
    CHECK_FALSE(joint[0].oracle_feasible);

    double reach = 0.0;
    for (const AOperator& op : tuple.ops) reach = std::max(reach, a_norm(op));
    std::vector<Complex> exterior = {Complex(2.0 * reach + 1.0), Complex(0.0)};
    OracleResult res = harte_point_oracle(tuple, exterior);
    CHECK(res.feasible);
}

TEST_CASE("cost guards fire") {
    MetricPtr m = new_metric(ComplexMatrix::Identity(2, 2));
    AOperator one = AOperator::lift(m, ComplexMatrix::Identity(2, 2));
    OperatorTuple tuple = make_operator_tuple({one});
    CHECK_THROWS_AS(harte_radius(tuple, 100000), Error);
    CHECK_THROWS_AS(harte_radius(tuple, 0), Error);

    MetricPtr big = new_metric(ComplexMatrix::Identity(11, 11));
    AOperator bop = AOperator::lift(big, ComplexMatrix::Identity(11, 11));
    OperatorTuple btuple = make_operator_tuple({bop});
    CHECK_THROWS_AS(harte_point_oracle(btuple, {Complex(0.0)}), Error);
}

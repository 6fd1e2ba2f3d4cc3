#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bbpg/prox.hpp"
#include "oracles.hpp"

#include <random>

using bbpg::Vector;

namespace {

// argmin_u  kappa |u| + 1/2 (u - v)^2  over [lo, hi], by 1-D search.
double prox_1d_oracle(double v, double kappa, double lo, double hi) {
    return oracle::minimize_1d([&](double u) { return kappa * std::abs(u) + 0.5 * (u - v) * (u - v); }, lo, hi);
}

}  // namespace

TEST_CASE("soft threshold matches a 1-D minimization") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-5.0, 5.0);
    for (int k = 0; k < 50; ++k) {
        const double v = U(rng);
        const double kappa = std::abs(U(rng)) / 2.0;
        Vector in(1);
        in << v;
        const double ours = bbpg::soft_threshold(in, kappa)[0];
        CHECK(ours == doctest::Approx(prox_1d_oracle(v, kappa, -20.0, 20.0)).epsilon(1e-7));
    }
}

TEST_CASE("soft threshold hand values") {
    Vector v(4);
    v << 3.0, -3.0, 0.5, -0.2;
    const Vector out = bbpg::soft_threshold(v, 1.0);
    CHECK(out[0] == 2.0);
    CHECK(out[1] == -2.0);
    CHECK(out[2] == 0.0);
    CHECK(out[3] == 0.0);
}

TEST_CASE("l1 in box prox is the 1-D constrained minimizer per coordinate") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-4.0, 4.0);
    const Vector coeffs = (Vector(2) << 0.5, 0.25).finished();
    const Vector lower = Vector::Constant(3, -1.5);
    const Vector upper = Vector::Constant(3, 2.0);
    bbpg::ProxKind kind = bbpg::WeightedL1InBox{coeffs, lower, upper};
    for (int k = 0; k < 30; ++k) {
        Vector v(3);
        v << U(rng), U(rng), U(rng);
        Vector w(2);
        w << std::abs(U(rng)), std::abs(U(rng));
        const double kappa = w.dot(coeffs);
        const Vector p = bbpg::combined_prox(kind, w, v);
        for (int j = 0; j < 3; ++j) {
            CHECK(p[j] == doctest::Approx(prox_1d_oracle(v[j], kappa, -1.5, 2.0)).epsilon(1e-7));
        }
    }
}

TEST_CASE("simplex projection agrees with support enumeration") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int n = 1; n <= 4; ++n) {
        for (int k = 0; k < 40; ++k) {
            Vector v(n);
            for (int j = 0; j < n; ++j) v[j] = U(rng);
            const Vector ours = bbpg::project_simplex(v);
            const Vector ref = oracle::simplex_projection_bruteforce(v);
            CHECK((ours - ref).norm() <= 1e-12);
            CHECK(ours.sum() == doctest::Approx(1.0));
            CHECK(ours.minCoeff() >= 0.0);
        }
    }
}

TEST_CASE("zero total weight leaves v unchanged for every kind") {
    Vector v(2);
    v << 7.0, -9.0;
    const Vector w = Vector::Zero(2);
    const std::vector<bbpg::ProxKind> kinds = {
        bbpg::ZeroKind{},
        bbpg::WeightedL1{Vector::Ones(2)},
        bbpg::BoxIndicator{Vector::Constant(2, -1.0), Vector::Constant(2, 1.0)},
        bbpg::SimplexIndicator{},
        bbpg::WeightedL1InBox{Vector::Ones(2), Vector::Constant(2, -1.0), Vector::Constant(2, 1.0)},
    };
    for (const auto& k : kinds) CHECK(bbpg::combined_prox(k, w, v) == v);
}

TEST_CASE("nonsmooth values and indicator domains") {
    bbpg::ProxKind l1 = bbpg::WeightedL1{(Vector(2) << 2.0, 0.5).finished()};
    const Vector x = (Vector(2) << 1.0, -3.0).finished();
    CHECK(bbpg::nonsmooth_value(l1, 0, x).value() == doctest::Approx(8.0));
    CHECK(bbpg::nonsmooth_value(l1, 1, x).value() == doctest::Approx(2.0));

    bbpg::ProxKind box = bbpg::BoxIndicator{Vector::Constant(2, -1.0), Vector::Constant(2, 1.0)};
    CHECK(bbpg::nonsmooth_value(box, 0, x).is_infinite());
    CHECK(bbpg::nonsmooth_value(box, 0, Vector::Zero(2)).value() == 0.0);
    CHECK_THROWS_AS(bbpg::nonsmooth_value(box, 0, x).value(), bbpg::InputError);

    bbpg::ProxKind simplex = bbpg::SimplexIndicator{};
    CHECK(bbpg::nonsmooth_value(simplex, 0, (Vector(2) << 0.3, 0.7).finished()).is_finite());
    CHECK(bbpg::nonsmooth_value(simplex, 0, (Vector(2) << 0.5, 0.7).finished()).is_infinite());
    CHECK(bbpg::has_indicator(simplex));
    CHECK_FALSE(bbpg::has_indicator(l1));
}

TEST_CASE("invalid kinds are rejected") {
    CHECK_THROWS_AS(bbpg::validate_kind(bbpg::WeightedL1{(Vector(2) << 1.0, -1.0).finished()}, 2, 3),
                    bbpg::InputError);
    CHECK_THROWS_AS(bbpg::validate_kind(bbpg::BoxIndicator{Vector::Constant(2, 1.0), Vector::Constant(2, -1.0)}, 2, 2),
                    bbpg::InputError);
    CHECK_THROWS_AS(bbpg::validate_kind(bbpg::WeightedL1{Vector::Ones(3)}, 2, 3), bbpg::InputError);
    CHECK_THROWS_AS(bbpg::combined_prox(bbpg::ZeroKind{}, (Vector(2) << 1.0, -0.1).finished(), Vector::Zero(2)),
                    bbpg::InputError);
    CHECK_NOTHROW(bbpg::validate_kind(bbpg::SimplexIndicator{}, 2, 4));
}

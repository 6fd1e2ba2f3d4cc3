#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bbpg/test_problems.hpp"

#include <Eigen/Eigenvalues>

#include <cstdio>
#include <filesystem>
#include <fstream>

using bbpg::Vector;

TEST_CASE("Markowitz data is embedded verbatim") {
    const auto d = bbpg::markowitz_data();
    REQUIRE(d.mu.size() == 8);
    CHECK(d.mu[0] == 1.0672);
    CHECK(d.mu[6] == 1.1975);
    CHECK(d.sigma(0, 0) == 0.0005);
    CHECK(d.sigma(6, 6) == 0.0672);
    CHECK((d.sigma - d.sigma.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Markowitz objectives") {
    const auto d = bbpg::markowitz_data();
    const bbpg::Problem p = bbpg::make_markowitz();
    bbpg::Evaluator ev(p);
    const Vector uniform = Vector::Constant(8, 1.0 / 8.0);
    // mean of the eight expected returns
    double mean = 0.0;
    for (double v : {1.0672, 1.1228, 1.1483, 1.1440, 1.1329, 1.1029, 1.1975, 0.9952}) mean += v / 8.0;
    CHECK(ev.evaluate_F(uniform)[0] == doctest::Approx(-mean).epsilon(1e-12));
    CHECK(ev.evaluate_F(uniform)[0] == doctest::Approx(-1.1139).epsilon(1e-4));
    for (int j = 0; j < 8; ++j) {
        const Vector e = Vector::Unit(8, j);
        CHECK(ev.evaluate_F(e)[1] == doctest::Approx(d.sigma(j, j)));
    }
    CHECK(*p.smooth(0).lipschitz == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(d.sigma));
    CHECK(*p.smooth(1).lipschitz == doctest::Approx(2.0 * es.eigenvalues().cwiseAbs().maxCoeff()));
    CHECK(bbpg::simplex_tangent_min_eigenvalue(d.sigma) > 0.0);
}

TEST_CASE("Markowitz rejects asymmetric or indefinite covariance") {
    auto d = bbpg::markowitz_data();
    d.sigma(0, 1) += 1e-3;
    CHECK_THROWS_AS(bbpg::make_markowitz(d), bbpg::InputError);
    d = bbpg::markowitz_data();
    d.sigma = -d.sigma;
    CHECK_THROWS_AS(bbpg::make_markowitz(d), bbpg::InputError);
}

TEST_CASE("returns table ingestion") {
    const auto path = std::filesystem::temp_directory_path() / "bbpg_returns_test.txt";
    {
        std::ofstream out(path);
        out << "A B\n1.1 0.9\n1.2 1.0\n0.9 1.3\n";
    }
    const auto d = bbpg::load_returns_table(path.string());
    CHECK(d.mu[0] == doctest::Approx(std::cbrt(1.1 * 1.2 * 0.9)));
    CHECK(d.mu[1] == doctest::Approx(std::cbrt(0.9 * 1.0 * 1.3)));
    // sample variance of (1.1, 1.2, 0.9): mean 1.0667, divisor 2
    CHECK(d.sigma(0, 0) == doctest::Approx(((1.1 - 16.0 / 15) * (1.1 - 16.0 / 15) + (1.2 - 16.0 / 15) * (1.2 - 16.0 / 15) +
                                            (0.9 - 16.0 / 15) * (0.9 - 16.0 / 15)) /
                                           2.0));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(bbpg::load_returns_table("/nonexistent/returns.txt"), bbpg::Error);
}

TEST_CASE("named problems") {
    bbpg::Evaluator bk1(bbpg::make_named("BK1"));
    const auto vals = bk1.evaluate(Vector::Zero(2));
    CHECK(vals.f[0] == doctest::Approx(0.0));
    CHECK(vals.f[1] == doctest::Approx(50.0));

    for (const char* key : {"JOS1a", "JOS1b"}) {
        const bbpg::Problem p = bbpg::make_named(key);
        bbpg::Evaluator ev(p);
        const auto v = ev.evaluate(Vector::Ones(p.n()));
        CHECK(v.f[0] == doctest::Approx(1.0));
        CHECK(v.f[1] == doctest::Approx(1.0));
        CHECK(v.g[0] == doctest::Approx(1.0));  // (1/n) ||1||_1
    }
    CHECK(bbpg::make_named("JOS1a").n() == 50);
    CHECK(bbpg::make_named("JOS1b").n() == 100);
    CHECK_THROWS_AS(bbpg::make_named("XYZ"), bbpg::RegistryError);
    try {
        bbpg::make_named("XYZ");
    } catch (const bbpg::RegistryError& e) {
        CHECK(std::string(e.what()).find("JOS1a") != std::string::npos);
    }
    for (const auto& info : bbpg::registered_problems()) {
        const bbpg::Problem p = bbpg::make_named(info.key);
        CHECK(p.n() == info.n);
        CHECK(p.m() == info.m);
    }
}

TEST_CASE("random quadratic family") {
    bbpg::QuadraticSpec spec;
    spec.n = 10;
    spec.bounds = bbpg::Bounds{Vector::Constant(10, -2.0), Vector::Constant(10, 2.0)};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        spec.seed = seed;
        const bbpg::Problem p = bbpg::make_quadratic(spec);
        const Vector L = *p.lipschitz();
        const Vector mu = *p.strong_convexity();
        CHECK(L.maxCoeff() <= 100.0);
        CHECK(mu.minCoeff() >= 1.0);
        CHECK((mu.array() <= L.array()).all());
    }
    spec.seed = 3;
    CHECK(bbpg::generate_quadratic(spec).fingerprint() == bbpg::generate_quadratic(spec).fingerprint());
    auto other = spec;
    other.seed = 4;
    CHECK(bbpg::generate_quadratic(spec).fingerprint() != bbpg::generate_quadratic(other).fingerprint());

    bbpg::QuadraticInstance inst;
    inst.diag = {Vector::Ones(3), Vector::Ones(3)};
    inst.b = {(Vector(3) << 1.0, 2.0, 3.0).finished(), (Vector(3) << -1.0, 0.0, 1.0).finished()};
    bbpg::QuadraticSpec s3;
    s3.n = 3;
    s3.bounds.reset();
    s3.l1 = false;
    const bbpg::Problem p = bbpg::make_quadratic(inst, s3);
    bbpg::Evaluator ev(p);
    const Vector x = (Vector(3) << 0.5, -1.0, 2.0).finished();
    const auto J = ev.evaluate_jacobian(x);
    CHECK((J.row(0).transpose() - (x + inst.b[0])).norm() == 0.0);
    CHECK((J.row(1).transpose() - (x + inst.b[1])).norm() == 0.0);
}

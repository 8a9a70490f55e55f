#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "ssaug/rng.hpp"
#include "ssaug/ssa.hpp"

using namespace ssaug;

namespace {

TimeSeries ramp(Eigen::Index n) {
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = static_cast<double>(i + 1);
    return TimeSeries(std::move(x));
}

TimeSeries random_series(Rng& rng, Eigen::Index n) {
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = 2.0 * rng.uniform() - 1.0;
    return TimeSeries(std::move(x));
}

std::set<int> all_components(int m) {
    std::set<int> s;
    for (int k = 0; k < m; ++k) s.insert(k);
    return s;
}

}  // namespace

TEST_CASE("embed unrolls the definition") {
    auto y = embed(ramp(5), SsaConfig{3});
    CHECK(y.rows.rows() == 3);
    CHECK(y.rows.cols() == 3);
    CHECK(y.rows.row(0).isApprox(Eigen::RowVector3d(1, 2, 3)));
    CHECK(y.rows.row(1).isApprox(Eigen::RowVector3d(2, 3, 4)));
    CHECK(y.rows.row(2).isApprox(Eigen::RowVector3d(3, 4, 5)));

    auto single = embed(ramp(3), SsaConfig{2});
    CHECK(single.rows.rows() == 2);

    CHECK_THROWS_AS(embed(ramp(2), SsaConfig{2}), WindowTooLarge);
    CHECK_THROWS_AS(embed(ramp(3), SsaConfig{3}), WindowTooLarge);
}

TEST_CASE("embed output is Hankel") {
    Rng rng(5);
    auto y = embed(random_series(rng, 40), SsaConfig{9});
    for (Eigen::Index i = 0; i + 1 < y.rows.rows(); ++i)
        for (Eigen::Index j = 1; j < y.rows.cols(); ++j) CHECK(y.rows(i, j) == y.rows(i + 1, j - 1));
}

TEST_CASE("covariance hand example and symmetry") {
    auto y = embed(ramp(5), SsaConfig{3});
    Eigen::Matrix3d expected;
    expected << 14, 20, 26, 20, 29, 38, 26, 38, 50;
    expected /= 5.0;
    CHECK(covariance(y).isApprox(expected, 1e-12));

    auto zeros = embed(TimeSeries(Eigen::VectorXd::Zero(10)), SsaConfig{4});
    CHECK(covariance(zeros).norm() == 0.0);

    Rng rng(2);
    auto c = covariance(embed(random_series(rng, 50), SsaConfig{11}));
    CHECK(c == c.transpose().eval());
}

TEST_CASE("decompose: constant series has rank-1 spectrum") {
    auto d = decompose(TimeSeries(Eigen::VectorXd::Constant(30, 4.2)), SsaConfig{6});
    for (int k = 1; k < 6; ++k) CHECK(d.eigenvalues[k] <= 1e-10 * d.eigenvalues[0]);
    // uniform eigenvector up to sign; the sign convention makes it positive
    const Eigen::VectorXd e0 = d.eigenvectors.col(0);
    CHECK((e0.array() - e0[0]).abs().maxCoeff() < 1e-10);
    CHECK(e0[0] > 0.0);
}

TEST_CASE("decompose: sinusoid yields an eigenvalue pair") {
    const Eigen::Index n = 91;
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i)
        x[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / 10.0);
    auto d = decompose(TimeSeries(std::move(x)), SsaConfig{17});
    CHECK(d.eigenvalues[1] > 100.0 * d.eigenvalues[2]);
    CHECK(d.eigenvalues[0] < 10.0 * d.eigenvalues[1]);
}

TEST_CASE("decompose matches a brute-force eigensolver oracle") {
    Rng rng(17);
    auto s = random_series(rng, 60);
    const SsaConfig cfg{8};
    auto d = decompose(s, cfg);
    const Eigen::MatrixXd c = covariance(embed(s, cfg));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(c);
    REQUIRE(oracle.info() == Eigen::Success);
    for (int k = 0; k < 8; ++k) {
        CHECK(d.eigenvalues[k] == doctest::Approx(oracle.eigenvalues()[7 - k]).epsilon(1e-10));
        // same eigenvector up to sign
        const Eigen::VectorXd mine = d.eigenvectors.col(k);
        Eigen::VectorXd ref = oracle.eigenvectors().col(7 - k);
        if (mine.dot(ref) < 0.0) ref = -ref;
        CHECK((mine - ref).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("decomposition invariants: order, orthonormality, trace, pc consistency") {
    Rng rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        auto s = random_series(rng, 70 + static_cast<Eigen::Index>(rng.uniform_int(0, 40)));
        const SsaConfig cfg{17};
        auto d = decompose(s, cfg);

        for (int k = 1; k < cfg.window; ++k) CHECK(d.eigenvalues[k - 1] >= d.eigenvalues[k]);
        CHECK(d.eigenvalues.minCoeff() >= 0.0);

        const Eigen::MatrixXd gram = d.eigenvectors.transpose() * d.eigenvectors;
        CHECK((gram - Eigen::MatrixXd::Identity(17, 17)).cwiseAbs().maxCoeff() < 1e-8);

        const Eigen::MatrixXd c = covariance(embed(s, cfg));
        CHECK(d.eigenvalues.sum() == doctest::Approx(c.trace()).epsilon(1e-8));

        const Eigen::MatrixXd y = embed(s, cfg).rows;
        CHECK((d.pcs - y * d.eigenvectors).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("reconstruct: completeness over all components") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index n = 20 + static_cast<Eigen::Index>(rng.uniform_int(0, 100));
        const int m = 2 + static_cast<int>(rng.uniform_int(0, static_cast<std::uint64_t>(n - 3)));
        auto s = random_series(rng, n);
        auto d = decompose(s, SsaConfig{m});

        // sum of every single-component RC reproduces the input
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
        for (int k = 0; k < m; ++k) sum += reconstruct(d, {k}).values;
        const double scale = s.values.cwiseAbs().maxCoeff();
        CHECK((sum - s.values).cwiseAbs().maxCoeff() < 1e-8 * std::max(scale, 1.0));
    }
}

TEST_CASE("reconstruct: constant series from its dominant component") {
    auto s = TimeSeries(Eigen::VectorXd::Constant(25, 3.0));
    auto d = decompose(s, SsaConfig{5});
    auto rc = reconstruct(d, {0});
    CHECK((rc.values - s.values).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("reconstruct: linearity over disjoint groups") {
    Rng rng(41);
    auto s = random_series(rng, 50);
    auto d = decompose(s, SsaConfig{10});
    auto a = reconstruct(d, {0, 2, 4});
    auto b = reconstruct(d, {1, 3});
    auto both = reconstruct(d, {0, 1, 2, 3, 4});
    CHECK((a.values + b.values - both.values).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("reconstruct error cases") {
    Rng rng(43);
    auto d = decompose(random_series(rng, 30), SsaConfig{6});
    CHECK_THROWS_AS(reconstruct(d, {}), EmptyGroup);
    CHECK_THROWS_AS(reconstruct(d, {6}), IndexOutOfRange);
}

TEST_CASE("select_significant") {
    Rng rng(47);
    SsaDecomposition d;
    d.window = 6;
    d.origin_len = 40;
    d.eigenvalues = (Eigen::VectorXd(6) << 100, 1, 1, 1, 1, 1).finished();
    auto g = select_significant(d, VarianceThreshold{0.9});
    CHECK(g.signal_set == std::set<int>{0});
    CHECK(g.noise_set.size() == 5);

    // constant series: k = 1 under every selector
    auto dc = decompose(TimeSeries(Eigen::VectorXd::Constant(30, 2.0)), SsaConfig{6});
    for (const SelectorSpec sel : {SelectorSpec{VarianceThreshold{0.9}}, SelectorSpec{ScreeKnee{}}})
        CHECK(select_significant(dc, sel).signal_set == std::set<int>{0});

    // noisy sinusoid: the knee finds the two-eigenvalue pair
    const Eigen::Index n = 91;
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i)
        x[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / 10.0) +
               0.02 * (2.0 * rng.uniform() - 1.0);
    auto ds = decompose(TimeSeries(std::move(x)), SsaConfig{17});
    auto gk = select_significant(ds, ScreeKnee{});
    CHECK(gk.signal_set == std::set<int>{0, 1});

    // fixed-k clamps into range
    CHECK(select_significant(d, FixedK{3}).signal_set == std::set<int>{0, 1, 2});
}

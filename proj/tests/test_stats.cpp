#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles/crosscheck.hpp"
#include "oracles/generators.hpp"
#include "oracles/stats_oracles.hpp"
#include "tarc/error.hpp"
#include "tarc/stats.hpp"

using namespace tarc;
using Catch::Approx;
using V = std::vector<double>;

TEST_CASE("spearman examples") {
    CHECK(spearman(V{1, 2, 3}, V{10, 20, 30}).statistic == Approx(1.0).margin(1e-15));
    CHECK(spearman(V{1, 2, 3}, V{3, 1, 2}).statistic == Approx(-0.5).margin(1e-15));
    CHECK(average_ranks(V{1, 1, 2}) == V{1.5, 1.5, 3});
    CHECK_THROWS_AS(spearman(V{1, 1, 1}, V{1, 2, 3}), MathError);
}

TEST_CASE("point-biserial examples") {
    CHECK(point_biserial(V{0, 0, 1, 1}, V{1, 1, 3, 3}).statistic == Approx(1.0).margin(1e-15));
    CHECK_THROWS_AS(point_biserial(V{0, 1, 0, 1}, V{5, 5, 5, 5}), MathError);
    CHECK(point_biserial(V{0, 0, 1, 1}, V{1, 2, 2, 3}).statistic == Approx(std::sqrt(0.5)).margin(1e-12));
}

TEST_CASE("Mood's median test examples") {
    auto r = moods_median(V{1, 2, 3, 10}, V{8, 9, 11, 12});
    CHECK(r.test.statistic == Approx(2.0).margin(1e-12));
    CHECK(r.a_above == 1);
    CHECK(r.a_below == 3);
    CHECK(moods_median(V{1, 2, 3, 4}, V{1, 2, 3, 4}).test.statistic == Approx(0).margin(1e-12));
    CHECK(moods_median(V{1, 1}, V{9, 9}).test.statistic == Approx(4.0).margin(1e-12));
}

TEST_CASE("Cohen's kappa examples") {
    std::vector<int> a{0, 1, 0, 1, 1}, b = a;
    CHECK(cohens_kappa(a, b) == 1.0);
    // confusion [[20,5],[10,15]]
    std::vector<int> r1, r2;
    auto add = [&](int x, int y, int n) {
        for (int i = 0; i < n; ++i) r1.push_back(x), r2.push_back(y);
    };
    add(0, 0, 20);
    add(0, 1, 5);
    add(1, 0, 10);
    add(1, 1, 15);
    CHECK(cohens_kappa(r1, r2) == Approx(0.4).margin(1e-12));
    CHECK(cohens_kappa(std::vector<int>{0, 0, 1, 1}, std::vector<int>{0, 1, 0, 1}) == Approx(0).margin(1e-15));
}

TEST_CASE("ROC AUC examples") {
    CHECK(roc_auc(V{0.1, 0.2, 0.8, 0.9}, std::vector<int>{0, 0, 1, 1}) == 1.0);
    CHECK(roc_auc(V{0.1, 0.4, 0.35, 0.8}, std::vector<int>{0, 0, 1, 1}) == 0.75);
    CHECK(roc_auc(V{0.5, 0.5, 0.5}, std::vector<int>{0, 1, 1}) == 0.5);
}

TEST_CASE("RMSE examples") {
    CHECK(rmse(V{1, 2}, V{1, 2}) == 0.0);
    CHECK(rmse(V{0, 0}, V{3, 4}) == Approx(std::sqrt(12.5)).margin(1e-15));
    CHECK(rmse(V{1}, V{2}) == 1.0);
}

TEST_CASE("OLS examples") {
    Eigen::MatrixXd X(3, 2);
    X << 1, 0, 1, 1, 1, 2;
    Eigen::VectorXd y(3);
    y << 1, 3, 5;
    auto r = ols(X, y, {"intercept", "x"});
    CHECK(r.coefficients[0] == Approx(1).margin(1e-12));
    CHECK(r.coefficients[1] == Approx(2).margin(1e-12));
    CHECK(r.rmse == Approx(0).margin(1e-12));

    // Hand case: x = 0,1,2, y = 1,2,4. slope 1.5, intercept 5/6, SSR = 1/6,
    // s^2 = 1/6, Sxx = 2: se(slope) = sqrt(1/12), se(intercept) = sqrt(s^2 (1/3 + 1/2)).
    y << 1, 2, 4;
    auto h = ols(X, y, {"intercept", "x"});
    CHECK(h.coefficients[1] == Approx(1.5).margin(1e-12));
    CHECK(h.coefficients[0] == Approx(5.0 / 6.0).margin(1e-12));
    CHECK(h.std_errors[1] == Approx(std::sqrt(1.0 / 12.0)).margin(1e-12));
    CHECK(h.std_errors[0] == Approx(std::sqrt(1.0 / 6.0 * (1.0 / 3.0 + 0.5))).margin(1e-12));

    Eigen::MatrixXd dup(4, 3);
    dup << 1, 1, 1, 1, 2, 2, 1, 3, 3, 1, 5, 5;
    Eigen::VectorXd yd(4);
    yd << 1, 2, 3, 4;
    try {
        ols(dup, yd, {"intercept", "a", "b"});
        FAIL("expected MathError");
    } catch (const MathError& e) {
        const std::string msg = e.what();
        CHECK((msg.find("a") != std::string::npos || msg.find("b") != std::string::npos));
    }
    CHECK_THROWS_AS(ols(X.topRows(2), y.head(2), {"intercept", "x"}), MathError);
}

TEST_CASE("OLS on unrelated noise has R-squared near zero") {
    gen::Source g(2);
    const int n = 20000;
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        X(i, 0) = 1;
        X(i, 1) = g.normal();
        y(i) = g.normal();
    }
    CHECK(ols(X, y, {"i", "x"}).r_squared < 1e-3);
}

TEST_CASE("VIF examples") {
    Eigen::MatrixXd X(4, 3);
    X << 1, 1, 1, 1, -1, 1, 1, 1, -1, 1, -1, -1;
    auto v = vif(X);
    CHECK(v[0] == Approx(1).margin(1e-12));
    CHECK(v[1] == Approx(1).margin(1e-12));

    Eigen::MatrixXd D(4, 3);
    D << 1, 1, 1, 1, 2, 2, 1, 3, 3, 1, 4, 4;
    CHECK(std::isinf(vif(D)[0]));

    // Two regressors with sample correlation exactly 0.9.
    gen::Source g(9);
    const int n = 200;
    Eigen::VectorXd a(n), e(n);
    for (int i = 0; i < n; ++i) a(i) = g.normal(), e(i) = g.normal();
    auto center = [](Eigen::VectorXd v) { return Eigen::VectorXd(v.array() - v.mean()); };
    a = center(a);
    e = center(e);
    e -= a * (a.dot(e) / a.dot(a));  // orthogonal to a
    a /= a.norm();
    e /= e.norm();
    Eigen::VectorXd b = 0.9 * a + std::sqrt(1 - 0.81) * e;
    Eigen::MatrixXd C(n, 3);
    C.col(0).setOnes();
    C.col(1) = a;
    C.col(2) = b;
    auto vc = vif(C);
    CHECK(vc[0] == Approx(1 / (1 - 0.81)).epsilon(1e-9));
    CHECK(vc[1] == Approx(1 / (1 - 0.81)).epsilon(1e-9));
}

TEST_CASE("statistics agree with brute-force oracles on random small instances") {
    for (const auto& ck : check::stats_crosscheck(2024, 40)) {
        INFO(ck.name << ": " << (ck.failures.empty() ? "" : ck.failures[0]));
        CHECK(ck.instances >= 20);
        CHECK(ck.ok());
    }
}

TEST_CASE("statistics invariants", "[property]") {
    gen::Source g(77);
    for (int k = 0; k < 200; ++k) {
        const auto n = static_cast<std::size_t>(g.integer(4, 30));
        auto x = check::nonconstant(g, n, k % 2 == 0);
        auto y = check::nonconstant(g, n, k % 3 == 0);

        const double rho = spearman(x, y).statistic;
        CHECK(rho == Approx(spearman(y, x).statistic).margin(1e-12));
        CHECK(rho >= -1.0);
        CHECK(rho <= 1.0);
        V ex(n), cube(n);
        for (std::size_t i = 0; i < n; ++i) ex[i] = std::exp(3 * x[i]), cube[i] = -std::pow(y[i] - 0.3, 3);
        CHECK(spearman(ex, y).statistic == Approx(rho).margin(1e-12));
        CHECK(spearman(x, cube).statistic == Approx(-rho).margin(1e-12));

        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = i < 2 ? static_cast<int>(i) : g.integer(0, 1);
        V neg(n);
        for (std::size_t i = 0; i < n; ++i) neg[i] = -x[i];
        CHECK(roc_auc(x, labels) + roc_auc(neg, labels) == Approx(1.0).margin(1e-12));

        V a(x.begin(), x.begin() + static_cast<long>(n / 2)), b(x.begin() + static_cast<long>(n / 2), x.end());
        V a2 = a, b2 = b;
        for (auto& v : a2) v += 7.25;
        for (auto& v : b2) v += 7.25;
        if (oracle::moods_median(a, b).degenerate) {
            CHECK_THROWS_AS(moods_median(a, b), MathError);
            CHECK_THROWS_AS(moods_median(a2, b2), MathError);
        } else {
            CHECK(moods_median(a, b).test.statistic == Approx(moods_median(a2, b2).test.statistic).margin(1e-12));
        }

        V bin(n);
        for (std::size_t i = 0; i < n; ++i) bin[i] = labels[i];
        CHECK(point_biserial(bin, y).statistic == Approx(oracle::pearson(bin, y)).margin(1e-12));

        std::vector<int> r1(n), r2(n);
        for (std::size_t i = 0; i < n; ++i) r1[i] = labels[i], r2[i] = labels[i];
        CHECK(cohens_kappa(r1, r2) == Approx(1.0).margin(1e-15));
        r2[0] = 1 - r2[0];
        CHECK(cohens_kappa(r1, r2) < 1.0);

        const auto p = static_cast<Eigen::Index>(g.integer(2, 4));
        const auto rows = static_cast<Eigen::Index>(n) + p;
        Eigen::MatrixXd X(rows, p);
        Eigen::VectorXd yy(rows);
        for (Eigen::Index i = 0; i < rows; ++i) {
            X(i, 0) = 1;
            for (Eigen::Index j = 1; j < p; ++j) X(i, j) = g.normal(0, 5);
            yy(i) = g.normal(0, 3);
        }
        std::vector<std::string> names(static_cast<std::size_t>(p), "x");
        auto fit = ols(X, yy, names);
        Eigen::VectorXd resid = yy;
        for (Eigen::Index i = 0; i < rows; ++i) resid(i) -= fit.fitted[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < p; ++j)
            CHECK(std::fabs(X.col(j).dot(resid)) <= 1e-8 * std::max(1.0, X.col(j).norm() * yy.norm()));
    }
}

#include "tarc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "tarc/error.hpp"

namespace tarc {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw DataError(std::string(what) + ": inputs differ in length");
}

double t_two_sided(double t, double df) {
    if (std::isinf(t)) return 0.0;
    boost::math::students_t dist(df);
    return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))), 0.0, 1.0);
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && x[order[j]] == x[order[i]]) ++j;
        const double r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
        i = j;
    }
    return ranks;
}

double mean(std::span<const double> x) {
    if (x.empty()) throw DataError("mean of an empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double median(std::span<const double> x) {
    if (x.empty()) throw DataError("median of an empty sample");
    std::vector<double> v(x.begin(), x.end());
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

double pearson_r(std::span<const double> x, std::span<const double> y) {
    require_same_length(x.size(), y.size(), "pearson");
    if (x.size() < 2) throw DataError("pearson: need at least two observations");
    const double mx = mean(x), my = mean(y);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) throw MathError("correlation undefined: constant input");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double correlation_p_value(double r, std::size_t n) {
    if (n < 3) return std::numeric_limits<double>::quiet_NaN();
    const double df = static_cast<double>(n - 2);
    if (std::fabs(r) >= 1.0) return 0.0;
    return t_two_sided(r * std::sqrt(df / (1.0 - r * r)), df);
}

TestResult spearman(std::span<const double> x, std::span<const double> y) {
    require_same_length(x.size(), y.size(), "spearman");
    if (x.size() < 3) throw DataError("spearman: need at least three observations");
    const auto rx = average_ranks(x), ry = average_ranks(y);
    const double rho = pearson_r(rx, ry);
    return {rho, correlation_p_value(rho, x.size()), "spearman/t-approx"};
}

TestResult point_biserial(std::span<const double> binary, std::span<const double> y) {
    require_same_length(binary.size(), y.size(), "point_biserial");
    bool zero = false, one = false;
    for (double b : binary) {
        if (b == 0.0) zero = true;
        else if (b == 1.0) one = true;
        else throw DataError("point_biserial: binary variable must be coded 0/1");
    }
    if (!zero || !one) throw MathError("point_biserial: only one class present");
    const double r = pearson_r(binary, y);
    return {r, correlation_p_value(r, y.size()), "point-biserial/t-approx"};
}

MedianTestResult moods_median(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw DataError("moods_median: both groups must be non-empty");
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    MedianTestResult r;
    r.grand_median = median(pooled);
    r.median_a = median(a);
    r.median_b = median(b);
    for (double v : a) {
        if (v > r.grand_median) ++r.a_above;
        else if (v < r.grand_median) ++r.a_below;
    }
    for (double v : b) {
        if (v > r.grand_median) ++r.b_above;
        else if (v < r.grand_median) ++r.b_below;
    }
    const double o[2][2] = {{static_cast<double>(r.a_above), static_cast<double>(r.a_below)},
                            {static_cast<double>(r.b_above), static_cast<double>(r.b_below)}};
    const double row[2] = {o[0][0] + o[0][1], o[1][0] + o[1][1]};
    const double col[2] = {o[0][0] + o[1][0], o[0][1] + o[1][1]};
    const double total = row[0] + row[1];
    if (row[0] == 0 || row[1] == 0 || col[0] == 0 || col[1] == 0)
        throw MathError("moods_median: degenerate contingency table (a row or column is empty)");
    double chi2 = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double e = row[i] * col[j] / total;
            chi2 += (o[i][j] - e) * (o[i][j] - e) / e;
        }
    r.test = {chi2, std::clamp(std::erfc(std::sqrt(chi2 / 2.0)), 0.0, 1.0), "mood-median/chi2-1df"};
    return r;
}

double cohens_kappa(std::span<const int> r1, std::span<const int> r2) {
    require_same_length(r1.size(), r2.size(), "cohens_kappa");
    if (r1.empty()) throw DataError("cohens_kappa: no ratings");
    std::map<int, std::size_t> c1, c2;
    std::size_t agree = 0;
    for (std::size_t i = 0; i < r1.size(); ++i) {
        ++c1[r1[i]];
        ++c2[r2[i]];
        agree += r1[i] == r2[i];
    }
    const double n = static_cast<double>(r1.size());
    const double po = static_cast<double>(agree) / n;
    double pe = 0;
    for (const auto& [label, count] : c1) {
        auto it = c2.find(label);
        if (it != c2.end()) pe += (static_cast<double>(count) / n) * (static_cast<double>(it->second) / n);
    }
    if (pe >= 1.0) throw MathError("cohens_kappa: chance agreement is 1 (both raters constant and equal)");
    return (po - pe) / (1.0 - pe);
}

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
    require_same_length(scores.size(), labels.size(), "roc_auc");
    const auto ranks = average_ranks(scores);
    double pos_rank_sum = 0;
    std::size_t npos = 0, nneg = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1) {
            pos_rank_sum += ranks[i];
            ++npos;
        } else if (labels[i] == 0) {
            ++nneg;
        } else {
            throw DataError("roc_auc: labels must be 0/1");
        }
    }
    if (npos == 0 || nneg == 0) throw MathError("roc_auc: both classes must be present");
    const double p = static_cast<double>(npos), q = static_cast<double>(nneg);
    return (pos_rank_sum - p * (p + 1) / 2.0) / (p * q);
}

double rmse(std::span<const double> pred, std::span<const double> truth) {
    require_same_length(pred.size(), truth.size(), "rmse");
    if (pred.empty()) throw DataError("rmse: no observations");
    double ss = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) ss += (pred[i] - truth[i]) * (pred[i] - truth[i]);
    return std::sqrt(ss / static_cast<double>(pred.size()));
}

RegressionResult ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::vector<std::string> names) {
    const auto n = static_cast<std::size_t>(X.rows());
    const auto p = static_cast<std::size_t>(X.cols());
    if (names.empty())
        for (std::size_t j = 0; j < p; ++j) names.push_back("x" + std::to_string(j));
    if (names.size() != p) throw DataError("ols: " + std::to_string(names.size()) + " names for " + std::to_string(p) + " columns");
    if (static_cast<std::size_t>(y.size()) != n) throw DataError("ols: X and y differ in rows");
    if (n <= p) throw MathError("ols: need more observations (" + std::to_string(n) + ") than columns (" + std::to_string(p) + ")");
    if (!X.allFinite() || !y.allFinite()) throw DataError("ols: non-finite input");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X.rows(), X.cols());
    qr.setThreshold(kRankTolerance);
    qr.compute(X);
    const auto rank = static_cast<std::size_t>(qr.rank());
    if (rank < p) {
        std::string cols;
        const auto& perm = qr.colsPermutation().indices();
        for (std::size_t k = rank; k < p; ++k) {
            if (!cols.empty()) cols += ", ";
            cols += names[static_cast<std::size_t>(perm[static_cast<Eigen::Index>(k)])];
        }
        throw MathError("ols: design matrix is rank deficient (rank " + std::to_string(rank) + " of " +
                        std::to_string(p) + "); collinear column(s): " + cols);
    }

    const Eigen::VectorXd beta = qr.solve(y);
    const Eigen::VectorXd fitted = X * beta;
    const Eigen::VectorXd resid = y - fitted;
    const double ssr = resid.squaredNorm();
    const double ybar = y.mean();
    const double sst = (y.array() - ybar).square().sum();
    const double sigma2 = ssr / static_cast<double>(n - p);

    const auto P = static_cast<Eigen::Index>(p);
    const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(P, P).template triangularView<Eigen::Upper>();
    const Eigen::MatrixXd Rinv =
        R.template triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(P, P));
    const Eigen::MatrixXd cov_perm = Rinv * Rinv.transpose();
    const Eigen::MatrixXd cov = qr.colsPermutation() * cov_perm * qr.colsPermutation().transpose();

    RegressionResult r;
    r.names = std::move(names);
    r.n = n;
    r.rmse = std::sqrt(ssr / static_cast<double>(n));
    r.r_squared = sst > 0 ? 1.0 - ssr / sst : std::numeric_limits<double>::quiet_NaN();
    const double df = static_cast<double>(n - p);
    for (Eigen::Index j = 0; j < P; ++j) {
        const double se = std::sqrt(std::max(0.0, sigma2 * cov(j, j)));
        const double b = beta(j);
        r.coefficients.push_back(b);
        r.std_errors.push_back(se);
        const double t = se > 0 ? b / se : (b == 0 ? 0.0 : std::copysign(INFINITY, b));
        r.t_values.push_back(t);
        r.p_values.push_back(t_two_sided(t, df));
    }
    r.fitted.assign(fitted.data(), fitted.data() + fitted.size());
    return r;
}

std::vector<double> vif(const Eigen::MatrixXd& X) {
    const Eigen::Index n = X.rows(), p = X.cols();
    if (p < 2) return {};
    if (n <= p) throw MathError("vif: need more observations than columns");
    if (!((X.col(0).array() == 1.0).all())) throw DataError("vif: the first column must be the intercept");
    std::vector<double> out;
    for (Eigen::Index j = 1; j < p; ++j) {
        Eigen::MatrixXd others(n, p - 1);
        others << X.leftCols(j), X.rightCols(p - j - 1);
        const Eigen::VectorXd col = X.col(j);
        const double sst = (col.array() - col.mean()).square().sum();
        if (sst == 0) {
            out.push_back(INFINITY);
            continue;
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(others.rows(), others.cols());
        qr.setThreshold(kRankTolerance);
        qr.compute(others);
        const Eigen::VectorXd resid = col - others * qr.solve(col);
        const double ssr = resid.squaredNorm();
        out.push_back(ssr <= 1e-12 * sst ? INFINITY : sst / ssr);
    }
    return out;
}

}  // namespace tarc

#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library: ranks by pairwise counting, linear algebra by
// Gauss-Jordan on the normal equations in long double, contingency tables
// by explicit counting.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<std::vector<double>>;  // row-major, rows = observations

inline Vec ranks_by_counting(const Vec& x) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::size_t less = 0, equal = 0;
        for (double v : x) {
            if (v < x[i]) ++less;
            else if (v == x[i]) ++equal;
        }
        r[i] = static_cast<double>(less) + (static_cast<double>(equal) + 1.0) / 2.0;
    }
    return r;
}

inline double pearson(const Vec& x, const Vec& y) {
    const long double n = static_cast<long double>(x.size());
    long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += static_cast<long double>(x[i]) * x[i];
        syy += static_cast<long double>(y[i]) * y[i];
        sxy += static_cast<long double>(x[i]) * y[i];
    }
    const long double num = n * sxy - sx * sy;
    const long double den = std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
    return static_cast<double>(num / den);
}

inline double spearman(const Vec& x, const Vec& y) { return pearson(ranks_by_counting(x), ranks_by_counting(y)); }

/// Textbook point-biserial: (M1 - M0) / s_n * sqrt(p q), population sd.
inline double point_biserial(const Vec& binary, const Vec& y) {
    long double m1 = 0, m0 = 0, n1 = 0, n0 = 0, all = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        all += y[i];
        if (binary[i] != 0) m1 += y[i], n1 += 1;
        else m0 += y[i], n0 += 1;
    }
    const long double n = n1 + n0;
    m1 /= n1;
    m0 /= n0;
    const long double mean = all / n;
    long double ss = 0;
    for (double v : y) ss += (v - mean) * (v - mean);
    const long double sd = std::sqrt(ss / n);
    return static_cast<double>((m1 - m0) / sd * std::sqrt(n1 / n * (n0 / n)));
}

inline double median(Vec v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

struct MoodOracle {
    double statistic;
    double p_value;
    double grand_median;
    bool degenerate;  // a row or column of the 2x2 table is empty
};

/// 2x2 chi-square by the closed form N (ad - bc)^2 / (row and column sums).
inline MoodOracle moods_median(const Vec& a, const Vec& b) {
    Vec all = a;
    all.insert(all.end(), b.begin(), b.end());
    const double g = median(all);
    long double A = 0, B = 0, C = 0, D = 0;  // a above, a below, b above, b below
    for (double v : a) {
        if (v > g) A += 1;
        if (v < g) B += 1;
    }
    for (double v : b) {
        if (v > g) C += 1;
        if (v < g) D += 1;
    }
    const long double N = A + B + C + D;
    const long double den = (A + B) * (C + D) * (A + C) * (B + D);
    const double stat = den == 0 ? 0.0 : static_cast<double>(N * (A * D - B * C) * (A * D - B * C) / den);
    // Upper tail of chi-square with one degree of freedom.
    return {stat, std::erfc(std::sqrt(stat / 2.0)), g, den == 0};
}

inline double cohens_kappa(const std::vector<int>& r1, const std::vector<int>& r2) {
    std::vector<int> labels = r1;
    labels.insert(labels.end(), r2.begin(), r2.end());
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    const long double n = static_cast<long double>(r1.size());
    long double agree = 0, pe = 0;
    for (std::size_t i = 0; i < r1.size(); ++i) agree += r1[i] == r2[i];
    for (int l : labels) {
        long double c1 = 0, c2 = 0;
        for (int v : r1) c1 += v == l;
        for (int v : r2) c2 += v == l;
        pe += (c1 / n) * (c2 / n);
    }
    return static_cast<double>((agree / n - pe) / (1 - pe));
}

/// Fraction of positive/negative pairs ordered correctly, ties one half.
inline double roc_auc(const Vec& s, const std::vector<int>& labels) {
    long double good = 0, pairs = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            if (labels[i] == 1 && labels[j] == 0) {
                pairs += 1;
                good += s[i] > s[j] ? 1.0L : (s[i] == s[j] ? 0.5L : 0.0L);
            }
    return static_cast<double>(good / pairs);
}

inline double rmse(const Vec& p, const Vec& t) {
    long double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += static_cast<long double>(p[i] - t[i]) * (p[i] - t[i]);
    return static_cast<double>(std::sqrt(s / p.size()));
}

/// Inverse by Gauss-Jordan with partial pivoting.
inline std::vector<std::vector<long double>> invert(std::vector<std::vector<long double>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<long double>> inv(n, std::vector<long double>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
        if (a[piv][c] == 0) throw std::runtime_error("singular");
        std::swap(a[c], a[piv]);
        std::swap(inv[c], inv[piv]);
        const long double d = a[c][c];
        for (std::size_t k = 0; k < n; ++k) a[c][k] /= d, inv[c][k] /= d;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const long double f = a[r][c];
            for (std::size_t k = 0; k < n; ++k) a[r][k] -= f * a[c][k], inv[r][k] -= f * inv[c][k];
        }
    }
    return inv;
}

struct OlsOracle {
    Vec beta;
    Vec se;
    double rmse;
    double r_squared;
    Vec residuals;
};

/// beta = (X'X)^-1 X'y; se_j = sqrt(s^2 [(X'X)^-1]_jj), s^2 = SSR / (n - p).
inline OlsOracle ols(const Mat& X, const Vec& y) {
    const std::size_t n = X.size(), p = X[0].size();
    std::vector<std::vector<long double>> xtx(p, std::vector<long double>(p, 0));
    std::vector<long double> xty(p, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < p; ++a) {
            xty[a] += static_cast<long double>(X[i][a]) * y[i];
            for (std::size_t b = 0; b < p; ++b) xtx[a][b] += static_cast<long double>(X[i][a]) * X[i][b];
        }
    const auto inv = invert(xtx);
    OlsOracle o;
    o.beta.assign(p, 0);
    for (std::size_t a = 0; a < p; ++a) {
        long double s = 0;
        for (std::size_t b = 0; b < p; ++b) s += inv[a][b] * xty[b];
        o.beta[a] = static_cast<double>(s);
    }
    long double ssr = 0, ybar = 0, sst = 0;
    for (double v : y) ybar += v;
    ybar /= n;
    for (std::size_t i = 0; i < n; ++i) {
        long double fit = 0;
        for (std::size_t a = 0; a < p; ++a) fit += static_cast<long double>(X[i][a]) * o.beta[a];
        const long double r = y[i] - fit;
        o.residuals.push_back(static_cast<double>(r));
        ssr += r * r;
        sst += (y[i] - ybar) * (y[i] - ybar);
    }
    const long double s2 = ssr / static_cast<long double>(n - p);
    for (std::size_t a = 0; a < p; ++a) o.se.push_back(static_cast<double>(std::sqrt(s2 * inv[a][a])));
    o.rmse = static_cast<double>(std::sqrt(ssr / n));
    o.r_squared = static_cast<double>(1 - ssr / sst);
    return o;
}

/// VIF_j = 1 / (1 - R_j^2), regressing column j (j >= 1) on every other column.
inline Vec vif(const Mat& X) {
    const std::size_t p = X[0].size();
    Vec out;
    for (std::size_t j = 1; j < p; ++j) {
        Mat rest;
        Vec target;
        for (const auto& row : X) {
            std::vector<double> r;
            for (std::size_t k = 0; k < p; ++k)
                if (k != j) r.push_back(row[k]);
            rest.push_back(r);
            target.push_back(row[j]);
        }
        out.push_back(1.0 / (1.0 - ols(rest, target).r_squared));
    }
    return out;
}

}  // namespace oracle

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tarc {

struct TestResult {
    double statistic = 0;
    double p_value = 1;
    std::string method;
};

/// Average ranks (1-based), ties sharing the mean of their positions.
std::vector<double> average_ranks(std::span<const double> x);

double mean(std::span<const double> x);
/// Middle value, or the mean of the two middle values. Throws on empty input.
double median(std::span<const double> x);

/// Pearson r. Throws MathError when either input is constant.
double pearson_r(std::span<const double> x, std::span<const double> y);

/// Two-sided p-value of a correlation coefficient by the t approximation
/// with n - 2 degrees of freedom.
double correlation_p_value(double r, std::size_t n);

/// Pearson on average ranks; p-value by the t approximation. n >= 3.
TestResult spearman(std::span<const double> x, std::span<const double> y);

/// Pearson with the binary variable coded 0/1. Both classes must occur.
TestResult point_biserial(std::span<const double> binary, std::span<const double> y);

struct MedianTestResult {
    TestResult test;
    double grand_median = 0;
    double median_a = 0;
    double median_b = 0;
    // Counts above / below the grand median per group; ties with the grand
    // median are left out.
    std::size_t a_above = 0, a_below = 0, b_above = 0, b_below = 0;
};

/// Mood's median test: Pearson chi-square on the 2x2 above/below table,
/// no continuity correction, 1 degree of freedom.
MedianTestResult moods_median(std::span<const double> a, std::span<const double> b);

/// (p_o - p_e) / (1 - p_e) over the union of both raters' labels.
double cohens_kappa(std::span<const int> r1, std::span<const int> r2);

/// Rank-based AUC; tied positive/negative pairs count one half.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

double rmse(std::span<const double> pred, std::span<const double> truth);

inline constexpr double kRankTolerance = 1e-10;

struct RegressionResult {
    std::vector<std::string> names;
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    std::vector<double> t_values;
    std::vector<double> p_values;
    double rmse = 0;       // sqrt(SSR / n)
    double r_squared = 0;  // centered; NaN when y is constant
    std::size_t n = 0;
    std::vector<double> vif;  // one per non-intercept column; empty if not computed
    std::vector<double> fitted;
};

/// Least squares by column-pivoted QR. Standard errors from
/// sigma^2 (X'X)^-1 with sigma^2 = SSR / (n - p). Throws MathError when
/// n <= p or when a pivot falls below kRankTolerance times the largest,
/// naming the columns found collinear.
RegressionResult ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::vector<std::string> names);

/// VIF of every column but the first, which must be the intercept. Each
/// column is regressed on all the others; perfect collinearity gives +inf.
std::vector<double> vif(const Eigen::MatrixXd& X);

}  // namespace tarc

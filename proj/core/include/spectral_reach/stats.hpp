#pragma once

#include <vector>

namespace spectral_reach {

/// Ranks starting at 1; tied values share the average of their ranks.
std::vector<double> average_ranks(const std::vector<double>& values);

/// Spearman rank correlation (Pearson on average ranks). Returns 0 when either
/// side is constant.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

double mean(const std::vector<double>& values);

/// Standard error of the mean (sample standard deviation / sqrt(n)); 0 for n < 2.
double standard_error(const std::vector<double>& values);

struct PairedTest {
  double mean_difference = 0;
  double t = 0;
  /// One-sided p-value for H1: mean(a - b) > 0.
  double p_value = 1;
  std::size_t n = 0;
};

/// Paired one-sided t-test on a - b. Zero-variance differences yield p = 0 when
/// the mean is positive and p = 1 otherwise.
PairedTest paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace spectral_reach

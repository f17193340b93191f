#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ntnsim {

struct GoodnessOfFit {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t degrees_of_freedom = 0;
};

/// One-sample Kolmogorov-Smirnov statistic sup|F_n - F| of `samples`
/// against a continuous reference CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Asymptotic KS critical value c(alpha)/sqrt(n).
double ks_critical_value(std::size_t n, double alpha);

/// Pearson chi-square of observed counts against expected counts, with
/// cells - 1 degrees of freedom.
GoodnessOfFit chi_square_test(std::span<const std::size_t> observed, std::span<const double> expected);

struct SampleSummary {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

/// Mean and standard error, summed in index order.
SampleSummary summarize(std::span<const double> values);

}  // namespace ntnsim

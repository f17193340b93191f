#include "ntnsim/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <fmt/format.h>

#include "ntnsim/errors.hpp"

namespace ntnsim {

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("ks_statistic: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0.0 && alpha < 1.0)) throw DomainError("ks_critical_value: bad arguments");
  return std::sqrt(-0.5 * std::log(0.5 * alpha)) / std::sqrt(static_cast<double>(n));
}

GoodnessOfFit chi_square_test(std::span<const std::size_t> observed, std::span<const double> expected) {
  if (observed.size() != expected.size()) throw DomainError("chi_square_test: size mismatch");
  if (observed.size() < 2) throw DomainError("chi_square_test: need at least two cells");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw DomainError("chi_square_test: expected counts must be positive");
    const double diff = static_cast<double>(observed[i]) - expected[i];
    stat += diff * diff / expected[i];
  }
  const std::size_t dof = observed.size() - 1;
  const boost::math::chi_squared law(static_cast<double>(dof));
  return {stat, boost::math::cdf(boost::math::complement(law, stat)), dof};
}

SampleSummary summarize(std::span<const double> values) {
  SampleSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double var = ss / static_cast<double>(values.size() - 1);
    s.std_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  return s;
}

}  // namespace ntnsim

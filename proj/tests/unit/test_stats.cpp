#include <doctest.h>

#include <cmath>
#include <vector>

#include "ntnsim/errors.hpp"
#include "ntnsim/rng.hpp"
#include "ntnsim/stats.hpp"

using namespace ntnsim;

TEST_CASE("KS statistic of a hand-sized sample") {
  // Sorted {0.1, 0.5, 0.9} against U(0,1): max of |i/n - x| and |x - (i-1)/n|.
  const double d = ks_statistic({0.9, 0.1, 0.5}, [](double x) { return x; });
  CHECK(d == doctest::Approx(0.2333333333333333).epsilon(1e-12));
}

TEST_CASE("KS accepts uniform draws and rejects a shifted law") {
  CounterRng g(RngSpec{1, 0});
  std::vector<double> u(50'000);
  for (auto& x : u) x = g.uniform();
  const auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_statistic(u, uniform_cdf) < ks_critical_value(u.size(), 0.01));
  for (auto& x : u) x = x * x;
  CHECK(ks_statistic(u, uniform_cdf) > ks_critical_value(u.size(), 0.01));
}

TEST_CASE("KS critical value") {
  CHECK(ks_critical_value(100'000, 0.01) == doctest::Approx(0.005147).epsilon(1e-3));
  CHECK_THROWS_AS(ks_critical_value(0, 0.01), DomainError);
}

TEST_CASE("chi-square against tabulated values") {
  const std::vector<std::size_t> obs{10, 10, 10, 10};
  const std::vector<double> exp{10, 10, 10, 10};
  const auto flat = chi_square_test(obs, exp);
  CHECK(flat.statistic == 0.0);
  CHECK(flat.p_value == doctest::Approx(1.0));
  CHECK(flat.degrees_of_freedom == 3);

  // Statistic 7.814728 is the 95% quantile for 3 degrees of freedom.
  const std::vector<std::size_t> obs2{20, 10, 5, 5};
  const std::vector<double> exp2{10, 10, 10, 10};
  const auto r = chi_square_test(obs2, exp2);
  CHECK(r.statistic == doctest::Approx(15.0));
  CHECK(r.p_value == doctest::Approx(0.0018166).epsilon(1e-3));
  CHECK_THROWS_AS(chi_square_test(std::vector<std::size_t>{1}, std::vector<double>{1.0}), DomainError);
}

TEST_CASE("summary statistics") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto s = summarize(v);
  CHECK(s.mean == 2.5);
  CHECK(s.count == 4);
  // sample sd sqrt(5/3), se = sd / 2
  CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
}

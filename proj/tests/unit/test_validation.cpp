#include <doctest.h>

#include "ntnsim/validation.hpp"

using namespace ntnsim;

TEST_CASE("validation suite passes on two seeds") {
  for (std::uint64_t seed : {1u, 2u}) {
    const auto checks = run_validation(seed, EarthConstants{});
    CHECK(checks.size() > 30);
    for (const auto& c : checks) {
      INFO(c.name << " statistic " << c.statistic << " bound " << c.threshold);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("all_pass") {
  CHECK(all_pass({}));
  CHECK_FALSE(all_pass({{"a", 1, 0, true}, {"b", 1, 0, false}}));
}

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "jscatter/model.hpp"

using namespace jscatter;

namespace {

PhysicalParams base(double sigma) { return {1, 3.0, 1.0, energy_from_sigma(sigma, 1.0)}; }
const RegularizationParams rp1{1.0, 1.0};

}  // namespace

TEST_CASE("derived scalars at the baseline parameters") {
  const DerivedParams dp = derive(base(3.0), rp1);
  CHECK(dp.nu == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-15));
  CHECK(dp.mu == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
  CHECK(dp.zeta == dp.mu);
  CHECK(dp.sigma == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(dp.k == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(std::fabs(dp.cos_theta - 35.0 / 37.0) < 1e-15);
  CHECK(std::fabs(dp.sin_theta - 12.0 / 37.0) < 1e-15);
  CHECK(std::fabs(dp.cos_theta * dp.cos_theta + dp.sin_theta * dp.sin_theta - 1.0) < 1e-15);
  CHECK(std::fabs((4.0 * dp.sigma * dp.sigma + 1.0) - 2.0 / (1.0 - dp.cos_theta)) < 1e-14 * 37.0);
}

TEST_CASE("sigma = 1/2 puts theta at pi/2") {
  const DerivedParams dp = derive(base(0.5), rp1);
  CHECK(std::fabs(dp.cos_theta) < 1e-15);
  CHECK(std::fabs(dp.sin_theta - 1.0) < 1e-15);
  CHECK(std::fabs(dp.theta - std::numbers::pi / 2.0) < 1e-15);
}

TEST_CASE("criticality constraints") {
  CHECK_THROWS_AS(derive({1, 2.0, 1.0, 1.0}, rp1), SupercriticalityError);
  CHECK_THROWS_AS(derive({1, 3.0, 1.0, 1.0}, {1.0, 2.5}), SubcriticalityError);
  CHECK_THROWS_AS(derive({0, 0.2, 1.0, 1.0}, {1.0, 0.1}), SupercriticalityError);
  CHECK_THROWS_AS(derive({1, 3.0, 1.0, -1.0}, rp1), DomainError);
  CHECK_THROWS_AS(derive({1, 3.0, 0.0, 1.0}, rp1), DomainError);
  CHECK_THROWS_AS(derive({1, 3.0, 1.0, 1.0}, {0.0, 1.0}), DomainError);
  // Negative A0 is allowed.
  CHECK_NOTHROW(derive({1, 3.0, 1.0, 1.0}, {0.5, -1.0}));
}

TEST_CASE("lambda r0 >= 1 is flagged") {
  Warnings w;
  derive(base(1.0), rp1, &w);
  CHECK(w.size() == 1);
  w.clear();
  derive(base(1.0), {0.1, 1.0}, &w);
  CHECK(w.empty());
}

TEST_CASE("potential registry") {
  const PotentialSpec e{PotentialKind::exponential, 2.0, 1.0};
  const PotentialSpec g{PotentialKind::gaussian, 2.0, 0.5};
  CHECK(e(1.5) == doctest::Approx(2.0 * std::exp(-1.5)));
  CHECK(g(1.5) == doctest::Approx(2.0 * std::exp(-0.5 * 2.25)));
  CHECK(PotentialSpec{}(0.3) == 0.0);
  CHECK(std::fabs(e(e.cutoff_radius(1e-16))) <= 1e-16 * 1.0000001);
  CHECK(potential_kind_from_string("gaussian") == PotentialKind::gaussian);
  CHECK_THROWS_AS(potential_kind_from_string("yukawa"), ConfigError);
}

TEST_CASE("continuity option") {
  CHECK_FALSE(check_continuity_option(base(1.0), rp1, PotentialSpec{}).has_value());
  const PotentialSpec two{PotentialKind::exponential, 2.0 * std::exp(1.0), 1.0};  // U(1) = 2
  const auto a0 = check_continuity_option(base(1.0), rp1, two);
  REQUIRE(a0.has_value());
  CHECK(*a0 == doctest::Approx(-1.0).epsilon(1e-14));
  const PotentialSpec weak{PotentialKind::exponential, 0.3 * std::exp(1.0), 1.0};  // U(1) = 0.3
  CHECK_FALSE(check_continuity_option(base(1.0), rp1, weak).has_value());
}

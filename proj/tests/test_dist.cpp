#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "recordkit/dist.hpp"

using namespace recordkit;
using Catch::Approx;

TEST_CASE("exponential law") {
  const auto d = DistributionSpec::exponential(2.0);
  CHECK(cdf_eval(d, 0.0) == 0.0);
  CHECK(cdf_eval(d, 1.0) == Approx(1.0 - std::exp(-2.0)));
  CHECK(survival_eval(d, 1.0) == Approx(std::exp(-2.0)));
  CHECK(pdf_eval(d, 1.0) == Approx(2.0 * std::exp(-2.0)));
  CHECK(pdf_eval(d, -0.5) == 0.0);
  CHECK(hazard_eval(d, 1.0) == Approx(2.0));
  CHECK(cum_hazard_eval(d, 3.0) == Approx(6.0));
  const auto ep = endpoints(d);
  CHECK(ep.lep == 0.0);
  CHECK(std::isinf(ep.uep));
  CHECK(ep.uep_atom_mass == 0.0);

  SECTION("quantile inverts the cdf") {
    for (double u : {0.01, 0.3, 0.5, 0.9, 0.999})
      CHECK(cdf_eval(d, quantile(d, u)) == Approx(u).epsilon(1e-12));
  }
  SECTION("exp(-R) equals the survival function") {
    for (double x : {0.1, 0.7, 2.5, 10.0})
      CHECK(std::exp(-cum_hazard_eval(d, x)) == Approx(survival_eval(d, x)).epsilon(1e-12));
  }
  SECTION("parameter validation") {
    CHECK_THROWS_AS(DistributionSpec::exponential(0.0), DomainError);
    CHECK_THROWS_AS(DistributionSpec::exponential(-1.0), DomainError);
  }
}

TEST_CASE("uniform law") {
  const auto d = DistributionSpec::uniform(2.0, 4.0);
  CHECK(cdf_eval(d, 3.0) == Approx(0.5));
  CHECK(cdf_eval(d, 1.0) == 0.0);
  CHECK(cdf_eval(d, 5.0) == 1.0);
  CHECK(pdf_eval(d, 3.0) == Approx(0.5));
  CHECK(pdf_eval(d, 4.5) == 0.0);
  CHECK(hazard_eval(d, 3.0) == Approx(1.0));  // 0.5 / 0.5
  CHECK(cum_hazard_eval(d, 3.0) == Approx(-std::log(0.5)));
  CHECK(quantile(d, 0.25) == Approx(2.5));
  const auto ep = endpoints(d);
  CHECK(ep.lep == 2.0);
  CHECK(ep.uep == 4.0);
  CHECK(ep.uep_atom_mass == 0.0);
  CHECK_THROWS_AS(DistributionSpec::uniform(1.0, 1.0), DomainError);
  SECTION("cumulative hazard blows up at the upper endpoint") {
    CHECK_THROWS_AS(cum_hazard_eval(d, 4.0), DomainError);
  }
}

TEST_CASE("geometric law") {
  const auto d = DistributionSpec::geometric(0.5);
  CHECK(pdf_eval(d, 1.0) == Approx(0.5));
  CHECK(pdf_eval(d, 3.0) == Approx(0.125));
  CHECK(pdf_eval(d, 2.5) == 0.0);
  CHECK(cdf_eval(d, 2.0) == Approx(0.75));
  CHECK(cdf_eval(d, 2.9) == Approx(0.75));
  CHECK(survival_eval(d, 2.0) == Approx(0.25));
  SECTION("hazard is exactly p/q at every support point") {
    for (double y : {1.0, 2.0, 7.0}) CHECK(hazard_eval(d, y) == 1.0);
  }
  SECTION("pmf sums to one") {
    double s = 0;
    for (int k = 1; k <= 60; ++k) s += pdf_eval(d, k);
    CHECK(s == Approx(1.0).margin(1e-12));
  }
  SECTION("quantile is the generalized inverse") {
    for (double u : {0.1, 0.5, 0.51, 0.74999, 0.75, 0.875, 0.99}) {
      const double x = quantile(d, u);
      CHECK(cdf_eval(d, x) >= u);
      if (x > 1.0) CHECK(cdf_eval(d, x - 1.0) < u);
    }
  }
  const auto ep = endpoints(d);
  CHECK(ep.lep == 1.0);
  CHECK(std::isinf(ep.uep));
  CHECK(ep.uep_atom_mass == 0.0);
  CHECK_THROWS_AS(DistributionSpec::geometric(1.0), DomainError);
  CHECK_THROWS_AS(DistributionSpec::geometric(0.0), DomainError);
}

TEST_CASE("finite discrete law") {
  const auto d = DistributionSpec::finite({1, 2, 5}, {0.2, 0.3, 0.5});
  CHECK(pdf_eval(d, 2.0) == Approx(0.3));
  CHECK(pdf_eval(d, 3.0) == 0.0);
  CHECK(cdf_eval(d, 2.0) == Approx(0.5));   // right continuous: includes the atom
  CHECK(cdf_eval(d, 4.999) == Approx(0.5));
  CHECK(survival_eval(d, 2.0) == Approx(0.5));  // strictly above 2
  CHECK(hazard_eval(d, 2.0) == Approx(0.3 / 0.5));
  SECTION("hazard at the top atom has no survivors") {
    CHECK_THROWS_AS(hazard_eval(d, 5.0), DomainError);
  }
  SECTION("hazard off the support") {
    CHECK_THROWS_AS(hazard_eval(d, 3.0), OffSupport);
  }
  SECTION("quantile walks the atoms") {
    CHECK(quantile(d, 0.1) == 1.0);
    CHECK(quantile(d, 0.2) == 1.0);
    CHECK(quantile(d, 0.2000001) == 2.0);
    CHECK(quantile(d, 0.99) == 5.0);
  }
  const auto ep = endpoints(d);
  CHECK(ep.lep == 1.0);
  CHECK(ep.uep == 5.0);
  CHECK(ep.uep_atom_mass == Approx(0.5));
  SECTION("validation") {
    CHECK_THROWS_AS(DistributionSpec::finite({}, {}), DomainError);
    CHECK_THROWS_AS(DistributionSpec::finite({2, 1}, {0.5, 0.5}), DomainError);
    CHECK_THROWS_AS(DistributionSpec::finite({1, 2}, {0.5, 0.6}), DomainError);
    CHECK_THROWS_AS(DistributionSpec::finite({1, 2}, {1.2, -0.2}), DomainError);
  }
  SECTION("uniform factory") {
    const auto u = DistributionSpec::finite_uniform(4);
    CHECK(pdf_eval(u, 3.0) == Approx(0.25));
    CHECK(endpoints(u).uep_atom_mass == Approx(0.25));
  }
}

TEST_CASE("tabulated continuous law") {
  const auto d = DistributionSpec::tabulated({0.0, 1.0, 3.0}, {0.0, 0.5, 1.0});
  CHECK(d.is_continuous());
  CHECK(d.pdf_is_approximate());
  CHECK(cdf_eval(d, 0.5) == Approx(0.25));
  CHECK(cdf_eval(d, 2.0) == Approx(0.75));
  CHECK(quantile(d, 0.25) == Approx(0.5));
  CHECK(quantile(d, 0.75) == Approx(2.0));
  CHECK(pdf_eval(d, 0.5) == Approx(0.5));
  CHECK(pdf_eval(d, 2.0) == Approx(0.25));
  const auto ep = endpoints(d);
  CHECK(ep.lep == 0.0);
  CHECK(ep.uep == 3.0);
  SECTION("validation") {
    CHECK_THROWS_AS(DistributionSpec::tabulated({0.0}, {0.0}), DomainError);
    CHECK_THROWS_AS(DistributionSpec::tabulated({0.0, 1.0}, {0.5, 1.0}), DomainError);
    CHECK_THROWS_AS(DistributionSpec::tabulated({0.0, 1.0}, {0.0, 0.7}), DomainError);
    CHECK_THROWS_AS(DistributionSpec::tabulated({1.0, 0.0}, {0.0, 1.0}), DomainError);
  }
}

TEST_CASE("quantile endpoints are rejected") {
  const auto d = DistributionSpec::uniform(0, 1);
  CHECK_THROWS_AS(quantile(d, 0.0), DomainError);
  CHECK_THROWS_AS(quantile(d, 1.0), DomainError);
}

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "recordkit/laws.hpp"
#include "recordkit/mc.hpp"

using namespace recordkit;
using Catch::Approx;

TEST_CASE("estimates are a pure function of the seed") {
  const auto u = DistributionSpec::uniform(0, 1);
  const mc::McConfig cfg{20000, 4, 99, {}};
  const auto a = mc::estimate_max_cdf_event(u, {0.9, 0.8, 0.7}, cfg);
  const auto b = mc::estimate_max_cdf_event(u, {0.9, 0.8, 0.7}, cfg);
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
  CHECK(a.trials_used == b.trials_used);
}

TEST_CASE("per-trial streams make trial prefixes stable") {
  const auto u = DistributionSpec::uniform(0, 1);
  std::vector<RecordSequence<double>> small, large;
  mc::simulate_records(u, RecordKind::StrongUpper, {32, 50, 7, {}},
                       [&](std::uint64_t, const RecordSequence<double>& rs) {
                         small.push_back(rs);
                       });
  mc::simulate_records(u, RecordKind::StrongUpper, {64, 50, 7, {}},
                       [&](std::uint64_t, const RecordSequence<double>& rs) {
                         large.push_back(rs);
                       });
  REQUIRE(small.size() == 32);
  REQUIRE(large.size() == 64);
  for (std::size_t i = 0; i < 32; ++i) CHECK(small[i] == large[i]);
}

TEST_CASE("exponential-representation sampler matches the parent law") {
  const auto u = DistributionSpec::uniform(0, 1);
  const auto rows = mc::renyi_sample_records(u, 1, {5000, 1, 424242, {}});
  REQUIRE(rows.decided == 5000);
  const auto rep = mc::gof_ks(rows.column(0), [&](double x) { return cdf_eval(u, x); });
  CHECK(rep.pass);

  SECTION("second record value hits its closed-form cdf") {
    const auto two = mc::renyi_sample_records(u, 2, {20000, 1, 31337, {}});
    std::uint64_t below = 0;
    for (std::uint64_t r = 0; r < two.decided; ++r) below += two.at(r, 1) <= 0.5 ? 1 : 0;
    const double frac = static_cast<double>(below) / static_cast<double>(two.decided);
    const double expect = 0.5 + 0.5 * std::log(0.5);
    const double se = std::sqrt(expect * (1 - expect) / static_cast<double>(two.decided));
    CHECK(std::abs(frac - expect) <= 4 * se);
  }
  SECTION("atomic laws have no exponential representation") {
    CHECK_THROWS_AS(mc::renyi_sample_records(DistributionSpec::geometric(0.5), 2,
                                             {100, 1, 1, {}}),
                    UnsupportedVariant);
  }
}

TEST_CASE("direct and representation-based record sampling agree") {
  const auto e1 = DistributionSpec::exponential(1.0);
  const auto direct = mc::sample_record_rows(e1, 3, {6000, 100000, 555, {}});
  const auto renyi = mc::renyi_sample_records(e1, 3, {5000, 1, 556, {}});
  REQUIRE(direct.decided >= 4000);
  const auto rep = mc::gof_ks_two_sample(direct.column(2), renyi.column(2));
  CHECK(rep.pass);
}

TEST_CASE("no-further-record estimator") {
  SECTION("uniform atoms") {
    const auto d = DistributionSpec::finite_uniform(6);
    const auto r = mc::estimate_no_further_record(d, {20000, 200, 1001, {}});
    CHECK(r.truncation_mass <= 1e-8);
    CHECK(std::abs(r.estimate - 1.0 / 6.0) <= 4 * r.std_error);
  }
  SECTION("a single atom can never be beaten") {
    const auto d = DistributionSpec::finite({5}, {1.0});
    const auto r = mc::estimate_no_further_record(d, {500, 10, 1, {}});
    CHECK(r.estimate == 1.0);
    CHECK(r.truncation_mass == 0.0);
  }
  SECTION("unbounded atomic support never decides success") {
    const auto d = DistributionSpec::geometric(0.5);
    const auto r = mc::estimate_no_further_record(d, {2000, 50, 2, {}});
    CHECK(r.estimate == 0.0);
    CHECK(r.truncation_mass > 0.0);
  }
  SECTION("continuous laws are rejected") {
    CHECK_THROWS_AS(
        mc::estimate_no_further_record(DistributionSpec::uniform(0, 1), {100, 10, 1, {}}),
        UnsupportedVariant);
  }
}

TEST_CASE("poset transition estimator") {
  const auto u = DistributionSpec::uniform(0, 1);
  SECTION("one dimension reproduces the total-order transition") {
    const auto r = mc::estimate_poset_transition({u}, 2, 3, {60000, 3, 2718, {}});
    CHECK(std::abs(r.estimate - 1.0 / 3.0) <= 4 * r.std_error);
    CHECK(r.truncation_mass == Approx(0.5).margin(0.02));  // P(U(2)=2 rejected) = 1/2
  }
  SECTION("two independent coordinates at the first step") {
    const auto r = mc::estimate_poset_transition({u, u}, 1, 2, {40000, 2, 2719, {}});
    CHECK(std::abs(r.estimate - 0.25) <= 4 * r.std_error);
    CHECK(r.truncation_mass == 0.0);  // time 1 is always a record
  }
  SECTION("off the support the transition is zero") {
    const auto r = mc::estimate_poset_transition({u}, 3, 3, {100, 5, 1, {}});
    CHECK(r.estimate == 0.0);
    CHECK(r.std_error == 0.0);
    CHECK(r.trials_used == 100);
  }
  SECTION("rejection starves the conditioning event") {
    CHECK_THROWS_AS(mc::estimate_poset_transition({u}, 2, 3, {1500, 3, 3, {}}),
                    TooFewConditioningHits);
  }
  CHECK_THROWS_AS(mc::estimate_poset_transition({u}, 0, 2, {100, 3, 1, {}}), DomainError);
  CHECK_THROWS_AS(mc::estimate_poset_transition({u}, 2, 5, {100, 3, 1, {}}), DomainError);
}

TEST_CASE("single-gap cell counts approximate the gap law") {
  const auto u = DistributionSpec::uniform(0, 1);
  const auto cells = mc::count_delta_single(u, 10, {50000, 16, 97, {}});
  CHECK(cells.undecided == 0);
  std::uint64_t sum = cells.complement;
  for (auto c : cells.counts) sum += c;
  CHECK(sum == cells.trials);
  const double p1 = static_cast<double>(cells.counts[0]) / static_cast<double>(cells.decided());
  const double se = std::sqrt(0.25 / static_cast<double>(cells.decided()));
  CHECK(std::abs(p1 - 0.5) <= 4 * se);
}

TEST_CASE("paired-gap cell counts cover the grid exactly once") {
  const auto u = DistributionSpec::uniform(0, 1);
  const auto cells = mc::count_delta_pair(u, 3, 3, {40000, 7, 98, {}});
  CHECK(cells.undecided == 0);
  std::uint64_t sum = cells.complement;
  for (auto c : cells.counts) sum += c;
  CHECK(sum == cells.trials);
  // P(D_2=1, D_3=1) = 1/6
  const double p11 = static_cast<double>(cells.counts[0]) / static_cast<double>(cells.trials);
  const double expect = laws::interrecord_joint_pmf({1, 1}).value;
  const double se = std::sqrt(expect * (1 - expect) / static_cast<double>(cells.trials));
  CHECK(std::abs(p11 - expect) <= 4 * se);
  CHECK_THROWS_AS(mc::count_delta_pair(u, 3, 3, {100, 6, 1, {}}), DomainError);
}

TEST_CASE("chi-square harness") {
  SECTION("exact proportions score zero") {
    const auto rep = mc::gof_chi_square({500, 500}, {0.5, 0.5});
    CHECK(rep.statistic == 0.0);
    CHECK(rep.pass);
    CHECK(rep.test == mc::GofTest::ChiSquare);
  }
  SECTION("tail cells pool up to the expected-count floor") {
    std::vector<std::uint64_t> obs{1991, 1, 1, 1, 1, 1, 1, 1, 1, 1};
    std::vector<double> probs{0.991, 0.001, 0.001, 0.001, 0.001, 0.001,
                              0.001, 0.001, 0.001, 0.001};
    const auto rep = mc::gof_chi_square(obs, probs);
    CHECK(rep.cells_or_n == 4);
    CHECK(rep.pass);
  }
  SECTION("validation") {
    CHECK_THROWS_AS(mc::gof_chi_square({400, 400}, {0.5, 0.5}), InsufficientSamples);
    CHECK_THROWS_AS(mc::gof_chi_square({600, 600}, {0.5, 0.3}), DomainError);
    CHECK_THROWS_AS(mc::gof_chi_square({1200}, {1.0}), InsufficientSamples);
    CHECK_THROWS_AS(mc::gof_chi_square({600, 600}, {0.5}), ShapeMismatch);
  }
}

TEST_CASE("ks harness distinguishes right from wrong laws") {
  const auto u = DistributionSpec::uniform(0, 1);
  std::vector<double> xs(2000);
  mc::TrialRng rng(4242, 0);
  for (auto& x : xs) x = rng.next_unit();
  const auto good = mc::gof_ks(xs, [](double x) { return std::clamp(x, 0.0, 1.0); });
  CHECK(good.pass);
  const auto shifted = DistributionSpec::uniform(0.1, 1.1);
  const auto bad = mc::gof_ks(xs, [&](double x) { return cdf_eval(shifted, x); });
  CHECK_FALSE(bad.pass);
  CHECK_THROWS_AS(mc::gof_ks({0.1, 0.2}, [](double x) { return x; }), InsufficientSamples);
}

TEST_CASE("correlation harness") {
  std::vector<double> a(2000), b(2000);
  mc::TrialRng rng(11, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = rng.next_unit();
    b[i] = rng.next_unit();
  }
  CHECK(mc::increment_independence(a, b).pass);
  CHECK_FALSE(mc::increment_independence(a, a).pass);
  const std::vector<double> flat(2000, 1.0);
  CHECK_THROWS_AS(mc::increment_independence(a, flat), InsufficientSamples);
}

TEST_CASE("configuration validation") {
  const auto u = DistributionSpec::uniform(0, 1);
  CHECK_THROWS_AS(mc::count_delta_single(u, 10, {0, 16, 1, {}}), DomainError);
  CHECK_THROWS_AS(mc::count_delta_single(u, 0, {100, 16, 1, {}}), DomainError);
  CHECK_THROWS_AS(mc::sample_record_rows(u, 0, {100, 16, 1, {}}), DomainError);
}

TEST_CASE("degenerate law yields exactly one record per trial") {
  const auto d = DistributionSpec::finite({3}, {1.0});
  std::uint64_t seen = 0;
  mc::simulate_records(d, RecordKind::StrongUpper, {50, 20, 5, std::size_t{1}},
                       [&](std::uint64_t, const RecordSequence<double>& rs) {
                         ++seen;
                         CHECK(rs.count() == 1);
                         CHECK(rs.observations_consumed == 1);
                         CHECK(rs.events[0].value == 3.0);
                       });
  CHECK(seen == 50);
}

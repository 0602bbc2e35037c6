#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "recordkit/dist.hpp"
#include "recordkit/extract.hpp"
#include "recordkit/io.hpp"
#include "recordkit/laws.hpp"
#include "recordkit/mc.hpp"
#include "recordkit/oracle.hpp"
#include "recordkit/stats.hpp"

namespace recordkit::verify {

struct CheckResult {
  int criterion;  // 1..11
  std::string id;
  bool pass;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

inline double null_se(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

/// Exact std error of the estimator under the hypothesized p; immune to
/// degenerate sample variance when the empirical count is 0 or n.
inline bool within_4se(double estimate, double p, double n) {
  return std::abs(estimate - p) <= 4.0 * null_se(p, n) + 1e-12;
}

/// All strictly increasing tuples of the given length with entries in
/// [lo, hi], in lexicographic order.
template <typename Fn>
void for_each_increasing_tuple(std::int64_t lo, std::int64_t hi, std::size_t len, Fn&& fn) {
  std::vector<std::int64_t> t(len);
  auto rec = [&](auto&& self, std::size_t pos, std::int64_t next) -> void {
    if (pos == len) {
      fn(t);
      return;
    }
    for (std::int64_t v = next; v + static_cast<std::int64_t>(len - pos - 1) <= hi; ++v) {
      t[pos] = v;
      self(self, pos + 1, v + 1);
    }
  };
  rec(rec, 0, lo);
}

/// All compositions (ordered tuples of parts >= 1) of every total <= max_sum
/// with part count in [1, max_len].
template <typename Fn>
void for_each_composition(std::size_t max_sum, std::size_t max_len, Fn&& fn) {
  std::vector<std::size_t> parts;
  auto rec = [&](auto&& self, std::size_t remaining) -> void {
    if (!parts.empty()) fn(parts);
    if (parts.size() == max_len) return;
    for (std::size_t v = 1; v <= remaining; ++v) {
      parts.push_back(v);
      self(self, remaining - v);
      parts.pop_back();
    }
  };
  rec(rec, max_sum);
}

struct Profile {
  std::uint64_t grid_trials;    // single/pair delta grids and max-cdf events
  std::uint64_t row_trials;     // direct record-row simulations
  std::uint64_t renyi_trials;
  std::uint64_t small_trials;   // discrete estimators
  std::uint64_t poset_trials;
  std::uint64_t row_horizon;
  std::uint64_t min_decided;
  std::size_t seq_checks;       // extraction invariant sweeps
  std::int64_t ell_cap;         // record-time tuples bound
  std::size_t gamma_sum;        // sum of gamma-kernel exponents
};

inline Profile profile_for(const std::string& suite) {
  if (suite == "core")
    return {1'000'000, 101'000, 100'000, 100'000, 200'000, 30'000'000, 100'000, 10'000, 30, 8};
  if (suite == "quick")
    return {100'000, 6'000, 5'000, 20'000, 50'000, 1'000'000, 5'000, 1'000, 15, 5};
  throw DomainError("unknown suite (expected core or quick): " + suite);
}

inline std::uint64_t subseed(std::uint64_t seed, std::uint64_t slot) {
  return mc::TrialRng(seed, slot).next_u64();
}

}  // namespace detail

// Criterion 1a: the distribution-free gap law against the exact discrete DP
// on a 64-atom uniform. The DP value is exact for the atomic law; the k = 1
// cell carries the first-order discreteness defect 1/(2s), which is added
// back before comparing at the 1e-3 allowance.
inline CheckResult check_inter_record_dp() {
  const auto d = DistributionSpec::finite_uniform(64);
  double max_err = 0, min_allow = 1e300;
  bool pass = true;
  for (std::int64_t k = 1; k <= 10; ++k) {
    oracle::EnumerationConfig cfg{
        d, static_cast<std::size_t>(1 + k),
        oracle::InterRecordPmfTarget{{static_cast<std::size_t>(k)}}};
    const auto r = oracle::exact_record_query(cfg);
    const double law = laws::interrecord_joint_pmf({k}).value;
    const double corrected = r.probability + (k == 1 ? 1.0 / 128.0 : 0.0);
    const double err = std::abs(law - corrected);
    const double allow = r.truncation_mass + 1e-3;
    max_err = std::max(max_err, err);
    min_allow = std::min(min_allow, allow);
    if (err > allow) pass = false;
  }
  return {1, "inter-record-pmf-dp", pass,
          "k=1..10 vs 64-atom DP: max error " + detail::fmt(max_err) + ", allowance " +
              detail::fmt(min_allow)};
}

// Criterion 1b: same law against direct simulation on Uniform(0,1).
inline CheckResult check_inter_record_mc(std::uint64_t seed, const detail::Profile& pr) {
  const auto d = DistributionSpec::uniform(0, 1);
  const auto cells =
      mc::count_delta_single(d, 10, {pr.grid_trials, 16, detail::subseed(seed, 11), {}});
  const double n = static_cast<double>(cells.decided());
  bool pass = cells.undecided == 0;
  double max_z = 0;
  for (std::int64_t k = 1; k <= 10; ++k) {
    const double p = laws::interrecord_joint_pmf({k}).value;
    const double phat = static_cast<double>(cells.counts[k - 1]) / n;
    const double z = std::abs(phat - p) / detail::null_se(p, n);
    max_z = std::max(max_z, z);
    if (z > 4.0) pass = false;
  }
  return {1, "inter-record-pmf-mc", pass,
          "k=1..10, " + std::to_string(cells.trials) + " trials: max |z| = " +
              detail::fmt(max_z) + " (limit 4)"};
}

// Criterion 2: joint gap law P(D2=k, D3=l) via chi-square with an explicit
// complement cell, so expected frequencies are exact.
inline CheckResult check_delta_pair(std::uint64_t seed, const detail::Profile& pr) {
  const auto d = DistributionSpec::uniform(0, 1);
  const auto cells =
      mc::count_delta_pair(d, 5, 5, {pr.grid_trials, 16, detail::subseed(seed, 21), {}});
  std::vector<double> probs;
  double mass = 0;
  for (std::int64_t k = 1; k <= 5; ++k)
    for (std::int64_t l = 1; l <= 5; ++l) {
      probs.push_back(laws::interrecord_joint_pmf({k, l}).value);
      mass += probs.back();
    }
  probs.push_back(1.0 - mass);
  const auto rep = mc::gof_chi_square(cells.with_complement(), probs);
  return {2, "delta-pair-chi-square", rep.pass,
          "chi2 = " + detail::fmt(rep.statistic) + " vs crit " + detail::fmt(rep.threshold) +
              " (" + std::to_string(rep.cells_or_n) + " cells)"};
}

// Criterion 3: record-time pmf equals the gap pmf under l -> (l_2 - 1,
// l_3 - l_2, ...), exactly in rational arithmetic.
inline CheckResult check_record_times_identity(const detail::Profile& pr) {
  std::uint64_t tuples = 0;
  bool pass = true;
  for (std::size_t len = 1; len <= 3; ++len) {
    detail::for_each_increasing_tuple(2, pr.ell_cap, len, [&](const std::vector<std::int64_t>& ell) {
      std::vector<std::int64_t> gaps(ell.size());
      std::int64_t prev = 1;
      for (std::size_t i = 0; i < ell.size(); ++i) {
        gaps[i] = ell[i] - prev;
        prev = ell[i];
      }
      if (!(laws::record_times_joint_pmf_exact(ell) == laws::interrecord_joint_pmf_exact(gaps)))
        pass = false;
      ++tuples;
    });
  }
  return {3, "record-times-identity", pass,
          std::to_string(tuples) + " tuples (l_n <= " + std::to_string(pr.ell_cap) +
              ") compared exactly"};
}

// Criterion 4: the n-th record of Exponential(1) has the Gamma(n,1) law;
// direct simulation and the exponential-representation sampler both pass KS
// against it and a two-sample KS against each other.
inline CheckResult check_record_marginals(std::uint64_t seed, const detail::Profile& pr) {
  const auto d = DistributionSpec::exponential(1.0);
  const auto direct =
      mc::sample_record_rows(d, 4, {pr.row_trials, pr.row_horizon, detail::subseed(seed, 41), {}});
  const auto renyi =
      mc::renyi_sample_records(d, 4, {pr.renyi_trials, 1, detail::subseed(seed, 42), {}});
  bool pass = direct.decided >= pr.min_decided;
  double max_ratio = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto cdf = [n](double x) {
      return x <= 0 ? 0.0 : stats::reg_lower_gamma(static_cast<double>(n), x);
    };
    for (const auto* mat : {&direct, &renyi}) {
      const auto rep = mc::gof_ks(mat->column(n - 1), cdf);
      max_ratio = std::max(max_ratio, rep.statistic / rep.threshold);
      pass = pass && rep.pass;
    }
    const auto two = mc::gof_ks_two_sample(direct.column(n - 1), renyi.column(n - 1));
    max_ratio = std::max(max_ratio, two.statistic / two.threshold);
    pass = pass && two.pass;
  }
  return {4, "record-marginal-ks", pass,
          "n=2..4 direct+representation, 9 KS tests: max stat/crit = " + detail::fmt(max_ratio) +
              ", decided " + std::to_string(direct.decided)};
}

// Criterion 5: record increments of Exponential(theta) are iid
// Exponential(theta) (Poisson arrivals): per-increment KS plus pairwise
// correlation z-scores.
inline CheckResult check_poisson_increments(std::uint64_t seed, const detail::Profile& pr) {
  bool pass = true;
  double max_ratio = 0, max_corr = 0;
  int slot = 51;
  for (double theta : {1.0, 2.0}) {
    const auto d = DistributionSpec::exponential(theta);
    const auto rows =
        mc::sample_record_rows(d, 5, {pr.row_trials, pr.row_horizon, detail::subseed(seed, slot++), {}});
    pass = pass && rows.decided >= pr.min_decided;
    std::vector<std::vector<double>> streams;
    for (std::size_t j = 0; j < 5; ++j) streams.push_back(rows.increment(j));
    for (const auto& s : streams) {
      const auto rep = mc::gof_ks(s, [theta](double x) {
        return x <= 0 ? 0.0 : -std::expm1(-theta * x);
      });
      max_ratio = std::max(max_ratio, rep.statistic / rep.threshold);
      pass = pass && rep.pass;
    }
    for (std::size_t i = 0; i < streams.size(); ++i)
      for (std::size_t j = i + 1; j < streams.size(); ++j) {
        const auto rep = mc::increment_independence(streams[i], streams[j]);
        max_corr = std::max(max_corr, rep.statistic);
        pass = pass && rep.pass;
      }
  }
  return {5, "poisson-arrival-increments", pass,
          "theta in {1,2}: 10 KS (max stat/crit " + detail::fmt(max_ratio) +
              "), 20 corr z (max " + detail::fmt(max_corr) + ", limit 4)"};
}

// Criterion 6: geometric record runs; the literal hazard product equals both
// closed forms exactly in rationals, the floating evaluator matches, and
// simulated increments pass chi-square against Geometric(p).
inline CheckResult check_geometric_records(std::uint64_t seed, const detail::Profile& pr) {
  bool pass = true;
  std::uint64_t tuples = 0;
  int slot = 61;
  double max_chi_ratio = 0;
  for (int pnum = 1; pnum <= 3; ++pnum) {
    const Rational p(pnum, 4);
    const Rational q = Rational(1) - p;
    const auto dg = DistributionSpec::geometric(p.to_double());
    for (std::size_t len = 1; len <= 4; ++len) {
      detail::for_each_increasing_tuple(1, 12, len, [&](const std::vector<std::int64_t>& ys) {
        // product route: per-point hazard f/S with f = q^{y-1} p, S = q^y
        Rational prod(1);
        for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
          const Rational f = q.pow(static_cast<unsigned>(ys[i] - 1)) * p;
          const Rational S = q.pow(static_cast<unsigned>(ys[i]));
          prod *= f / S;
        }
        prod *= q.pow(static_cast<unsigned>(ys.back() - 1)) * p;
        const unsigned n = static_cast<unsigned>(ys.size());
        const Rational closed1 =
            (p / q).pow(n - 1) * q.pow(static_cast<unsigned>(ys.back() - 1)) * p;
        const Rational closed2 = (p / q).pow(n) * q.pow(static_cast<unsigned>(ys.back()));
        if (!(prod == closed1) || !(closed1 == closed2)) pass = false;
        if (!(laws::geometric_record_joint_pmf_exact(p, ys) == closed1)) pass = false;
        std::vector<double> ysd(ys.begin(), ys.end());
        const double dbl = laws::discrete_record_joint_pmf(dg, ysd).value;
        if (std::abs(dbl - closed1.to_double()) > 1e-12 * closed1.to_double()) pass = false;
        ++tuples;
      });
    }
    // MC: first record increment K_2 = X^(2) - X^(1) against Geometric(p)
    const auto rows =
        mc::sample_record_rows(dg, 2, {pr.small_trials, 10'000, detail::subseed(seed, slot++), {}});
    const auto incr = rows.increment(1);
    const std::size_t kmax = 15;
    std::vector<std::uint64_t> counts(kmax + 1, 0);
    for (double v : incr) {
      const auto k = static_cast<std::size_t>(v);
      ++counts[std::min(k - 1, kmax)];
    }
    std::vector<double> probs;
    const double pd = p.to_double(), qd = q.to_double();
    for (std::size_t k = 1; k <= kmax; ++k) probs.push_back(std::pow(qd, k - 1.0) * pd);
    probs.push_back(std::pow(qd, static_cast<double>(kmax)));
    const auto rep = mc::gof_chi_square(counts, probs);
    max_chi_ratio = std::max(max_chi_ratio, rep.statistic / rep.threshold);
    pass = pass && rep.pass;
  }
  return {6, "geometric-records", pass,
          std::to_string(tuples) + " exact tuples; 3 increment chi-squares (max stat/crit " +
              detail::fmt(max_chi_ratio) + ")"};
}

// Criterion 7: the ordered-simplex integral of prod F^{k_j - 1} dF equals
// 1 / prod (k_1 + ... + k_j) on both test laws, confirming the quadrature
// oracle and the distribution-free claim together.
inline CheckResult check_gamma_quadrature(const detail::Profile& pr) {
  bool pass = true;
  double max_err = 0;
  std::uint64_t cases = 0;
  const auto dists = {DistributionSpec::uniform(0, 1), DistributionSpec::exponential(1.0)};
  for (const auto& d : dists) {
    const auto ep = endpoints(d);
    detail::for_each_composition(pr.gamma_sum, 3, [&](const std::vector<std::size_t>& k) {
      std::vector<std::int64_t> ki(k.begin(), k.end());
      const double target = laws::gamma_integral(ki).value;
      oracle::QuadratureConfig qc{d, k.size(), ep.lep, ep.uep, 1e-8, std::size_t{1} << 14};
      const auto r = oracle::simplex_quadrature(qc, oracle::GammaKernel{k});
      const double err = std::abs(r.value - target);
      max_err = std::max(max_err, err);
      if (!r.converged || err > 1e-6) pass = false;
      ++cases;
    });
  }
  return {7, "gamma-integral-quadrature", pass,
          std::to_string(cases) + " kernels on 2 laws: max |quad - closed| = " +
              detail::fmt(max_err) + " (allow 1e-6)"};
}

// Criterion 8: nested hazard integrals against (R(y) - R(z))^m / m!.
inline CheckResult check_hazard_quadrature() {
  struct Case {
    DistributionSpec d;
    double z, y;
  };
  const Case cases[] = {{DistributionSpec::uniform(0, 1), 0.2, 0.8},
                        {DistributionSpec::exponential(1.0), 0.0, 1.0},
                        {DistributionSpec::exponential(1.0), 0.5, 2.0}};
  bool pass = true;
  double max_err = 0;
  for (const auto& c : cases) {
    if (laws::hazard_simplex_integral(c.d, 1, c.z, c.y).value != 1.0) pass = false;
    for (std::size_t m = 1; m <= 4; ++m) {
      const double target = laws::hazard_simplex_integral(c.d, m + 1, c.z, c.y).value;
      oracle::QuadratureConfig qc{c.d, m, c.z, c.y, 1e-8, std::size_t{1} << 14};
      const auto r = oracle::simplex_quadrature(qc, oracle::HazardProduct{});
      const double err = std::abs(r.value - target);
      max_err = std::max(max_err, err);
      if (!r.converged || err > 1e-6) pass = false;
    }
  }
  return {8, "hazard-simplex-quadrature", pass,
          "12 nested integrals, depth 1..4: max error " + detail::fmt(max_err) +
              " (allow 1e-6)"};
}

// Criterion 9: P(no further record) = atom mass at the upper endpoint, by
// MC with certified truncation and by the exact DP.
inline CheckResult check_endpoint_atom(std::uint64_t seed, const detail::Profile& pr) {
  bool pass = true;
  double max_z = 0, max_trunc = 0;
  int slot = 91;
  for (std::size_t m = 2; m <= 10; ++m) {
    const auto d = DistributionSpec::finite_uniform(m);
    const double p = laws::prob_no_further_record(d).value;
    const auto rep =
        mc::estimate_no_further_record(d, {pr.small_trials, 200, detail::subseed(seed, slot++), {}});
    const double z = std::abs(rep.estimate - p) /
                     detail::null_se(p, static_cast<double>(rep.trials_used));
    max_z = std::max(max_z, z);
    max_trunc = std::max(max_trunc, rep.truncation_mass);
    if (z > 4.0 || rep.truncation_mass >= 1e-8) pass = false;
    const auto dp =
        oracle::exact_record_query({d, 200, oracle::NoFurtherRecordTarget{}});
    if (std::abs(dp.probability - p) > dp.truncation_mass + 1e-15) pass = false;
  }
  return {9, "endpoint-atom-finiteness", pass,
          "m=2..10: max |z| = " + detail::fmt(max_z) + ", max truncation = " +
              detail::fmt(max_trunc) + ", DP agrees to certified bound"};
}

// Criterion 10: running-maxima joint cdf at random bound vectors.
inline CheckResult check_running_max_cdf(std::uint64_t seed, const detail::Profile& pr) {
  const auto d = DistributionSpec::uniform(0, 1);
  mc::TrialRng gen(detail::subseed(seed, 101), 0);
  bool pass = true;
  double max_z = 0;
  for (int i = 0; i < 20; ++i) {
    std::vector<double> ys(4);
    for (auto& y : ys) y = gen.next_unit();
    const double p = laws::joint_max_cdf(d, ys).value;
    const auto rep = mc::estimate_max_cdf_event(
        d, ys, {pr.grid_trials, 4, detail::subseed(seed, 110 + static_cast<std::uint64_t>(i)), {}});
    const double z =
        std::abs(rep.estimate - p) / detail::null_se(p, static_cast<double>(rep.trials_used));
    max_z = std::max(max_z, z);
    if (z > 4.0) pass = false;
  }
  return {10, "running-max-cdf", pass,
          "20 random bound vectors, n=4: max |z| = " + detail::fmt(max_z) + " (limit 4)"};
}

// Criterion 11a: dimension-1 componentwise order reproduces the real line.
inline CheckResult check_dim1_consistency(std::uint64_t seed, const detail::Profile& pr) {
  const auto d6 = DistributionSpec::finite_uniform(6);
  mc::TrialRng gen(detail::subseed(seed, 121), 0);
  const VectorSpace vspace{1};
  bool pass = true;
  const RecordKind kinds[] = {RecordKind::StrongUpper, RecordKind::WeakUpper,
                              RecordKind::StrongLower, RecordKind::WeakLower};
  for (std::size_t t = 0; t < pr.seq_checks; ++t) {
    std::vector<double> seq(40);
    const bool atomic = t % 2 == 1;  // half tie-rich, half continuous
    for (auto& x : seq) x = atomic ? quantile(d6, gen.next_unit()) : gen.next_unit();
    std::vector<std::vector<double>> vseq;
    for (double x : seq) vseq.push_back({x});
    for (RecordKind kind : kinds) {
      const auto a = extract_all(seq, kind);
      const auto b = extract_all(vseq, kind, vspace);
      if (a.count() != b.count()) pass = false;
      for (std::size_t i = 0; pass && i < a.count(); ++i) {
        if (a.events[i].ordinal != b.events[i].ordinal ||
            a.events[i].time_index != b.events[i].time_index ||
            a.events[i].value != b.events[i].value[0])
          pass = false;
      }
    }
  }
  return {11, "poset-dim1-consistency", pass,
          std::to_string(pr.seq_checks) + " sequences x 4 kinds, events identical"};
}

// Criterion 11b: componentwise-order MC transition at d=1 against
// k / (j (j-1)).
inline CheckResult check_poset_transition(std::uint64_t seed, const detail::Profile& pr) {
  const std::vector<DistributionSpec> marg = {DistributionSpec::uniform(0, 1)};
  const std::pair<std::uint64_t, std::uint64_t> kj[] = {{2, 3}, {2, 5}, {3, 4}};
  bool pass = true;
  double max_z = 0;
  int slot = 131;
  for (const auto& [k, j] : kj) {
    const double p = laws::record_time_transition_pmf(static_cast<std::int64_t>(k),
                                                      static_cast<std::int64_t>(j))
                         .value;
    const auto rep = mc::estimate_poset_transition(
        marg, k, j, {pr.poset_trials, j, detail::subseed(seed, slot++), {}});
    const double z =
        std::abs(rep.estimate - p) / detail::null_se(p, static_cast<double>(rep.trials_used));
    max_z = std::max(max_z, z);
    if (z > 4.0) pass = false;
  }
  return {11, "poset-transition-mc", pass,
          "(k,j) in {(2,3),(2,5),(3,4)}: max |z| = " + detail::fmt(max_z) + " (limit 4)"};
}

// Criterion 11c: extraction is invariant under strictly increasing
// re-scalings and maps to the dual kind under strictly decreasing ones.
inline CheckResult check_rescaling_duality(std::uint64_t seed, const detail::Profile& pr) {
  const auto d6 = DistributionSpec::finite_uniform(6);
  mc::TrialRng gen(detail::subseed(seed, 141), 0);
  bool pass = true;

  const auto same_shape = [](const RecordSequence<double>& a, const RecordSequence<double>& b) {
    if (a.count() != b.count()) return false;
    for (std::size_t i = 0; i < a.count(); ++i)
      if (a.events[i].ordinal != b.events[i].ordinal ||
          a.events[i].time_index != b.events[i].time_index)
        return false;
    return true;
  };

  for (std::size_t t = 0; t < pr.seq_checks; ++t) {
    const bool atomic = t % 2 == 1;
    std::vector<double> seq(30);
    for (auto& x : seq) x = atomic ? quantile(d6, gen.next_unit()) : gen.next_unit();

    // increasing maps preserve every record kind, times and mapped values
    for (auto h : {+[](double x) { return std::exp(x); },
                   +[](double x) { return 2.0 * x + 1.0; },
                   +[](double x) { return x * x * x; }}) {
      std::vector<double> mapped(seq.size());
      std::transform(seq.begin(), seq.end(), mapped.begin(), h);
      for (RecordKind kind : {RecordKind::StrongUpper, RecordKind::WeakUpper,
                              RecordKind::StrongLower, RecordKind::WeakLower}) {
        const auto a = extract_all(seq, kind);
        const auto b = extract_all(mapped, kind);
        if (!same_shape(a, b)) pass = false;
        for (std::size_t i = 0; pass && i < a.count(); ++i)
          if (b.events[i].value != h(a.events[i].value)) pass = false;
      }
    }

    // negation swaps upper and lower records of the same strength
    std::vector<double> neg(seq.size());
    std::transform(seq.begin(), seq.end(), neg.begin(), [](double x) { return -x; });
    const std::pair<RecordKind, RecordKind> dual[] = {
        {RecordKind::StrongUpper, RecordKind::StrongLower},
        {RecordKind::WeakUpper, RecordKind::WeakLower},
        {RecordKind::StrongLower, RecordKind::StrongUpper},
        {RecordKind::WeakLower, RecordKind::WeakUpper}};
    for (const auto& [kind, dual_kind] : dual) {
      const auto a = extract_all(seq, kind);
      const auto b = extract_all(neg, dual_kind);
      if (!same_shape(a, b)) pass = false;
      for (std::size_t i = 0; pass && i < a.count(); ++i)
        if (b.events[i].value != -a.events[i].value) pass = false;
    }

    // on positive data, x -> 1/x is strictly decreasing: same duality
    const auto a = extract_all(seq, RecordKind::StrongUpper);
    std::vector<double> rec(seq.size());
    std::transform(seq.begin(), seq.end(), rec.begin(), [](double x) { return 1.0 / x; });
    const auto b = extract_all(rec, RecordKind::StrongLower);
    if (!same_shape(a, b)) pass = false;
    for (std::size_t i = 0; pass && i < a.count(); ++i)
      if (b.events[i].value != 1.0 / a.events[i].value) pass = false;
  }
  return {11, "rescaling-duality", pass,
          std::to_string(pr.seq_checks) +
              " sequences: increasing maps preserve records, decreasing maps dualize"};
}

inline SuiteReport run_suite(const std::string& suite, std::uint64_t seed) {
  const detail::Profile pr = detail::profile_for(suite);
  SuiteReport rep{suite, seed, {}};
  rep.checks.push_back(check_inter_record_dp());
  rep.checks.push_back(check_inter_record_mc(seed, pr));
  rep.checks.push_back(check_delta_pair(seed, pr));
  rep.checks.push_back(check_record_times_identity(pr));
  rep.checks.push_back(check_record_marginals(seed, pr));
  rep.checks.push_back(check_poisson_increments(seed, pr));
  rep.checks.push_back(check_geometric_records(seed, pr));
  rep.checks.push_back(check_gamma_quadrature(pr));
  rep.checks.push_back(check_hazard_quadrature());
  rep.checks.push_back(check_endpoint_atom(seed, pr));
  rep.checks.push_back(check_running_max_cdf(seed, pr));
  rep.checks.push_back(check_dim1_consistency(seed, pr));
  rep.checks.push_back(check_poset_transition(seed, pr));
  rep.checks.push_back(check_rescaling_duality(seed, pr));
  return rep;
}

inline io::json suite_report_to_json(const SuiteReport& rep) {
  io::json checks = io::json::array();
  for (const auto& c : rep.checks)
    checks.push_back(
        {{"criterion", c.criterion}, {"id", c.id}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"suite", rep.suite}, {"seed", rep.seed}, {"pass", rep.all_pass()}, {"checks", checks}};
}

}  // namespace recordkit::verify

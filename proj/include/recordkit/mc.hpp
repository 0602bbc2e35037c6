#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "recordkit/dist.hpp"
#include "recordkit/errors.hpp"
#include "recordkit/extract.hpp"
#include "recordkit/stats.hpp"

namespace recordkit::mc {

struct McConfig {
  std::uint64_t trials = 0;
  std::uint64_t horizon = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> target_records;

  void validate() const {
    if (trials < 1) throw DomainError("trials must be >= 1");
    if (horizon < 1) throw DomainError("horizon must be >= 1");
  }
};

struct McReport {
  double estimate = 0;
  double std_error = 0;
  std::uint64_t trials_used = 0;   // trials decided and counted
  double truncation_mass = 0;      // fraction of trials undecided at horizon
  std::uint64_t seed = 0;
};

enum class GofTest { ChiSquare, KolmogorovSmirnov, CorrelationZ };

inline std::string to_string(GofTest t) {
  switch (t) {
    case GofTest::ChiSquare: return "ChiSquare";
    case GofTest::KolmogorovSmirnov: return "KolmogorovSmirnov";
    case GofTest::CorrelationZ: return "CorrelationZ";
  }
  return "?";
}

struct GofReport {
  GofTest test;
  double statistic;
  double threshold;
  bool pass;
  std::uint64_t cells_or_n;
};

/// splitmix64 stream keyed by (seed, stream index). Each trial owns one
/// stream, so estimates are independent of trial execution order and can be
/// merged across workers.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(seed + kGolden) ^ mix(stream * 0xda942042e4dd58b5ull + kGolden)) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  /// Uniform on the open interval (0,1); never returns an endpoint.
  double next_unit() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

inline double draw(const DistributionSpec& d, TrialRng& rng) {
  return quantile(d, rng.next_unit());
}

/// Runs one extraction per trial, stopping at the horizon or once
/// target_records have been seen, and hands each finished RecordSequence to
/// the sink as sink(trial_index, sequence).
template <typename Sink>
void simulate_records(const DistributionSpec& d, RecordKind kind, const McConfig& cfg,
                      Sink&& sink) {
  cfg.validate();
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    TrialRng rng(cfg.seed, t);
    Extractor<RealSpace> ex(RealSpace{}, kind);
    RecordSequence<double> rs{kind, {}, 0};
    for (std::uint64_t i = 0; i < cfg.horizon; ++i) {
      if (auto ev = ex.feed(draw(d, rng))) rs.events.push_back(std::move(*ev));
      if (cfg.target_records && rs.count() >= *cfg.target_records) break;
    }
    rs.observations_consumed = ex.clock();
    sink(t, rs);
  }
}

/// Rows of the first n record values, one row per trial that reaches n
/// records within the horizon (strong upper records, direct simulation).
struct RecordMatrix {
  std::size_t width = 0;
  std::vector<double> values;  // row-major, decided x width
  std::uint64_t decided = 0;
  std::uint64_t trials = 0;

  double at(std::uint64_t row, std::size_t col) const { return values[row * width + col]; }

  std::vector<double> column(std::size_t col) const {
    std::vector<double> out(decided);
    for (std::uint64_t r = 0; r < decided; ++r) out[r] = at(r, col);
    return out;
  }

  /// Increment X^(j) - X^(j-1) per row; j = 0 yields X^(1) itself.
  std::vector<double> increment(std::size_t j) const {
    std::vector<double> out(decided);
    for (std::uint64_t r = 0; r < decided; ++r)
      out[r] = j == 0 ? at(r, 0) : at(r, j) - at(r, j - 1);
    return out;
  }
};

inline RecordMatrix sample_record_rows(const DistributionSpec& d, std::size_t n,
                                       const McConfig& cfg) {
  cfg.validate();
  if (n < 1) throw DomainError("need at least one record per row");
  RecordMatrix out;
  out.width = n;
  out.trials = cfg.trials;
  out.values.reserve(cfg.trials * n);
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    TrialRng rng(cfg.seed, t);
    Extractor<RealSpace> ex(RealSpace{}, RecordKind::StrongUpper);
    std::vector<double> row;
    row.reserve(n);
    for (std::uint64_t i = 0; i < cfg.horizon && row.size() < n; ++i)
      if (auto ev = ex.feed(draw(d, rng))) row.push_back(ev->value);
    if (row.size() == n) {
      out.values.insert(out.values.end(), row.begin(), row.end());
      ++out.decided;
    }
  }
  return out;
}

/// Record vectors via the exponential representation: with E_j the j-th
/// partial sum of iid unit exponentials, X^(j) = F^{-1}(1 - e^{-E_j}). Every
/// trial is decided.
inline RecordMatrix renyi_sample_records(const DistributionSpec& d, std::size_t n,
                                         const McConfig& cfg) {
  cfg.validate();
  if (!d.is_continuous()) throw UnsupportedVariant("exponential representation needs a continuous law");
  if (n < 1) throw DomainError("need at least one record per row");
  RecordMatrix out;
  out.width = n;
  out.trials = cfg.trials;
  out.decided = cfg.trials;
  out.values.resize(cfg.trials * n);
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    TrialRng rng(cfg.seed, t);
    double e = 0;
    for (std::size_t j = 0; j < n; ++j) {
      e += -std::log1p(-rng.next_unit());
      // 1 - e^{-E} fed through the quantile; -expm1 keeps precision near 0.
      out.values[t * n + j] = quantile(d, -std::expm1(-e));
    }
  }
  return out;
}

namespace detail {

inline McReport bernoulli_report(std::uint64_t successes, std::uint64_t decided,
                                 std::uint64_t trials, std::uint64_t seed) {
  McReport r;
  r.seed = seed;
  r.trials_used = decided;
  r.truncation_mass =
      trials ? static_cast<double>(trials - decided) / static_cast<double>(trials) : 0.0;
  if (decided == 0) return r;
  const double n = static_cast<double>(decided);
  const double p = static_cast<double>(successes) / n;
  r.estimate = p;
  // sample std of the 0/1 indicators over the decided trials
  const double var = decided > 1 ? p * (1 - p) * n / (n - 1) : 0.0;
  r.std_error = std::sqrt(var / n);
  return r;
}

}  // namespace detail

/// Generic Bernoulli estimator: trial(rng) returns true/false when the event
/// is decided, nullopt when the horizon ran out first.
template <typename Trial>
McReport estimate_event(const McConfig& cfg, Trial&& trial) {
  cfg.validate();
  std::uint64_t successes = 0, decided = 0;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    TrialRng rng(cfg.seed, t);
    if (std::optional<bool> r = trial(rng)) {
      ++decided;
      successes += *r ? 1 : 0;
    }
  }
  return detail::bernoulli_report(successes, decided, cfg.trials, cfg.seed);
}

/// Per-cell trial counts over a finite grid plus an explicit complement cell.
/// Every decided trial lands in exactly one cell, so expected counts against
/// a law that includes the complement mass are exact, with no conditioning
/// bias.
struct CellCounts {
  std::vector<std::uint64_t> counts;
  std::uint64_t complement = 0;
  std::uint64_t undecided = 0;
  std::uint64_t trials = 0;

  std::uint64_t decided() const { return trials - undecided; }

  /// counts with the complement appended, as chi-square input.
  std::vector<std::uint64_t> with_complement() const {
    std::vector<std::uint64_t> out = counts;
    out.push_back(complement);
    return out;
  }
};

/// Classifies D_2 into {1..kmax} or the complement. A trial needs at most
/// 1 + kmax observations, so with horizon >= 1 + kmax every trial decides.
inline CellCounts count_delta_single(const DistributionSpec& d, std::uint64_t kmax,
                                     const McConfig& cfg) {
  cfg.validate();
  if (kmax < 1) throw DomainError("grid needs kmax >= 1");
  CellCounts out;
  out.counts.assign(kmax, 0);
  out.trials = cfg.trials;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    TrialRng rng(cfg.seed, t);
    const double x1 = draw(d, rng);
    bool settled = false;
    for (std::uint64_t g = 1; g <= kmax && g + 1 <= cfg.horizon; ++g) {
      if (draw(d, rng) > x1) {
        ++out.counts[g - 1];
        settled = true;
        break;
      }
    }
    if (!settled) {
      if (kmax + 1 <= cfg.horizon) ++out.complement;
      else ++out.undecided;
    }
  }
  return out;
}

/// Classifies (D_2, D_3) into the kmax x lmax grid or the complement;
/// decided within 1 + kmax + lmax observations.
inline CellCounts count_delta_pair(const DistributionSpec& d, std::uint64_t kmax,
                                   std::uint64_t lmax, const McConfig& cfg) {
  cfg.validate();
  if (kmax < 1 || lmax < 1) throw DomainError("grid needs kmax, lmax >= 1");
  if (cfg.horizon < 1 + kmax + lmax) throw DomainError("horizon cannot decide the grid");
  CellCounts out;
  out.counts.assign(kmax * lmax, 0);
  out.trials = cfg.trials;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    TrialRng rng(cfg.seed, t);
    const double x1 = draw(d, rng);
    std::uint64_t k = 0;
    double x2 = 0;
    for (std::uint64_t g = 1; g <= kmax; ++g) {
      const double x = draw(d, rng);
      if (x > x1) {
        k = g;
        x2 = x;
        break;
      }
    }
    if (k == 0) {
      ++out.complement;  // D_2 > kmax
      continue;
    }
    std::uint64_t l = 0;
    for (std::uint64_t g = 1; g <= lmax; ++g) {
      if (draw(d, rng) > x2) {
        l = g;
        break;
      }
    }
    if (l == 0) ++out.complement;  // D_3 > lmax
    else ++out.counts[(k - 1) * lmax + (l - 1)];
  }
  return out;
}

/// P(no record follows the first observation). Decides success immediately
/// when X_1 sits on the upper endpoint atom (nothing can beat it), failure
/// when a later observation does beat it; otherwise the trial is undecided
/// and reported as truncation.
inline McReport estimate_no_further_record(const DistributionSpec& d, const McConfig& cfg) {
  cfg.validate();
  if (!d.is_discrete()) throw UnsupportedVariant("atom-at-endpoint estimator needs an atomic law");
  return estimate_event(cfg, [&](TrialRng& rng) -> std::optional<bool> {
    const double x1 = draw(d, rng);
    if (!(survival_eval(d, x1) > 0)) return true;
    for (std::uint64_t i = 1; i < cfg.horizon; ++i)
      if (draw(d, rng) > x1) return false;
    return std::nullopt;
  });
}

/// P(M_1 <= y_1, ..., M_n <= y_n) by direct simulation of running maxima.
inline McReport estimate_max_cdf_event(const DistributionSpec& d, const std::vector<double>& ys,
                                       const McConfig& cfg) {
  cfg.validate();
  if (ys.empty()) throw EmptyInput("need at least one bound");
  return estimate_event(cfg, [&](TrialRng& rng) -> std::optional<bool> {
    double running_max = -std::numeric_limits<double>::infinity();
    for (double y : ys) {
      running_max = std::max(running_max, draw(d, rng));
      if (running_max > y) return false;
    }
    return true;
  });
}

/// P(next record time = j | k is a record time) under the componentwise
/// order on independent product marginals; rejection sampling on the
/// conditioning event. Throws TooFewConditioningHits below 10^3 hits.
inline McReport estimate_poset_transition(const std::vector<DistributionSpec>& marginals,
                                          std::uint64_t k, std::uint64_t j,
                                          const McConfig& cfg) {
  cfg.validate();
  if (marginals.empty()) throw DomainError("need at least one marginal");
  if (k < 1) throw DomainError("conditioning record time starts at 1");
  if (j <= k) return {0.0, 0.0, cfg.trials, 0.0, cfg.seed};  // off the transition support
  if (cfg.horizon < j) throw DomainError("horizon must reach j");
  const std::size_t dim = marginals.size();
  const VectorSpace space{dim};
  std::uint64_t hits = 0, successes = 0;
  std::vector<double> z(dim);
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    TrialRng rng(cfg.seed, t);
    Extractor<VectorSpace> ex(space, RecordKind::StrongUpper);
    bool k_is_record = false;
    std::optional<bool> outcome;
    for (std::uint64_t i = 1; i <= j && i <= cfg.horizon; ++i) {
      for (std::size_t c = 0; c < dim; ++c) z[c] = draw(marginals[c], rng);
      const bool is_record = ex.feed(z).has_value();
      if (i == k) {
        k_is_record = is_record;
        if (!is_record) break;
      } else if (i > k && is_record) {
        outcome = (i == j);
        break;
      }
    }
    if (!k_is_record) continue;
    ++hits;
    // no record in (k, j] means the next record falls strictly after j
    successes += outcome.value_or(false) ? 1 : 0;
  }
  if (hits < 1000) throw TooFewConditioningHits("conditioning event hit fewer than 10^3 times");
  McReport r = detail::bernoulli_report(successes, hits, cfg.trials, cfg.seed);
  // here truncation reports the rejection rate, not undecidedness
  r.truncation_mass = 1.0 - static_cast<double>(hits) / static_cast<double>(cfg.trials);
  return r;
}

// --- goodness of fit ---

inline GofReport gof_chi_square(const std::vector<std::uint64_t>& observed,
                                const std::vector<double>& cell_probs,
                                double min_expected = 5.0, double alpha = 0.01) {
  if (observed.size() != cell_probs.size())
    throw ShapeMismatch("observed and expected cell vectors differ in length");
  if (observed.size() < 2) throw InsufficientSamples("need at least two cells");
  std::uint64_t total = 0;
  for (std::uint64_t c : observed) total += c;
  if (total < 1000) throw InsufficientSamples("chi-square needs >= 10^3 samples");
  double mass = 0;
  for (double p : cell_probs) {
    if (p < 0) throw DomainError("cell probabilities must be nonnegative");
    mass += p;
  }
  if (std::abs(mass - 1.0) > 1e-6) throw DomainError("cell probabilities must sum to 1");

  // Pool under-filled cells from the tail until every cell clears the floor.
  std::vector<double> obs, exp;
  double pool_o = 0, pool_e = 0;
  const double n = static_cast<double>(total);
  for (std::size_t i = observed.size(); i-- > 0;) {
    const double o = static_cast<double>(observed[i]) + pool_o;
    const double e = n * cell_probs[i] + pool_e;
    if (e < min_expected && i > 0) {
      pool_o = o;
      pool_e = e;
    } else {
      obs.push_back(o);
      exp.push_back(e);
      pool_o = pool_e = 0;
    }
  }
  if (obs.size() < 2) throw InsufficientSamples("pooling left fewer than two cells");

  double stat = 0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double diff = obs[i] - exp[i];
    stat += diff * diff / exp[i];
  }
  const double df = static_cast<double>(obs.size() - 1);
  const double threshold = stats::chi_square_critical(df, alpha);
  return {GofTest::ChiSquare, stat, threshold, stat <= threshold, obs.size()};
}

inline GofReport gof_ks(const std::vector<double>& samples,
                        const std::function<double(double)>& cdf, double alpha = 0.01) {
  if (samples.size() < 1000) throw InsufficientSamples("KS needs >= 10^3 samples");
  const double n = static_cast<double>(samples.size());
  const double stat = stats::ks_statistic(samples, cdf);
  const double threshold = stats::kolmogorov_critical(alpha) / std::sqrt(n);
  return {GofTest::KolmogorovSmirnov, stat, threshold, stat <= threshold, samples.size()};
}

inline GofReport gof_ks_two_sample(const std::vector<double>& a, const std::vector<double>& b,
                                   double alpha = 0.01) {
  if (a.size() < 1000 || b.size() < 1000)
    throw InsufficientSamples("two-sample KS needs >= 10^3 samples each");
  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());
  const double stat = stats::ks_two_sample_statistic(a, b);
  const double threshold = stats::kolmogorov_critical(alpha) * std::sqrt((n + m) / (n * m));
  return {GofTest::KolmogorovSmirnov, stat, threshold, stat <= threshold,
          a.size() + b.size()};
}

/// |corr| * sqrt(N) <= 4 test for independence of two increment streams.
inline GofReport increment_independence(const std::vector<double>& a,
                                        const std::vector<double>& b) {
  if (a.size() < 1000) throw InsufficientSamples("correlation needs >= 10^3 samples");
  const double rho = stats::correlation(a, b);
  const double stat = std::abs(rho) * std::sqrt(static_cast<double>(a.size()));
  return {GofTest::CorrelationZ, stat, 4.0, stat <= 4.0, a.size()};
}

}  // namespace recordkit::mc

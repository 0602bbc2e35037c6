#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "recordkit/dist.hpp"
#include "recordkit/errors.hpp"
#include "recordkit/rational.hpp"

namespace recordkit::laws {

/// Closed-form evaluation result. support_flag is false (and value 0) when
/// the input lies outside the formula's support.
struct LawValue {
  double value;
  std::string formula_id;
  bool support_flag;
};

/// Strictly increasing record ordinals n_1 < ... < n_k, each >= 1.
struct IndexTuple {
  std::vector<std::size_t> indices;

  explicit IndexTuple(std::vector<std::size_t> idx) : indices(std::move(idx)) {
    if (indices.empty()) throw DomainError("index tuple must be nonempty");
    std::size_t prev = 0;
    for (std::size_t n : indices) {
      if (n <= prev) throw DomainError("index tuple must increase strictly from >= 1");
      prev = n;
    }
  }
};

inline double factorial(std::size_t n) {
  double f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

// --- distribution-free pmfs, exact rational cores ---

/// P(D_2=k_2, ..., D_n=k_n) for the inter-record gaps of a continuous iid
/// sequence: 1 / ((s_n + 1) * prod_j s_j), s_j = k_2 + ... + k_j.
inline Rational interrecord_joint_pmf_exact(const std::vector<std::int64_t>& k) {
  if (k.empty()) throw InvalidGap("need at least one gap");
  Rational denom(1);
  std::int64_t partial = 0;
  for (std::int64_t kj : k) {
    if (kj < 1) throw InvalidGap("gaps must be >= 1");
    partial += kj;
    denom *= Rational(partial);
  }
  denom *= Rational(partial + 1);
  return Rational(1) / denom;
}

/// P(U(2)=l_2, ..., U(n)=l_n) = (1/l_n) * prod_j 1/(l_j - 1).
inline Rational record_times_joint_pmf_exact(const std::vector<std::int64_t>& ell) {
  if (ell.empty() || ell.front() < 2) throw InvalidTimes("record times start at 2");
  Rational denom(1);
  std::int64_t prev = 1;
  for (std::int64_t lj : ell) {
    if (lj <= prev) throw InvalidTimes("record times must increase strictly");
    denom *= Rational(lj - 1);
    prev = lj;
  }
  denom *= Rational(ell.back());
  return Rational(1) / denom;
}

/// gamma(k_1..k_n) = 1 / prod_j (k_1 + ... + k_j), distribution-free.
inline Rational gamma_integral_exact(const std::vector<std::int64_t>& k) {
  if (k.empty()) throw InvalidExponent("need at least one exponent");
  Rational denom(1);
  std::int64_t partial = 0;
  for (std::int64_t kj : k) {
    if (kj < 1) throw InvalidExponent("exponents must be >= 1");
    partial += kj;
    denom *= Rational(partial);
  }
  return Rational(1) / denom;
}

/// Record-value run of a geometric law, evaluated as the literal product
/// prod_{i<n} r(y_i) * f(y_n) in exact arithmetic; p given as a rational.
inline Rational geometric_record_joint_pmf_exact(const Rational& p,
                                                 const std::vector<std::int64_t>& ys) {
  if (!(Rational(0) < p) || !(p < Rational(1)))
    throw DomainError("geometric p must lie in (0,1)");
  if (ys.empty()) throw EmptyInput("need at least one record value");
  std::int64_t prev = 0;
  for (std::int64_t y : ys) {
    if (y <= prev) throw DomainError("record values must increase strictly from >= 1");
    prev = y;
  }
  const Rational q = Rational(1) - p;
  const Rational hazard = p / q;
  Rational out = hazard.pow(static_cast<unsigned>(ys.size() - 1));
  out *= q.pow(static_cast<unsigned>(ys.back() - 1));
  out *= p;
  return out;
}

// --- LawValue wrappers ---

inline LawValue interrecord_joint_pmf(const std::vector<std::int64_t>& k) {
  return {interrecord_joint_pmf_exact(k).to_double(), "interRecords", true};
}

inline LawValue record_times_joint_pmf(const std::vector<std::int64_t>& ell) {
  return {record_times_joint_pmf_exact(ell).to_double(), "lawRtimes", true};
}

/// P(U(n+1)=j | U(n)=k) = k/(j(j-1)) in the continuous iid case; 0 outside
/// j > k >= 2.
inline LawValue record_time_transition_pmf(std::int64_t k, std::int64_t j) {
  if (k < 2 || j <= k) return {0.0, "lrecMarkov", false};
  return {static_cast<double>(k) / (static_cast<double>(j) * static_cast<double>(j - 1)),
          "lrecMarkov", true};
}

inline LawValue gamma_integral(const std::vector<std::int64_t>& k) {
  return {gamma_integral_exact(k).to_double(), "gamma", true};
}

namespace detail {

inline void require_continuous(const DistributionSpec& d, const char* what) {
  if (!d.is_continuous()) throw UnsupportedVariant(std::string(what) + " needs a continuous law");
}

inline void require_discrete(const DistributionSpec& d, const char* what) {
  if (!d.is_discrete()) throw UnsupportedVariant(std::string(what) + " needs an atomic law");
}

inline bool off(const LawValue& v) { return !v.support_flag; }

}  // namespace detail

/// Density of the n-th record value: R(x)^{n-1} f(x) / (n-1)!.
inline LawValue record_value_marginal_pdf(const DistributionSpec& d, std::size_t n, double x) {
  detail::require_continuous(d, "record value density");
  if (n < 1) throw DomainError("record ordinal starts at 1");
  const double f = pdf_eval(d, x);
  const double s = survival_eval(d, x);
  if (f <= 0 || !(s > 0)) return {0.0, "ADR3", false};
  const double R = cum_hazard_eval(d, x);
  return {std::pow(R, static_cast<double>(n - 1)) * f / factorial(n - 1), "ADR3", true};
}

/// Joint density of the first n record values at y_1 < ... < y_n:
/// prod_{i<n} r(y_i) * f(y_n).
inline LawValue record_value_joint_pdf(const DistributionSpec& d,
                                       const std::vector<double>& xs) {
  detail::require_continuous(d, "record joint density");
  if (xs.empty()) throw EmptyInput("need at least one record value");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1] < xs[i])) return {0.0, "ADR1", false};
  const double fn = pdf_eval(d, xs.back());
  if (fn <= 0) return {0.0, "ADR1", false};
  double prod = fn;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (pdf_eval(d, xs[i]) <= 0 || !(survival_eval(d, xs[i]) > 0)) return {0.0, "ADR1", false};
    prod *= hazard_eval(d, xs[i]);
  }
  return {prod, "ADR1", true};
}

/// Joint density of the subvector (X^(n_1), ..., X^(n_k)). Skipped ordinals
/// contribute gap factors (R(y_j) - R(y_{j-1}))^{n_j - n_{j-1} - 1} / (n_j - n_{j-1} - 1)!
/// with R(y_0) = 0; observed ordinals contribute hazards, the last its density.
inline LawValue record_value_subvector_pdf(const DistributionSpec& d, const IndexTuple& idx,
                                           const std::vector<double>& xs) {
  detail::require_continuous(d, "record subvector density");
  if (idx.indices.size() != xs.size())
    throw ShapeMismatch("index tuple and point tuple differ in length");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1] < xs[i])) return {0.0, "ADR2", false};
  const double fk = pdf_eval(d, xs.back());
  if (fk <= 0) return {0.0, "ADR2", false};

  double prod = fk;
  double prev_R = 0.0;
  std::size_t prev_n = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (pdf_eval(d, xs[j]) <= 0 || !(survival_eval(d, xs[j]) > 0)) return {0.0, "ADR2", false};
    const double R = cum_hazard_eval(d, xs[j]);
    const std::size_t gap = idx.indices[j] - prev_n - 1;
    prod *= std::pow(R - prev_R, static_cast<double>(gap)) / factorial(gap);
    if (j + 1 < xs.size()) prod *= hazard_eval(d, xs[j]);
    prev_R = R;
    prev_n = idx.indices[j];
  }
  return {prod, "ADR2", true};
}

namespace detail {

/// Hazards of the atomic support points strictly below y, ascending.
inline std::vector<double> hazards_below(const DistributionSpec& d, double y) {
  std::vector<double> out;
  if (const auto* f = std::get_if<FiniteDiscrete>(&d.variant())) {
    for (double x : f->support) {
      if (!(x < y)) break;
      out.push_back(hazard_eval(d, x));
    }
  } else if (const auto* g = std::get_if<Geometric>(&d.variant())) {
    if (y > 1e7) throw DomainError("geometric record query too deep");
    out.assign(static_cast<std::size_t>(y) - 1, g->p / (1.0 - g->p));
  }
  return out;
}

/// Elementary symmetric sum e_deg over the given values, one-pass DP.
inline double elementary_symmetric(const std::vector<double>& vals, std::size_t deg) {
  if (deg > vals.size()) return 0.0;
  std::vector<double> e(deg + 1, 0.0);
  e[0] = 1.0;
  std::size_t seen = 0;
  for (double v : vals) {
    ++seen;
    for (std::size_t j = std::min(deg, seen); j >= 1; --j) e[j] += e[j - 1] * v;
  }
  return e[deg];
}

inline bool is_support_point(const DistributionSpec& d, double y) {
  return pdf_eval(d, y) > 0.0;
}

}  // namespace detail

/// P(X^(n) = y) for an atomic law: e_{n-1}(hazards below y) * f(y).
inline LawValue discrete_record_pmf(const DistributionSpec& d, std::size_t n, double y) {
  detail::require_discrete(d, "record pmf");
  if (n < 1) throw DomainError("record ordinal starts at 1");
  if (n - 1 > 64) throw DomainError("symmetric-sum degree capped at 64");
  if (!detail::is_support_point(d, y)) throw OffSupport("record pmf queried off support");
  const double e = detail::elementary_symmetric(detail::hazards_below(d, y), n - 1);
  return {e * pdf_eval(d, y), "DDR3", true};
}

/// P(X^(1)=y_1, ..., X^(n)=y_n) for an atomic law: prod_{i<n} r(y_i) * f(y_n).
inline LawValue discrete_record_joint_pmf(const DistributionSpec& d,
                                          const std::vector<double>& ys) {
  detail::require_discrete(d, "record joint pmf");
  if (ys.empty()) throw EmptyInput("need at least one record value");
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (!detail::is_support_point(d, ys[i])) return {0.0, "DDR2", false};
    if (i && !(ys[i - 1] < ys[i])) return {0.0, "DDR2", false};
  }
  double prod = pdf_eval(d, ys.back());
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) prod *= hazard_eval(d, ys[i]);
  return {prod, "DDR2", true};
}

/// P(M_1 <= y_1, ..., M_n <= y_n) for running maxima M_i = max(X_1..X_i):
/// prod_i F(min(y_i, ..., y_n)).
inline LawValue joint_max_cdf(const DistributionSpec& d, const std::vector<double>& ys) {
  if (ys.empty()) throw EmptyInput("need at least one bound");
  double running_min = std::numeric_limits<double>::infinity();
  std::vector<double> starred(ys.size());
  for (std::size_t i = ys.size(); i-- > 0;) {
    running_min = std::min(running_min, ys[i]);
    starred[i] = running_min;
  }
  double prod = 1;
  for (double s : starred) prod *= cdf_eval(d, s);
  return {prod, "PEX1", true};
}

struct TruncatedCdf {
  LawValue law;
  double truncation_mass;
};

/// P(X^(1) <= y_1, ..., X^(n) <= y_n), summed over record-time tuples with
/// last time <= horizon. Each tuple contributes its exact record-time pmf
/// times powers of F at the running minima; the pmf mass of tuples beyond the
/// horizon is reported, not guessed.
inline TruncatedCdf record_joint_cdf_truncated(const DistributionSpec& d,
                                               const std::vector<double>& ys,
                                               std::size_t horizon) {
  detail::require_continuous(d, "record joint cdf");
  if (ys.empty()) throw EmptyInput("need at least one bound");
  const std::size_t n = ys.size();
  if (horizon < n) throw DomainError("horizon must admit at least one tuple");

  std::vector<double> F(n);
  double running_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = n; i-- > 0;) {
    running_min = std::min(running_min, ys[i]);
    F[i] = cdf_eval(d, running_min);
  }
  if (n == 1) return {{F[0], "GRDMR", true}, 0.0};

  // Tuple count C(horizon-1, n-1) guards the enumeration budget.
  double tuples = 1;
  for (std::size_t i = 1; i < n; ++i)
    tuples *= static_cast<double>(horizon - i) / static_cast<double>(i);
  if (tuples > 5e6) throw StateBoundExceeded("record-time tuple enumeration over budget");

  long double value = 0, pmf_seen = 0;
  // state: level j (1-based record index), previous time, running weight
  // prod F_i^{l_i - l_{i-1}} and running pmf factor prod 1/(l_i - 1).
  struct Frame {
    std::size_t level;
    std::size_t prev_time;
    long double weight;
    long double pmf;
  };
  std::vector<Frame> stack;
  stack.push_back({1, 1, static_cast<long double>(F[0]), 1.0L});
  while (!stack.empty()) {
    const Frame fr = stack.back();
    stack.pop_back();
    const std::size_t j = fr.level;  // choosing l_{j+1} for record j+1
    long double w = fr.weight;
    for (std::size_t l = fr.prev_time + 1; l + (n - j - 1) <= horizon; ++l) {
      w *= F[j];  // exponent l - prev_time grows by one per step
      const long double pf = fr.pmf / static_cast<long double>(l - 1);
      if (j + 1 == n) {
        const long double pmf = pf / static_cast<long double>(l);
        value += w * pmf;
        pmf_seen += pmf;
      } else {
        stack.push_back({j + 1, l, w, pf});
      }
    }
  }
  const double trunc = std::max(0.0, static_cast<double>(1.0L - pmf_seen));
  return {{static_cast<double>(value), "GRDMR", true}, trunc};
}

/// P(no record follows the first one) = P(X = uep), the upper-endpoint atom.
inline LawValue prob_no_further_record(const DistributionSpec& d) {
  return {endpoints(d).uep_atom_mass, "nrec03", true};
}

/// int over z < x_1 < ... < x_{n-1} < y of prod r(x_i) dx
/// = (R(y) - R(z))^{n-1} / (n-1)!.
inline LawValue hazard_simplex_integral(const DistributionSpec& d, std::size_t n, double z,
                                        double y) {
  detail::require_continuous(d, "hazard simplex integral");
  if (n < 1) throw DomainError("depth starts at 1");
  if (!(z < y)) throw DomainError("need z < y");
  if (!(survival_eval(d, y) > 0)) throw DomainError("need F(y) < 1");
  const double Rz = z <= endpoints(d).lep ? 0.0 : cum_hazard_eval(d, z);
  const double Ry = cum_hazard_eval(d, y);
  return {std::pow(Ry - Rz, static_cast<double>(n - 1)) / factorial(n - 1), "gs21", true};
}

}  // namespace recordkit::laws

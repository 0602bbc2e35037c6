#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "recordkit/errors.hpp"

namespace recordkit {

/// Rate-parameterized exponential law on [0, inf).
struct Exponential {
  double theta;
};

/// Continuous uniform on [a, b].
struct UniformCont {
  double a;
  double b;
};

/// Number of Bernoulli(p) trials up to and including the first success:
/// f(k) = q^{k-1} p on k = 1, 2, ...
struct Geometric {
  double p;
};

/// Atomic law on a strictly increasing finite support.
struct FiniteDiscrete {
  std::vector<double> support;
  std::vector<double> probs;
};

/// Continuous law given by cdf samples on a grid, interpolated linearly.
struct TabulatedContinuous {
  std::vector<double> grid;
  std::vector<double> cdf;
};

struct Endpoints {
  double lep;
  double uep;
  double uep_atom_mass;  // P(X = uep), 0 when uep is infinite or not an atom
};

/// Immutable probability law. Construction validates parameters; evaluation
/// functions below are pure.
class DistributionSpec {
 public:
  using Variant =
      std::variant<Exponential, UniformCont, Geometric, FiniteDiscrete, TabulatedContinuous>;

  static DistributionSpec exponential(double theta) {
    if (!(theta > 0) || !std::isfinite(theta))
      throw DomainError("exponential rate must be positive");
    return DistributionSpec(Exponential{theta});
  }

  static DistributionSpec uniform(double a, double b) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
      throw DomainError("uniform requires a < b, both finite");
    return DistributionSpec(UniformCont{a, b});
  }

  static DistributionSpec geometric(double p) {
    if (!(p > 0) || !(p < 1)) throw DomainError("geometric p must lie in (0,1)");
    return DistributionSpec(Geometric{p});
  }

  static DistributionSpec finite(std::vector<double> support, std::vector<double> probs) {
    if (support.empty() || support.size() != probs.size())
      throw DomainError("finite law needs equally sized, nonempty support and probs");
    double sum = 0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (!std::isfinite(support[i])) throw DomainError("finite support must be finite");
      if (i && !(support[i - 1] < support[i]))
        throw DomainError("finite support must be strictly increasing");
      if (!(probs[i] > 0)) throw DomainError("finite probs must be positive");
      sum += probs[i];
    }
    if (std::abs(sum - 1.0) > 1e-12) throw DomainError("finite probs must sum to 1");
    return DistributionSpec(FiniteDiscrete{std::move(support), std::move(probs)});
  }

  /// Uniform atoms on {1, ..., m}.
  static DistributionSpec finite_uniform(std::size_t m) {
    std::vector<double> s(m), p(m, 1.0 / static_cast<double>(m));
    for (std::size_t i = 0; i < m; ++i) s[i] = static_cast<double>(i + 1);
    // Remove the last crumb of rounding so the masses sum to 1 exactly.
    double acc = 0;
    for (std::size_t i = 0; i + 1 < m; ++i) acc += p[i];
    p[m - 1] = 1.0 - acc;
    return finite(std::move(s), std::move(p));
  }

  static DistributionSpec tabulated(std::vector<double> grid, std::vector<double> cdf) {
    if (grid.size() < 2 || grid.size() != cdf.size())
      throw DomainError("tabulated law needs >= 2 grid points with matching cdf values");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!std::isfinite(grid[i])) throw DomainError("tabulated grid must be finite");
      if (i && !(grid[i - 1] < grid[i]))
        throw DomainError("tabulated grid must be strictly increasing");
      if (i && cdf[i] < cdf[i - 1]) throw DomainError("tabulated cdf must be nondecreasing");
    }
    if (std::abs(cdf.front()) > 1e-12 || std::abs(cdf.back() - 1.0) > 1e-12)
      throw DomainError("tabulated cdf must run from 0 to 1");
    cdf.front() = 0.0;
    cdf.back() = 1.0;
    return DistributionSpec(TabulatedContinuous{std::move(grid), std::move(cdf)});
  }

  const Variant& variant() const { return v_; }

  bool is_discrete() const {
    return std::holds_alternative<Geometric>(v_) || std::holds_alternative<FiniteDiscrete>(v_);
  }

  bool is_continuous() const { return !is_discrete(); }

  /// True when pdf_eval returns a finite-difference approximation rather than
  /// an exact density/mass.
  bool pdf_is_approximate() const { return std::holds_alternative<TabulatedContinuous>(v_); }

 private:
  explicit DistributionSpec(Variant v) : v_(std::move(v)) {
    if (const auto* f = std::get_if<FiniteDiscrete>(&v_)) {
      cum_.resize(f->probs.size());
      tail_.resize(f->probs.size() + 1);
      double acc = 0;
      for (std::size_t i = 0; i < f->probs.size(); ++i) {
        acc += f->probs[i];
        cum_[i] = acc;
      }
      tail_[f->probs.size()] = 0;
      for (std::size_t i = f->probs.size(); i-- > 0;) tail_[i] = tail_[i + 1] + f->probs[i];
    }
  }

  Variant v_;
  // FiniteDiscrete prefix sums and strict-tail suffix sums. The tail is summed
  // directly, never formed as 1 - prefix, so hazards stay accurate deep in the
  // tail.
  std::vector<double> cum_;
  std::vector<double> tail_;

  friend double cdf_eval(const DistributionSpec&, double);
  friend double survival_eval(const DistributionSpec&, double);
  friend double quantile(const DistributionSpec&, double);
};

inline double cdf_eval(const DistributionSpec& d, double x) {
  struct V {
    double x;
    const DistributionSpec* spec;
    double operator()(const Exponential& e) const {
      return x <= 0 ? 0.0 : -std::expm1(-e.theta * x);
    }
    double operator()(const UniformCont& u) const {
      if (x <= u.a) return 0.0;
      if (x >= u.b) return 1.0;
      return (x - u.a) / (u.b - u.a);
    }
    double operator()(const Geometric& g) const {
      if (x < 1) return 0.0;
      const double k = std::floor(x);
      return 1.0 - std::pow(1.0 - g.p, k);
    }
    double operator()(const FiniteDiscrete& f) const {
      const auto it = std::upper_bound(f.support.begin(), f.support.end(), x);
      const std::size_t idx = static_cast<std::size_t>(it - f.support.begin());
      return idx == 0 ? 0.0 : std::min(1.0, spec->cum_[idx - 1]);
    }
    double operator()(const TabulatedContinuous& t) const {
      if (x <= t.grid.front()) return 0.0;
      if (x >= t.grid.back()) return 1.0;
      const auto it = std::upper_bound(t.grid.begin(), t.grid.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - t.grid.begin());
      const double w = (x - t.grid[i - 1]) / (t.grid[i] - t.grid[i - 1]);
      return t.cdf[i - 1] + w * (t.cdf[i] - t.cdf[i - 1]);
    }
  };
  return std::visit(V{x, &d}, d.variant());
}

/// P(X > x), computed in closed form per variant (for atomic laws this is the
/// strict tail sum, not 1 - cdf).
inline double survival_eval(const DistributionSpec& d, double x) {
  struct V {
    double x;
    const DistributionSpec* spec;
    double operator()(const Exponential& e) const {
      return x <= 0 ? 1.0 : std::exp(-e.theta * x);
    }
    double operator()(const UniformCont& u) const {
      if (x <= u.a) return 1.0;
      if (x >= u.b) return 0.0;
      return (u.b - x) / (u.b - u.a);
    }
    double operator()(const Geometric& g) const {
      if (x < 1) return 1.0;
      return std::pow(1.0 - g.p, std::floor(x));
    }
    double operator()(const FiniteDiscrete& f) const {
      const auto it = std::upper_bound(f.support.begin(), f.support.end(), x);
      return spec->tail_[static_cast<std::size_t>(it - f.support.begin())];
    }
    double operator()(const TabulatedContinuous&) const { return 1.0 - cdf_eval(*spec, x); }
  };
  return std::visit(V{x, &d}, d.variant());
}

inline double pdf_eval(const DistributionSpec& d, double x) {
  struct V {
    double x;
    double operator()(const Exponential& e) const {
      return x < 0 ? 0.0 : e.theta * std::exp(-e.theta * x);
    }
    double operator()(const UniformCont& u) const {
      return (x < u.a || x > u.b) ? 0.0 : 1.0 / (u.b - u.a);
    }
    double operator()(const Geometric& g) const {
      if (x < 1 || x != std::floor(x)) return 0.0;
      return std::pow(1.0 - g.p, x - 1.0) * g.p;
    }
    double operator()(const FiniteDiscrete& f) const {
      const auto it = std::lower_bound(f.support.begin(), f.support.end(), x);
      if (it == f.support.end() || *it != x) return 0.0;
      return f.probs[static_cast<std::size_t>(it - f.support.begin())];
    }
    double operator()(const TabulatedContinuous& t) const {
      if (x < t.grid.front() || x > t.grid.back()) return 0.0;
      const auto it = std::lower_bound(t.grid.begin(), t.grid.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - t.grid.begin());
      if (it != t.grid.end() && *it == x) {
        // At a node use the centered difference; one-sided at the ends.
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == t.grid.size() ? i : i + 1;
        return (t.cdf[hi] - t.cdf[lo]) / (t.grid[hi] - t.grid[lo]);
      }
      return (t.cdf[i] - t.cdf[i - 1]) / (t.grid[i] - t.grid[i - 1]);
    }
  };
  return std::visit(V{x}, d.variant());
}

/// Hazard r(x) = f(x) / P(X > x). For atomic laws x must be a support point.
inline double hazard_eval(const DistributionSpec& d, double x) {
  if (const auto* g = std::get_if<Geometric>(&d.variant())) {
    if (x < 1 || x != std::floor(x)) throw OffSupport("hazard of geometric off support");
    return g->p / (1.0 - g->p);  // q^{k-1} p / q^k, independent of k
  }
  if (d.is_discrete() && pdf_eval(d, x) == 0.0)
    throw OffSupport("hazard of atomic law off support");
  const double s = survival_eval(d, x);
  if (!(s > 0)) throw DomainError("hazard undefined where cdf reaches 1");
  return pdf_eval(d, x) / s;
}

/// Cumulative hazard R(x) = -log(1 - F(x)); 0 below the lower endpoint.
inline double cum_hazard_eval(const DistributionSpec& d, double x) {
  if (const auto* e = std::get_if<Exponential>(&d.variant()))
    return x <= 0 ? 0.0 : e->theta * x;
  const double s = survival_eval(d, x);
  if (!(s > 0)) throw DomainError("cumulative hazard diverges where cdf reaches 1");
  return -std::log(s);
}

/// Generalized inverse F^{-1}(u) = inf{x : F(x) >= u} for u in (0,1).
inline double quantile(const DistributionSpec& d, double u) {
  if (!(u > 0) || !(u < 1)) throw DomainError("quantile requires u in (0,1)");
  struct V {
    double u;
    const DistributionSpec* spec;
    double operator()(const Exponential& e) const { return -std::log1p(-u) / e.theta; }
    double operator()(const UniformCont& un) const { return un.a + u * (un.b - un.a); }
    double operator()(const Geometric& g) const {
      // Smallest k >= 1 with 1 - q^k >= u, then nudge against rounding.
      const double q = 1.0 - g.p;
      double k = std::max(1.0, std::ceil(std::log1p(-u) / std::log(q)));
      while (k > 1 && 1.0 - std::pow(q, k - 1) >= u) k -= 1;
      while (1.0 - std::pow(q, k) < u) k += 1;
      return k;
    }
    double operator()(const FiniteDiscrete& f) const {
      const auto it = std::lower_bound(spec->cum_.begin(), spec->cum_.end(), u);
      if (it == spec->cum_.end()) return f.support.back();
      return f.support[static_cast<std::size_t>(it - spec->cum_.begin())];
    }
    double operator()(const TabulatedContinuous& t) const {
      // First index with cdf >= u; invert the linear piece before it. A flat
      // stretch at height u maps to its left edge (infimum).
      const auto it = std::lower_bound(t.cdf.begin(), t.cdf.end(), u);
      const std::size_t i = static_cast<std::size_t>(it - t.cdf.begin());
      if (i == 0 || t.cdf[i] == u) return t.grid[i];
      const double span = t.cdf[i] - t.cdf[i - 1];
      const double w = (u - t.cdf[i - 1]) / span;
      return t.grid[i - 1] + w * (t.grid[i] - t.grid[i - 1]);
    }
  };
  return std::visit(V{u, &d}, d.variant());
}

inline Endpoints endpoints(const DistributionSpec& d) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  struct V {
    Endpoints operator()(const Exponential&) const { return {0.0, inf, 0.0}; }
    Endpoints operator()(const UniformCont& u) const { return {u.a, u.b, 0.0}; }
    Endpoints operator()(const Geometric&) const { return {1.0, inf, 0.0}; }
    Endpoints operator()(const FiniteDiscrete& f) const {
      return {f.support.front(), f.support.back(), f.probs.back()};
    }
    Endpoints operator()(const TabulatedContinuous& t) const {
      std::size_t lo = 0;
      while (lo + 1 < t.cdf.size() && t.cdf[lo + 1] == 0.0) ++lo;
      std::size_t hi = t.cdf.size() - 1;
      while (hi > 0 && t.cdf[hi - 1] == 1.0) --hi;
      return {t.grid[lo], t.grid[hi], 0.0};
    }
  };
  return std::visit(V{}, d.variant());
}

}  // namespace recordkit

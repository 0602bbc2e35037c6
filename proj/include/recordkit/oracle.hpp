#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include "recordkit/dist.hpp"
#include "recordkit/errors.hpp"

namespace recordkit::oracle {

// ---------------------------------------------------------------------------
// Exact enumeration over atomic laws.
//
// Strong-upper record events over an iid atomic stream form a Markov chain in
// (incumbent record value, records so far); probabilities restricted to the
// first L observations are computed by forward DP in O(L * s * n) using
// prefix sums over the support. Anything still undecided at the horizon is
// returned as truncation_mass, a certified bound on how much the answer can
// move if the horizon grows.
// ---------------------------------------------------------------------------

struct RecordValuePmfTarget {
  std::size_t n;  // which record
  double y;       // value queried
};

struct AtLeastRecordsTarget {
  std::size_t n;
};

struct InterRecordPmfTarget {
  std::vector<std::size_t> gaps;  // k_2..k_n, each >= 1
};

struct RecordTimePmfTarget {
  std::vector<std::size_t> times;  // 2 <= l_2 < ... < l_n
};

struct NoFurtherRecordTarget {};  // P(no record after the first one)

using EnumerationTarget = std::variant<RecordValuePmfTarget, AtLeastRecordsTarget,
                                       InterRecordPmfTarget, RecordTimePmfTarget,
                                       NoFurtherRecordTarget>;

struct EnumerationConfig {
  DistributionSpec dist;
  std::size_t horizon;
  EnumerationTarget target;
};

struct EnumerationResult {
  double probability;      // P(event and decided within horizon)
  double truncation_mass;  // certified bound on the undecided remainder
};

namespace detail {

struct AtomicSupport {
  std::vector<double> value;
  std::vector<double> mass;
  std::vector<double> prefix;  // prefix[i] = P(X <= value[i])
  double tail_lump = 0.0;      // unmodeled truncated mass (geometric only)
  bool true_top = true;        // last atom really is the upper endpoint
};

inline AtomicSupport atomic_support(const DistributionSpec& d) {
  AtomicSupport s;
  if (const auto* f = std::get_if<FiniteDiscrete>(&d.variant())) {
    s.value = f->support;
    s.mass = f->probs;
  } else if (const auto* g = std::get_if<Geometric>(&d.variant())) {
    const double q = 1.0 - g->p;
    double tail = 1.0;
    for (std::size_t k = 1; tail >= 1e-12; ++k) {
      s.value.push_back(static_cast<double>(k));
      s.mass.push_back(tail * g->p);
      tail *= q;
    }
    s.tail_lump = tail;
    s.true_top = false;
  } else {
    throw UnsupportedVariant("enumeration oracle needs an atomic law");
  }
  s.prefix.resize(s.mass.size());
  double acc = 0;
  for (std::size_t i = 0; i < s.mass.size(); ++i) {
    acc += s.mass[i];
    s.prefix[i] = acc;
  }
  return s;
}

inline void check_state_bound(std::size_t s, std::size_t L, std::size_t max_ordinal) {
  if (s * L * std::max<std::size_t>(max_ordinal, 1) > 10'000'000)
    throw StateBoundExceeded("enumeration state space over budget");
}

// P(a prescribed record-time schedule is realized exactly). The event is
// fully decided once the last scheduled time passes, so there is never
// undecided mass beyond the truncated-support lump.
inline EnumerationResult scheduled_times(const AtomicSupport& sup, std::size_t horizon,
                                         const std::vector<std::size_t>& gaps) {
  std::size_t last_time = 1;
  for (std::size_t g : gaps) {
    if (g < 1) throw InvalidGap("inter-record gap must be >= 1");
    last_time += g;
  }
  if (horizon < last_time) throw DomainError("horizon shorter than the queried schedule");
  check_state_bound(sup.value.size(), last_time, gaps.size() + 1);

  const std::size_t s = sup.value.size();
  std::vector<double> cur(sup.mass);  // incumbent distribution after the first record
  for (std::size_t g : gaps) {
    for (std::size_t step = 1; step < g; ++step)
      for (std::size_t v = 0; v < s; ++v) cur[v] *= sup.prefix[v];
    std::vector<double> nxt(s, 0.0);
    double below = 0;
    for (std::size_t w = 0; w < s; ++w) {
      nxt[w] = sup.mass[w] * below;
      below += cur[w];
    }
    cur.swap(nxt);
  }
  double p = 0;
  for (double m : cur) p += m;
  const double touched =
      1.0 - std::pow(1.0 - sup.tail_lump, static_cast<double>(last_time));
  return {p, touched};
}

}  // namespace detail

inline EnumerationResult exact_record_query(const EnumerationConfig& cfg) {
  const detail::AtomicSupport sup = detail::atomic_support(cfg.dist);
  const std::size_t s = sup.value.size();
  const std::size_t L = cfg.horizon;
  if (L < 1) throw DomainError("enumeration horizon must be >= 1");
  const double touched = 1.0 - std::pow(1.0 - sup.tail_lump, static_cast<double>(L));

  struct V {
    const detail::AtomicSupport& sup;
    std::size_t L;
    double touched;

    EnumerationResult operator()(const InterRecordPmfTarget& t) const {
      return detail::scheduled_times(sup, L, t.gaps);
    }

    EnumerationResult operator()(const RecordTimePmfTarget& t) const {
      if (t.times.empty() || t.times.front() < 2)
        throw InvalidTimes("record times start at 2");
      std::vector<std::size_t> gaps;
      std::size_t prev = 1;
      for (std::size_t l : t.times) {
        if (l <= prev) throw InvalidTimes("record times must increase strictly");
        gaps.push_back(l - prev);
        prev = l;
      }
      return detail::scheduled_times(sup, L, gaps);
    }

    EnumerationResult operator()(const NoFurtherRecordTarget&) const {
      const std::size_t s = sup.value.size();
      detail::check_state_bound(s, L, 1);
      // Survive L-1 further observations without exceeding the first value.
      double undecided = 0;
      for (std::size_t v = 0; v + 1 < s; ++v)
        undecided += sup.mass[v] * std::pow(sup.prefix[v], static_cast<double>(L - 1));
      double top = sup.mass[s - 1];
      double prob = 0, trunc = undecided + touched;
      if (sup.true_top)
        prob = top;  // an observation above the true top has probability 0
      else
        trunc += top * std::pow(sup.prefix[s - 1], static_cast<double>(L - 1));
      return {prob, trunc};
    }

    EnumerationResult operator()(const AtLeastRecordsTarget& t) const {
      if (t.n == 0) return {1.0, 0.0};
      if (t.n == 1) return {1.0, touched};
      const std::size_t s = sup.value.size();
      detail::check_state_bound(s, L, t.n);
      // st[m-1][v]: m records so far, incumbent index v, event undecided.
      std::vector<std::vector<double>> st(t.n - 1, std::vector<double>(s, 0.0));
      st[0] = sup.mass;
      double hit = 0;
      for (std::size_t time = 2; time <= L; ++time) {
        for (std::size_t m = t.n - 1; m-- > 0;) {
          double below = 0;
          std::vector<double>& row = st[m];
          for (std::size_t w = 0; w < s; ++w) {
            const double jump_in = sup.mass[w] * below;
            below += row[w];
            row[w] *= sup.prefix[w];
            if (m + 1 <= t.n - 2)
              st[m + 1][w] += jump_in;
            else
              hit += jump_in;  // the (m+1)-th record is the n-th
          }
        }
      }
      double undecided = 0;
      for (std::size_t m = 0; m < t.n - 1; ++m)
        for (std::size_t v = 0; v < s; ++v) {
          const bool dead_end = sup.true_top && v + 1 == s;  // no strict exceedance possible
          if (!dead_end) undecided += st[m][v];
        }
      return {hit, undecided + touched};
    }

    EnumerationResult operator()(const RecordValuePmfTarget& t) const {
      if (t.n == 0) throw DomainError("record ordinal starts at 1");
      const std::size_t s = sup.value.size();
      std::size_t yi = s;
      for (std::size_t i = 0; i < s; ++i)
        if (sup.value[i] == t.y) {
          yi = i;
          break;
        }
      if (yi == s) return {0.0, touched};  // off support: the event is impossible
      if (t.n == 1) return {sup.mass[yi], 0.0};
      detail::check_state_bound(s, L, t.n);
      // Undecided states keep incumbent strictly below y with fewer than n
      // records; any other configuration is already decided.
      std::vector<std::vector<double>> st(t.n - 1, std::vector<double>(yi, 0.0));
      for (std::size_t v = 0; v < yi; ++v) st[0][v] = sup.mass[v];
      double hit = 0;
      for (std::size_t time = 2; time <= L; ++time) {
        for (std::size_t m = t.n - 1; m-- > 0;) {
          double below = 0;
          std::vector<double>& row = st[m];
          for (std::size_t w = 0; w < yi; ++w) {
            const double jump_in = sup.mass[w] * below;
            below += row[w];
            row[w] *= sup.prefix[w];
            if (m + 1 <= t.n - 2) st[m + 1][w] += jump_in;
          }
          if (m + 1 == t.n - 1) hit += sup.mass[yi] * below;  // n-th record lands on y
        }
      }
      double undecided = 0;
      for (const auto& row : st)
        for (double v : row) undecided += v;
      return {hit, undecided + touched};
    }
  };

  return std::visit(V{sup, L, touched}, cfg.target);
}

// ---------------------------------------------------------------------------
// Nested quadrature over the ordered region z < x_1 < ... < x_m < y for
// integrands of product form prod_j g_j(x_j).
//
// Each level j carries T_j(t) = int_t^y g_j(x) T_{j+1}(x) dx as a piecewise
// Chebyshev antiderivative on an adaptive panel set; the level above samples
// it like any smooth function. Outer levels inherit the inner level's panel
// boundaries so their integrands are polynomial-smooth inside every panel.
// ---------------------------------------------------------------------------

struct QuadratureConfig {
  DistributionSpec dist;
  std::size_t depth;  // nested integration variables, <= 4
  double z;
  double y;
  double abs_tolerance = 1e-8;
  std::size_t max_subdivisions = std::size_t{1} << 14;
};

struct HazardProduct {};  // prod_{j=1}^{depth} r(x_j), bounds (z, y)

struct GammaKernel {
  std::vector<std::size_t> k;  // prod_j F(x_j)^{k_j - 1} f(x_j) over the full support
};

struct ADR1Kernel {};  // marginal density of the depth-th record at y

using QuadIntegrand = std::variant<HazardProduct, GammaKernel, ADR1Kernel>;

struct QuadratureResult {
  double value;
  double error_estimate;
  bool converged;
};

namespace detail {

constexpr int kChebDegree = 16;  // 17 Lobatto nodes per panel

struct ChebTable {
  std::array<std::array<double, kChebDegree + 1>, kChebDegree + 1> cosines;
  ChebTable() {
    for (int i = 0; i <= kChebDegree; ++i)
      for (int k = 0; k <= kChebDegree; ++k)
        cosines[i][k] = std::cos(M_PI * i * k / kChebDegree);
  }
};

inline const ChebTable& cheb_table() {
  static const ChebTable t;
  return t;
}

struct Panel {
  double a, b;
  std::array<double, kChebDegree + 2> anti;  // antiderivative coefficients
  double anti_at_left;                       // P(-1)
  double full;                               // int_a^b h
  double suffix = 0;                         // int_b^y h
  double err;
};

inline double clenshaw(const std::array<double, kChebDegree + 2>& c, double t) {
  double b1 = 0, b2 = 0;
  for (int k = kChebDegree + 1; k >= 1; --k) {
    const double tmp = 2.0 * t * b1 - b2 + c[static_cast<std::size_t>(k)];
    b2 = b1;
    b1 = tmp;
  }
  return t * b1 - b2 + c[0];
}

/// T(x) = int_x^y h(s) ds as an adaptively refined piecewise polynomial.
class TailIntegral {
 public:
  template <class F>
  TailIntegral(F&& h, double z, double y, double tol, std::size_t max_panels,
               const std::vector<double>& seed_breaks) {
    z_ = z;
    y_ = y;
    std::vector<std::pair<double, double>> work;
    double prev = z;
    for (double b : seed_breaks)
      if (b > prev && b < y) {
        work.emplace_back(prev, b);
        prev = b;
      }
    work.emplace_back(prev, y);
    if (work.size() < 4) {  // start with a few panels so scale is sampled
      std::vector<std::pair<double, double>> finer;
      for (auto [a, b] : work) {
        const double m1 = a + (b - a) / 3, m2 = a + 2 * (b - a) / 3;
        finer.emplace_back(a, m1);
        finer.emplace_back(m1, m2);
        finer.emplace_back(m2, b);
      }
      work.swap(finer);
    }
    const double total_width = y - z;
    while (!work.empty()) {
      auto [a, b] = work.back();
      work.pop_back();
      Panel p = fit(h, a, b);
      const bool ok = p.err <= tol * ((b - a) / total_width) ||
                      (b - a) <= total_width * 1e-13;
      if (ok || panels_.size() + work.size() >= max_panels) {
        if (!ok) converged_ = false;
        panels_.push_back(p);
      } else {
        const double mid = 0.5 * (a + b);
        work.emplace_back(mid, b);
        work.emplace_back(a, mid);
      }
    }
    std::sort(panels_.begin(), panels_.end(),
              [](const Panel& l, const Panel& r) { return l.a < r.a; });
    double suffix = 0;
    for (std::size_t i = panels_.size(); i-- > 0;) {
      panels_[i].suffix = suffix;
      suffix += panels_[i].full;
      error_ += panels_[i].err;
    }
    total_ = suffix;
  }

  double operator()(double x) const {
    if (x <= z_) return total_;
    if (x >= y_) return 0.0;
    std::size_t lo = 0, hi = panels_.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (panels_[mid].b < x)
        lo = mid + 1;
      else
        hi = mid;
    }
    const Panel& p = panels_[lo];
    const double t = (2.0 * x - p.a - p.b) / (p.b - p.a);
    const double into = clenshaw(p.anti, t) - p.anti_at_left;  // int_a^x
    return (p.full - into) + p.suffix;
  }

  double total() const { return total_; }
  double error() const { return error_; }
  bool converged() const { return converged_; }

  std::vector<double> breakpoints() const {
    std::vector<double> out;
    for (const Panel& p : panels_) out.push_back(p.b);
    if (!out.empty()) out.pop_back();
    return out;
  }

 private:
  template <class F>
  static Panel fit(F&& h, double a, double b) {
    const ChebTable& tbl = cheb_table();
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    std::array<double, kChebDegree + 1> f{};
    for (int i = 0; i <= kChebDegree; ++i)
      f[static_cast<std::size_t>(i)] = h(mid + half * tbl.cosines[static_cast<std::size_t>(i)][1]);

    std::array<double, kChebDegree + 1> c{};
    for (int k = 0; k <= kChebDegree; ++k) {
      double acc = 0.5 * (f[0] * tbl.cosines[0][static_cast<std::size_t>(k)] +
                          f[kChebDegree] * tbl.cosines[kChebDegree][static_cast<std::size_t>(k)]);
      for (int i = 1; i < kChebDegree; ++i)
        acc += f[static_cast<std::size_t>(i)] * tbl.cosines[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      c[static_cast<std::size_t>(k)] = 2.0 * acc / kChebDegree;
    }
    c[0] *= 0.5;
    c[kChebDegree] *= 0.5;

    Panel p;
    p.a = a;
    p.b = b;
    p.anti.fill(0.0);
    auto coef = [&c](int k) { return k <= kChebDegree ? c[static_cast<std::size_t>(k)] : 0.0; };
    p.anti[1] = half * (coef(0) - coef(2) / 2.0);
    for (int k = 2; k <= kChebDegree + 1; ++k)
      p.anti[static_cast<std::size_t>(k)] = half * (coef(k - 1) - coef(k + 1)) / (2.0 * k);
    p.anti_at_left = clenshaw(p.anti, -1.0);
    p.full = clenshaw(p.anti, 1.0) - p.anti_at_left;
    p.err = 2.0 * half *
            (std::abs(c[kChebDegree]) + std::abs(c[kChebDegree - 1]) +
             std::abs(c[kChebDegree - 2]));
    return p;
  }

  std::vector<Panel> panels_;
  double z_ = 0, y_ = 0;
  double total_ = 0;
  double error_ = 0;
  bool converged_ = true;
};

/// Crude |g| mass used only to propagate inner error estimates outward.
template <class F>
double abs_mass_estimate(F&& g, double z, double y) {
  const int n = 256;
  double acc = 0;
  double prev = std::abs(g(z));
  for (int i = 1; i <= n; ++i) {
    const double x = z + (y - z) * i / n;
    const double cur = std::abs(g(x));
    acc += 0.5 * (prev + cur) * (y - z) / n;
    prev = cur;
  }
  return acc;
}

}  // namespace detail

/// int over z < x_1 < ... < x_m < y of prod_j factors[j](x_j). Empty factor
/// list integrates the constant 1 over the empty product convention (= 1).
inline QuadratureResult nested_product_integral(
    const std::vector<std::function<double(double)>>& factors, double z, double y, double tol,
    std::size_t max_panels_per_level = std::size_t{1} << 14) {
  if (factors.empty()) return {1.0, 0.0, true};
  if (!(z < y)) return {0.0, 0.0, true};
  const std::size_t m = factors.size();
  const double level_tol = tol / (4.0 * static_cast<double>(m));

  std::vector<detail::TailIntegral> reps;
  reps.reserve(m);
  std::vector<double> breaks;
  double err = 0;
  bool ok = true;
  for (std::size_t j = m; j-- > 0;) {
    const auto& g = factors[j];
    const detail::TailIntegral* inner = reps.empty() ? nullptr : &reps.back();
    auto h = [&g, inner](double x) { return inner ? g(x) * (*inner)(x) : g(x); };
    reps.emplace_back(h, z, y, level_tol, max_panels_per_level, breaks);
    const detail::TailIntegral& built = reps.back();
    ok = ok && built.converged();
    err = built.error() + err * detail::abs_mass_estimate(g, z, y);
    breaks = built.breakpoints();
  }
  const double value = reps.back().total();
  return {value, err, ok && err <= tol};
}

inline QuadratureResult simplex_quadrature(const QuadratureConfig& cfg,
                                           const QuadIntegrand& integrand) {
  if (cfg.depth > 4) throw DomainError("quadrature depth capped at 4");
  if (!(cfg.abs_tolerance > 0)) throw DomainError("quadrature tolerance must be positive");
  const DistributionSpec& d = cfg.dist;
  if (!d.is_continuous()) throw UnsupportedVariant("quadrature oracle needs a continuous law");
  const Endpoints ep = endpoints(d);

  struct V {
    const QuadratureConfig& cfg;
    const DistributionSpec& d;
    const Endpoints& ep;

    QuadratureResult operator()(const HazardProduct&) const {
      if (cfg.depth == 0) return {1.0, 0.0, true};  // empty simplex
      const double z = std::max(cfg.z, ep.lep);
      const double y = cfg.y;
      if (!(survival_eval(d, y) > 0)) throw DomainError("upper bound must keep F(y) < 1");
      if (!(z < y)) return {0.0, 0.0, true};
      std::vector<std::function<double(double)>> gs(
          cfg.depth, [this](double x) { return hazard_eval(d, x); });
      return nested_product_integral(gs, z, y, cfg.abs_tolerance, cfg.max_subdivisions);
    }

    QuadratureResult operator()(const GammaKernel& gk) const {
      if (gk.k.size() > 4) throw DomainError("quadrature depth capped at 4");
      if (gk.k.empty()) return {1.0, 0.0, true};
      for (std::size_t kj : gk.k)
        if (kj < 1) throw InvalidExponent("gamma kernel exponents must be >= 1");
      double z = std::max(cfg.z, ep.lep);
      double y = std::min(cfg.y, ep.uep);
      double tail_err = 0;
      if (std::isinf(y)) {
        y = quantile(d, 1.0 - 1e-13);
        tail_err = 1e-13;  // mass of the clipped upper tail bounds the loss
      }
      if (std::isinf(z)) z = ep.lep;
      if (!(z < y)) return {0.0, 0.0, true};
      std::vector<std::function<double(double)>> gs;
      for (std::size_t kj : gk.k)
        gs.push_back([this, kj](double x) {
          return std::pow(cdf_eval(d, x), static_cast<double>(kj - 1)) * pdf_eval(d, x);
        });
      QuadratureResult r =
          nested_product_integral(gs, z, y, cfg.abs_tolerance, cfg.max_subdivisions);
      r.error_estimate += tail_err;
      return r;
    }

    QuadratureResult operator()(const ADR1Kernel&) const {
      if (cfg.depth == 0) throw DomainError("record marginal needs depth >= 1");
      const double y = cfg.y;
      if (!(survival_eval(d, y) > 0)) throw DomainError("upper bound must keep F(y) < 1");
      const double fy = pdf_eval(d, y);
      std::vector<std::function<double(double)>> gs(
          cfg.depth - 1, [this](double x) { return hazard_eval(d, x); });
      QuadratureResult inner =
          nested_product_integral(gs, ep.lep, y, cfg.abs_tolerance, cfg.max_subdivisions);
      inner.value *= fy;
      inner.error_estimate *= std::max(fy, 1e-300);
      return inner;
    }
  };

  return std::visit(V{cfg, d, ep}, integrand);
}

}  // namespace recordkit::oracle

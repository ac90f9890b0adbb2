#pragma once

// Optimization engines over hulls of pure states:
//  * concave entropy maximization over the weight simplex (Frank-Wolfe with
//    away steps, certified by the Frank-Wolfe duality gap);
//  * the largest fraction lambda of rho such that rho - lambda * sigma is
//    PSD for some sigma in a hull, by bisection on lambda with a projected
//    subgradient feasibility oracle.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qmeasure/linalg.hpp"
#include "qmeasure/random.hpp"
#include "qmeasure/states.hpp"

namespace qmeasure {

struct OptimizerSettings {
  int max_iterations = 2000;          // Frank-Wolfe iterations per start
  double tolerance = 1e-7;            // duality gap target, bits
  double bisection_tolerance = 1e-8;  // final lambda bracket width
  int bisection_iterations = 40;
  int inner_iterations = 500;  // subgradient steps per feasibility query
  int restarts = 4;            // random starts on top of the uniform start
  std::uint64_t seed = 0;

  void validate() const {
    if (!(tolerance > 0.0) || !(bisection_tolerance > 0.0))
      throw std::invalid_argument("OptimizerSettings: tolerances must be positive");
    if (max_iterations < 1 || bisection_iterations < 1 || inner_iterations < 1 || restarts < 0)
      throw std::invalid_argument("OptimizerSettings: iteration caps must be >= 1");
  }
};

/// Residual PSD tolerance for the fraction problems.
inline constexpr double kFeasibilityTolerance = 1e-9;
/// Weight floor applied before evaluating the entropy gradient.
inline constexpr double kWeightFloor = 1e-12;

struct OptimizerTrace {
  int iterations = 0;
  std::vector<double> objective_history;
  double final_gap = std::numeric_limits<double>::infinity();
};

struct HullEntropyResult {
  SimplexWeights weights;
  double entropy_bits;
  OptimizerTrace trace;
  bool converged;
};

struct FractionResult {
  double lambda = 0.0;
  std::optional<SimplexWeights> witness_weights;
  bool converged = true;
  double bracket_width = 0.0;
  /// Certified upper bound on the optimum from the dual (Farkas) side; 1
  /// when no informative dual point was seen.
  double upper_bound = 1.0;
};

namespace detail {

inline std::vector<double> floored(std::span<const double> w) {
  std::vector<double> c(w.begin(), w.end());
  double sum = 0.0;
  for (double& x : c) {
    x = std::max(x, kWeightFloor);
    sum += x;
  }
  for (double& x : c) x /= sum;
  return c;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Euclidean projection onto the probability simplex (sort-based).
inline std::vector<double> project_to_simplex(std::span<const double> y) {
  std::vector<double> u(y.begin(), y.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumsum += u[k];
    const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  std::vector<double> x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = std::max(0.0, y[i] - theta);
  return x;
}

/// Root of a decreasing function on [0, hi] (the derivative of a concave
/// line-search objective), by Illinois regula falsi. Returns hi when the
/// function is still non-negative there.
template <class F>
double decreasing_root(F&& f, double hi) {
  double a = 0.0, b = hi;
  double fa = f(a);
  if (fa <= 0.0) return 0.0;
  double fb = f(b);
  if (fb >= 0.0) return hi;
  const double scale = std::max(fa, -fb);
  int side = 0;
  for (int it = 0; it < 100 && (b - a) > 1e-15 * hi; ++it) {
    double c = (a * fb - b * fa) / (fb - fa);
    if (!(c > a && c < b)) c = 0.5 * (a + b);
    const double fc = f(c);
    if (std::abs(fc) <= 1e-13 * scale) return c;
    if (fc > 0.0) {
      a = c;
      fa = fc;
      if (side == 1) fb *= 0.5;
      side = 1;
    } else {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5;
      side = -1;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// S(sum_i w_i |psi_i><psi_i|) in bits; `w` must be a probability vector.
inline double hull_entropy(const StateSet& u, std::span<const double> w) {
  return shannon_bits(hermitian_eig(weighted_projector_sum(u, w)).eigenvalues);
}

/// Gradient of w -> S(rho(w)) in bits:
///   dS/dw_i = -<psi_i| log2 rho(w) |psi_i> - 1/ln 2.
/// Weights are floored at 1e-12 and renormalized first. Eigenvalues of rho
/// below the zero clip are floored (not zeroed) inside the log, so a state
/// leaving the support still sees a large positive derivative.
inline std::vector<double> entropy_gradient(const StateSet& u, const SimplexWeights& w) {
  if (w.size() != u.size()) throw DimensionMismatch(u.size(), w.size());
  const auto wc = detail::floored(w.values());
  const auto eig = hermitian_eig(weighted_projector_sum(u, wc));
  const std::size_t d = u.dim();
  std::vector<double> logs(d);
  for (std::size_t k = 0; k < d; ++k) logs[k] = std::log2(std::max(eig.eigenvalues[k], kZeroClip));

  std::vector<double> g(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      Complex c = 0.0;
      for (std::size_t r = 0; r < d; ++r) c += std::conj(eig.eigenvectors(r, k)) * u[i][r];
      s += abs2(c) * logs[k];
    }
    g[i] = -s - 1.0 / std::numbers::ln2;
  }
  return g;
}

/// Certified upper bound on max_w S(rho(w)) from Klein's inequality:
/// S(rho) <= -tr(rho log2 sigma) for every density sigma, hence
///   S* <= max_i -<psi_i| log2 sigma |psi_i>.
/// sigma ranges over rho(w)^a / tr rho(w)^a, a in [0, 1]; a = 1 reproduces
/// the Frank-Wolfe gap, a -> 0 is tight when the optimum is maximally mixed
/// on its support. Returns +inf when a state leaves the support of rho(w).
inline double hull_entropy_upper_bound(const StateSet& u, const SimplexWeights& w) {
  if (w.size() != u.size()) throw DimensionMismatch(u.size(), w.size());
  const auto eig = hermitian_eig(weighted_projector_sum(u, w.values()));
  const std::size_t d = u.dim();
  std::vector<std::size_t> support;
  for (std::size_t k = 0; k < d; ++k)
    if (eig.eigenvalues[k] > kZeroClip) support.push_back(k);

  // overlaps[i][k] = |<v_k|psi_i>|^2 on the support
  std::vector<std::vector<double>> overlaps(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    double outside = 1.0;
    for (auto k : support) {
      Complex c = 0.0;
      for (std::size_t r = 0; r < d; ++r) c += std::conj(eig.eigenvectors(r, k)) * u[i][r];
      overlaps[i].push_back(abs2(c));
      outside -= abs2(c);
    }
    if (outside > 1e-10) return std::numeric_limits<double>::infinity();
  }

  auto bound = [&](double a) {
    double z = 0.0;
    for (auto k : support) z += std::pow(eig.eigenvalues[k], a);
    const double log_z = std::log2(z);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.size(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < support.size(); ++j)
        s += overlaps[i][j] * (log_z - a * std::log2(eig.eigenvalues[support[j]]));
      worst = std::max(worst, s);
    }
    return worst;
  };

  // bound(a) is convex in a (max of log-sum-exp terms); golden section.
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.0, hi = 1.0;
  double c = hi - kInvPhi * (hi - lo), e = lo + kInvPhi * (hi - lo);
  double fc = bound(c), fe = bound(e);
  for (int it = 0; it < 40; ++it) {
    if (fc <= fe) {
      hi = e;
      e = c;
      fe = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = bound(c);
    } else {
      lo = c;
      c = e;
      fc = fe;
      e = lo + kInvPhi * (hi - lo);
      fe = bound(e);
    }
  }
  return std::min({fc, fe, bound(0.0), bound(1.0)});
}

namespace detail {

inline HullEntropyResult frank_wolfe_from(const StateSet& u, std::vector<double> w, const OptimizerSettings& opts) {
  const std::size_t n = u.size();
  OptimizerTrace trace;
  double value = hull_entropy(u, w);
  trace.objective_history.push_back(value);
  bool converged = false;

  auto along = [&](const std::vector<double>& dir, double gamma) {
    std::vector<double> x(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::max(0.0, w[i] + gamma * dir[i]);
      sum += x[i];
    }
    for (double& xi : x) xi /= sum;
    return x;
  };

  auto g = entropy_gradient(u, SimplexWeights::renormalized(w));
  for (int it = 0; it < opts.max_iterations; ++it) {
    const double gw = dot(g, w);
    const auto fw = static_cast<std::size_t>(std::max_element(g.begin(), g.end()) - g.begin());
    const double fw_gap = g[fw] - gw;
    trace.final_gap = std::max(0.0, fw_gap);
    trace.iterations = it;
    if (fw_gap <= opts.tolerance) {
      converged = true;
      break;
    }
    // the FW gap stalls on degenerate optima; try the spectral dual bound
    if (it % 8 == 7) {
      const double dual_gap = hull_entropy_upper_bound(u, SimplexWeights::renormalized(w)) - value;
      trace.final_gap = std::max(0.0, std::min(fw_gap, dual_gap));
      if (dual_gap <= opts.tolerance) {
        converged = true;
        break;
      }
    }

    std::size_t away = fw;
    double away_gap = -1.0;
    for (std::size_t i = 0; i < n; ++i)
      if (w[i] > 0.0 && (away_gap < 0.0 || gw - g[i] > away_gap)) {
        away = i;
        away_gap = gw - g[i];
      }

    std::vector<double> dir(n);
    double gamma_max = 1.0;
    const bool away_step = away_gap > fw_gap && w[away] < 1.0;
    if (!away_step) {
      for (std::size_t i = 0; i < n; ++i) dir[i] = -w[i];
      dir[fw] += 1.0;
    } else {
      for (std::size_t i = 0; i < n; ++i) dir[i] = w[i];
      dir[away] -= 1.0;
      gamma_max = w[away] / (1.0 - w[away]);
    }

    // phi(gamma) = S(w + gamma dir) is concave; step to the root of phi'.
    const double gamma = decreasing_root(
        [&](double t) { return dot(entropy_gradient(u, SimplexWeights::renormalized(along(dir, t))), dir); },
        gamma_max);
    if (!(gamma > 0.0)) break;

    auto next = along(dir, gamma);
    if (away_step && gamma >= gamma_max * (1.0 - 1e-12)) {
      next[away] = 0.0;
      next = SimplexWeights::renormalized(std::move(next)).values();
    }
    const double next_value = hull_entropy(u, next);
    if (next_value < value - 1e-12) break;  // line search lost to rounding
    w = std::move(next);
    value = next_value;
    trace.objective_history.push_back(value);
    trace.iterations = it + 1;
    g = entropy_gradient(u, SimplexWeights::renormalized(w));
  }

  if (!converged) {
    g = entropy_gradient(u, SimplexWeights::renormalized(w));
    const double fw_gap = *std::max_element(g.begin(), g.end()) - dot(g, w);
    const double dual_gap = hull_entropy_upper_bound(u, SimplexWeights::renormalized(w)) - value;
    trace.final_gap = std::max(0.0, std::min(fw_gap, dual_gap));
    converged = trace.final_gap <= opts.tolerance;
  }
  return HullEntropyResult{SimplexWeights::renormalized(w), value, std::move(trace), converged};
}

}  // namespace detail

/// max over the simplex of S(sum_i w_i |psi_i><psi_i|). Runs from the
/// uniform point plus `opts.restarts` seeded random interior points and keeps
/// the best. `trace.final_gap` bounds the distance to the true maximum: it is
/// the smaller of the Frank-Wolfe gap and the spectral dual bound.
inline HullEntropyResult max_entropy_over_hull(const StateSet& u, const OptimizerSettings& opts = {}) {
  opts.validate();
  const std::size_t n = u.size();
  if (n == 1) {
    OptimizerTrace trace{0, {0.0}, 0.0};
    return HullEntropyResult{SimplexWeights::vertex(1, 0), 0.0, std::move(trace), true};
  }
  RandomSource rng(opts.seed);
  auto best = detail::frank_wolfe_from(u, SimplexWeights::uniform(n).values(), opts);
  for (int r = 0; r < opts.restarts; ++r) {
    auto start = SimplexWeights::random(n, rng).values();
    auto res = detail::frank_wolfe_from(u, std::move(start), opts);
    if (res.entropy_bits > best.entropy_bits) best = std::move(res);
  }
  return best;
}

namespace detail {

struct FeasibilityVerdict {
  bool feasible = false;
  double best_min_eigenvalue = -std::numeric_limits<double>::infinity();
  std::vector<double> best_point;
  /// tr(sigma rho) / min_i <psi_i|sigma|psi_i> over the dual points seen.
  double dual_upper_bound = std::numeric_limits<double>::infinity();
};

/// A generic "hull" for the fraction problem: maps a parameter point to a
/// PSD operator and exposes the subgradient of lambda_min(rho - lambda A(x)).
struct VertexHull {
  const StateSet& set;

  std::vector<double> initial() const { return SimplexWeights::uniform(set.size()).values(); }

  HermitianOperator op(std::span<const double> x) const { return weighted_projector_sum(set, x); }

  /// d/dx_i of <v|A(x)|v>.
  std::vector<double> direction(std::span<const Complex> v) const {
    std::vector<double> g(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) g[i] = abs2(inner(set[i].amplitudes(), v));
    return g;
  }

  std::vector<double> project(std::span<const double> y) const { return project_to_simplex(y); }

  /// Smallest value of the hull's support function against sigma:
  /// min over the hull of tr(sigma A).
  double min_support(const HermitianOperator& sigma) const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : set) m = std::min(m, sigma.expectation(s.amplitudes()));
    return m;
  }
};

/// Projected subgradient ascent on x -> lambda_min(rho - lambda A(x)) with
/// step 1/sqrt(t). Stops early once the residual is PSD within tolerance.
/// Accumulates the min-eigenvector projectors as a dual point for the
/// upper-bound certificate.
template <class Hull>
FeasibilityVerdict feasibility_oracle(const DensityMatrix& rho, const Hull& hull, double lambda,
                                      std::vector<double> x, int iterations) {
  FeasibilityVerdict out;
  const std::size_t d = rho.dim();
  Matrix dual_avg(d);
  double dual_weight = 0.0;

  for (int t = 1; t <= iterations; ++t) {
    const auto residual = rho.op() - lambda * hull.op(x);
    const auto eig = hermitian_eig(residual);
    const double f = eig.eigenvalues.front();
    if (f > out.best_min_eigenvalue) {
      out.best_min_eigenvalue = f;
      out.best_point = x;
    }
    if (f >= -kFeasibilityTolerance) {
      out.feasible = true;
      break;
    }
    const auto v = eig.eigenvector(0);
    dual_avg += Matrix::outer(v, v);
    dual_weight += 1.0;

    const auto dir = hull.direction(v);
    double gnorm = 0.0;
    for (double gi : dir) gnorm += gi * gi;
    gnorm = std::sqrt(gnorm);
    if (gnorm == 0.0) break;  // the hull is orthogonal to the violating direction
    const double step = 1.0 / std::sqrt(static_cast<double>(t));
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - step * dir[i] / gnorm;
    x = hull.project(y);
  }
  if (!out.feasible && dual_weight > 0.0) {
    const HermitianOperator sigma(dual_avg * Complex(1.0 / dual_weight));
    const double denom = hull.min_support(sigma);
    if (denom > 0.0) out.dual_upper_bound = trace_product(sigma, rho.op()) / denom;
  }
  return out;
}

/// Bisection on lambda in [0, 1]. `query(lambda)` returns a verdict whose
/// feasible answers carry a checked witness. lambda = 0 is feasible for any
/// rho.
template <class Query>
FractionResult bisect_fraction(Query&& query, const OptimizerSettings& opts, std::vector<double>& witness) {
  opts.validate();
  FractionResult out;
  double lo = 0.0, hi = 1.0;
  double upper = 1.0;
  witness.clear();

  if (auto top = query(1.0); top.feasible) {
    witness = top.best_point;
    out.lambda = 1.0;
    out.bracket_width = 0.0;
    out.upper_bound = 1.0;
    out.converged = true;
    return out;
  } else {
    upper = std::min(upper, top.dual_upper_bound);
  }
  for (int it = 0; it < opts.bisection_iterations && hi - lo > opts.bisection_tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    auto v = query(mid);
    upper = std::min(upper, v.dual_upper_bound);
    if (v.feasible) {
      lo = mid;
      witness = v.best_point;
    } else {
      hi = mid;
    }
  }
  out.lambda = lo;
  out.bracket_width = hi - lo;
  out.upper_bound = std::max(upper, lo);
  out.converged = hi - lo <= opts.bisection_tolerance;
  return out;
}

/// Orthonormal basis of the orthogonal complement of V (Gram-Schmidt over
/// the coordinate vectors).
inline std::vector<std::vector<Complex>> complement_basis(const Subspace& v) {
  const std::size_t d = v.ambient_dim();
  std::vector<std::vector<Complex>> frame;
  for (const auto& b : v.basis()) frame.emplace_back(b.amplitudes().begin(), b.amplitudes().end());
  std::vector<std::vector<Complex>> out;
  for (std::size_t e = 0; e < d && frame.size() < d; ++e) {
    std::vector<Complex> c(d);
    c[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : frame) {
        const Complex proj = inner(q, c);
        for (std::size_t i = 0; i < d; ++i) c[i] -= proj * q[i];
      }
    const double n = PureState::norm(c);
    if (n < 1e-6) continue;
    for (auto& z : c) z /= n;
    frame.push_back(c);
    out.push_back(std::move(c));
  }
  return out;
}

/// B sigma B^dagger for sigma given in V coordinates.
inline HermitianOperator embed(const Subspace& v, const Matrix& sigma) {
  const std::size_t d = v.ambient_dim();
  const auto& b = v.basis();
  Matrix m(d);
  for (std::size_t a = 0; a < v.dim(); ++a)
    for (std::size_t c = 0; c < v.dim(); ++c) {
      const Complex s = sigma(a, c);
      if (s == Complex{}) continue;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) += s * b[a][i] * std::conj(b[c][j]);
    }
  return HermitianOperator(std::move(m));
}

/// B^dagger H B.
inline HermitianOperator compress(const HermitianOperator& h, const Subspace& v) {
  const std::size_t k = v.dim();
  Matrix m(k);
  for (std::size_t a = 0; a < k; ++a) {
    const auto hb = h.matrix().apply(v.basis()[a].amplitudes());
    for (std::size_t c = 0; c < k; ++c) m(c, a) = inner(v.basis()[c].amplitudes(), hb);
  }
  return HermitianOperator(std::move(m));
}

}  // namespace detail

/// Largest operator A <= rho (Loewner order) supported on V, in V
/// coordinates: the generalized Schur complement P - Q R^+ Q^dagger of the
/// block form of rho with respect to V (+) V^perp. Negative eigenvalues left
/// by rounding are clipped.
inline HermitianOperator shorted_operator(const DensityMatrix& rho, const Subspace& v) {
  if (rho.dim() != v.ambient_dim()) throw DimensionMismatch(rho.dim(), v.ambient_dim());
  const std::size_t k = v.dim();
  Matrix s = detail::compress(rho.op(), v).matrix();
  const auto comp = detail::complement_basis(v);
  if (!comp.empty()) {
    const std::size_t m = comp.size();
    // R = C^dagger rho C, Q = B^dagger rho C
    Matrix r(m);
    std::vector<std::vector<Complex>> q(k, std::vector<Complex>(m));
    for (std::size_t j = 0; j < m; ++j) {
      const auto rc = rho.op().matrix().apply(comp[j]);
      for (std::size_t i = 0; i < m; ++i) r(i, j) = inner(comp[i], rc);
      for (std::size_t a = 0; a < k; ++a) q[a][j] = inner(v.basis()[a].amplitudes(), rc);
    }
    const auto eig = hermitian_eig(HermitianOperator(std::move(r)));
    for (std::size_t t = 0; t < m; ++t) {
      const double mu = eig.eigenvalues[t];
      if (mu <= kZeroClip) continue;
      std::vector<Complex> x(k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t j = 0; j < m; ++j) x[a] += q[a][j] * eig.eigenvectors(j, t);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t c = 0; c < k; ++c) s(a, c) -= x[a] * std::conj(x[c]) / mu;
    }
  }
  const auto eig = hermitian_eig(HermitianOperator(std::move(s)));
  return eig.apply_function([](double x) { return std::max(x, 0.0); });
}

/// Largest lambda in [0, 1] with rho - lambda * sum_i w_i |psi_i><psi_i| PSD
/// (within 1e-9) for some simplex weights w. The returned lambda is a
/// certified lower bound (its witness weights are returned); bracket_width is
/// the final bisection bracket and upper_bound a dual certificate.
inline FractionResult max_fraction(const DensityMatrix& rho, const StateSet& u, const OptimizerSettings& opts = {}) {
  if (rho.dim() != u.dim()) throw DimensionMismatch(rho.dim(), u.dim());
  const detail::VertexHull hull{u};
  std::vector<double> start = hull.initial();
  auto query = [&](double lambda) {
    auto v = detail::feasibility_oracle(rho, hull, lambda, start, opts.inner_iterations);
    if (v.feasible) start = v.best_point;
    return v;
  };
  std::vector<double> witness;
  auto out = detail::bisect_fraction(query, opts, witness);
  out.witness_weights = SimplexWeights::renormalized(witness.empty() ? start : std::move(witness));
  return out;
}

/// Same problem with the hull replaced by all density matrices supported on
/// V: max tr A over PSD A on V with rho - A PSD. Each bisection query tests
/// the candidate lambda * S / tr S, S the shorted operator of rho onto V,
/// against the full residual rho - A.
inline FractionResult max_fraction_subspace(const DensityMatrix& rho, const Subspace& v,
                                            const OptimizerSettings& opts = {}) {
  if (rho.dim() != v.ambient_dim()) throw DimensionMismatch(rho.dim(), v.ambient_dim());
  const auto shorted = shorted_operator(rho, v);
  const double mass = shorted.trace();
  const Matrix shape = mass > kZeroClip ? shorted.matrix() * Complex(1.0 / mass)
                                        : Matrix::identity(v.dim()) * Complex(1.0 / static_cast<double>(v.dim()));
  const auto candidate = detail::embed(v, shape);

  auto query = [&](double lambda) {
    detail::FeasibilityVerdict out;
    const auto eig = hermitian_eig(rho.op() - lambda * candidate);
    out.best_min_eigenvalue = eig.eigenvalues.front();
    out.feasible = out.best_min_eigenvalue >= -kFeasibilityTolerance;
    if (!out.feasible) {
      // Farkas bound from the violating direction u:
      // lambda* <= <u|rho|u> / lambda_min(B^dagger |u><u| B), informative only for k = 1
      const auto u = eig.eigenvector(0);
      const HermitianOperator sigma(Matrix::outer(u, u));
      const double denom = min_eigenvalue(detail::compress(sigma, v));
      if (denom > 1e-300) out.dual_upper_bound = trace_product(sigma, rho.op()) / denom;
    }
    return out;
  };
  std::vector<double> witness;
  return detail::bisect_fraction(query, opts, witness);
}



}  // namespace qmeasure

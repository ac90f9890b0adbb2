#pragma once

// Pure states, density matrices, finite state sets, subspaces and simplex
// weights, plus Haar sampling on rays.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmeasure/linalg.hpp"
#include "qmeasure/random.hpp"

namespace qmeasure {

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kDuplicateRayThreshold = 1.0 - 1e-9;
inline constexpr double kOrthogonalityTolerance = 1e-10;
inline constexpr double kDensityTolerance = 1e-10;

/// Unit vector representing a ray. Downstream code only ever looks at
/// phase-invariant quantities (projectors, overlap probabilities).
class PureState {
 public:
  explicit PureState(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) throw std::invalid_argument("PureState: dim must be >= 1");
    for (const auto& z : amps_)
      if (!is_finite(z)) throw std::invalid_argument("PureState: non-finite amplitude");
    const double n = norm(amps_);
    if (std::abs(n - 1.0) > kNormTolerance)
      throw std::invalid_argument("PureState: amplitudes not normalized (norm " + std::to_string(n) + ")");
  }

  /// Scales `amplitudes` to unit norm. Throws on a zero vector.
  static PureState normalized(std::vector<Complex> amplitudes) {
    const double n = norm(amplitudes);
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("PureState: cannot normalize zero vector");
    for (auto& z : amplitudes) z /= n;
    return PureState(std::move(amplitudes));
  }

  /// Computational basis vector |index>.
  static PureState basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::out_of_range("PureState::basis: index out of range");
    std::vector<Complex> a(dim);
    a[index] = 1.0;
    return PureState(std::move(a));
  }

  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  static double norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& z : v) s += abs2(z);
    return std::sqrt(s);
  }

 private:
  std::vector<Complex> amps_;
};

/// Hermitian, PSD (min eigenvalue >= -1e-10) and unit trace.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOperator op) : op_(std::move(op)) {
    const double tr = op_.trace();
    if (std::abs(tr - 1.0) > kDensityTolerance)
      throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) + " != 1");
    const double lo = min_eigenvalue(op_);
    if (lo < -kDensityTolerance) throw NotPsdError(lo);
  }

  static DensityMatrix maximally_mixed(std::size_t dim) {
    return DensityMatrix(HermitianOperator(Matrix::identity(dim) * Complex(1.0 / static_cast<double>(dim))));
  }

  std::size_t dim() const noexcept { return op_.dim(); }
  const HermitianOperator& op() const noexcept { return op_; }
  Complex operator()(std::size_t i, std::size_t j) const { return op_(i, j); }

 private:
  HermitianOperator op_;
};

inline double overlap_probability(const PureState& psi, const PureState& phi) {
  if (psi.dim() != phi.dim()) throw DimensionMismatch(psi.dim(), phi.dim());
  return std::min(1.0, abs2(inner(psi.amplitudes(), phi.amplitudes())));
}

/// Non-empty list of pure states in a common dimension with no repeated rays.
class StateSet {
 public:
  explicit StateSet(std::vector<PureState> states) : states_(std::move(states)) {
    if (states_.empty()) throw std::invalid_argument("StateSet: needs at least one state");
    const std::size_t d = states_.front().dim();
    for (const auto& s : states_)
      if (s.dim() != d) throw DimensionMismatch(d, s.dim());
    for (std::size_t i = 0; i < states_.size(); ++i)
      for (std::size_t j = i + 1; j < states_.size(); ++j)
        if (overlap_probability(states_[i], states_[j]) >= kDuplicateRayThreshold)
          throw std::invalid_argument("StateSet: states " + std::to_string(i) + " and " + std::to_string(j) +
                                      " are the same ray");
  }

  std::size_t dim() const noexcept { return states_.front().dim(); }
  std::size_t size() const noexcept { return states_.size(); }
  const PureState& operator[](std::size_t i) const { return states_[i]; }
  const std::vector<PureState>& states() const noexcept { return states_; }
  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }

  StateSet with(const PureState& extra) const {
    auto s = states_;
    s.push_back(extra);
    return StateSet(std::move(s));
  }

  StateSet united(const StateSet& other) const {
    auto s = states_;
    s.insert(s.end(), other.states_.begin(), other.states_.end());
    return StateSet(std::move(s));
  }

 private:
  std::vector<PureState> states_;
};

/// Probability vector.
class SimplexWeights {
 public:
  explicit SimplexWeights(std::vector<double> w) : w_(std::move(w)) {
    if (w_.empty()) throw std::invalid_argument("SimplexWeights: empty");
    double sum = 0.0;
    for (double x : w_) {
      if (!std::isfinite(x) || x < 0.0) throw std::invalid_argument("SimplexWeights: negative or non-finite weight");
      sum += x;
    }
    if (std::abs(sum - 1.0) > kNormTolerance)
      throw std::invalid_argument("SimplexWeights: weights sum to " + std::to_string(sum));
  }

  static SimplexWeights uniform(std::size_t n) {
    return SimplexWeights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  static SimplexWeights vertex(std::size_t n, std::size_t i) {
    std::vector<double> w(n, 0.0);
    w.at(i) = 1.0;
    return SimplexWeights(std::move(w));
  }

  /// Clamps negatives to zero and rescales to unit sum.
  static SimplexWeights renormalized(std::vector<double> w) {
    double sum = 0.0;
    for (double& x : w) {
      x = std::max(0.0, x);
      sum += x;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("SimplexWeights: no positive mass");
    for (double& x : w) x /= sum;
    return SimplexWeights(std::move(w));
  }

  /// Uniform on the simplex (Dirichlet(1,...,1)).
  static SimplexWeights random(std::size_t n, RandomSource& rng) {
    std::vector<double> w(n);
    for (double& x : w) x = -std::log(1.0 - rng.uniform());
    return renormalized(std::move(w));
  }

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::vector<double>& values() const noexcept { return w_; }

 private:
  std::vector<double> w_;
};

/// Orthonormal basis of a closed subspace.
class Subspace {
 public:
  explicit Subspace(std::vector<PureState> basis) : basis_(std::move(basis)) {
    if (basis_.empty()) throw std::invalid_argument("Subspace: needs at least one basis vector");
    const std::size_t d = basis_.front().dim();
    for (const auto& b : basis_)
      if (b.dim() != d) throw DimensionMismatch(d, b.dim());
    if (basis_.size() > d) throw std::invalid_argument("Subspace: more basis vectors than ambient dimension");
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = i + 1; j < basis_.size(); ++j)
        if (overlap_probability(basis_[i], basis_[j]) > kOrthogonalityTolerance)
          throw std::invalid_argument("Subspace: basis vectors " + std::to_string(i) + " and " +
                                      std::to_string(j) + " are not orthogonal");
  }

  /// span{|i> : i in indices}.
  static Subspace coordinate(std::size_t dim, std::span<const std::size_t> indices) {
    std::vector<PureState> b;
    for (auto i : indices) b.push_back(PureState::basis(dim, i));
    return Subspace(std::move(b));
  }

  static Subspace full(std::size_t dim) {
    std::vector<PureState> b;
    for (std::size_t i = 0; i < dim; ++i) b.push_back(PureState::basis(dim, i));
    return Subspace(std::move(b));
  }

  std::size_t ambient_dim() const noexcept { return basis_.front().dim(); }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<PureState>& basis() const noexcept { return basis_; }

  /// Orthogonal projector onto the subspace.
  HermitianOperator projector() const {
    Matrix m(ambient_dim());
    for (const auto& b : basis_) m += Matrix::outer(b.amplitudes(), b.amplitudes());
    return HermitianOperator(std::move(m));
  }

  StateSet as_state_set() const { return StateSet(basis_); }

  bool is_orthogonal_to(const Subspace& other) const {
    for (const auto& a : basis_)
      for (const auto& b : other.basis_)
        if (overlap_probability(a, b) > kOrthogonalityTolerance) return false;
    return true;
  }

  /// V (+) W; requires V orthogonal to W.
  Subspace direct_sum(const Subspace& other) const {
    if (other.ambient_dim() != ambient_dim()) throw DimensionMismatch(ambient_dim(), other.ambient_dim());
    if (!is_orthogonal_to(other)) throw std::invalid_argument("Subspace::direct_sum: subspaces are not orthogonal");
    auto b = basis_;
    b.insert(b.end(), other.basis_.begin(), other.basis_.end());
    return Subspace(std::move(b));
  }

 private:
  std::vector<PureState> basis_;
};

/// |psi><psi|.
inline DensityMatrix projector(const PureState& psi) {
  return DensityMatrix(HermitianOperator(Matrix::outer(psi.amplitudes(), psi.amplitudes())));
}

/// sum_i w_i |psi_i><psi_i| as a raw Hermitian operator (no trace check);
/// `w` need not be normalized. Used by optimizers on scaled weights.
inline HermitianOperator weighted_projector_sum(const StateSet& u, std::span<const double> w) {
  if (w.size() != u.size()) throw DimensionMismatch(u.size(), w.size());
  const std::size_t d = u.dim();
  Matrix m(d);
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (w[k] == 0.0) continue;
    const auto a = u[k].amplitudes();
    for (std::size_t i = 0; i < d; ++i) {
      const Complex ai = w[k] * a[i];
      for (std::size_t j = 0; j < d; ++j) m(i, j) += ai * std::conj(a[j]);
    }
  }
  return HermitianOperator(std::move(m));
}

inline DensityMatrix convex_combination(const StateSet& u, const SimplexWeights& w) {
  if (w.size() != u.size()) throw DimensionMismatch(u.size(), w.size());
  return DensityMatrix(weighted_projector_sum(u, w.values()));
}

inline DensityMatrix uniform_mixture(const StateSet& u) {
  return convex_combination(u, SimplexWeights::uniform(u.size()));
}

/// Pi_V / dim V.
inline DensityMatrix subspace_uniform_state(const Subspace& v) {
  return DensityMatrix((1.0 / static_cast<double>(v.dim())) * v.projector());
}

/// Haar-random ray: normalized vector of i.i.d. standard complex Gaussians.
inline PureState haar_sample(std::size_t dim, RandomSource& rng) {
  if (dim == 0) throw std::invalid_argument("haar_sample: dim must be >= 1");
  std::vector<Complex> a(dim);
  for (auto& z : a) {
    const double re = rng.normal();
    const double im = rng.normal();
    z = Complex(re, im);
  }
  return PureState::normalized(std::move(a));
}

/// Haar-random ray inside the subspace V.
inline PureState haar_sample_in(const Subspace& v, RandomSource& rng) {
  const auto coeffs = haar_sample(v.dim(), rng);
  std::vector<Complex> a(v.ambient_dim());
  for (std::size_t k = 0; k < v.dim(); ++k)
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += coeffs[k] * v.basis()[k][i];
  return PureState::normalized(std::move(a));
}

/// Haar-random unitary: Gram-Schmidt on i.i.d. complex Gaussian columns
/// (QR with positive diagonal R).
inline Matrix haar_unitary(std::size_t dim, RandomSource& rng) {
  std::vector<std::vector<Complex>> cols;
  while (cols.size() < dim) {
    std::vector<Complex> c(dim);
    for (auto& z : c) {
      const double re = rng.normal();
      const double im = rng.normal();
      z = Complex(re, im);
    }
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : cols) {
        const Complex proj = inner(q, c);
        for (std::size_t i = 0; i < dim; ++i) c[i] -= proj * q[i];
      }
    const double n = PureState::norm(c);
    if (n < 1e-8) continue;
    for (auto& z : c) z /= n;
    cols.push_back(std::move(c));
  }
  Matrix u(dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = cols[j][i];
  return u;
}

/// Random orthonormal k-frame (first k columns of a Haar unitary).
inline std::vector<PureState> haar_orthonormal_set(std::size_t dim, std::size_t k, RandomSource& rng) {
  if (k > dim) throw std::invalid_argument("haar_orthonormal_set: k exceeds dim");
  const auto u = haar_unitary(dim, rng);
  std::vector<PureState> out;
  for (std::size_t j = 0; j < k; ++j) out.push_back(PureState::normalized(u.column(j)));
  return out;
}

inline PureState apply_unitary(const Matrix& u, const PureState& psi) {
  return PureState::normalized(u.apply(psi.amplitudes()));
}

inline StateSet apply_unitary(const Matrix& u, const StateSet& set) {
  std::vector<PureState> s;
  for (const auto& psi : set) s.push_back(apply_unitary(u, psi));
  return StateSet(std::move(s));
}

}  // namespace qmeasure

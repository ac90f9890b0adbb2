#pragma once

// State-counting set functions on finite state sets and subspaces.
//
//   mu_first(U)  = 2^S(uniform mixture of U)
//   mu_second(U) = sup over the hull of U of 2^S
//   p_rho(U)     = largest fraction of rho expressible as a mixture from U
//
// Logarithms are base 2, so values are dimensionless state counts.

#include <cmath>
#include <optional>
#include <stdexcept>

#include "qmeasure/linalg.hpp"
#include "qmeasure/optimize.hpp"
#include "qmeasure/states.hpp"

namespace qmeasure {

struct MeasureResult {
  double value = 1.0;  // 2^entropy_bits
  double entropy_bits = 0.0;
  std::optional<SimplexWeights> optimizer_weights;
  bool converged = true;
  /// Upper bound on (true supremum - value); 0 for closed forms.
  double gap_bound = 0.0;
};

inline double von_neumann_entropy(const DensityMatrix& rho) {
  const auto eig = hermitian_eig(rho.op());
  if (eig.eigenvalues.front() < -kDensityTolerance) throw NotPsdError(eig.eigenvalues.front());
  return shannon_bits(eig.eigenvalues);
}

/// Entropy of the equal mixture of two rays with overlap probability p:
/// eigenvalues (1 +- sqrt p) / 2 fed to the binary entropy.
inline double two_state_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("two_state_entropy: p must lie in [0, 1]");
  const double r = std::sqrt(p);
  const double eig[] = {0.5 * (1.0 + r), 0.5 * (1.0 - r)};
  return shannon_bits(eig);
}

inline MeasureResult mu_first(const StateSet& u) {
  const double s = von_neumann_entropy(uniform_mixture(u));
  return MeasureResult{std::exp2(s), s, std::nullopt, true, 0.0};
}

inline MeasureResult mu_second(const StateSet& u, const OptimizerSettings& opts = {}) {
  auto res = max_entropy_over_hull(u, opts);
  const double s = res.entropy_bits;
  const double value = std::exp2(s);
  // S* <= s + gap, so sup 2^S - 2^s <= 2^s (2^gap - 1).
  const double gap = value * std::expm1(res.trace.final_gap * std::numbers::ln2);
  return MeasureResult{value, s, std::move(res.weights), res.converged, gap};
}

/// Closed form: the maximally mixed state on V attains the entropy ceiling
/// log2 dim V.
inline MeasureResult mu_subspace(const Subspace& v, const OptimizerSettings& = {}) {
  const auto k = static_cast<double>(v.dim());
  return MeasureResult{k, std::log2(k), SimplexWeights::uniform(v.dim()), true, 0.0};
}

inline FractionResult p_rho(const DensityMatrix& rho, const StateSet& u, const OptimizerSettings& opts = {}) {
  return max_fraction(rho, u, opts);
}

inline FractionResult p_rho_subspace(const DensityMatrix& rho, const Subspace& v, const OptimizerSettings& opts = {}) {
  return max_fraction_subspace(rho, v, opts);
}

}  // namespace qmeasure

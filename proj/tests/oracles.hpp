#pragma once

// Reference computations used only by the tests. None of these call the
// library's eigensolver or optimizers: small dimensions get closed forms,
// optima get brute-force grids.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "qmeasure/linalg.hpp"
#include "qmeasure/states.hpp"

namespace oracle {

using qmeasure::Complex;
using qmeasure::Matrix;

// Eigenvalues of [[a, b], [conj b, c]], ascending.
inline std::array<double, 2> eig2(double a, double c, Complex b) {
  const double mean = 0.5 * (a + c);
  const double half = 0.5 * (a - c);
  const double r = std::sqrt(half * half + std::norm(b));
  return {mean - r, mean + r};
}

inline std::array<double, 2> eig2(const Matrix& m) { return eig2(m(0, 0).real(), m(1, 1).real(), m(0, 1)); }

// Hermitian 3x3 eigenvalues by the trigonometric cubic solution, ascending.
inline std::array<double, 3> eig3(const Matrix& a) {
  const double a00 = a(0, 0).real(), a11 = a(1, 1).real(), a22 = a(2, 2).real();
  const double off = std::norm(a(0, 1)) + std::norm(a(0, 2)) + std::norm(a(1, 2));
  const double q = (a00 + a11 + a22) / 3.0;
  const double p2 = (a00 - q) * (a00 - q) + (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) + 2.0 * off;
  if (p2 <= 1e-300) return {q, q, q};
  const double p = std::sqrt(p2 / 6.0);
  // det(B) with B = (A - qI) / p
  const Complex b00 = (a00 - q) / p, b11 = (a11 - q) / p, b22 = (a22 - q) / p;
  const Complex b01 = a(0, 1) / p, b02 = a(0, 2) / p, b12 = a(1, 2) / p;
  const Complex b10 = std::conj(b01), b20 = std::conj(b02), b21 = std::conj(b12);
  const Complex det = b00 * (b11 * b22 - b12 * b21) - b01 * (b10 * b22 - b12 * b20) + b02 * (b10 * b21 - b11 * b20);
  const double r = std::clamp(det.real() / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double hi = q + 2.0 * p * std::cos(phi);
  const double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  return {lo, 3.0 * q - hi - lo, hi};
}

inline std::vector<double> small_eigenvalues(const Matrix& m) {
  if (m.dim() == 1) return {m(0, 0).real()};
  if (m.dim() == 2) {
    auto e = eig2(m);
    return {e.begin(), e.end()};
  }
  auto e = eig3(m);
  return {e.begin(), e.end()};
}

inline double entropy_bits(const std::vector<double>& eig) {
  double s = 0.0;
  for (double x : eig)
    if (x > 1e-12) s -= x * std::log2(x);
  return s;
}

// sum_i w_i |psi_i><psi_i| as a plain matrix.
inline Matrix mixture(const std::vector<std::vector<Complex>>& states, const std::vector<double>& w) {
  const std::size_t d = states.front().size();
  Matrix m(d);
  for (std::size_t k = 0; k < states.size(); ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) += w[k] * states[k][i] * std::conj(states[k][j]);
  return m;
}

inline std::vector<std::vector<Complex>> amplitudes(const qmeasure::StateSet& u) {
  std::vector<std::vector<Complex>> out;
  for (const auto& s : u) out.emplace_back(s.amplitudes().begin(), s.amplitudes().end());
  return out;
}

// Entropy of the w-mixture for d <= 3.
inline double mixture_entropy(const qmeasure::StateSet& u, const std::vector<double>& w) {
  return entropy_bits(small_eigenvalues(mixture(amplitudes(u), w)));
}

// Visits every point of the simplex grid {k / steps} in n coordinates, n <= 3.
inline void simplex_grid(std::size_t n, int steps, const std::function<void(const std::vector<double>&)>& visit) {
  std::vector<double> w(n);
  if (n == 1) {
    w[0] = 1.0;
    visit(w);
    return;
  }
  if (n == 2) {
    for (int i = 0; i <= steps; ++i) {
      w[0] = double(i) / steps;
      w[1] = 1.0 - w[0];
      visit(w);
    }
    return;
  }
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; i + j <= steps; ++j) {
      w[0] = double(i) / steps;
      w[1] = double(j) / steps;
      w[2] = std::max(0.0, 1.0 - w[0] - w[1]);
      visit(w);
    }
}

struct GridOptimum {
  double value = -1.0;
  std::vector<double> argmax;
};

// Max of the mixture entropy over a simplex grid, then a local refinement
// on a 10x finer grid around the best point. d <= 3, n <= 3.
inline GridOptimum max_entropy_grid(const qmeasure::StateSet& u, int steps) {
  GridOptimum best;
  simplex_grid(u.size(), steps, [&](const std::vector<double>& w) {
    const double s = mixture_entropy(u, w);
    if (s > best.value) best = {s, w};
  });
  if (u.size() == 1) return best;
  const double h = 1.0 / steps;
  const int fine = 20;
  const auto centre = best.argmax;
  auto consider = [&](std::vector<double> w) {
    for (double x : w)
      if (x < 0.0) return;
    const double s = mixture_entropy(u, w);
    if (s > best.value) best = {s, w};
  };
  for (int a = -fine; a <= fine; ++a) {
    if (u.size() == 2) {
      const double x = centre[0] + a * h / fine;
      consider({x, 1.0 - x});
      continue;
    }
    for (int b = -fine; b <= fine; ++b) {
      const double x = centre[0] + a * h / fine, y = centre[1] + b * h / fine;
      consider({x, y, 1.0 - x - y});
    }
  }
  return best;
}

// Smallest eigenvalue of a 2x2 or 3x3 Hermitian matrix.
inline double min_eig_small(const Matrix& m) { return small_eigenvalues(m).front(); }

// Largest lambda on the grid {k / steps} with rho - lambda sigma PSD
// (within tol). Feasibility is monotone in lambda, so a binary search over
// grid indices visits only log2(steps) points.
inline double largest_feasible_on_grid(const Matrix& rho, const Matrix& sigma, int steps, double tol = 1e-12) {
  auto feasible = [&](int k) {
    Matrix r = rho;
    Matrix s = sigma;
    s *= Complex(double(k) / steps);
    r -= s;
    return min_eig_small(r) >= -tol;
  };
  int lo = 0, hi = steps;
  if (feasible(hi)) return 1.0;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (feasible(mid) ? lo : hi) = mid;
  }
  return double(lo) / steps;
}

// Brute-force p_rho for d = 2 (or 3), n <= 3: weight grid x lambda grid.
inline double fraction_grid(const Matrix& rho, const qmeasure::StateSet& u, int steps) {
  const auto amps = amplitudes(u);
  double best = 0.0;
  simplex_grid(u.size(), steps, [&](const std::vector<double>& w) {
    best = std::max(best, largest_feasible_on_grid(rho, mixture(amps, w), steps));
  });
  return best;
}

// For V = span{v} and invertible rho: sup lambda = 1 / <v| rho^{-1} |v>.
// 2x2 inverse by the adjugate.
inline double rank_one_fraction_2x2(const Matrix& rho, const std::vector<Complex>& v) {
  const Complex det = rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0);
  Matrix inv(2);
  inv(0, 0) = rho(1, 1) / det;
  inv(1, 1) = rho(0, 0) / det;
  inv(0, 1) = -rho(0, 1) / det;
  inv(1, 0) = -rho(1, 0) / det;
  Complex q = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) q += std::conj(v[i]) * inv(i, j) * v[j];
  return 1.0 / q.real();
}

// p_rho for a 2-dimensional subspace of C^3: every state on V is a point
// of the Bloch ball in the basis {e0, e1}; scan the ball on a cubic grid.
inline double fraction_bloch_grid(const Matrix& rho, const std::vector<Complex>& e0, const std::vector<Complex>& e1,
                                  int per_axis, int lambda_steps) {
  double best = 0.0;
  for (int ix = 0; ix <= per_axis; ++ix)
    for (int iy = 0; iy <= per_axis; ++iy)
      for (int iz = 0; iz <= per_axis; ++iz) {
        const double x = -1.0 + 2.0 * ix / per_axis, y = -1.0 + 2.0 * iy / per_axis, z = -1.0 + 2.0 * iz / per_axis;
        if (x * x + y * y + z * z > 1.0) continue;
        // sigma = (1/2)(I + x X + y Y + z Z) in the {e0, e1} frame
        const Complex s00 = 0.5 * (1.0 + z), s11 = 0.5 * (1.0 - z), s01 = 0.5 * Complex(x, -y);
        Matrix sigma(3);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            sigma(i, j) = s00 * e0[i] * std::conj(e0[j]) + s11 * e1[i] * std::conj(e1[j]) +
                          s01 * e0[i] * std::conj(e1[j]) + std::conj(s01) * e1[i] * std::conj(e0[j]);
        best = std::max(best, largest_feasible_on_grid(rho, sigma, lambda_steps));
      }
  return best;
}

// Haar-random pure state drawn with the standard library's own generator.
template <class Engine>
std::vector<Complex> gaussian_state(std::size_t d, Engine& eng) {
  std::normal_distribution<double> n;
  std::vector<Complex> v(d);
  double s = 0.0;
  for (auto& z : v) {
    z = {n(eng), n(eng)};
    s += std::norm(z);
  }
  for (auto& z : v) z /= std::sqrt(s);
  return v;
}

}  // namespace oracle

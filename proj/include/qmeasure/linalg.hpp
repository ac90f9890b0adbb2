#pragma once

// Dense complex linear algebra for small Hermitian problems (d <= ~16).
// Everything here is a value type; operations are pure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qmeasure {

using Complex = std::complex<double>;

/// Eigenvalues at or below this are treated as exact zeros by the log and
/// entropy routines (0 log 0 = 0).
inline constexpr double kZeroClip = 1e-12;

inline constexpr double kHermitianTolerance = 1e-12;

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : std::invalid_argument("dimension mismatch: expected " + std::to_string(expected) +
                              ", got " + std::to_string(got)) {}
};

/// Thrown when the Jacobi sweep cap is hit; carries the remaining
/// off-diagonal Frobenius norm.
class ConvergenceError : public NumericError {
 public:
  explicit ConvergenceError(double residual)
      : NumericError("hermitian_eig: no convergence, off-diagonal norm " +
                     std::to_string(residual)),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class NotPsdError : public NumericError {
 public:
  explicit NotPsdError(double min_eigenvalue)
      : NumericError("operator is not positive semi-definite: min eigenvalue " +
                     std::to_string(min_eigenvalue)),
        min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

inline double abs2(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Square complex matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix outer(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
    Matrix m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  std::span<const Complex> data() const noexcept { return data_; }

  std::vector<Complex> column(std::size_t j) const {
    std::vector<Complex> c(dim_);
    for (std::size_t i = 0; i < dim_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix adjoint() const {
    Matrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    check_dim(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_dim(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.check_dim(b);
    const std::size_t n = a.dim_;
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < n; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  std::vector<Complex> apply(std::span<const Complex> v) const {
    if (v.size() != dim_) throw DimensionMismatch(dim_, v.size());
    std::vector<Complex> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  /// Largest entrywise modulus of (a - b).
  friend double max_abs_diff(const Matrix& a, const Matrix& b) {
    a.check_dim(b);
    double m = 0.0;
    for (std::size_t k = 0; k < a.data_.size(); ++k) m = std::max(m, std::abs(a.data_[k] - b.data_[k]));
    return m;
  }

 private:
  void check_dim(const Matrix& o) const {
    if (o.dim_ != dim_) throw DimensionMismatch(dim_, o.dim_);
  }

  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// <a|b>, antilinear in the first argument.
inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// Hermitian d x d operator. Construction validates finiteness and
/// A = A^dagger within kHermitianTolerance (scaled by max(1, |A|_max)), then
/// symmetrizes exactly.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m) : m_(std::move(m)) {
    if (m_.dim() == 0) throw std::invalid_argument("HermitianOperator: dim must be >= 1");
    const std::size_t d = m_.dim();
    const double scale = std::max(1.0, m_.max_abs());
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) {
        if (!is_finite(m_(i, j)) || !is_finite(m_(j, i)))
          throw std::invalid_argument("HermitianOperator: non-finite entry");
        if (std::abs(m_(i, j) - std::conj(m_(j, i))) > kHermitianTolerance * scale)
          throw std::invalid_argument("HermitianOperator: matrix is not Hermitian at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
        const Complex avg = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
        m_(i, j) = avg;
        m_(j, i) = std::conj(avg);
      }
    }
  }

  static HermitianOperator identity(std::size_t dim) { return HermitianOperator(Matrix::identity(dim)); }

  static HermitianOperator diagonal(std::span<const double> diag) {
    Matrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return HermitianOperator(std::move(m));
  }

  std::size_t dim() const noexcept { return m_.dim(); }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

  double trace() const { return m_.trace().real(); }

  /// <v|H|v>, real for Hermitian H.
  double expectation(std::span<const Complex> v) const {
    return inner(v, m_.apply(v)).real();
  }

  /// U H U^dagger.
  HermitianOperator conjugated_by(const Matrix& u) const {
    return HermitianOperator(u * m_ * u.adjoint());
  }

  friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(a.m_ + b.m_);
  }
  friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(a.m_ - b.m_);
  }
  friend HermitianOperator operator*(double s, const HermitianOperator& a) {
    return HermitianOperator(a.m_ * Complex(s));
  }

 private:
  Matrix m_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // column k pairs with eigenvalues[k]

  std::vector<Complex> eigenvector(std::size_t k) const { return eigenvectors.column(k); }

  /// V diag(f(lambda)) V^dagger.
  template <class F>
  HermitianOperator apply_function(F&& f) const {
    const std::size_t d = eigenvectors.dim();
    Matrix out(d);
    for (std::size_t k = 0; k < d; ++k) {
      const double fk = f(eigenvalues[k]);
      if (fk == 0.0) continue;
      for (std::size_t i = 0; i < d; ++i) {
        const Complex vik = eigenvectors(i, k) * fk;
        for (std::size_t j = 0; j < d; ++j) out(i, j) += vik * std::conj(eigenvectors(j, k));
      }
    }
    return HermitianOperator(std::move(out));
  }
};

struct JacobiSettings {
  int max_sweeps = 100;
  double off_diagonal_threshold = 1e-12;
};

/// tr(A B), real for Hermitian A, B.
inline double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) s += (a(i, j) * b(j, i)).real();
  return s;
}

/// Cyclic complex Jacobi. Each rotation is U = D R D^dagger where D removes
/// the phase of the pivot and R is the real symmetric Jacobi rotation.
inline EigenDecomposition hermitian_eig(const HermitianOperator& h, JacobiSettings settings = {}) {
  const std::size_t d = h.dim();
  Matrix a = h.matrix();
  Matrix v = Matrix::identity(d);

  double frob = 0.0;
  for (const auto& z : a.data()) frob += abs2(z);
  const double threshold = settings.off_diagonal_threshold * std::max(1.0, std::sqrt(frob));

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (i != j) s += abs2(a(i, j));
    return std::sqrt(s);
  };

  double off = off_norm();
  int sweep = 0;
  while (off > threshold) {
    if (sweep++ >= settings.max_sweeps) throw ConvergenceError(off);
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * (aqq - app) / mag;
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex upq = s * phase;
        const Complex uqp = -s * std::conj(phase);

        // A <- A U (columns p, q)
        for (std::size_t r = 0; r < d; ++r) {
          const Complex arp = a(r, p);
          const Complex arq = a(r, q);
          a(r, p) = arp * c + arq * uqp;
          a(r, q) = arp * upq + arq * c;
        }
        // A <- U^dagger A (rows p, q)
        for (std::size_t r = 0; r < d; ++r) {
          const Complex apr = a(p, r);
          const Complex aqr = a(q, r);
          a(p, r) = c * apr + std::conj(uqp) * aqr;
          a(q, r) = std::conj(upq) * apr + c * aqr;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t r = 0; r < d; ++r) {
          const Complex vrp = v(r, p);
          const Complex vrq = v(r, q);
          v(r, p) = vrp * c + vrq * uqp;
          v(r, q) = vrp * upq + vrq * c;
        }
      }
    }
    off = off_norm();
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out{std::vector<double>(d), Matrix(d)};
  for (std::size_t k = 0; k < d; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < d; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

inline double min_eigenvalue(const HermitianOperator& h) { return hermitian_eig(h).eigenvalues.front(); }

inline double max_eigenvalue(const HermitianOperator& h) { return hermitian_eig(h).eigenvalues.back(); }

/// log2 on the support: eigenvalues <= kZeroClip map to 0. Rejects
/// eigenvalues below -psd_tolerance.
inline HermitianOperator matrix_log2_on_support(const HermitianOperator& h, double psd_tolerance = 1e-10) {
  const auto eig = hermitian_eig(h);
  if (eig.eigenvalues.front() < -psd_tolerance) throw NotPsdError(eig.eigenvalues.front());
  return eig.apply_function([](double x) { return x > kZeroClip ? std::log2(x) : 0.0; });
}

/// -sum p log2 p with the zero-clip convention.
inline double shannon_bits(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities)
    if (p > kZeroClip) s -= p * std::log2(p);
  return s;
}

}  // namespace qmeasure

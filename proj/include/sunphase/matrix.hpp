#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "sunphase/errors.hpp"

namespace sunphase {

using Complex = std::complex<double>;

// Validation tolerance: how far a matrix may drift from exact unitarity (or a
// vector from unit norm) before constructors reject it.
inline constexpr double kValidationTol = 1e-10;
// Construction tolerance: accuracy promised by the library's own factories.
inline constexpr double kConstructionTol = 1e-12;
// Below this scale a magnitude is treated as exactly zero when branching.
inline constexpr double kDegenerateTol = 1e-14;

// Argument of z in (-pi, pi]. std::arg already lands there except for the
// branch cut, where it may return -pi; fold that to +pi.
inline double principal_arg(Complex z) {
  double a = std::arg(z);
  if (a <= -std::numbers::pi) a = std::numbers::pi;
  return a;
}

// Wrap any angle into (-pi, pi].
inline double canonical_angle(double theta) {
  return principal_arg(std::polar(1.0, theta));
}

// Distance between two angles on the circle, in [0, pi].
inline double angle_distance(double a, double b) {
  return std::abs(principal_arg(std::polar(1.0, a - b)));
}

// A unit vector in C^n. Normalization is checked at construction, not forced:
// a caller handing in garbage should hear about it rather than have the
// garbage silently rescaled.
class StateVector {
 public:
  explicit StateVector(std::vector<Complex> amplitudes, double tol = kValidationTol)
      : amp_(std::move(amplitudes)) {
    if (amp_.empty()) throw std::invalid_argument("state vector must have dimension >= 1");
    double n2 = 0.0;
    for (const Complex& a : amp_) n2 += std::norm(a);
    if (std::abs(std::sqrt(n2) - 1.0) > tol)
      throw validation_error("state vector norm " + std::to_string(std::sqrt(n2)) +
                             " deviates from 1 beyond tolerance");
  }

  static StateVector basis(int dim, int index) {
    if (dim < 1 || index < 0 || index >= dim)
      throw std::invalid_argument("basis index out of range");
    std::vector<Complex> a(static_cast<size_t>(dim), Complex(0.0, 0.0));
    a[static_cast<size_t>(index)] = 1.0;
    return StateVector(std::move(a));
  }

  int dim() const { return static_cast<int>(amp_.size()); }
  const Complex& operator[](int i) const { return amp_[static_cast<size_t>(i)]; }
  const std::vector<Complex>& amplitudes() const { return amp_; }

 private:
  std::vector<Complex> amp_;
};

// <x|y> = sum_i conj(x_i) y_i. Conjugate-linear in the first slot.
inline Complex inner_product(const StateVector& x, const StateVector& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("inner product needs equal dimensions");
  Complex s(0.0, 0.0);
  for (int i = 0; i < x.dim(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

inline StateVector phase_shifted(const StateVector& v, double angle) {
  std::vector<Complex> a = v.amplitudes();
  const Complex p = std::polar(1.0, angle);
  for (Complex& z : a) z *= p;
  return StateVector(std::move(a));
}

// Euclidean norm of x - y. Not gauge invariant; compare rephased states when
// a phase-blind distance is wanted.
inline double state_distance(const StateVector& x, const StateVector& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("state distance needs equal dimensions");
  double s = 0.0;
  for (int i = 0; i < x.dim(); ++i) s += std::norm(x[i] - y[i]);
  return std::sqrt(s);
}

// Dense unitary matrix, row-major, 0-based indexing. Unitarity is validated
// at construction against the given tolerance.
class UnitaryMatrix {
 public:
  UnitaryMatrix(int dim, std::vector<Complex> entries, double tol = kValidationTol)
      : dim_(dim), e_(std::move(entries)) {
    if (dim_ < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    if (e_.size() != static_cast<size_t>(dim_) * static_cast<size_t>(dim_))
      throw std::invalid_argument("entry count does not match dimension");
    double defect = unitarity_defect();
    if (defect > tol)
      throw validation_error("matrix is not unitary: defect " + std::to_string(defect));
  }

  static UnitaryMatrix identity(int dim) {
    if (dim < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    std::vector<Complex> e(static_cast<size_t>(dim) * static_cast<size_t>(dim), Complex(0, 0));
    for (int i = 0; i < dim; ++i) e[static_cast<size_t>(i) * dim + i] = 1.0;
    return UnitaryMatrix(dim, std::move(e));
  }

  int dim() const { return dim_; }
  const Complex& operator()(int r, int c) const {
    return e_[static_cast<size_t>(r) * dim_ + c];
  }
  const std::vector<Complex>& entries() const { return e_; }

  // max_ij |(U^dag U - I)_ij|
  double unitarity_defect() const {
    double worst = 0.0;
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) {
        Complex s(0, 0);
        for (int k = 0; k < dim_; ++k) s += std::conj((*this)(k, i)) * (*this)(k, j);
        if (i == j) s -= 1.0;
        worst = std::max(worst, std::abs(s));
      }
    }
    return worst;
  }

  // LU with partial pivoting. For a unitary matrix this is stable and the
  // result sits on the unit circle up to roundoff.
  Complex determinant() const {
    std::vector<Complex> a = e_;
    const int n = dim_;
    Complex det(1.0, 0.0);
    for (int col = 0; col < n; ++col) {
      int piv = col;
      double best = std::abs(a[static_cast<size_t>(col) * n + col]);
      for (int r = col + 1; r < n; ++r) {
        double m = std::abs(a[static_cast<size_t>(r) * n + col]);
        if (m > best) {
          best = m;
          piv = r;
        }
      }
      if (best == 0.0) return Complex(0.0, 0.0);
      if (piv != col) {
        for (int c = 0; c < n; ++c)
          std::swap(a[static_cast<size_t>(piv) * n + c], a[static_cast<size_t>(col) * n + c]);
        det = -det;
      }
      const Complex d = a[static_cast<size_t>(col) * n + col];
      det *= d;
      for (int r = col + 1; r < n; ++r) {
        const Complex f = a[static_cast<size_t>(r) * n + col] / d;
        if (f == Complex(0.0, 0.0)) continue;
        for (int c = col; c < n; ++c)
          a[static_cast<size_t>(r) * n + c] -= f * a[static_cast<size_t>(col) * n + c];
      }
    }
    return det;
  }

  bool is_special(double tol = kValidationTol) const {
    return std::abs(determinant() - Complex(1.0, 0.0)) <= tol;
  }

  UnitaryMatrix adjoint() const {
    std::vector<Complex> e(e_.size());
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c)
        e[static_cast<size_t>(c) * dim_ + r] = std::conj((*this)(r, c));
    return UnitaryMatrix(dim_, std::move(e));
  }

 private:
  int dim_;
  std::vector<Complex> e_;
};

inline UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix product needs equal dimensions");
  const int n = a.dim();
  std::vector<Complex> e(static_cast<size_t>(n) * n, Complex(0, 0));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex(0.0, 0.0)) continue;
      for (int c = 0; c < n; ++c) e[static_cast<size_t>(r) * n + c] += ark * b(k, c);
    }
  return UnitaryMatrix(n, std::move(e));
}

inline StateVector apply(const UnitaryMatrix& u, const StateVector& v) {
  if (u.dim() != v.dim()) throw std::invalid_argument("apply needs equal dimensions");
  const int n = u.dim();
  std::vector<Complex> out(static_cast<size_t>(n), Complex(0, 0));
  for (int r = 0; r < n; ++r) {
    Complex s(0, 0);
    for (int c = 0; c < n; ++c) s += u(r, c) * v[c];
    out[static_cast<size_t>(r)] = s;
  }
  return StateVector(std::move(out));
}

// Rescale U by det(U)^{-1/N} (principal Nth root) so the result has unit
// determinant. Input must already be unitary.
inline UnitaryMatrix special_unitarize(const UnitaryMatrix& u) {
  const Complex d = u.determinant();
  if (std::abs(std::abs(d) - 1.0) > kValidationTol)
    throw validation_error("determinant is off the unit circle; matrix not unitary enough");
  const double n = static_cast<double>(u.dim());
  const Complex scale = std::polar(1.0, -principal_arg(d) / n);
  std::vector<Complex> e = u.entries();
  for (Complex& z : e) z *= scale;
  return UnitaryMatrix(u.dim(), std::move(e));
}

inline double max_entry_distance(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("entry distance needs equal dimensions");
  double worst = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  return worst;
}

}  // namespace sunphase

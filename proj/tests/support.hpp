#pragma once

// Shared helpers for the test suite: random samplers plus slow-but-independent
// reference computations (cofactor determinant, symmetric tensor-power lift)
// used to cross-check the library's fast paths.

#include <sunphase/sunphase.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testsupport {

using sunphase::Complex;
using sunphase::StateVector;
using sunphase::UnitaryMatrix;

inline Complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return Complex(dist(rng), dist(rng));
}

inline StateVector random_state(std::size_t dim, std::mt19937_64& rng) {
  std::vector<Complex> amps(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& a : amps) {
      a = gaussian(rng);
      norm2 += std::norm(a);
    }
  } while (norm2 < 1e-12);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= inv;
  return StateVector(amps);
}

// Haar-distributed special unitary: Gaussian columns, modified Gram-Schmidt,
// then a global det^{-1/n} correction.
inline UnitaryMatrix haar_special_unitary(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::vector<Complex>> cols(n, std::vector<Complex>(n));
  for (auto& col : cols)
    for (auto& e : col) e = gaussian(rng);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      Complex overlap(0.0, 0.0);
      for (std::size_t r = 0; r < n; ++r) overlap += std::conj(cols[prev][r]) * cols[c][r];
      for (std::size_t r = 0; r < n; ++r) cols[c][r] -= overlap * cols[prev][r];
    }
    double norm2 = 0.0;
    for (const auto& e : cols[c]) norm2 += std::norm(e);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& e : cols[c]) e *= inv;
  }
  std::vector<Complex> entries(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) entries[r * n + c] = cols[c][r];
  return special_unitarize(UnitaryMatrix(n, entries, 1e-8));
}

// Determinant by cofactor expansion along the first row. Exponential cost,
// fine for n <= 8; deliberately shares no code with the LU-based member.
inline Complex cofactor_determinant(const std::vector<Complex>& m, std::size_t n) {
  if (n == 1) return m[0];
  Complex sum(0.0, 0.0);
  std::vector<Complex> minor((n - 1) * (n - 1));
  double sign = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t mc = 0;
      for (std::size_t cc = 0; cc < n; ++cc) {
        if (cc == c) continue;
        minor[(r - 1) * (n - 1) + mc] = m[r * n + cc];
        ++mc;
      }
    }
    sum += sign * m[c] * cofactor_determinant(minor, n - 1);
    sign = -sign;
  }
  return sum;
}

inline Complex cofactor_determinant(const UnitaryMatrix& u) {
  return cofactor_determinant(u.entries(), u.dim());
}

// Reference implementation of the multiphoton lift: build the full 2^lambda
// tensor power of the 2x2 block and project onto the normalized symmetric
// basis states. Bit value 1 in a basis index means that photon sits in the
// second channel, so popcount(index) counts channel-2 photons.
inline std::vector<Complex> tensor_power_lift(const UnitaryMatrix& block, std::size_t lambda) {
  const std::size_t full = std::size_t{1} << lambda;
  std::vector<Complex> tensor(full * full);
  for (std::size_t row = 0; row < full; ++row) {
    for (std::size_t col = 0; col < full; ++col) {
      Complex prod(1.0, 0.0);
      for (std::size_t bit = 0; bit < lambda; ++bit) {
        const std::size_t br = (row >> bit) & 1u;
        const std::size_t bc = (col >> bit) & 1u;
        prod *= block(br, bc);
      }
      tensor[row * full + col] = prod;
    }
  }
  const std::size_t dim = lambda + 1;
  std::vector<std::vector<std::size_t>> shells(dim);
  for (std::size_t idx = 0; idx < full; ++idx) {
    std::size_t pop = 0;
    for (std::size_t bit = 0; bit < lambda; ++bit) pop += (idx >> bit) & 1u;
    shells[pop].push_back(idx);
  }
  std::vector<Complex> lifted(dim * dim);
  for (std::size_t kp = 0; kp < dim; ++kp) {
    for (std::size_t k = 0; k < dim; ++k) {
      Complex sum(0.0, 0.0);
      for (std::size_t r : shells[kp])
        for (std::size_t c : shells[k]) sum += tensor[r * full + c];
      const double scale =
          1.0 / std::sqrt(static_cast<double>(shells[kp].size()) * static_cast<double>(shells[k].size()));
      lifted[kp * dim + k] = sum * scale;
    }
  }
  return lifted;
}

inline double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace testsupport

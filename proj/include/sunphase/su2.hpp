#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "sunphase/matrix.hpp"

namespace sunphase {

// Euler angles for R_z(alpha) R_y(beta) R_z(gamma) with
// R_z(a) = diag(e^{ia}, e^{-ia}) and R_y(b) the real rotation by b.
struct SU2Params {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

// Lossless two-channel element:
//   [[ e^{i phi_t} cos theta, -e^{-i phi_r} sin theta ],
//    [ e^{i phi_r} sin theta,  e^{-i phi_t} cos theta ]]
// phi_t rides on the transmitted amplitude, phi_r on the reflected one.
struct BeamSplitterParams {
  double phi_t = 0.0;
  double theta = 0.0;
  double phi_r = 0.0;

  // Intensity transmission coefficient.
  double transmission() const { return std::cos(theta) * std::cos(theta); }
};

inline UnitaryMatrix su2_from_euler(const SU2Params& p) {
  const double cb = std::cos(p.beta), sb = std::sin(p.beta);
  std::vector<Complex> e = {
      std::polar(cb, p.alpha + p.gamma), -std::polar(sb, p.alpha - p.gamma),
      std::polar(sb, -(p.alpha - p.gamma)), std::polar(cb, -(p.alpha + p.gamma))};
  return UnitaryMatrix(2, std::move(e), kConstructionTol);
}

inline UnitaryMatrix beam_splitter(const BeamSplitterParams& p) {
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  std::vector<Complex> e = {std::polar(c, p.phi_t), -std::polar(s, -p.phi_r),
                            std::polar(s, p.phi_r), std::polar(c, -p.phi_t)};
  return UnitaryMatrix(2, std::move(e), kConstructionTol);
}

// Same parametrizations, related by phi_t = alpha + gamma, phi_r = gamma - alpha.
inline BeamSplitterParams bs_params_from_euler(const SU2Params& p) {
  return {p.alpha + p.gamma, p.beta, p.gamma - p.alpha};
}

inline SU2Params euler_from_bs_params(const BeamSplitterParams& p) {
  return {(p.phi_t - p.phi_r) / 2.0, p.theta, (p.phi_t + p.phi_r) / 2.0};
}

// Inverse stays in the family: B(phi_t, theta, phi_r)^{-1} = B(-phi_t, -theta, phi_r).
inline BeamSplitterParams inverse(const BeamSplitterParams& p) {
  return {-p.phi_t, -p.theta, p.phi_r};
}

// Read parameters back off an SU(2) matrix of the form
// [[a, -conj(b)], [b, conj(a)]]. The first column fixes everything:
// theta in [0, pi/2], phases are principal arguments of a and b.
inline BeamSplitterParams bs_params_from_block(const UnitaryMatrix& m) {
  if (m.dim() != 2) throw std::invalid_argument("expected a 2x2 block");
  const Complex a = m(0, 0), b = m(1, 0);
  if (std::abs(m(0, 1) + std::conj(b)) > 1e-9 || std::abs(m(1, 1) - std::conj(a)) > 1e-9)
    throw validation_error("block is not of special-unitary form [[a,-b*],[b,a*]]");
  BeamSplitterParams p;
  p.theta = std::atan2(std::abs(b), std::abs(a));
  p.phi_t = std::abs(a) <= kDegenerateTol ? 0.0 : principal_arg(a);
  p.phi_r = std::abs(b) <= kDegenerateTol ? 0.0 : principal_arg(b);
  return p;
}

// A pair of interferometer channels, 1-based, inside an n-channel device.
struct ChannelPair {
  int i;
  int j;
  int n;

  ChannelPair(int i_, int j_, int n_) : i(i_), j(j_), n(n_) {
    if (n < 2) throw std::invalid_argument("channel pair needs at least 2 channels");
    if (i < 1 || j <= i || j > n)
      throw std::invalid_argument("channel pair must satisfy 1 <= i < j <= n");
  }

  bool operator==(const ChannelPair& o) const { return i == o.i && j == o.j && n == o.n; }
};

// Place a 2x2 block on channels (pair.i, pair.j) of an n x n identity.
inline UnitaryMatrix embed(const UnitaryMatrix& block, const ChannelPair& pair) {
  if (block.dim() != 2) throw std::invalid_argument("embed expects a 2x2 block");
  const int n = pair.n;
  std::vector<Complex> e(static_cast<size_t>(n) * n, Complex(0, 0));
  for (int k = 0; k < n; ++k) e[static_cast<size_t>(k) * n + k] = 1.0;
  const int r = pair.i - 1, c = pair.j - 1;
  e[static_cast<size_t>(r) * n + r] = block(0, 0);
  e[static_cast<size_t>(r) * n + c] = block(0, 1);
  e[static_cast<size_t>(c) * n + r] = block(1, 0);
  e[static_cast<size_t>(c) * n + c] = block(1, 1);
  return UnitaryMatrix(n, std::move(e), kConstructionTol);
}

// Total photon number for a two-channel mode pair; the joint state space has
// dimension lambda + 1.
struct PhotonNumber {
  int lambda;

  explicit PhotonNumber(int l) : lambda(l) {
    if (l < 1 || l > 64) throw std::invalid_argument("photon number must be in [1, 64]");
  }

  int dim() const { return lambda + 1; }
};

namespace detail {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int t = 0; t < k; ++t) r = r * static_cast<double>(n - t) / static_cast<double>(t + 1);
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int t = 2; t <= n; ++t) r *= static_cast<double>(t);
  return r;
}

}  // namespace detail

// Lift a two-channel unitary to its action on lambda indistinguishable
// photons shared between the channels. Basis state k holds k photons in the
// second channel and lambda - k in the first, k = 0..lambda. Matrix element:
//   M_{k'k} = sqrt((lambda-k')! k'! / ((lambda-k)! k!)) *
//             sum_q C(k,q) C(lambda-k, k'-q)
//                   U00^{lambda-k-k'+q} U10^{k'-q} U01^{k-q} U11^{q}
// For lambda = 1 this returns U itself.
inline UnitaryMatrix lift_su2(const UnitaryMatrix& u, PhotonNumber photons) {
  if (u.dim() != 2) throw std::invalid_argument("lift expects a 2x2 unitary");
  const int lam = photons.lambda;
  const int d = photons.dim();
  const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);

  // powers[e] = z^e, precomputed to keep the inner loop cheap and exact for
  // the e = 0 case even when z = 0.
  auto powers = [lam](Complex z) {
    std::vector<Complex> p(static_cast<size_t>(lam) + 1);
    p[0] = 1.0;
    for (int e = 1; e <= lam; ++e) p[static_cast<size_t>(e)] = p[static_cast<size_t>(e - 1)] * z;
    return p;
  };
  const auto p00 = powers(u00), p01 = powers(u01), p10 = powers(u10), p11 = powers(u11);

  std::vector<Complex> m(static_cast<size_t>(d) * d, Complex(0, 0));
  for (int kp = 0; kp < d; ++kp) {
    for (int k = 0; k < d; ++k) {
      const double coef = std::sqrt(detail::factorial(lam - kp) * detail::factorial(kp) /
                                    (detail::factorial(lam - k) * detail::factorial(k)));
      Complex s(0, 0);
      const int qlo = std::max(0, k + kp - lam);
      const int qhi = std::min(k, kp);
      for (int q = qlo; q <= qhi; ++q) {
        const double w = detail::binomial(k, q) * detail::binomial(lam - k, kp - q);
        s += w * p00[static_cast<size_t>(lam - k - kp + q)] * p10[static_cast<size_t>(kp - q)] *
             p01[static_cast<size_t>(k - q)] * p11[static_cast<size_t>(q)];
      }
      m[static_cast<size_t>(kp) * d + k] = coef * s;
    }
  }
  // Roundoff in the binomial sums grows with lambda; allow for it without
  // letting a genuinely broken result through.
  const double tol = std::max(kValidationTol, 1e-12 * static_cast<double>(lam));
  return UnitaryMatrix(d, std::move(m), tol);
}

}  // namespace sunphase

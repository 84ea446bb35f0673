#pragma once

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "sunphase/matrix.hpp"
#include "sunphase/su2.hpp"

namespace sunphase {

enum class SU2FactorKind { euler, beamsplitter, real_rotation };

inline std::string kind_name(SU2FactorKind k) {
  switch (k) {
    case SU2FactorKind::euler: return "euler";
    case SU2FactorKind::beamsplitter: return "beamsplitter";
    case SU2FactorKind::real_rotation: return "real_rotation";
  }
  return "unknown";
}

inline SU2FactorKind kind_from_name(const std::string& s) {
  if (s == "euler") return SU2FactorKind::euler;
  if (s == "beamsplitter") return SU2FactorKind::beamsplitter;
  if (s == "real_rotation") return SU2FactorKind::real_rotation;
  throw std::invalid_argument("unknown factor kind '" + s + "'");
}

// One SU(2) factor acting on a channel pair. Parameter meaning depends on the
// kind: euler holds (alpha, beta, gamma), beamsplitter holds
// (phi_t, theta, phi_r), real_rotation holds (theta, 0, 0).
struct SU2Factor {
  ChannelPair pair;
  SU2FactorKind kind;
  std::array<double, 3> params;

  UnitaryMatrix block2() const {
    switch (kind) {
      case SU2FactorKind::euler: return su2_from_euler({params[0], params[1], params[2]});
      case SU2FactorKind::beamsplitter: return beam_splitter({params[0], params[1], params[2]});
      case SU2FactorKind::real_rotation: return beam_splitter({0.0, params[0], 0.0});
    }
    throw std::invalid_argument("unknown factor kind");
  }

  UnitaryMatrix materialize() const { return embed(block2(), pair); }
};

// Ordered product of SU(2) factors on n channels. factors[0] is the leftmost
// matrix in the product, i.e. the one applied last to a state.
struct FactorChain {
  int n;
  std::vector<SU2Factor> factors;
};

inline UnitaryMatrix recompose(const FactorChain& chain) {
  if (chain.n < 2) throw std::invalid_argument("chain needs at least 2 channels");
  UnitaryMatrix p = UnitaryMatrix::identity(chain.n);
  for (const SU2Factor& f : chain.factors) {
    if (f.pair.n != chain.n) throw std::invalid_argument("factor channel count mismatches chain");
    p = p * f.materialize();
  }
  return p;
}

struct ElementCount {
  std::map<std::pair<int, int>, int> by_pair;
  std::map<SU2FactorKind, int> by_kind;
  int total = 0;
};

inline ElementCount element_count(const FactorChain& chain) {
  ElementCount c;
  for (const SU2Factor& f : chain.factors) {
    ++c.by_pair[{f.pair.i, f.pair.j}];
    ++c.by_kind[f.kind];
    ++c.total;
  }
  return c;
}

namespace detail {

// canonical SU(2) block [[a, -conj(b)], [b, conj(a)]]
inline UnitaryMatrix su2_block(Complex a, Complex b) {
  return UnitaryMatrix(2, {a, -std::conj(b), b, std::conj(a)}, 1e-9);
}

inline SU2Factor factor_from_block(const UnitaryMatrix& block, const ChannelPair& pair) {
  const BeamSplitterParams p = bs_params_from_block(block);
  return SU2Factor{pair, SU2FactorKind::beamsplitter, {p.phi_t, p.theta, p.phi_r}};
}

inline void require_special_unitary(const UnitaryMatrix& u) {
  if (!u.is_special())
    throw validation_error("matrix determinant is not 1; apply special_unitarize first");
}

inline void check_residual(const UnitaryMatrix& got, const UnitaryMatrix& want, const char* what) {
  const double r = max_entry_distance(got, want);
  if (r > 1e-9) throw consistency_error(std::string(what) + " does not reproduce the input", r);
}

}  // namespace detail

// Order in which matrix entries get nulled during the general decomposition.
// Only the classic column-by-column, bottom-up sweep is implemented.
enum class NullingOrder { column_bottom_up };

// Factor an n x n special unitary into exactly n(n-1)/2 SU(2) blocks on
// adjacent channel pairs. Sweeping columns left to right, each below-diagonal
// entry is nulled by a rotation acting on its row and the row above; because
// every step leaves the new leading entry real and nonnegative, the sweep
// terminates on the identity with no leftover diagonal phases. A structurally
// zero pair contributes an all-zero-parameter factor, so the chain shape
// depends only on n.
inline FactorChain decompose_sun(const UnitaryMatrix& u,
                                 NullingOrder order = NullingOrder::column_bottom_up) {
  (void)order;
  detail::require_special_unitary(u);
  const int n = u.dim();
  if (n < 2) throw std::invalid_argument("decomposition needs dimension >= 2");

  std::vector<Complex> w = u.entries();
  auto at = [&w, n](int r, int c) -> Complex& { return w[static_cast<size_t>(r) * n + c]; };

  FactorChain chain{n, {}};
  for (int c = 0; c < n - 1; ++c) {
    for (int r = n - 1; r > c; --r) {
      const Complex x = at(r - 1, c), y = at(r, c);
      const double rho = std::sqrt(std::norm(x) + std::norm(y));
      const ChannelPair pair(r, r + 1, n);
      if (rho <= kDegenerateTol) {
        chain.factors.push_back(SU2Factor{pair, SU2FactorKind::beamsplitter, {0.0, 0.0, 0.0}});
        continue;
      }
      // Left-multiply rows (r-1, r) by G = [[x*, y*], [-y, x]] / rho, sending
      // (x, y) to (rho, 0). The emitted factor is G's inverse.
      const Complex a = std::conj(x) / rho, b = std::conj(y) / rho;
      for (int c2 = c; c2 < n; ++c2) {
        const Complex top = at(r - 1, c2), bot = at(r, c2);
        at(r - 1, c2) = a * top + b * bot;
        at(r, c2) = -std::conj(b) * top + std::conj(a) * bot;
      }
      at(r - 1, c) = rho;
      at(r, c) = 0.0;
      chain.factors.push_back(detail::factor_from_block(detail::su2_block(x / rho, y / rho), pair));
    }
  }
  detail::check_residual(recompose(chain), u, "general decomposition");
  return chain;
}

namespace detail {

// Three-factor ladder on channels {2,3,4} of a four-channel system, pairs
// (2,3), (3,4), (2,3), whose product sends channel 2 to the unit vector
// (m2, m3, m4) on those channels. Undetermined rotations default to the
// identity, so the ladder degrades gracefully when components vanish.
inline std::array<SU2Factor, 3> solve_v3_pattern(Complex m2, Complex m3, Complex m4) {
  const double nrm = std::sqrt(std::norm(m2) + std::norm(m3) + std::norm(m4));
  if (std::abs(nrm - 1.0) > 1e-8)
    throw validation_error("ladder target is not a unit vector");
  const ChannelPair p23(2, 3, 4), p34(3, 4, 4);

  const double r = std::sqrt(std::norm(m2) + std::norm(m3));
  SU2Factor f1 = r <= kDegenerateTol
                     ? SU2Factor{p23, SU2FactorKind::beamsplitter, {0.0, 0.0, 0.0}}
                     : factor_from_block(su2_block(m2 / r, m3 / r), p23);
  SU2Factor f2 = std::abs(m4) <= kDegenerateTol
                     ? SU2Factor{p34, SU2FactorKind::beamsplitter, {0.0, 0.0, 0.0}}
                     : factor_from_block(su2_block(Complex(0, 0), m4 / std::abs(m4)), p34);
  SU2Factor f3{p23, SU2FactorKind::real_rotation, {std::atan2(std::abs(m4), r), 0.0, 0.0}};

  const UnitaryMatrix v = f1.materialize() * f2.materialize() * f3.materialize();
  const double resid = std::sqrt(std::norm(v(1, 1) - m2) + std::norm(v(2, 1) - m3) +
                                 std::norm(v(3, 1) - m4) + std::norm(v(0, 1)));
  if (resid > 1e-9) throw consistency_error("ladder does not reach its target", resid);
  return {f1, f2, f3};
}

// Same ladder shape, but with the phases pinned to zero on the reflected
// ports: B(phi_A, theta_A, 0) B(phi_B, theta_B, 0) B(0, theta_C, 0). Solvable
// when m3 and m4 are real (m4 nonnegative), which is what the canonical
// triangle construction delivers.
inline std::array<SU2Factor, 3> solve_v2tilde_pattern(Complex u2, Complex u3, Complex u4) {
  if (std::abs(u3.imag()) > 1e-9 || std::abs(u4.imag()) > 1e-9)
    throw validation_error("constrained ladder needs real third and fourth components");
  if (u4.real() < -1e-9)
    throw validation_error("constrained ladder needs a nonnegative fourth component");
  const double nrm = std::sqrt(std::norm(u2) + std::norm(u3) + std::norm(u4));
  if (std::abs(nrm - 1.0) > 1e-8)
    throw validation_error("ladder target is not a unit vector");

  const double u3r = u3.real();
  const double u4r = std::max(u4.real(), 0.0);
  const double h = std::hypot(std::abs(u2), u3r);

  double phi_a = 0.0, theta_a = 0.0;
  if (h > kDegenerateTol) {
    theta_a = std::atan2(std::abs(u3r), std::abs(u2));
    const double base = std::abs(u2) <= kDegenerateTol ? 0.0 : principal_arg(u2);
    phi_a = u3r >= 0.0 ? base : canonical_angle(base - std::numbers::pi);
  }
  // Component 2 after undoing the A rotation: real, +h or -h depending on
  // which half-plane the pair (|u2|, u3r) landed in.
  const Complex u2p_c = std::polar(1.0, -phi_a) * std::cos(theta_a) * u2 + std::sin(theta_a) * u3r;
  const double u2p = u2p_c.real();
  const double theta_b = u4r <= 1e-12 ? 0.0 : std::numbers::pi / 2.0;
  const double theta_c = std::atan2(u4r, u2p);

  const ChannelPair p23(2, 3, 4), p34(3, 4, 4);
  SU2Factor fa{p23, SU2FactorKind::beamsplitter, {phi_a, theta_a, 0.0}};
  SU2Factor fb{p34, SU2FactorKind::beamsplitter, {0.0, theta_b, 0.0}};
  SU2Factor fc{p23, SU2FactorKind::real_rotation, {theta_c, 0.0, 0.0}};

  const UnitaryMatrix v = fa.materialize() * fb.materialize() * fc.materialize();
  const double resid = std::sqrt(std::norm(v(1, 1) - u2) + std::norm(v(2, 1) - u3) +
                                 std::norm(v(3, 1) - u4) + std::norm(v(0, 1)));
  if (resid > 1e-9) throw consistency_error("constrained ladder does not reach its target", resid);
  return {fa, fb, fc};
}

}  // namespace detail

// Fixed three-factor form for a 3x3 special unitary:
//   U = A_(2,3) * M_(1,2) * B_(2,3),  M = B(arg U00, arccos|U00|, 0).
// A comes from the first column, B from the first row; the middle factor is
// then forced by unitarity. Ambiguous phases (vanishing pivots) default to 0.
inline FactorChain decompose_su3_pattern(const UnitaryMatrix& u) {
  if (u.dim() != 3) throw std::invalid_argument("pattern decomposition expects dimension 3");
  detail::require_special_unitary(u);
  const ChannelPair p12(1, 2, 3), p23(2, 3, 3);

  // Taking sin t from the sub-column norm rather than from arccos|U00| keeps
  // the middle factor accurate when |U00| is close to 1.
  const double st_col = std::sqrt(std::norm(u(1, 0)) + std::norm(u(2, 0)));
  const double st_row = std::sqrt(std::norm(u(0, 1)) + std::norm(u(0, 2)));
  const double t = std::atan2(st_col, std::abs(u(0, 0)));
  const double alpha = std::abs(u(0, 0)) <= kDegenerateTol ? 0.0 : principal_arg(u(0, 0));

  FactorChain chain{3, {}};
  if (st_col <= kDegenerateTol) {
    // First row and column are already channel 1 up to a phase; everything
    // else lives in the (2,3) block.
    chain.factors.push_back(SU2Factor{p23, SU2FactorKind::beamsplitter, {0.0, 0.0, 0.0}});
    chain.factors.push_back(SU2Factor{p12, SU2FactorKind::beamsplitter, {alpha, t, 0.0}});
    const UnitaryMatrix m = embed(beam_splitter({alpha, t, 0.0}), p12);
    const UnitaryMatrix rest = m.adjoint() * u;
    chain.factors.push_back(detail::factor_from_block(
        detail::su2_block(rest(1, 1), rest(2, 1)), p23));
  } else {
    chain.factors.push_back(detail::factor_from_block(
        detail::su2_block(u(1, 0) / st_col, u(2, 0) / st_col), p23));
    chain.factors.push_back(SU2Factor{p12, SU2FactorKind::beamsplitter, {alpha, t, 0.0}});
    chain.factors.push_back(detail::factor_from_block(
        detail::su2_block(-u(0, 1) / st_row, std::conj(u(0, 2)) / st_row), p23));
  }
  detail::check_residual(recompose(chain), u, "three-factor pattern");
  return chain;
}

// Fixed seven-factor form for a 4x4 special unitary, pairs
// (2,3) (3,4) (2,3) (1,2) (2,3) (3,4) (2,3). The leading three factors steer
// channel 2 onto the first column's lower part, the middle factor carries the
// (1,2) rotation, and the trailing three factor the leftover block on
// channels {2,3,4}.
inline FactorChain decompose_su4_pattern(const UnitaryMatrix& u) {
  if (u.dim() != 4) throw std::invalid_argument("pattern decomposition expects dimension 4");
  detail::require_special_unitary(u);
  const ChannelPair p12(1, 2, 4), p23(2, 3, 4), p34(3, 4, 4);

  const double st_col =
      std::sqrt(std::norm(u(1, 0)) + std::norm(u(2, 0)) + std::norm(u(3, 0)));
  const double t = std::atan2(st_col, std::abs(u(0, 0)));
  const double alpha = std::abs(u(0, 0)) <= kDegenerateTol ? 0.0 : principal_arg(u(0, 0));

  FactorChain chain{4, {}};
  if (st_col <= kDegenerateTol) {
    chain.factors.push_back(SU2Factor{p23, SU2FactorKind::beamsplitter, {0.0, 0.0, 0.0}});
    chain.factors.push_back(SU2Factor{p34, SU2FactorKind::beamsplitter, {0.0, 0.0, 0.0}});
    chain.factors.push_back(SU2Factor{p23, SU2FactorKind::beamsplitter, {0.0, 0.0, 0.0}});
  } else {
    const auto lead =
        detail::solve_v3_pattern(u(1, 0) / st_col, u(2, 0) / st_col, u(3, 0) / st_col);
    for (const SU2Factor& f : lead) chain.factors.push_back(f);
  }
  chain.factors.push_back(SU2Factor{p12, SU2FactorKind::beamsplitter, {alpha, t, 0.0}});

  // Y = M^dag K1^dag U acts as the identity on channel 1; factor its
  // {2,3,4} block as G1_(2,3) G2_(3,4) G3_(2,3).
  UnitaryMatrix y = embed(beam_splitter({alpha, t, 0.0}), p12).adjoint();
  for (int k = 2; k >= 0; --k) y = y * chain.factors[static_cast<size_t>(k)].materialize().adjoint();
  y = y * u;

  // G3 nulls Y(3,1) from the right, leaving Y(3,2) real nonnegative. If the
  // entry is already zero the factor is the identity.
  const Complex w1 = y(3, 1), w2 = y(3, 2);
  SU2Factor g3{p23, SU2FactorKind::beamsplitter, {0.0, 0.0, 0.0}};
  if (std::abs(w1) > kDegenerateTol) {
    const double sig = std::sqrt(std::norm(w1) + std::norm(w2));
    g3 = detail::factor_from_block(detail::su2_block(std::conj(w2) / sig, w1 / sig), p23);
  }
  const UnitaryMatrix z = y * g3.materialize().adjoint();

  // Column 2 of Z now lives on channels {2,3}; read G1 straight off it.
  const Complex a1 = z(1, 1), b1 = z(2, 1);
  const double rho = std::sqrt(std::norm(a1) + std::norm(b1));
  SU2Factor g1 = rho <= kDegenerateTol
                     ? SU2Factor{p23, SU2FactorKind::beamsplitter, {0.0, 0.0, 0.0}}
                     : detail::factor_from_block(detail::su2_block(a1 / rho, b1 / rho), p23);

  const UnitaryMatrix rest = g1.materialize().adjoint() * z;
  SU2Factor g2 = detail::factor_from_block(
      UnitaryMatrix(2, {rest(2, 2), rest(2, 3), rest(3, 2), rest(3, 3)}, 1e-8), p34);

  chain.factors.push_back(g1);
  chain.factors.push_back(g2);
  chain.factors.push_back(g3);
  detail::check_residual(recompose(chain), u, "seven-factor pattern");
  return chain;
}

}  // namespace sunphase

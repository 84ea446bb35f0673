#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "sunphase/matrix.hpp"
#include "sunphase/su2.hpp"

namespace sunphase {

// Rotation by s in the (1,2) channel plane of an n-channel system. Every
// geodesic evolution is this rotation conjugated into the right frame.
inline UnitaryMatrix reference_rotation(double s, int dim) {
  return embed(beam_splitter({0.0, s, 0.0}), ChannelPair(1, 2, dim));
}

struct RephaseResult {
  StateVector state;
  double removed_phase;
};

// Multiply b by a phase so that <a|b> becomes real and nonnegative. The
// removed phase is arg<a|b>; orthogonal states have no well-defined rephasing.
inline RephaseResult leg_rephase(const StateVector& a, const StateVector& b) {
  const Complex ov = inner_product(a, b);
  if (std::abs(ov) <= kDegenerateTol)
    throw degenerate_error("cannot rephase against an orthogonal state");
  const double delta = principal_arg(ov);
  return {phase_shifted(b, -delta), delta};
}

namespace detail {

// Overlap <a|b> must already be real and nonnegative (strictly below 1) for
// the arc between a and b to be the canonical one. Returns the real overlap.
inline double checked_real_overlap(const StateVector& a, const StateVector& b) {
  const Complex ov = inner_product(a, b);
  if (std::abs(ov.imag()) > kValidationTol)
    throw validation_error("endpoint overlap is not real; rephase the endpoint first");
  if (ov.real() < -kValidationTol)
    throw validation_error("endpoint overlap is negative; rephase the endpoint first");
  if (ov.real() >= 1.0 - kDegenerateTol)
    throw degenerate_error("endpoints coincide; arc is degenerate");
  return std::min(std::max(ov.real(), 0.0), 1.0);
}

// Unit vector along the component of b orthogonal to a. Normalizing the
// residual explicitly (rather than dividing by sqrt(1 - c^2)) keeps the
// direction accurate when the endpoints are nearly parallel.
inline std::vector<Complex> orthogonal_direction(const StateVector& a, const StateVector& b) {
  const Complex ov = inner_product(a, b);
  std::vector<Complex> r(static_cast<size_t>(a.dim()));
  double n2 = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    r[static_cast<size_t>(i)] = b[i] - a[i] * ov;
    n2 += std::norm(r[static_cast<size_t>(i)]);
  }
  const double n = std::sqrt(n2);
  if (n <= kDegenerateTol) throw degenerate_error("endpoints are parallel; no arc direction");
  for (Complex& z : r) z /= n;
  return r;
}

}  // namespace detail

// Point at arc length s along the great-circle arc from a toward b:
// psi(s) = a cos s + w sin s, where w is the unit vector along b's component
// orthogonal to a. Requires <a|b> real and nonnegative.
inline StateVector geodesic_curve(const StateVector& a, const StateVector& b, double s) {
  if (a.dim() != b.dim()) throw std::invalid_argument("arc endpoints need equal dimensions");
  detail::checked_real_overlap(a, b);
  const std::vector<Complex> w = detail::orthogonal_direction(a, b);
  const double c = std::cos(s), sn = std::sin(s);
  std::vector<Complex> out(static_cast<size_t>(a.dim()));
  for (int i = 0; i < a.dim(); ++i) out[static_cast<size_t>(i)] = a[i] * c + w[static_cast<size_t>(i)] * sn;
  return StateVector(std::move(out));
}

// One side of a triangle: the arc from start to end, its length s_end, and
// the one-parameter family of unitaries that slides states along it. The
// frame V maps channel 1 to start and channel 2 to the arc's orthogonal
// direction, so U(s) = V R_s V^dag.
struct GeodesicLeg {
  StateVector start;
  StateVector end;
  double s_end;
  UnitaryMatrix frame;
  UnitaryMatrix evolution;

  UnitaryMatrix evolution_at(double s) const {
    return frame * reference_rotation(s, frame.dim()) * frame.adjoint();
  }
};

// Build the geodesic evolution between two states with real nonnegative
// overlap. The frame's remaining columns come from Gram-Schmidt over the
// standard basis, choosing at each step the basis vector with the largest
// residual (ties broken toward the lowest index); the last column is scaled
// to make the frame special. The evolution itself does not depend on the
// completion: U(s) acts as the identity on the orthogonal complement of
// span{start, direction}.
inline GeodesicLeg geodesic_evolution(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("arc endpoints need equal dimensions");
  const int n = a.dim();
  const double c = detail::checked_real_overlap(a, b);
  const double s_end = std::acos(c);

  std::vector<std::vector<Complex>> cols;
  cols.push_back(a.amplitudes());
  cols.push_back(detail::orthogonal_direction(a, b));

  auto project_out = [n](std::vector<Complex>& v, const std::vector<Complex>& col) {
    Complex ip(0, 0);
    for (int i = 0; i < n; ++i) ip += std::conj(col[static_cast<size_t>(i)]) * v[static_cast<size_t>(i)];
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] -= ip * col[static_cast<size_t>(i)];
  };

  while (static_cast<int>(cols.size()) < n) {
    int best = -1;
    double best_norm = -1.0;
    std::vector<Complex> best_vec;
    for (int j = 0; j < n; ++j) {
      std::vector<Complex> v(static_cast<size_t>(n), Complex(0, 0));
      v[static_cast<size_t>(j)] = 1.0;
      for (const auto& col : cols) project_out(v, col);
      double n2 = 0.0;
      for (const Complex& z : v) n2 += std::norm(z);
      const double nn = std::sqrt(n2);
      if (nn > best_norm + kDegenerateTol) {
        best_norm = nn;
        best = j;
        best_vec = std::move(v);
      }
    }
    if (best < 0 || best_norm <= kDegenerateTol)
      throw consistency_error("orthonormal completion failed", best_norm);
    // Second orthogonalization pass tightens the result to working precision.
    for (const auto& col : cols) project_out(best_vec, col);
    double n2 = 0.0;
    for (const Complex& z : best_vec) n2 += std::norm(z);
    const double nn = std::sqrt(n2);
    for (Complex& z : best_vec) z /= nn;
    cols.push_back(std::move(best_vec));
  }

  std::vector<Complex> fe(static_cast<size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int col = 0; col < n; ++col)
      fe[static_cast<size_t>(r) * n + col] = cols[static_cast<size_t>(col)][static_cast<size_t>(r)];
  UnitaryMatrix frame0(n, std::move(fe), kValidationTol);

  // Fold the determinant's phase into the last column so the frame lands in
  // the special unitary group.
  const Complex d = frame0.determinant();
  std::vector<Complex> fe2 = frame0.entries();
  for (int r = 0; r < n; ++r) fe2[static_cast<size_t>(r) * n + (n - 1)] *= std::conj(d);
  UnitaryMatrix frame(n, std::move(fe2), kValidationTol);

  UnitaryMatrix evolution = frame * reference_rotation(s_end, n) * frame.adjoint();
  return GeodesicLeg{a, b, s_end, frame, evolution};
}

// Arc lengths and vertex angles that pin down a geodesic triangle.
struct TriangleParamsSU3 {
  double s1;
  double s2;
  double alpha;
  double beta;
};

struct TriangleParamsSU4 {
  double s1;
  double s2;
  double alpha;
  double beta1;
  double beta2;
  double beta3;
};

namespace detail {

inline void check_arc_lengths(double s1, double s2) {
  const double half_pi = std::numbers::pi / 2.0;
  if (!(s1 > 0.0 && s1 <= half_pi) || !(s2 > 0.0 && s2 <= half_pi))
    throw std::invalid_argument("arc lengths must lie in (0, pi/2]");
}

}  // namespace detail

// Canonical vertex triple for the three-channel triangle: the first vertex is
// channel 1, the second sits in the (1,2) plane at arc length s1, and the
// third is reached from the second along an arc of length s2 whose initial
// direction is tilted by alpha and beta.
inline std::array<StateVector, 3> triangle_vertices_su3(const TriangleParamsSU3& p) {
  detail::check_arc_lengths(p.s1, p.s2);
  const double c1 = std::cos(p.s1), s1 = std::sin(p.s1);
  const double c2 = std::cos(p.s2), s2 = std::sin(p.s2);
  const double cb = std::cos(p.beta), sb = std::sin(p.beta);
  const Complex ea = std::polar(1.0, p.alpha);
  StateVector v1 = StateVector::basis(3, 0);
  StateVector v2({Complex(c1, 0), Complex(s1, 0), Complex(0, 0)});
  StateVector v3({c1 * c2 - ea * (s1 * s2 * cb), s1 * c2 + ea * (c1 * s2 * cb),
                  Complex(sb * s2, 0)});
  return {v1, v2, v3};
}

// Four-channel version. The third vertex direction involves three tilt
// angles; setting beta3 = 0 collapses it into the three-channel triangle with
// beta = pi - (beta1 + beta2).
inline std::array<StateVector, 3> triangle_vertices_su4(const TriangleParamsSU4& p) {
  detail::check_arc_lengths(p.s1, p.s2);
  const double c1 = std::cos(p.s1), s1 = std::sin(p.s1);
  const double c2 = std::cos(p.s2), s2 = std::sin(p.s2);
  const double cb1 = std::cos(p.beta1), sb1 = std::sin(p.beta1);
  const double cb2 = std::cos(p.beta2), sb2 = std::sin(p.beta2);
  const double cb3 = std::cos(p.beta3), sb3 = std::sin(p.beta3);
  const double w = -cb1 * cb2 + sb1 * sb2 * cb3;
  const double cc = cb1 * sb2 + sb1 * cb2 * cb3;
  const double dd = sb1 * sb3;
  const Complex ea = std::polar(1.0, p.alpha);
  StateVector v1 = StateVector::basis(4, 0);
  StateVector v2({Complex(c1, 0), Complex(s1, 0), Complex(0, 0), Complex(0, 0)});
  StateVector v3({c1 * c2 - ea * (s1 * s2 * w), s1 * c2 + ea * (c1 * s2 * w),
                  Complex(cc * s2, 0), Complex(dd * s2, 0)});
  return {v1, v2, v3};
}

// A closed triangle of geodesic arcs. Legs 1 and 2 run between the stored
// vertices; leg 3 ends on the first vertex times a phase, and that phase is
// the geometric phase of the loop.
struct GeodesicTriangle {
  std::array<StateVector, 3> vertices;
  std::array<GeodesicLeg, 3> legs;
  int group_dim;
};

namespace detail {

// Keep the vertex bit-exact when its overlap with the leg start is already
// real and nonnegative (as the canonical vertex formulas guarantee), rephase
// it otherwise.
inline StateVector align_for_leg(const StateVector& from, const StateVector& to) {
  const Complex ov = inner_product(from, to);
  if (std::abs(ov) >= 1.0 - kDegenerateTol)
    throw degenerate_error("adjacent vertices coincide");
  if (std::abs(ov.imag()) <= 1e-12 && ov.real() > -1e-12) return to;
  return leg_rephase(from, to).state;
}

}  // namespace detail

inline GeodesicTriangle triangle_from_vertices(const StateVector& v1, const StateVector& v2,
                                               const StateVector& v3) {
  if (v1.dim() != v2.dim() || v2.dim() != v3.dim())
    throw std::invalid_argument("triangle vertices need equal dimensions");
  if (v1.dim() < 2) throw std::invalid_argument("triangle needs dimension >= 2");

  const StateVector b = detail::align_for_leg(v1, v2);
  const StateVector c = detail::align_for_leg(b, v3);
  // The closing leg always rephases: its removed phase is where the loop's
  // geometric phase shows up.
  const StateVector closing_target = leg_rephase(c, v1).state;

  GeodesicLeg l1 = geodesic_evolution(v1, b);
  GeodesicLeg l2 = geodesic_evolution(b, c);
  GeodesicLeg l3 = geodesic_evolution(c, closing_target);
  return GeodesicTriangle{{v1, b, c}, {std::move(l1), std::move(l2), std::move(l3)}, v1.dim()};
}

inline GeodesicTriangle triangle_su3(const TriangleParamsSU3& p) {
  const auto v = triangle_vertices_su3(p);
  return triangle_from_vertices(v[0], v[1], v[2]);
}

inline GeodesicTriangle triangle_su4(const TriangleParamsSU4& p) {
  const auto v = triangle_vertices_su4(p);
  return triangle_from_vertices(v[0], v[1], v[2]);
}

// Same loop walked the other way. Geometric phase flips sign.
inline GeodesicTriangle reversed_triangle(const GeodesicTriangle& t) {
  return triangle_from_vertices(t.vertices[0], t.vertices[2], t.vertices[1]);
}

// Angles (xi, eta, tau, chi) such that a three-channel unit vector with real
// nonnegative third component reads
//   (e^{i xi} cos eta, e^{i(xi+chi)} sin eta cos tau, sin eta sin tau),
// with eta, tau in [0, pi/2]. Undetermined angles are set to zero.
struct ReparamPsi3 {
  double xi;
  double eta;
  double tau;
  double chi;
};

inline ReparamPsi3 reparametrize_psi3(const StateVector& v) {
  if (v.dim() != 3) throw std::invalid_argument("reparametrization expects dimension 3");
  if (std::abs(v[2].imag()) > kValidationTol || v[2].real() < -kValidationTol)
    throw validation_error("third component must be real and nonnegative");
  const double a1 = std::min(std::abs(v[0]), 1.0);
  ReparamPsi3 r;
  r.eta = std::acos(a1);
  r.xi = a1 <= kDegenerateTol ? 0.0 : principal_arg(v[0]);
  const double se = std::sin(r.eta);
  if (se <= kDegenerateTol) {
    r.tau = 0.0;
    r.chi = 0.0;
    return r;
  }
  const double third = std::max(v[2].real(), 0.0);
  r.tau = std::atan2(third, std::abs(v[1]));
  r.chi = std::abs(v[1]) <= kDegenerateTol ? 0.0 : canonical_angle(principal_arg(v[1]) - r.xi);
  return r;
}

struct GeodesicCheck {
  bool is_geodesic;
  double max_deviation;
};

// Compare a path against the canonical arc between its endpoints at evenly
// spaced parameter values (endpoints included). The comparison is phase
// sensitive: the arc's lift is the one with constant real overlap against the
// start, so a path that wanders in phase fails even if it tracks the same ray.
inline GeodesicCheck is_geodesic(const StateVector& start, const StateVector& end, double s_end,
                                 const std::function<StateVector(double)>& path, int samples = 32,
                                 double tol = 1e-8) {
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double s = s_end * static_cast<double>(k) / static_cast<double>(samples - 1);
    const StateVector expect = geodesic_curve(start, end, s);
    worst = std::max(worst, state_distance(path(s), expect));
  }
  return {worst <= tol, worst};
}

inline GeodesicCheck is_geodesic(const GeodesicLeg& leg, int samples = 32, double tol = 1e-8) {
  return is_geodesic(
      leg.start, leg.end, leg.s_end,
      [&leg](double s) { return apply(leg.evolution_at(s), leg.start); }, samples, tol);
}

}  // namespace sunphase

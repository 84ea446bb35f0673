#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "sunphase/decompose.hpp"
#include "sunphase/geodesics.hpp"
#include "sunphase/matrix.hpp"
#include "sunphase/su2.hpp"

namespace sunphase {

// One physical element: a two-channel coupler with fixed parameters sitting
// on a channel pair of the device.
struct OpticalElement {
  ChannelPair pair;
  BeamSplitterParams params;
  std::string label;

  UnitaryMatrix materialize() const { return embed(beam_splitter(params), pair); }
};

// An n-channel device as an ordered element list. elements[0] is applied
// first; the transfer matrix is the reverse-order product.
struct Circuit {
  int n;
  std::vector<OpticalElement> elements;
  std::vector<std::string> input_ports;
  std::vector<std::string> output_ports;
};

namespace detail {

inline Circuit make_circuit(int n, std::vector<OpticalElement> elements) {
  Circuit c{n, std::move(elements), {}, {}};
  for (const OpticalElement& e : c.elements)
    if (e.pair.n != n) throw std::invalid_argument("element channel count mismatches circuit");
  for (int k = 1; k <= n; ++k) {
    c.input_ports.push_back(std::to_string(k) + "_in");
    c.output_ports.push_back(std::to_string(k) + "_out");
  }
  return c;
}

}  // namespace detail

inline UnitaryMatrix transfer_matrix(const Circuit& c) {
  UnitaryMatrix t = UnitaryMatrix::identity(c.n);
  for (const OpticalElement& e : c.elements) t = e.materialize() * t;
  return t;
}

inline StateVector simulate_single_photon(const Circuit& c, const StateVector& input) {
  if (input.dim() != c.n) throw std::invalid_argument("input dimension mismatches circuit");
  StateVector s = input;
  for (const OpticalElement& e : c.elements) s = apply(e.materialize(), s);
  return s;
}

// Push a number state of lambda photons through one element: the element's
// block acts on the (lambda+1)-dimensional space spanned by the photon
// splittings across its two channels.
inline StateVector simulate_two_channel_multiphoton(const OpticalElement& element,
                                                    PhotonNumber photons,
                                                    const StateVector& input) {
  if (input.dim() != photons.dim())
    throw std::invalid_argument("input dimension must be photon number + 1");
  return apply(lift_su2(beam_splitter(element.params), photons), input);
}

namespace detail {

inline void check_closing_vertex(Complex first_component) {
  if (std::abs(first_component) >= 1.0 - kDegenerateTol)
    throw degenerate_error("third vertex coincides with the first; loop is degenerate");
  if (std::abs(first_component) <= kDegenerateTol)
    throw degenerate_error("third vertex is orthogonal to the first; loop phase is undefined");
}

}  // namespace detail

// Nine-element three-channel interferometer walking a state around the
// geodesic triangle given by p. The three arc rotations sit on channels
// (1,2); each is conjugated into place by the frame elements around it. With
// the default arc settings the device maps channel 1 to e^{i phi_g} times
// channel 1, phi_g the loop's geometric phase. Passing partial arc values
// moves the state only partway along the corresponding legs.
inline Circuit build_su3_circuit(const TriangleParamsSU3& p, double path_s1, double path_s2,
                                 double path_s3) {
  const auto v = triangle_vertices_su3(p);
  detail::check_closing_vertex(v[2][0]);
  const ReparamPsi3 r = reparametrize_psi3(v[2]);

  const ChannelPair p12(1, 2, 3), p23(2, 3, 3);
  auto rot = [&p12](double s, const char* label) {
    return OpticalElement{p12, {0.0, s, 0.0}, label};
  };
  std::vector<OpticalElement> e;
  e.push_back(rot(path_s1, "arc1"));
  e.push_back(rot(-p.s1, "frame2_undo_arc"));
  e.push_back(OpticalElement{p23, {-p.alpha, -p.beta, 0.0}, "frame2_undo_tilt"});
  e.push_back(rot(path_s2, "arc2"));
  e.push_back(OpticalElement{p23, {p.alpha, p.beta, 0.0}, "frame2_redo_tilt"});
  e.push_back(rot(p.s1, "frame2_redo_arc"));
  e.push_back(OpticalElement{p23, {-r.chi, -r.tau, -r.xi}, "frame3_undo"});
  e.push_back(rot(-path_s3, "arc3"));
  e.push_back(OpticalElement{p23, {r.chi, r.tau, -r.xi}, "frame3_redo"});
  return detail::make_circuit(3, std::move(e));
}

inline Circuit build_su3_circuit(const TriangleParamsSU3& p) {
  const auto v = triangle_vertices_su3(p);
  detail::check_closing_vertex(v[2][0]);
  const double s3 = std::acos(std::min(std::abs(v[2][0]), 1.0));
  return build_su3_circuit(p, p.s1, p.s2, s3);
}

// Seventeen-element four-channel version. The second leg's frame needs a
// three-element ladder on channels (2,3),(3,4),(2,3) instead of the single
// tilt, and so does the closing leg's.
inline Circuit build_su4_circuit(const TriangleParamsSU4& p, double path_s1, double path_s2,
                                 double path_s3) {
  const auto v = triangle_vertices_su4(p);
  detail::check_closing_vertex(v[2][0]);

  // Second-leg direction pulled back through the first arc: components on
  // channels 2..4 are e^{i alpha} W, C, D with channel 1 empty.
  const double cb1 = std::cos(p.beta1), sb1 = std::sin(p.beta1);
  const double cb2 = std::cos(p.beta2), sb2 = std::sin(p.beta2);
  const double cb3 = std::cos(p.beta3), sb3 = std::sin(p.beta3);
  const double w = -cb1 * cb2 + sb1 * sb2 * cb3;
  const double cc = cb1 * sb2 + sb1 * cb2 * cb3;
  const double dd = sb1 * sb3;
  const auto ladder2 =
      detail::solve_v2tilde_pattern(std::polar(1.0, p.alpha) * w, Complex(cc, 0), Complex(dd, 0));

  // Closing-leg direction: the third vertex with its first component's phase
  // stripped, restricted to channels 2..4 and normalized.
  const double xi = principal_arg(v[2][0]);
  const double s_close =
      std::sqrt(std::norm(v[2][1]) + std::norm(v[2][2]) + std::norm(v[2][3]));
  const Complex strip = std::polar(1.0, -xi);
  const auto ladder3 = detail::solve_v3_pattern(v[2][1] * strip / s_close,
                                                v[2][2] * strip / s_close,
                                                v[2][3] * strip / s_close);

  const ChannelPair p12(1, 2, 4);
  auto rot = [&p12](double s, const char* label) {
    return OpticalElement{p12, {0.0, s, 0.0}, label};
  };
  auto from_factor = [](const SU2Factor& f, bool inverted, const char* label) {
    BeamSplitterParams b{f.params[0], f.params[1], f.params[2]};
    if (f.kind == SU2FactorKind::real_rotation) b = {0.0, f.params[0], 0.0};
    if (inverted) b = inverse(b);
    return OpticalElement{f.pair, b, label};
  };

  std::vector<OpticalElement> e;
  e.push_back(rot(path_s1, "arc1"));
  e.push_back(rot(-p.s1, "frame2_undo_arc"));
  e.push_back(from_factor(ladder2[0], true, "frame2_undo_a"));
  e.push_back(from_factor(ladder2[1], true, "frame2_undo_b"));
  e.push_back(from_factor(ladder2[2], true, "frame2_undo_c"));
  e.push_back(rot(path_s2, "arc2"));
  e.push_back(from_factor(ladder2[2], false, "frame2_redo_c"));
  e.push_back(from_factor(ladder2[1], false, "frame2_redo_b"));
  e.push_back(from_factor(ladder2[0], false, "frame2_redo_a"));
  e.push_back(rot(p.s1, "frame2_redo_arc"));
  e.push_back(from_factor(ladder3[0], true, "frame3_undo_p1"));
  e.push_back(from_factor(ladder3[1], true, "frame3_undo_p2"));
  e.push_back(from_factor(ladder3[2], true, "frame3_undo_p3"));
  e.push_back(rot(-path_s3, "arc3"));
  e.push_back(from_factor(ladder3[2], false, "frame3_redo_p3"));
  e.push_back(from_factor(ladder3[1], false, "frame3_redo_p2"));
  e.push_back(from_factor(ladder3[0], false, "frame3_redo_p1"));
  return detail::make_circuit(4, std::move(e));
}

inline Circuit build_su4_circuit(const TriangleParamsSU4& p) {
  const auto v = triangle_vertices_su4(p);
  detail::check_closing_vertex(v[2][0]);
  const double s3 = std::acos(std::min(std::abs(v[2][0]), 1.0));
  return build_su4_circuit(p, p.s1, p.s2, s3);
}

}  // namespace sunphase

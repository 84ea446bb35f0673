#pragma once

#include <cmath>
#include <string>

#include "sunphase/geodesics.hpp"
#include "sunphase/matrix.hpp"

namespace sunphase {

enum class PhaseMethod { closed_form, operator_cycle, bargmann };

inline std::string method_name(PhaseMethod m) {
  switch (m) {
    case PhaseMethod::closed_form: return "closed_form";
    case PhaseMethod::operator_cycle: return "operator_cycle";
    case PhaseMethod::bargmann: return "bargmann";
  }
  return "unknown";
}

struct PhaseResult {
  double phi_g;
  PhaseMethod method;
  // How far the underlying construction was from exact closure. Methods that
  // evaluate a formula directly report zero.
  double residual;
};

// Geometric phase of the canonical three-channel triangle, straight from the
// triangle parameters:
//   phi_g = arg(cos s1 cos s2 - e^{i alpha} sin s1 sin s2 cos beta)
// This is arg<psi1|psi3>, the phase the closing arc hands back.
inline PhaseResult phase_closed_form_su3(const TriangleParamsSU3& p) {
  detail::check_arc_lengths(p.s1, p.s2);
  const Complex z = std::cos(p.s1) * std::cos(p.s2) -
                    std::polar(1.0, p.alpha) * (std::sin(p.s1) * std::sin(p.s2) * std::cos(p.beta));
  if (std::abs(z) <= kDegenerateTol)
    throw degenerate_error("first and third vertices are orthogonal; phase undefined");
  return {principal_arg(z), PhaseMethod::closed_form, 0.0};
}

// Four-channel analogue: the overlap of the first and third vertices has the
// same shape with cos beta replaced by the composite tilt
// W = -cos b1 cos b2 + sin b1 sin b2 cos b3.
inline PhaseResult phase_closed_form_su4(const TriangleParamsSU4& p) {
  detail::check_arc_lengths(p.s1, p.s2);
  const double w = -std::cos(p.beta1) * std::cos(p.beta2) +
                   std::sin(p.beta1) * std::sin(p.beta2) * std::cos(p.beta3);
  const Complex z =
      std::cos(p.s1) * std::cos(p.s2) - std::polar(1.0, p.alpha) * (std::sin(p.s1) * std::sin(p.s2) * w);
  if (std::abs(z) <= kDegenerateTol)
    throw degenerate_error("first and third vertices are orthogonal; phase undefined");
  return {principal_arg(z), PhaseMethod::closed_form, 0.0};
}

// Walk the full loop with the three leg evolutions and read the phase off the
// returned state: U3 U2 U1 psi1 = e^{i phi_g} psi1. The residual is the norm
// distance between the returned state and the best phase-aligned copy of the
// start; a loop that fails to close within 1e-8 is reported as an error
// rather than silently assigned a phase.
inline PhaseResult phase_operator_cycle(const GeodesicTriangle& t) {
  const UnitaryMatrix total = t.legs[2].evolution * (t.legs[1].evolution * t.legs[0].evolution);
  const StateVector back = apply(total, t.vertices[0]);
  const Complex ov = inner_product(t.vertices[0], back);
  if (std::abs(ov) <= kDegenerateTol)
    throw degenerate_error("cycle returned a state orthogonal to the start");
  const double phi = principal_arg(ov);
  const double residual = state_distance(back, phase_shifted(t.vertices[0], phi));
  if (residual > 1e-8) throw consistency_error("triangle cycle does not close on the start ray", residual);
  return {phi, PhaseMethod::operator_cycle, residual};
}

// Three-point invariant: phi_g = -arg(<v1|v2><v2|v3><v3|v1>). Invariant under
// independent rephasing of each vertex, which makes it the reference the
// other two methods are checked against.
inline PhaseResult phase_bargmann(const GeodesicTriangle& t) {
  const Complex prod = inner_product(t.vertices[0], t.vertices[1]) *
                       inner_product(t.vertices[1], t.vertices[2]) *
                       inner_product(t.vertices[2], t.vertices[0]);
  if (std::abs(prod) <= kDegenerateTol)
    throw degenerate_error("an adjacent vertex pair is orthogonal; invariant vanishes");
  return {-principal_arg(prod), PhaseMethod::bargmann, 0.0};
}

}  // namespace sunphase

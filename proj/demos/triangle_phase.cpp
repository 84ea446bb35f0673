// Build one three-channel triangle and print its geometric phase three ways,
// plus the sign flip under orientation reversal.

#include <cstdio>

#include <sunphase/sunphase.hpp>

int main() {
  using namespace sunphase;

  const TriangleParamsSU3 p{0.7, 0.7, 1.1, 0.4};
  const GeodesicTriangle tri = triangle_su3(p);

  const PhaseResult closed = phase_closed_form_su3(p);
  const PhaseResult cycle = phase_operator_cycle(tri);
  const PhaseResult barg = phase_bargmann(tri);

  std::printf("triangle: s1=%.3f s2=%.3f alpha=%.3f beta=%.3f\n", p.s1, p.s2, p.alpha, p.beta);
  std::printf("closed form      %+.12f\n", closed.phi_g);
  std::printf("operator cycle   %+.12f  (closure residual %.2e)\n", cycle.phi_g, cycle.residual);
  std::printf("three-point      %+.12f\n", barg.phi_g);

  const GeodesicTriangle rev = reversed_triangle(tri);
  std::printf("reversed loop    %+.12f\n", phase_bargmann(rev).phi_g);
  return 0;
}

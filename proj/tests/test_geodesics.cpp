#include <catch2/catch_amalgamated.hpp>

#include <sunphase/geodesics.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"

using namespace sunphase;
using Catch::Matchers::WithinAbs;
using testsupport::random_state;

namespace {
constexpr double kPi = std::numbers::pi;

// Random pair with real nonnegative overlap, safely away from degeneracy.
std::pair<StateVector, StateVector> arc_endpoints(int dim, std::mt19937_64& rng) {
  while (true) {
    const StateVector a = random_state(dim, rng);
    const StateVector b0 = random_state(dim, rng);
    const Complex ov = inner_product(a, b0);
    if (std::abs(ov) < 1e-3 || std::abs(ov) > 0.99) continue;
    return {a, leg_rephase(a, b0).state};
  }
}
}  // namespace

TEST_CASE("reference rotation mixes the first two channels only") {
  const UnitaryMatrix r = reference_rotation(0.6, 4);
  CHECK_THAT(std::abs(r(0, 0) - Complex(std::cos(0.6), 0)), WithinAbs(0.0, 1e-15));
  CHECK_THAT(std::abs(r(1, 0) - Complex(std::sin(0.6), 0)), WithinAbs(0.0, 1e-15));
  CHECK_THAT(std::abs(r(0, 1) + Complex(std::sin(0.6), 0)), WithinAbs(0.0, 1e-15));
  CHECK(r(2, 2) == Complex(1.0, 0.0));
  CHECK(r(3, 3) == Complex(1.0, 0.0));
  CHECK(r(2, 0) == Complex(0.0, 0.0));
  CHECK(max_entry_distance(reference_rotation(0.0, 3), UnitaryMatrix::identity(3)) == 0.0);
}

TEST_CASE("leg_rephase makes the overlap real and reports the removed phase") {
  std::mt19937_64 rng(301);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector a = random_state(3, rng);
    const StateVector b = random_state(3, rng);
    const Complex before = inner_product(a, b);
    if (std::abs(before) < 1e-6) continue;
    const RephaseResult r = leg_rephase(a, b);
    const Complex after = inner_product(a, r.state);
    CHECK_THAT(after.imag(), WithinAbs(0.0, 1e-14));
    CHECK(after.real() >= 0.0);
    CHECK_THAT(angle_distance(r.removed_phase, principal_arg(before)), WithinAbs(0.0, 1e-14));
    CHECK_THAT(state_distance(phase_shifted(r.state, r.removed_phase), b), WithinAbs(0.0, 1e-14));
  }
  CHECK_THROWS_AS(leg_rephase(StateVector::basis(2, 0), StateVector::basis(2, 1)),
                  degenerate_error);
}

TEST_CASE("geodesic_curve hits both endpoints and stays normalized") {
  std::mt19937_64 rng(302);
  for (int dim : {3, 4, 5}) {
    const auto [a, b] = arc_endpoints(dim, rng);
    const double s_end = std::acos(inner_product(a, b).real());
    CHECK(state_distance(geodesic_curve(a, b, 0.0), a) < 1e-14);
    CHECK(state_distance(geodesic_curve(a, b, s_end), b) < 1e-12);
    const StateVector mid = geodesic_curve(a, b, s_end / 2);
    double n2 = 0.0;
    for (int i = 0; i < dim; ++i) n2 += std::norm(mid[i]);
    CHECK_THAT(n2, WithinAbs(1.0, 1e-14));
    // Overlap with the start decays as cos(s) along the arc.
    CHECK_THAT(inner_product(a, mid).real(), WithinAbs(std::cos(s_end / 2), 1e-13));
    CHECK_THAT(inner_product(a, mid).imag(), WithinAbs(0.0, 1e-13));
  }
}

TEST_CASE("geodesic_curve rejects bad endpoint pairs") {
  const StateVector e1 = StateVector::basis(3, 0);
  const StateVector e2 = StateVector::basis(3, 1);
  const StateVector complex_overlap({Complex(0, 0.6), Complex(0.8, 0), Complex(0, 0)});
  const StateVector negative_overlap({Complex(-0.6, 0), Complex(0.8, 0), Complex(0, 0)});
  CHECK_THROWS_AS(geodesic_curve(e1, complex_overlap, 0.3), validation_error);
  CHECK_THROWS_AS(geodesic_curve(e1, negative_overlap, 0.3), validation_error);
  CHECK_THROWS_AS(geodesic_curve(e1, e1, 0.3), degenerate_error);
  CHECK_THROWS_AS(geodesic_curve(e1, StateVector::basis(4, 0), 0.3), std::invalid_argument);
  // Orthogonal endpoints are fine: a quarter arc connects them.
  CHECK(state_distance(geodesic_curve(e1, e2, kPi / 2), e2) < 1e-15);
}

TEST_CASE("geodesic_evolution carries start to end with a special unitary frame") {
  std::mt19937_64 rng(303);
  for (int dim : {3, 4, 5}) {
    const auto [a, b] = arc_endpoints(dim, rng);
    const GeodesicLeg leg = geodesic_evolution(a, b);
    CHECK_THAT(leg.s_end, WithinAbs(std::acos(inner_product(a, b).real()), 1e-13));
    CHECK(state_distance(apply(leg.evolution, a), b) < 1e-12);
    CHECK(max_entry_distance(leg.evolution_at(0.0), UnitaryMatrix::identity(dim)) < 1e-13);
    CHECK(leg.frame.is_special(1e-12));
    CHECK(leg.frame.unitarity_defect() < 1e-12);
    // Frame columns: start direction first, arc direction second.
    for (int r = 0; r < dim; ++r) CHECK_THAT(std::abs(leg.frame(r, 0) - a[r]), WithinAbs(0.0, 1e-14));
    const StateVector quarter = apply(leg.evolution_at(leg.s_end / 3), a);
    CHECK(state_distance(quarter, geodesic_curve(a, b, leg.s_end / 3)) < 1e-12);
  }
}

TEST_CASE("evolution acts as identity on the orthogonal complement") {
  std::mt19937_64 rng(304);
  const auto [a, b] = arc_endpoints(4, rng);
  const GeodesicLeg leg = geodesic_evolution(a, b);
  // Project a random vector onto the complement of span{start, arc direction}.
  const StateVector w = apply(leg.frame, StateVector::basis(4, 1));
  StateVector probe = random_state(4, rng);
  std::vector<Complex> amps = probe.amplitudes();
  const Complex ca = inner_product(a, probe);
  const Complex cw = inner_product(w, probe);
  double n2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    amps[static_cast<size_t>(i)] -= ca * a[i] + cw * w[i];
    n2 += std::norm(amps[static_cast<size_t>(i)]);
  }
  REQUIRE(n2 > 1e-4);
  for (auto& z : amps) z /= std::sqrt(n2);
  const StateVector perp(amps);
  CHECK(state_distance(apply(leg.evolution, perp), perp) < 1e-12);
  CHECK(state_distance(apply(leg.evolution_at(0.37), perp), perp) < 1e-12);
}

TEST_CASE("short arcs keep full accuracy") {
  std::mt19937_64 rng(305);
  const StateVector a = random_state(4, rng);
  StateVector raw = random_state(4, rng);
  // Manufacture b = cos(s) a + sin(s) w with tiny s.
  const Complex ov = inner_product(a, raw);
  std::vector<Complex> wv = raw.amplitudes();
  double n2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    wv[static_cast<size_t>(i)] -= ov * a[i];
    n2 += std::norm(wv[static_cast<size_t>(i)]);
  }
  for (auto& z : wv) z /= std::sqrt(n2);
  const double s = 1e-5;
  std::vector<Complex> bv(4);
  for (int i = 0; i < 4; ++i) bv[static_cast<size_t>(i)] = std::cos(s) * a[i] + std::sin(s) * wv[static_cast<size_t>(i)];
  const StateVector b(bv);
  const GeodesicLeg leg = geodesic_evolution(a, b);
  CHECK_THAT(leg.s_end, WithinAbs(s, 1e-9));
  // The arc length itself is conditioning-limited near zero (acos of an
  // overlap near one), but the endpoint is still recovered far better than
  // the naive error bound of ~1e-6 for an implicit normalization.
  CHECK(state_distance(apply(leg.evolution, a), b) < 1e-9);
}

TEST_CASE("canonical triangle vertices satisfy the stated overlaps") {
  const TriangleParamsSU3 p{0.7, 0.5, 1.1, 0.4};
  const auto v = triangle_vertices_su3(p);
  for (const auto& vert : v) {
    double n2 = 0.0;
    for (int i = 0; i < 3; ++i) n2 += std::norm(vert[i]);
    CHECK_THAT(n2, WithinAbs(1.0, 1e-15));
  }
  CHECK_THAT(std::abs(inner_product(v[0], v[1]) - Complex(std::cos(0.7), 0)), WithinAbs(0.0, 1e-15));
  const Complex ov23 = inner_product(v[1], v[2]);
  CHECK_THAT(ov23.real(), WithinAbs(std::cos(0.5), 1e-14));
  CHECK_THAT(ov23.imag(), WithinAbs(0.0, 1e-14));
  CHECK_THROWS_AS(triangle_vertices_su3({0.0, 0.5, 0.1, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(triangle_vertices_su3({0.5, 2.0, 0.1, 0.1}), std::invalid_argument);
}

TEST_CASE("four-channel vertices reduce to three channels when beta3 vanishes") {
  const TriangleParamsSU4 p{0.8, 0.6, 0.9, 0.7, 0.5, 0.0};
  const auto v4 = triangle_vertices_su4(p);
  const auto v3 = triangle_vertices_su3({0.8, 0.6, 0.9, kPi - (0.7 + 0.5)});
  for (int i = 0; i < 3; ++i) CHECK_THAT(std::abs(v4[2][i] - v3[2][i]), WithinAbs(0.0, 1e-14));
  CHECK_THAT(std::abs(v4[2][3]), WithinAbs(0.0, 1e-15));

  const Complex ov23 = inner_product(v4[1], v4[2]);
  CHECK_THAT(ov23.real(), WithinAbs(std::cos(0.6), 1e-14));
  CHECK_THAT(ov23.imag(), WithinAbs(0.0, 1e-14));
}

TEST_CASE("triangle construction keeps canonical vertices bit-exact") {
  const TriangleParamsSU3 p{0.7, 0.5, 1.1, 0.4};
  const auto v = triangle_vertices_su3(p);
  const GeodesicTriangle t = triangle_su3(p);
  CHECK(t.group_dim == 3);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i) CHECK(t.vertices[static_cast<size_t>(k)][i] == v[static_cast<size_t>(k)][i]);

  // Legs chain through the stored vertices and the last one closes the loop
  // up to a phase.
  CHECK(state_distance(t.legs[0].start, t.vertices[0]) == 0.0);
  CHECK(state_distance(t.legs[0].end, t.vertices[1]) == 0.0);
  CHECK(state_distance(t.legs[1].start, t.vertices[1]) == 0.0);
  CHECK(state_distance(t.legs[1].end, t.vertices[2]) == 0.0);
  CHECK(state_distance(t.legs[2].start, t.vertices[2]) == 0.0);
  CHECK_THAT(std::abs(inner_product(t.legs[2].end, t.vertices[0])), WithinAbs(1.0, 1e-12));
}

TEST_CASE("triangle_from_vertices rephases vertices that need it") {
  std::mt19937_64 rng(306);
  const TriangleParamsSU4 p{0.8, 0.6, 0.9, 0.7, 0.5, 1.3};
  const auto v = triangle_vertices_su4(p);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const GeodesicTriangle t =
      triangle_from_vertices(v[0], phase_shifted(v[1], angle(rng)), phase_shifted(v[2], angle(rng)));
  // Stored vertices have real nonnegative chained overlaps again.
  const Complex o12 = inner_product(t.vertices[0], t.vertices[1]);
  const Complex o23 = inner_product(t.vertices[1], t.vertices[2]);
  CHECK_THAT(o12.imag(), WithinAbs(0.0, 1e-13));
  CHECK(o12.real() > 0.0);
  CHECK_THAT(o23.imag(), WithinAbs(0.0, 1e-13));
  CHECK(o23.real() > 0.0);

  CHECK_THROWS_AS(triangle_from_vertices(v[0], v[0], v[2]), degenerate_error);
}

TEST_CASE("reversed triangle swaps the last two vertices as rays") {
  const GeodesicTriangle t = triangle_su3({0.7, 0.5, 1.1, 0.4});
  const GeodesicTriangle r = reversed_triangle(t);
  CHECK(state_distance(r.vertices[0], t.vertices[0]) == 0.0);
  // The construction rephases vertices to chain the legs, so the swapped
  // vertices agree up to phase, not componentwise.
  CHECK_THAT(std::abs(inner_product(r.vertices[1], t.vertices[2])), WithinAbs(1.0, 1e-12));
  CHECK_THAT(std::abs(inner_product(r.vertices[2], t.vertices[1])), WithinAbs(1.0, 1e-12));
}

TEST_CASE("reparametrization recovers angles from the canonical form") {
  std::mt19937_64 rng(307);
  std::uniform_real_distribution<double> half(0.1, 1.4);
  std::uniform_real_distribution<double> full(-3.0, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double xi = full(rng), chi = full(rng), eta = half(rng), tau = half(rng);
    const StateVector v({std::polar(std::cos(eta), xi),
                         std::polar(std::sin(eta) * std::cos(tau), xi + chi),
                         Complex(std::sin(eta) * std::sin(tau), 0)});
    const ReparamPsi3 r = reparametrize_psi3(v);
    CHECK_THAT(r.eta, WithinAbs(eta, 1e-12));
    CHECK_THAT(r.tau, WithinAbs(tau, 1e-12));
    CHECK_THAT(angle_distance(r.xi, xi), WithinAbs(0.0, 1e-12));
    CHECK_THAT(angle_distance(r.chi, chi), WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("reparametrization edge cases") {
  const ReparamPsi3 top = reparametrize_psi3(StateVector::basis(3, 2));
  CHECK_THAT(top.eta, WithinAbs(kPi / 2, 1e-15));
  CHECK_THAT(top.tau, WithinAbs(kPi / 2, 1e-15));
  CHECK(top.xi == 0.0);
  CHECK(top.chi == 0.0);

  const ReparamPsi3 first = reparametrize_psi3(StateVector::basis(3, 0));
  CHECK(first.eta == 0.0);
  CHECK(first.tau == 0.0);
  CHECK(first.xi == 0.0);
  CHECK(first.chi == 0.0);

  const StateVector bad({Complex(0.8, 0), Complex(0, 0), Complex(-0.6, 0)});
  CHECK_THROWS_AS(reparametrize_psi3(bad), validation_error);
  CHECK_THROWS_AS(reparametrize_psi3(StateVector::basis(4, 0)), std::invalid_argument);
}

TEST_CASE("is_geodesic accepts true arcs and rejects a phase-wobbled path") {
  std::mt19937_64 rng(308);
  const auto [a, b] = arc_endpoints(4, rng);
  const GeodesicLeg leg = geodesic_evolution(a, b);
  const GeodesicCheck ok = is_geodesic(leg);
  CHECK(ok.is_geodesic);
  CHECK(ok.max_deviation < 1e-12);

  // Same ray, oscillating phase: endpoints agree but the interior does not.
  const double s_end = leg.s_end;
  const auto wobble = [&](double s) {
    return phase_shifted(geodesic_curve(a, b, s), 0.3 * std::sin(kPi * s / s_end));
  };
  const GeodesicCheck badcheck = is_geodesic(a, b, s_end, wobble);
  CHECK_FALSE(badcheck.is_geodesic);
  CHECK(badcheck.max_deviation > 0.1);

  CHECK_THROWS_AS(is_geodesic(a, b, s_end, wobble, 1), std::invalid_argument);
}

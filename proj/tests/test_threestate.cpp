#include "support.hpp"

#include <numbers>

#include "holo/phase.hpp"
#include "holo/threestate.hpp"

using namespace holo;
using namespace holo::three;
using namespace testing;

namespace {

constexpr double pi = std::numbers::pi;

HelixSpec helix(double r, double s, double wt, double wp) {
  HelixSpec h;
  h.r = r;
  h.s = s;
  h.omega_theta = wt;
  h.omega_phi = wp;
  return h;
}

bool phases_match(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  if (got.size() != want.size()) return false;
  for (double w : want) {
    double best = 10;
    for (double g : got) best = std::min(best, circular_distance(g, w));
    if (best > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("degeneracy_complete") {
  const DegeneracyResult unit = degeneracy_complete({1.0, 1.0, 1.0});
  REQUIRE(unit.accepted);
  CHECK(unit.E2 == doctest::Approx(-1.0));
  CHECK(unit.E1 == doctest::Approx(2.0));
  CHECK(std::abs(unit.a) < 1e-15);
  CHECK(std::abs(unit.b) < 1e-15);
  CHECK(std::abs(unit.c) < 1e-15);
  const RVector ev = eigh(assemble_hamiltonian({1.0, 1.0, 1.0}, 0, 0, 0)).values;
  CHECK(ev(0) == doctest::Approx(-1.0));
  CHECK(ev(1) == doctest::Approx(-1.0));
  CHECK(ev(2) == doctest::Approx(2.0));

  const DegeneracyResult bad = degeneracy_complete({I, 1.0, 1.0});
  CHECK_FALSE(bad.accepted);
  CHECK_FALSE(bad.violated.empty());
  CHECK_FALSE(degeneracy_complete({0.0, 1.0, 1.0}).accepted);

  // the torus parameterization: traceless here, shifted by E2 it is H(x) with ground level 0
  for (const TorusPoint x : {TorusPoint{3, 2, 0.4, -1.2}, TorusPoint{1.1, 0.7, 2.0, 2.5}}) {
    const DegeneracyResult d = degeneracy_complete(couplings(x));
    REQUIRE(d.accepted);
    CHECK(std::abs(d.a + d.b + d.c) < 1e-12);
    CHECK(d.E1 + 2 * d.E2 == doctest::Approx(0.0));
    CHECK(d.E1 - d.E2 == doctest::Approx(std::pow(n1(x.r, x.s), 2) / (x.r * x.s)));
    const CMatrix H = assemble_hamiltonian(couplings(x), d.a, d.b, d.c);
    CHECK(dist(H - d.E2 * CMatrix::Identity(3, 3), hamiltonian(x)) < 1e-12);
  }
}

TEST_CASE("degenerate random couplings") {
  auto g = rng(71);
  std::uniform_real_distribution<double> u(-pi, pi), m(0.3, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = u(g), b = u(g);
    CouplingTriple k{std::polar(m(g), a), std::polar(m(g), b), std::polar(m(g), -a - b + (trial % 2) * pi)};
    const DegeneracyResult d = degeneracy_complete(k);
    REQUIRE(d.accepted);
    const CMatrix H = assemble_hamiltonian(k, d.a, d.b, d.c);
    CHECK(minimal_polynomial_residual(H, d.E1, d.E2) <= 1e-9 * H.squaredNorm());
    CHECK(d.E1 - d.E2 == doctest::Approx(predicted_gap(k)));
  }
  const CMatrix X = random_gaussian(3, 3, g);
  const CMatrix H = X + X.adjoint();
  const RVector ev = eigh(H).values;
  CHECK(minimal_polynomial_residual(H, ev(2), ev(0)) > 0.1);
  CHECK(minimal_polynomial_residual(-1.5 * CMatrix::Identity(3, 3), -1.5, -1.5) == 0.0);
  CHECK_THROWS_AS(minimal_polynomial_residual(CMatrix::Identity(2, 2), 1, 1), DimensionError);
}

TEST_CASE("eigenframe") {
  const Eigenframe f = eigenframe({3, 2, 0, 0});
  CHECK(f.E1 == doctest::Approx(49.0 / 6.0));
  CVector want(3);
  want << 2.0 / 7, 3.0 / 7, 6.0 / 7;
  CHECK((f.excited - want).norm() < 1e-15);
  const CMatrix H = hamiltonian({3, 2, 0, 0});
  CHECK((H * f.excited - 49.0 / 6.0 * f.excited).norm() < 1e-12);
  CVector g1(3);
  g1 << 3.0, 0.0, -1.0;
  CHECK((f.ground.col(0) - g1 / std::sqrt(10.0)).norm() < 1e-15);
  CHECK((eigenframe({3, 2, 1.9, 0}).ground.col(0) - g1 / std::sqrt(10.0)).norm() < 1e-15);

  for (const TorusPoint x : {TorusPoint{3, 2, 0.3, 1.0}, TorusPoint{0.5, 1.7, -2.0, 0.1}}) {
    const Eigenframe e = eigenframe(x);
    const CMatrix Hx = hamiltonian(x);
    CHECK((Hx * e.ground).norm() < 1e-12);
    CHECK((Hx * e.excited - e.E1 * e.excited).norm() < 1e-12);
    CMatrix all(3, 3);
    all << e.excited, e.ground;
    CHECK(unitarity_defect(all) < 1e-14);

    // (r, theta, e1) <-> (s, phi, e2)
    CMatrix swap = CMatrix::Zero(3, 3);
    swap(0, 1) = swap(1, 0) = swap(2, 2) = 1.0;
    const NPlane mirrored(eigenframe({x.s, x.r, x.phi, x.theta}).ground);
    CHECK(dist(swap * ground_plane(x).projector() * swap, mirrored.projector()) < 1e-12);
  }
  CHECK_THROWS_AS(eigenframe({0, 1, 0, 0}), PreconditionError);
}

TEST_CASE("torus_gauge") {
  const TorusGauge g = torus_gauge(3, 2);
  CHECK(g.A_theta(1, 1).real() == doctest::Approx(-40.0 / 49.0));
  CHECK(std::abs(g.A_theta(0, 0)) + std::abs(g.A_theta(0, 1)) + std::abs(g.A_theta(1, 0)) == 0.0);
  CMatrix want(2, 2);
  want << 1.0, 1.0 / 7, 1.0 / 7, 1.0 / 49;
  CHECK(dist(g.A_phi, -0.9 * want) < 1e-15);
  // r -> 0: A_phi vanishes, but |2_2> tends to -e^{i theta} e_2 so A_theta keeps a -1
  const TorusGauge tiny = torus_gauge(1e-8, 2);
  CHECK(tiny.A_phi.norm() < 1e-14);
  CHECK(dist(tiny.A_theta, diag({0.0, -1.0})) < 1e-14);
}

TEST_CASE("helix_rotation") {
  for (const HelixSpec h : {helix(3, 2, 2 * pi, -4 * pi), helix(1.1, 1.1, 1, -1), helix(0.7, 2.2, 0.3, 0.9)}) {
    const HelixRotation hr = helix_rotation(h);
    CHECK(std::hypot(hr.u[0], hr.u[1], hr.u[2]) == doctest::Approx(1.0));
    CHECK(hr.N3 / std::pow(n1(h.r, h.s), 2) == doctest::Approx(hr.Omega));
    for (double t : {0.2, 1.0, 3.7}) CHECK(dist(helix_transport(h, t), expm_hermitian(hr.A, I * t)) < 1e-12);
    // eigenvalues of A are -zeta +- Omega/2
    const RVector ev = eigh(hr.A).values;
    CHECK(ev(0) == doctest::Approx(-hr.zeta - hr.Omega / 2));
    CHECK(ev(1) == doctest::Approx(-hr.zeta + hr.Omega / 2));
  }
}

TEST_CASE("analytic_teletransporter against the generic construction") {
  std::uniform_real_distribution<double> ang(-pi, pi), rad(0.4, 3.0);
  auto g = rng(72);
  for (int trial = 0; trial < 50; ++trial) {
    const double r = rad(g), s = rad(g);
    const TorusPoint a{r, s, ang(g), ang(g)}, b{r, s, ang(g), ang(g)};
    const Teletransporter ana = analytic_teletransporter(a, b);
    const Teletransporter gen = teletransporter(ground_plane(a), ground_plane(b));
    CHECK(ana.partial == gen.partial);
    CHECK(dist(ana.matrix, gen.matrix) < 1e-9);
  }
  const TorusPoint x{3, 2, 0.5, 0.1};
  CHECK(dist(analytic_teletransporter(x, x).matrix, CMatrix::Identity(2, 2)) < 1e-14);
  CHECK_THROWS_AS(analytic_teletransporter(x, {2, 2, 0, 0}), PreconditionError);

  // the three-state pair with dtheta = 2pi/3, dphi = pi/3
  const TorusPoint p{3, 2, 2 * pi / 3, pi / 3}, q{3, 2, 0, 0};
  const Teletransporter t = analytic_teletransporter(q, p);
  CHECK(dist(t.matrix, teletransporter(ground_plane(q), ground_plane(p)).matrix) < 1e-9);
  const PrincipalStructure ps = principal_structure(ground_plane(q), ground_plane(p));
  const double N1 = n1(3, 2);
  CHECK(ps.blocks[1].angle == doctest::Approx(std::asin(6 * n2(3, 2, 2 * pi / 3, pi / 3) / (N1 * N1))));
  // Gamma |-'> = e^{i delta_-} |->, with |-> = P_p |1(q)> and |-'> = P_q |1(p)> normalized
  const Eigenframe fq = eigenframe(q), fp = eigenframe(p);
  const CMatrix op = fp.ground * teletransporter(ground_plane(q), ground_plane(p)).matrix * fq.ground.adjoint();
  const CVector minus = (ground_plane(p).projector() * fq.excited).normalized();
  const CVector minusp = (ground_plane(q).projector() * fp.excited).normalized();
  const cplx z = 1.0 + std::polar(1.0 / 9, -pi / 3) + std::polar(0.25, -2 * pi / 3);
  const cplx m = minus.dot(op * minusp);
  CHECK(std::abs(m) == doctest::Approx(1.0));
  CHECK(circular_distance(std::arg(m), pi - std::arg(z)) < 1e-9);

  // r = s = 1: 1 + e^{i dphi} + e^{i dtheta} vanishes at (dphi, dtheta) = (2pi/3, -2pi/3),
  // not at (pi, pi) where it is -1
  const Teletransporter part = analytic_teletransporter({1, 1, 0, 0}, {1, 1, -2 * pi / 3, 2 * pi / 3});
  CHECK(part.partial);
  CHECK(part.rank == 1);
  CHECK(dist(part.matrix, teletransporter(part.source, part.target).matrix) < 1e-9);
  const Teletransporter half = analytic_teletransporter({1, 1, 0, 0}, {1, 1, pi, pi});
  CHECK_FALSE(half.partial);
  CHECK(dist(half.matrix, teletransporter(half.source, half.target).matrix) < 1e-9);
}

TEST_CASE("complex_triangle") {
  CHECK(complex_triangle(0.3, 0.3).empty());
  CHECK(complex_triangle(3.0, 1.0).empty());

  const auto eq = complex_triangle(1, 1);
  REQUIRE(eq.size() == 2);
  CHECK(eq[0].first == doctest::Approx(2 * pi / 3));
  CHECK(eq[0].second == doctest::Approx(-2 * pi / 3));
  CHECK(eq[1].first == doctest::Approx(-2 * pi / 3));
  CHECK(eq[1].second == doctest::Approx(2 * pi / 3));

  const auto edge = complex_triangle(2, 1);
  REQUIRE(edge.size() == 1);
  CHECK(edge[0].first == doctest::Approx(pi));
  CHECK(std::abs(edge[0].second) < 1e-12);

  auto g = rng(73);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = u(g), b = u(g);
    for (const auto& [al, be] : complex_triangle(a, b))
      CHECK(std::abs(a * std::polar(1.0, al) + b * std::polar(1.0, be) + 1.0) < 1e-9);
  }
  CHECK_THROWS_AS(complex_triangle(0, 1), PreconditionError);

  // r^-2 + s^-2 < 1: never orthogonal; r = s = 1: orthogonal at (2pi/3, -2pi/3)
  CHECK_FALSE(torus_pair_orthogonal(3, 2, 1.0, 2.0));
  CHECK(torus_pair_orthogonal(1, 1, -2 * pi / 3, 2 * pi / 3));
  CHECK(teletransporter(ground_plane({1, 1, 0, 0}), ground_plane({1, 1, -2 * pi / 3, 2 * pi / 3})).partial);
}

TEST_CASE("parameter_geodesic") {
  const TorusPoint from{3, 2, 2 * pi / 3, pi / 3}, to{3, 2, 0, 0};
  const auto x = parameter_geodesic(from, to);
  const TorusPoint a = x(0), b = x(1), mid = x(0.5);
  CHECK(a.r == doctest::Approx(3));
  CHECK(a.s == doctest::Approx(2));
  CHECK(std::abs(b.r - 3) < 1e-9);
  CHECK(std::abs(b.s - 2) < 1e-9);
  CHECK(circular_distance(a.theta, from.theta) < 1e-9);
  CHECK(circular_distance(a.phi, from.phi) < 1e-9);
  CHECK(circular_distance(b.theta, to.theta) < 1e-9);
  CHECK(circular_distance(b.phi, to.phi) < 1e-9);
  CHECK(mid.r == doctest::Approx(3.16523908).epsilon(1e-8));
  CHECK(mid.s == doctest::Approx(3.1170597).epsilon(1e-7));
  for (double tau : {0.1, 0.25, 0.4}) {
    CHECK(x(tau).r == doctest::Approx(x(1 - tau).r).epsilon(1e-12));
    CHECK(x(tau).s == doctest::Approx(x(1 - tau).s).epsilon(1e-12));
  }
  // r and s are extremal at the midpoint
  CHECK(std::abs(x(0.5 + 1e-4).r - mid.r) < 1e-7);
  CHECK(std::abs(x(0.5 + 1e-4).s - mid.s) < 1e-7);

  const auto still = parameter_geodesic(from, from);
  CHECK(still(0.6).theta == from.theta);
  CHECK_THROWS_AS(parameter_geodesic({1, 1, 0, pi / 2}, {1, 1, pi / 2, 0}), UnsupportedBranch);
  CHECK_THROWS_AS(parameter_geodesic(from, {2, 2, 0, 0}), PreconditionError);
}

TEST_CASE("helix phases: closed form, analytic and the trace of Gamma_h") {
  const HelixSpec h = helix(3, 2, 2 * pi, -4 * pi);
  const HolonomyResult at1 = helix_holonomy_analytic(h, 1.0);
  CHECK(phases_match(at1.phases, {-1.09715, 1.22538}, 1e-5));
  const HelixRotation hr = helix_rotation(h);
  CHECK(phases_match(at1.phases, {wrap_angle(hr.Omega / 2 - hr.zeta), wrap_angle(-hr.Omega / 2 - hr.zeta)}, 1e-9));

  const PlaneSampler path = [h](double l) { return ground_plane(h.at(l)); };
  const auto numeric = intermediate_holonomies(path, 50 * 400);
  for (int k = 1; k < 50; ++k) {
    const double t = k / 50.0;
    const HolonomyResult a = helix_holonomy_analytic(h, t);
    const auto c = helix_phases_closed_form(h, t);
    CHECK(phases_match(a.phases, {c[0], c[1]}, 1e-9));
    CHECK(phases_match(numeric[k * 400].phases, a.phases, 1e-6 + 1e-3));
    // cos chi from the trace: tr Gamma_h = 2 e^{i mean} cos chi
    const cplx tr = a.matrix.trace();
    const double mean = 0.5 * (c[0] + c[1]);
    const double chi = 0.5 * (c[1] - c[0]);
    CHECK(std::abs(tr - 2.0 * std::polar(std::cos(chi), mean)) < 1e-9);
    CHECK(std::abs(std::abs(helix_cos_chi(h, t)) - std::abs(std::cos(chi))) < 1e-9);
    // det Gamma_h = e^{i(gamma_- + gamma_+)}
    CHECK(circular_distance(std::arg(a.matrix.determinant()), c[0] + c[1]) < 1e-9);
  }
}

TEST_CASE("helix phases: omega_phi = 0 and the frozen regime") {
  const double r = 3, s = 2, wt = 1.3;
  const HelixSpec h = helix(r, s, wt, 0);
  for (double t : {0.4, 1.7, 3.1}) {
    const double N1sq = r * r + s * s + r * r * s * s;
    const double g = std::arg(r * r + (1 + r * r) * s * s * std::polar(1.0, wt * t)) -
                     (1 + r * r) * s * s * wt * t / N1sq;
    CHECK(phases_match(helix_holonomy_analytic(h, t).phases, {0.0, wrap_angle(g)}, 1e-9));
  }

  const auto [t1, t2] = frozen_window(1.1, 1.0);
  CHECK(t1 == doctest::Approx(2.22056).epsilon(1e-5));
  CHECK(t2 == doctest::Approx(2 * pi - t1));
  const HelixSpec fz = helix(1.1, 1.1, 1, -1);
  for (int k = 1; k < 10; ++k) {
    const double t = t1 + (t2 - t1) * k / 10.0;
    CHECK(phases_match(helix_holonomy_analytic(fz, t).phases, {0.0, pi}, 1e-9));
  }
  for (double t : {0.5, 1.5, 2.0, 4.5, 6.0}) {
    const auto f = frozen_regime_phases(1.1, 1.0, t);
    CHECK(phases_match(helix_holonomy_analytic(fz, t).phases, {f[0], f[1]}, 1e-6));
  }
  CHECK_THROWS_AS(frozen_window(1.5, 1.0), PreconditionError);
}

TEST_CASE("adapted_basis_case") {
  const HelixSpec phi0 = helix(3, 2, 0.7, 0);
  const auto f = adapted_basis_case(phi0, 1.3);
  REQUIRE(f.has_value());
  CVector g1(3);
  g1 << 3.0, 0.0, -1.0;
  CHECK(((*f).col(0) - g1 / std::sqrt(10.0)).norm() < 1e-15);

  const HelixSpec same = helix(3, 2, 0.7, 0.7);
  for (double t : {0.0, 0.9, 2.0}) {
    const auto a = adapted_basis_case(same, t);
    REQUIRE(a.has_value());
    CHECK(dist(proj(*a), ground_plane(same.at(t)).projector()) < 1e-12);
    CHECK(((*a).col(0) - (*adapted_basis_case(same, 0)).col(0)).norm() < 1e-12);
  }
  const HelixSpec th0 = helix(3, 2, 0, 0.7);
  for (double t : {0.0, 0.9}) {
    const auto a = adapted_basis_case(th0, t);
    REQUIRE(a.has_value());
    CHECK(dist(proj(*a), ground_plane(th0.at(t)).projector()) < 1e-12);
    CHECK(((*a).col(0) - (*adapted_basis_case(th0, 0)).col(0)).norm() < 1e-12);
  }
  CHECK_FALSE(adapted_basis_case(helix(3, 2, 1.0, -2.0), 0.5).has_value());
}

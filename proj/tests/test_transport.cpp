#include "support.hpp"

#include <fstream>
#include <numbers>
#include <sstream>

#include "holo/geodesics.hpp"
#include "holo/phase.hpp"
#include "holo/threestate.hpp"
#include "holo/transport.hpp"

using namespace holo;
using namespace testing;

namespace {

constexpr double pi = std::numbers::pi;

PlaneSampler helix_path(const three::HelixSpec& h, double T) {
  return [h, T](double lam) { return three::ground_plane(h.at(lam * T)); };
}

three::HelixSpec helix(double r, double s, double wt, double wp) {
  three::HelixSpec h;
  h.r = r;
  h.s = s;
  h.omega_theta = wt;
  h.omega_phi = wp;
  return h;
}

// Each expected phase has a computed one within tol on the circle.
bool phases_match(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  if (got.size() != want.size()) return false;
  for (double w : want) {
    double best = 10;
    for (double g : got) best = std::min(best, circular_distance(g, w));
    if (best > tol) return false;
  }
  return true;
}

// Same plane, frame rotated by a unitary that jumps from sample to sample.
PlaneSampler scrambled(PlaneSampler p) {
  return [p](double lam) {
    const NPlane P = p(lam);
    std::mt19937_64 g(static_cast<unsigned long>(lam * 1e9) + 7);
    return NPlane(P.frame() * random_unitary(P.dim(), g));
  };
}

}  // namespace

TEST_CASE("discrete_transport: trivial path, reversal and the n = 1 loop") {
  auto g = rng(41);
  const NPlane V = NPlane::from_span(random_gaussian(4, 2, g));
  const Transport same = discrete_transport({{V, V}});
  CHECK(dist(same.matrix, CMatrix::Identity(2, 2)) < 1e-12);

  DiscretePath path;
  for (int k = 0; k < 6; ++k) path.planes.push_back(NPlane::from_span(random_gaussian(4, 2, g)));
  DiscretePath back{{path.planes.rbegin(), path.planes.rend()}};
  const CMatrix fwd = discrete_transport(path).matrix, rev = discrete_transport(back).matrix;
  CHECK(dist(rev * fwd, CMatrix::Identity(2, 2)) < 1e-9);
  CHECK(dist(rev, fwd.adjoint()) < 1e-9);

  // rays v0..v3 and back to v0
  std::vector<CVector> vs;
  DiscretePath loop;
  loop.closed = true;
  for (int k = 0; k < 4; ++k) {
    vs.push_back(random_gaussian(3, 1, g).col(0).normalized());
    loop.planes.emplace_back(CMatrix(vs.back()));
  }
  loop.planes.push_back(loop.planes.front());
  const HolonomyResult h = holonomy(loop);
  REQUIRE(h.phases.size() == 1);
  const cplx prod = vs[0].dot(vs[3]) * vs[3].dot(vs[2]) * vs[2].dot(vs[1]) * vs[1].dot(vs[0]);
  CHECK(circular_distance(h.phases[0], std::arg(prod)) < 1e-12);
  CHECK(circular_distance(bargmann_phase(vs), std::arg(prod)) < 1e-12);
}

TEST_CASE("discrete_transport: reversal gives the pseudoinverse across a partial step") {
  CMatrix a = CMatrix::Zero(4, 2), b = CMatrix::Zero(4, 2);
  a(0, 0) = a(1, 1) = 1.0;
  b(0, 0) = b(2, 1) = 1.0;
  const NPlane A(a), B(b);
  const Transport f = discrete_transport({{A, B}}), r = discrete_transport({{B, A}});
  CHECK(f.partial);
  CHECK(f.rank == 1);
  CHECK(dist(f.matrix * r.matrix * f.matrix, f.matrix) < 1e-12);
  CHECK(dist(r.matrix, f.matrix.adjoint()) < 1e-12);
}

TEST_CASE("validate rejects bad paths") {
  auto g = rng(42);
  const NPlane A = NPlane::from_span(random_gaussian(4, 2, g));
  const NPlane B = NPlane::from_span(random_gaussian(4, 2, g));
  const NPlane C = NPlane::from_span(random_gaussian(4, 1, g));
  CHECK_THROWS_AS(validate({{A}}), PreconditionError);
  CHECK_THROWS_AS(validate({{A, C}}), DimensionError);
  CHECK_THROWS_AS(validate({{A, B}, true}), PreconditionError);
  CHECK_NOTHROW(validate({{A, B, A}, true}));
}

TEST_CASE("continuous_transport: constant path, frame covariance, serial reference") {
  auto g = rng(43);
  const NPlane V = NPlane::from_span(random_gaussian(5, 2, g));
  CHECK(dist(continuous_transport([V](double) { return V; }, 1000), CMatrix::Identity(2, 2)) < 1e-12);

  const PlaneSampler p = helix_path(helix(3, 2, 2 * pi, -4 * pi), 1.0);
  const CMatrix S = continuous_transport(p, 3000);
  CHECK(dist(S, serial::continuous_transport(p, 3000)) < 1e-12);

  // jumping frames: S' = T_N^dagger S T_0 in the new frames
  const PlaneSampler q = scrambled(p);
  const CMatrix T0 = p(0.0).frame().adjoint() * q(0.0).frame();
  const CMatrix TN = p(1.0).frame().adjoint() * q(1.0).frame();
  CHECK(dist(continuous_transport(q, 3000), TN.adjoint() * S * T0) < 1e-9);
  CHECK(phases_match(holonomy(q, 3000).phases, holonomy(p, 3000).phases, 1e-9));

  CHECK_THROWS_AS(continuous_transport(p, 1), PreconditionError);
}

TEST_CASE("continuous_transport along the shortest geodesic is the teletransporter") {
  auto g = rng(44);
  for (int trial = 0; trial < 5; ++trial) {
    const NPlane V = NPlane::from_span(random_gaussian(5, 2, g));
    const NPlane W = NPlane::from_span(random_gaussian(5, 2, g));
    const Geodesic geo = shortest_geodesic(V, W);
    const NPlane A = geo.at(0.0), B = geo.at(1.0);
    const CMatrix S = continuous_transport(geo.sampler(), 2000);
    const CMatrix Gamma = teletransporter(A, B).matrix;
    CHECK(dist(S, Gamma) < 1e-3);
    const HolonomyResult h = holonomy(geo.sampler(), 2000);
    for (double ph : h.phases) CHECK(std::abs(ph) < 1e-3);
  }
}

TEST_CASE("holonomy: closed loops") {
  auto g = rng(45);
  const NPlane V = NPlane::from_span(random_gaussian(4, 2, g));
  const HolonomyResult still = holonomy(scrambled([V](double) { return V; }), 500);
  for (double ph : still.phases) CHECK(std::abs(ph) < 1e-12);

  // theta and phi both close at T = 1
  const three::HelixSpec h = helix(3, 2, 2 * pi, -4 * pi);
  const three::HelixRotation rot = three::helix_rotation(h);
  const std::vector<double> want{wrap_angle(rot.Omega / 2 - rot.zeta), wrap_angle(-rot.Omega / 2 - rot.zeta)};
  const HolonomyResult closed = holonomy(helix_path(h, 1.0), 20000);
  CHECK_FALSE(closed.partial);
  CHECK(phases_match(closed.phases, want, 1e-3));
  CHECK(unitarity_defect(closed.matrix) < 1e-8);
}

TEST_CASE("holonomy: open helix against the analytic route") {
  const three::HelixSpec h = helix(3, 2, 2 * pi, -4 * pi);
  const HolonomyResult num = holonomy(helix_path(h, 1.0), 100000);
  const HolonomyResult ana = three::helix_holonomy_analytic(h, 1.0);
  CHECK(phases_match(num.phases, ana.phases, 1e-3));
  CHECK(num.steps_used == 100000);
}

TEST_CASE("holonomy: frozen phases inside the window") {
  const auto [t1, t2] = three::frozen_window(1.1, 1.0);
  for (double t : {t1 + 0.1, 0.5 * (t1 + t2), t2 - 0.1}) {
    const HolonomyResult num = holonomy(helix_path(helix(1.1, 1.1, 1.0, -1.0), t), 20000);
    CHECK(phases_match(num.phases, {0.0, pi}, 1e-3));
  }
  // the r = s = 1.4 plateau around omega t = pi
  const HolonomyResult mid = holonomy(helix_path(helix(1.4, 1.4, 1.0, -1.0), pi), 20000);
  CHECK(phases_match(mid.phases, {0.0, pi}, 1e-3));
}

TEST_CASE("holonomy invariants: reparameterization, reversal, base point") {
  const three::HelixSpec h = helix(3, 2, 2 * pi, -4 * pi);
  const PlaneSampler p = helix_path(h, 0.7);
  const auto ref = holonomy(p, 20000).phases;

  const PlaneSampler slow = [p](double lam) { return p(0.5 * (lam + lam * lam)); };
  CHECK(phases_match(holonomy(slow, 20000).phases, ref, 1e-3));

  const PlaneSampler back = [p](double lam) { return p(1.0 - lam); };
  std::vector<double> neg;
  for (double x : ref) neg.push_back(-x);
  CHECK(phases_match(holonomy(back, 20000).phases, neg, 1e-3));

  // closed loop started elsewhere
  const PlaneSampler loop = helix_path(h, 1.0);
  const PlaneSampler shifted = [loop](double lam) { return loop(std::fmod(lam + 0.3, 1.0)); };
  CHECK(phases_match(holonomy(shifted, 20000).phases, holonomy(loop, 20000).phases, 1e-3));
}

TEST_CASE("intermediate_holonomies") {
  const PlaneSampler p = helix_path(helix(3, 2, 2 * pi, -4 * pi), 1.0);
  const auto hs = intermediate_holonomies(p, 2000);
  REQUIRE(hs.size() == 2001);
  CHECK(dist(hs[0].matrix, CMatrix::Identity(2, 2)) < 1e-12);
  for (double ph : hs[0].phases) CHECK(std::abs(ph) < 1e-12);
  CHECK(dist(hs.back().matrix, holonomy(p, 2000).matrix) < 1e-10);

  const auto ser = serial::intermediate_holonomies(p, 2000);
  double worst = 0;
  for (std::size_t j = 0; j < hs.size(); ++j) worst = std::max(worst, (hs[j].matrix - ser[j].matrix).norm());
  CHECK(worst < 1e-12);
}

TEST_CASE("default helix grid reproduces the golden phases") {
  std::ifstream in(std::string(HOLO_TEST_DATA) + "/fig5a_golden.csv");
  REQUIRE(in.good());
  std::vector<std::array<double, 3>> gold;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::array<double, 3> row{};
    ss >> row[0] >> row[1] >> row[2];
    gold.push_back(row);
  }
  REQUIRE(gold.size() == 200);

  const three::HelixSpec h = helix(3, 2, 2 * pi, -4 * pi);
  const long per = 505;  // 199 * 505 >= 1e5
  const auto hs = intermediate_holonomies(helix_path(h, 1.0), per * 199);
  double worst = 0;
  for (long k = 0; k < 200; ++k) {
    CHECK(std::abs(gold[k][0] - k / 199.0) < 1e-8);
    const auto& ph = hs[k * per].phases;
    REQUIRE(ph.size() == 2);
    // sorted lists can swap order across the branch cut, so pair each golden value with its nearest
    for (int j = 0; j < 2; ++j)
      worst = std::max(worst, std::min(circular_distance(ph[0], gold[k][1 + j]),
                                       circular_distance(ph[1], gold[k][1 + j])));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("gauge_field") {
  auto g = rng(46);
  const CMatrix F = NPlane::from_span(random_gaussian(4, 2, g)).frame();
  CHECK(gauge_field([F](double) { return F; }, 0.3, 1e-4).A.norm() < 1e-14);
  CHECK_THROWS_AS(gauge_field([F](double) { return F; }, 0.3, 0.0), PreconditionError);

  const double r = 3, s = 2;
  const three::TorusGauge tg = three::torus_gauge(r, s);
  for (double th : {0.0, 1.0, 2.5}) {
    const double ph = 0.7 - th;
    const auto A_th = gauge_field([&](double x) { return three::eigenframe({r, s, x, ph}).ground; }, th, 1e-4);
    const auto A_ph = gauge_field([&](double x) { return three::eigenframe({r, s, th, x}).ground; }, ph, 1e-4);
    CHECK(dist(A_th.A, tg.A_theta) < 1e-7);
    CHECK(dist(A_ph.A, tg.A_phi) < 1e-7);
  }
}

TEST_CASE("path_ordered_exp") {
  CHECK(dist(path_ordered_exp([](double) { return CMatrix::Zero(2, 2); }, 0, 1, 10),
             CMatrix::Identity(2, 2)) < 1e-15);

  const three::HelixSpec h = helix(3, 2, 2 * pi, -4 * pi);
  const CMatrix A = three::helix_rotation(h).A;
  const CMatrix E = path_ordered_exp([A](double) { return A; }, 0, 0.8, 50);
  CHECK(dist(E, expm_hermitian(A, I * 0.8)) < 1e-12);
  CHECK(dist(E, three::helix_transport(h, 0.8)) < 1e-12);

  // A' = T^dagger A T + i T^dagger dT with T = exp(i lam K): result T_N^dagger G T_0
  auto g = rng(47);
  const CMatrix a = random_gaussian(3, 3, g), b = random_gaussian(3, 3, g), k = random_gaussian(3, 3, g);
  const CMatrix H1 = 0.5 * (a + a.adjoint()), H2 = 0.5 * (b + b.adjoint()), K = 0.5 * (k + k.adjoint());
  const MatrixField field = [&](double lam) { return CMatrix(H1 + lam * H2); };
  const auto T = [&](double lam) { return expm_hermitian(K, I * lam); };
  const MatrixField gauged = [&](double lam) {
    return CMatrix(T(lam).adjoint() * field(lam) * T(lam) - K);
  };
  const CMatrix G = path_ordered_exp(field, 0, 1, 4000);
  const CMatrix Gp = path_ordered_exp(gauged, 0, 1, 4000);
  CHECK(dist(Gp, T(1).adjoint() * G * T(0)) < 1e-5);
  CHECK(unitarity_defect(path_ordered_exp(field, 0, 1, 3)) < 1e-12);
  CHECK(unitarity_defect(Gp) < 1e-9);
}

TEST_CASE("simon_mukunda_phase") {
  auto g = rng(48);
  const CVector v0 = random_gaussian(3, 1, g).col(0).normalized();
  CHECK(std::abs(simon_mukunda_phase([v0](double) { return v0; }, 100)) < 1e-14);
  CHECK(std::abs(wrap_angle(simon_mukunda_phase([v0](double l) { return CVector(std::polar(1.0, 2.3 * l) * v0); }, 100))) <
        1e-12);
  CHECK_THROWS_AS(simon_mukunda_phase([v0](double) { return CVector(2.0 * v0); }, 10), PreconditionError);
  const CVector e1 = CVector::Unit(2, 0), e2 = CVector::Unit(2, 1);
  CHECK_THROWS_AS(simon_mukunda_phase([&](double l) { return CVector(std::cos(l * pi / 2) * e1 + std::sin(l * pi / 2) * e2); }, 10),
                  UndefinedPhase);

  // |2_2> along the omega_phi = 0 helix
  for (double wt : {0.5, 1.5, 3.0}) {
    const double r = 3, s = 2, T = 1.3;
    const three::HelixSpec h = helix(r, s, wt, 0);
    const VectorField v = [&](double l) { return CVector(three::eigenframe(h.at(l * T)).ground.col(1)); };
    const double N1sq = r * r + s * s + r * r * s * s;
    const double want = std::arg(r * r + (1 + r * r) * s * s * std::polar(1.0, wt * T)) -
                        (1 + r * r) * s * s * wt * T / N1sq;
    CHECK(circular_distance(simon_mukunda_phase(v, 4000), want) < 1e-5);

    // reparameterization and a smooth local phase
    const VectorField w = [&](double l) {
      return CVector(std::polar(1.0, std::sin(3 * l)) * v(l * l));
    };
    CHECK(circular_distance(simon_mukunda_phase(w, 4000), want) < 1e-5);
  }
}

TEST_CASE("bargmann_phase") {
  auto g = rng(49);
  const CVector v = random_gaussian(3, 1, g).col(0).normalized();
  CHECK(bargmann_phase({v, v, v}) == doctest::Approx(0.0));

  std::vector<CVector> vs;
  for (int k = 0; k < 5; ++k) vs.push_back(random_gaussian(3, 1, g).col(0).normalized());
  const double ref = bargmann_phase(vs);
  for (auto& x : vs) x *= std::polar(1.0, std::uniform_real_distribution<double>(-pi, pi)(g));
  CHECK(circular_distance(bargmann_phase(vs), ref) < 1e-12);

  CVector e(2), w(2), x(2);
  e << 1.0, 0.0;
  w << 1.0, I;
  x << 1.0, 1.0;
  CHECK(bargmann_phase({e, w.normalized(), x.normalized()}) == doctest::Approx(pi / 4));

  CHECK_THROWS_AS(bargmann_phase({e, CVector::Unit(2, 1)}), UndefinedPhase);

  // densely sampled loop on the Bloch sphere: Bargmann and the line integral agree
  const double th = 1.1;
  const VectorField loop = [th](double l) {
    CVector u(2);
    u << std::cos(th / 2), std::polar(std::sin(th / 2), 2 * pi * l);
    return u;
  };
  std::vector<CVector> dense;
  for (int k = 0; k < 3000; ++k) dense.push_back(loop(k / 3000.0));
  const double solid = pi * (1 - std::cos(th));
  CHECK(circular_distance(bargmann_phase(dense), simon_mukunda_phase(loop, 200)) < 1e-3);
  CHECK(std::min(circular_distance(bargmann_phase(dense), solid),
                 circular_distance(bargmann_phase(dense), -solid)) < 1e-4);
}

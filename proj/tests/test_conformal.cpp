#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "dcg/conformal.hpp"
#include "dcg/experiments.hpp"
#include "dcg/rng.hpp"
#include "test_util.hpp"

using namespace dcg;

namespace {

DiskCoords scale_into_disk(const Triangulation& T, const PlanarCoords& coords, double target) {
  double maxabs = 0.0;
  for (VertexId v : T.vertices()) maxabs = std::max(maxabs, std::abs(coords.at(v)));
  DiskCoords out;
  for (VertexId v : T.vertices()) out.positions[v] = coords.at(v) * (target / maxabs);
  return out;
}

}  // namespace

TEST_CASE("factor conversion between geometries") {
  SplitMix64 rng(1);
  Triangulation T = build_triangulation({{0, 1, 2}});
  DiskCoords a, b;
  a.positions[0] = {0.0, 0.0};
  a.positions[1] = {0.3, 0.0};
  a.positions[2] = {0.0, 0.3};
  SUBCASE("identical coordinates change nothing") {
    ConformalFactor u;
    for (VertexId v : {0, 1, 2}) u.values[v] = rng.uniform(-1.0, 1.0);
    ConformalFactor uh = factor_e2h(u, a, a);
    for (VertexId v : {0, 1, 2}) CHECK(uh.at(v) == u.at(v));
  }
  SUBCASE("closed form at the origin") {
    b = a;
    b.positions[0] = {0.5, 0.0};
    ConformalFactor u;
    for (VertexId v : {0, 1, 2}) u.values[v] = 0.0;
    ConformalFactor uh = factor_e2h(u, a, b);
    // z = 0, z' = 0.5: log(1/0.75)
    Complex za = a.at(0), zb = b.at(0);
    (void)za;
    (void)zb;
    CHECK(uh.at(0) == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-14));
  }
  SUBCASE("h2e inverts e2h") {
    b = a;
    b.positions[1] = {0.2, 0.4};
    ConformalFactor u;
    for (VertexId v : {0, 1, 2}) u.values[v] = rng.uniform(-1.0, 1.0);
    ConformalFactor back = factor_h2e(factor_e2h(u, a, b), a, b);
    for (VertexId v : {0, 1, 2}) CHECK(back.at(v) == doctest::Approx(u.at(v)).epsilon(1e-14));
  }
}

TEST_CASE("ehconf identity") {
  auto [T, coords] = gen_hex_disk(2);
  DiskCoords a = scale_into_disk(T, coords, 0.4);
  SUBCASE("identical embeddings have zero discrepancy") {
    MarginReport r = verify_ehconf(T, a, a);
    CHECK(r.pass);
    CHECK(r.margin < 1e-14);
  }
  SUBCASE("mobius images verify with a nonconstant factor") {
    SplitMix64 rng(2);
    for (int i = 0; i < 10; ++i) {
      Complex z0 = std::polar(0.4 * rng.next_double(), 2.0 * M_PI * rng.next_double());
      Complex rot = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
      DiskCoords b;
      for (VertexId v : T.vertices()) b.positions[v] = rot * mobius_to_origin(z0, a.at(v));
      MarginReport r = verify_ehconf(T, a, b);
      CHECK(r.pass);
      // the euclidean factor is nonconstant unless the map is a rotation
      if (std::abs(z0) > 0.05) {
        PLMetric la = induced_metric(T, a.as_planar());
        PLMetric lb = induced_metric(T, b.as_planar());
        ConformalFactor u = conformal_factor_between(T, la, lb);
        double lo = 1e9, hi = -1e9;
        for (VertexId v : T.vertices()) {
          lo = std::min(lo, u.at(v));
          hi = std::max(hi, u.at(v));
        }
        CHECK(hi - lo > 1e-3);
      }
    }
  }
  SUBCASE("non-conformal perturbations are flagged") {
    DiskCoords b = a;
    b.positions[0] += Complex(0.01, 0.0);
    CHECK_THROWS_CODE(verify_ehconf(T, a, b), ErrorCode::NotConformal);
  }
}

TEST_CASE("curvature jacobian entries on the hexagonal disk") {
  auto [T, coords] = gen_hex_disk(2);
  PLMetric l = unit_metric(T);
  ConformalFactor u;
  for (VertexId v : T.vertices()) u.values[v] = 0.0;
  Eigen::SparseMatrix<double> J = curvature_jacobian(T, l, u);
  Eigen::MatrixXd D(J);

  std::size_t center = T.interior_index(0);
  CHECK(D(center, center) == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
  for (VertexId j : T.neighbors(0)) {
    if (T.is_boundary(j)) continue;
    CHECK(D(center, T.interior_index(j)) ==
          doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-12));
  }

  SUBCASE("symmetry") {
    CHECK((D - D.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("constants lie in the kernel of the full differential") {
    // the diagonal carries the boundary columns, so J*1 equals the eta mass
    // on boundary edges; dilation invariance is the statement K(u+c) = K(u)
    SplitMix64 rng(3);
    ConformalFactor w;
    for (VertexId v : T.vertices()) w.values[v] = rng.uniform(-0.1, 0.1);
    CurvatureVector K0 = curvature_vector(T, apply_conformal(T, l, w));
    ConformalFactor wc;
    for (VertexId v : T.vertices()) wc.values[v] = w.at(v) + 0.37;
    CurvatureVector K1 = curvature_vector(T, apply_conformal(T, l, wc));
    for (VertexId v : T.vertices()) CHECK(K1.at(v) == doctest::Approx(K0.at(v)).epsilon(1e-12));
    // row identity: diag equals the sum of all neighbor weights
    CotWeights eta = cot_weights(T, apply_conformal(T, l, u));
    for (VertexId i : T.interior_vertices()) {
      double row = D(T.interior_index(i), T.interior_index(i));
      for (VertexId j : T.neighbors(i))
        if (!T.is_boundary(j)) row += D(T.interior_index(i), T.interior_index(j));
      double boundary_mass = 0.0;
      for (VertexId j : T.neighbors(i))
        if (T.is_boundary(j)) boundary_mass += eta.at(Edge(i, j));
      CHECK(row == doctest::Approx(boundary_mass).epsilon(1e-12));
    }
  }
}

TEST_CASE("jacobian matches central finite differences") {
  auto [T, coords] = gen_random_delaunay_disk(40, 23);
  PLMetric l = induced_metric(T, coords);
  SplitMix64 rng(5);
  ConformalFactor u;
  for (VertexId v : T.vertices()) u.values[v] = rng.uniform(-0.1, 0.1);
  // keep an angle margin the difference probe cannot eat
  for (;;) {
    bool safe = false;
    try {
      safe = nondegeneracy_margin(T, apply_conformal(T, l, u)) > 4e-3;
    } catch (const Error&) {
    }
    if (safe) break;
    for (auto& [v, value] : u.values) value *= 0.5;
  }

  Eigen::SparseMatrix<double> J = curvature_jacobian(T, l, u);
  Eigen::MatrixXd D(J);
  const auto& interior = T.interior_vertices();
  double t = 1e-8;
  double worst = 0.0;
  for (std::size_t col = 0; col < interior.size(); ++col) {
    ConformalFactor up = u, dn = u;
    up.values[interior[col]] += t;
    dn.values[interior[col]] -= t;
    CurvatureVector Kp = curvature_vector(T, apply_conformal(T, l, up));
    CurvatureVector Kn = curvature_vector(T, apply_conformal(T, l, dn));
    for (std::size_t row = 0; row < interior.size(); ++row) {
      double fd = (Kp.at(interior[row]) - Kn.at(interior[row])) / (2.0 * t);
      worst = std::max(worst, std::abs(fd - D(row, col)));
    }
  }
  CHECK(worst / D.cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("newton solves prescribed curvature") {
  auto [T, coords] = gen_hex_disk(3);
  PLMetric l = unit_metric(T);

  SUBCASE("constant boundary data lands in one step") {
    VertexMap<double> boundary;
    for (VertexId v : T.boundary_vertices()) boundary[v] = 0.35;
    auto [u, report] = newton_prescribed_curvature(T, l, CurvatureTarget::flat(T, boundary));
    CHECK(report.converged);
    CHECK(report.iterations <= 1);
    for (VertexId v : T.vertices()) CHECK(std::abs(u.at(v) - 0.35) < 1e-10);
  }

  SUBCASE("a single bumped boundary value keeps the maximum on the boundary") {
    VertexMap<double> boundary;
    for (VertexId v : T.boundary_vertices()) boundary[v] = 0.0;
    boundary[T.boundary_vertices()[0]] = std::log(2.0);
    auto [u, report] = newton_prescribed_curvature(T, l, CurvatureTarget::flat(T, boundary));
    CHECK(report.converged);
    CHECK(report.final_residual <= 1e-10);
    double interior_max = 0.0, boundary_max = 0.0;
    for (VertexId v : T.interior_vertices())
      interior_max = std::max(interior_max, std::abs(u.at(v)));
    for (VertexId v : T.boundary_vertices())
      boundary_max = std::max(boundary_max, std::abs(u.at(v)));
    CHECK(interior_max < boundary_max);
    CHECK(boundary_max == doctest::Approx(std::log(2.0)));
  }

  SUBCASE("infeasible targets do not converge") {
    VertexMap<double> boundary;
    for (VertexId v : T.boundary_vertices()) boundary[v] = 0.0;
    CurvatureTarget target = CurvatureTarget::flat(T, boundary);
    for (auto& [v, k] : target.interior_curvature) k = -8.0;  // breaks Gauss-Bonnet feasibility
    bool thrown = false;
    try {
      newton_prescribed_curvature(T, l, target);
    } catch (const Error& e) {
      thrown = true;
      CHECK((e.code() == ErrorCode::NonConvergence || e.code() == ErrorCode::SingularSystem ||
             e.code() == ErrorCode::LineSearchStall));
    }
    CHECK(thrown);
  }

  SUBCASE("residuals contract quadratically once small") {
    SplitMix64 rng(7);
    VertexMap<double> boundary;
    for (VertexId v : T.boundary_vertices()) boundary[v] = rng.uniform(-0.2, 0.2);
    SolveOptions options;
    options.tolerance = 1e-13;
    // start from zero to see several iterations
    ConformalFactor zero;
    for (VertexId v : T.vertices()) zero.values[v] = 0.0;
    options.init = zero;
    auto [u, report] = newton_prescribed_curvature(T, l, CurvatureTarget::flat(T, boundary),
                                                   options);
    CHECK(report.converged);
    for (std::size_t k = 0; k + 1 < report.residual_trace.size(); ++k) {
      double r = report.residual_trace[k];
      double next = report.residual_trace[k + 1];
      if (r < 1e-2 && r > 1e-12) CHECK(next / (r * r) < 50.0);
    }
  }

  SUBCASE("solves compose with development to the scaled metric") {
    SplitMix64 rng(9);
    VertexMap<double> boundary;
    for (VertexId v : T.boundary_vertices()) boundary[v] = rng.uniform(-0.2, 0.2);
    SolveOptions options;
    options.tolerance = 1e-12;
    auto [u, report] = newton_prescribed_curvature(T, l, CurvatureTarget::flat(T, boundary),
                                                   options);
    REQUIRE(report.converged);
    PLMetric scaled = apply_conformal(T, l, u);
    PlanarCoords developed = develop_flat_metric(T, scaled);
    PLMetric induced = induced_metric(T, developed);
    for (const Edge& e : T.edges())
      CHECK(std::abs(induced.at(e) - scaled.at(e)) / scaled.at(e) < 1e-9);
    CHECK(is_geodesic_embedding(T, developed).pass);
  }
}

TEST_CASE("solver margin trace records the delaunay cone") {
  auto [T, coords] = gen_hex_disk(3);
  PLMetric l = unit_metric(T);
  SplitMix64 rng(11);
  VertexMap<double> boundary;
  for (VertexId v : T.boundary_vertices()) boundary[v] = rng.uniform(-0.1, 0.1);
  auto [u, report] = newton_prescribed_curvature(T, l, CurvatureTarget::flat(T, boundary));
  CHECK(report.delaunay_margin_trace.size() == report.residual_trace.size());
  for (double m : report.delaunay_margin_trace) CHECK(m > 0.0);
}

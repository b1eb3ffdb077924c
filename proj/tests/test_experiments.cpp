#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "dcg/experiments.hpp"
#include "test_util.hpp"

using namespace dcg;

TEST_CASE("hexagonal disk counts") {
  auto [T1, c1] = gen_hex_disk(1);
  CHECK(T1.vertex_count() == 7);
  CHECK(T1.face_count() == 6);
  auto [T2, c2] = gen_hex_disk(2);
  CHECK(T2.vertex_count() == 19);
  CHECK(T2.face_count() == 24);
  auto [T3, c3] = gen_hex_disk(3);
  CHECK(T3.vertex_count() == 37);
  CHECK(T3.face_count() == 54);
}

TEST_CASE("hexagonal disk geometry") {
  auto [T, coords] = gen_hex_disk(3);
  CHECK(std::abs(coords.at(0)) == 0.0);  // center at the origin
  PLMetric l = unit_metric(T);
  CHECK(nondegeneracy_margin(T, l) == doctest::Approx(M_PI / 3).epsilon(1e-12));
  CHECK(delaunay_margin(T, l) == doctest::Approx(M_PI / 3).epsilon(1e-12));
  PLMetric li = induced_metric(T, coords);
  for (const Edge& e : T.edges()) CHECK(li.at(e) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random delaunay disks are deterministic in the seed") {
  auto [Ta, ca] = gen_random_delaunay_disk(40, 123);
  auto [Tb, cb] = gen_random_delaunay_disk(40, 123);
  REQUIRE(Ta.faces().size() == Tb.faces().size());
  for (std::size_t i = 0; i < Ta.faces().size(); ++i) CHECK(Ta.faces()[i] == Tb.faces()[i]);
  for (VertexId v : Ta.vertices()) {
    CHECK(ca.at(v).real() == cb.at(v).real());
    CHECK(ca.at(v).imag() == cb.at(v).imag());
  }
  auto [Tc, cc] = gen_random_delaunay_disk(40, 124);
  CHECK(cc.at(0) != ca.at(0));
}

TEST_CASE("three points in general position make one triangle") {
  auto [T, coords] = gen_random_delaunay_disk(3, 5);
  CHECK(T.vertex_count() == 3);
  CHECK(T.face_count() == 1);
}

TEST_CASE("generated triangulations have empty circumcircles") {
  // brute-force oracle over all faces and all vertices
  for (std::uint64_t seed : {1ull, 7ull, 19ull}) {
    for (int n : {5, 20, 50}) {
      auto [T, coords] = gen_random_delaunay_disk(n, seed);
      CHECK(delaunay_margin(T, induced_metric(T, coords)) >= 0.0);
      for (const Face& f : T.faces()) {
        Circumcircle c = circumcircle(coords.at(f[0]), coords.at(f[1]), coords.at(f[2]));
        for (VertexId v : T.vertices()) {
          if (v == f[0] || v == f[1] || v == f[2]) continue;
          CHECK(std::abs(coords.at(v) - c.center) >= c.radius * (1.0 - 1e-9));
        }
      }
    }
  }
}

TEST_CASE("conformal hex pairs are honest conformal embeddings") {
  SplitMix64 rng(31);
  auto pair = try_conformal_hex_pair(3, 0.2, 0.1, rng);
  REQUIRE(pair.has_value());
  const Triangulation& T = pair->T;
  PLMetric base_metric = induced_metric(T, pair->base);
  PLMetric mapped_metric = induced_metric(T, pair->mapped);
  ConformalFactor u = conformal_factor_between(T, base_metric, mapped_metric);
  for (VertexId v : T.vertices()) CHECK(std::abs(u.at(v) - pair->u.at(v)) < 1e-8);
  CHECK(std::abs(pair->mapped.at(0)) == 0.0);
  CHECK(is_geodesic_embedding(T, pair->mapped).pass);
}

TEST_CASE("hypothesis rings satisfy their own constants") {
  SplitMix64 rng(37);
  for (int i = 0; i < 50; ++i) {
    RingSample s = sample_hypothesis_ring(rng, 0.9);
    CHECK(std::abs(s.coords.at(0)) <= 0.9);
    PLMetric l = induced_metric(s.T, s.coords.as_planar());
    CHECK(nondegeneracy_margin(s.T, l) >= s.eps);
    double bound = (1.0 - std::norm(s.coords.at(0))) * std::sin(s.eps);
    for (VertexId j : one_ring(s.T, 0).cycle) CHECK(l.at(Edge(0, j)) < bound);
  }
}

TEST_CASE("max principle experiment") {
  ExperimentConfig config;
  config.seed = 41;
  config.trials = 25;
  config.size = 5;
  config.amplitude = 0.2;
  ExperimentReport report = run_max_principle(config);
  CHECK(report.failed() == 0);
  CHECK(report.passed() >= 25);
}

TEST_CASE("oversized amplitudes are skipped, not failed") {
  ExperimentConfig config;
  config.seed = 43;
  config.trials = 6;
  config.size = 4;
  config.amplitude = 2.5;
  try {
    ExperimentReport report = run_max_principle(config);
    CHECK(report.failed() == 0);
    CHECK(report.skipped() >= 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientValidTrials);
  }
}

TEST_CASE("hyperbolic min principle experiment") {
  ExperimentConfig config;
  config.seed = 47;
  config.trials = 25;
  config.amplitude = 0.2;
  ExperimentReport report = run_hyp_min_principle(config);
  CHECK(report.failed() == 0);
  CHECK(report.passed() >= 25);
}

TEST_CASE("a positive constant hyperbolic factor passes the min principle vacuously") {
  SplitMix64 rng(97);
  RingSample s = sample_hypothesis_ring(rng, 0.0);  // center pinned at the origin
  DiskCoords grown;
  for (const auto& [v, z] : s.coords.positions) grown.positions[v] = 1.2 * z;
  ConformalFactor uh = hyp_factor_between(s.T, induced_hyp_metric(s.T, s.coords),
                                          induced_hyp_metric(s.T, grown));
  for (VertexId v : s.T.vertices()) CHECK(uh.at(v) > 0.0);
  // min{u^h, 0} is identically zero on both the ring and its rim
  double rim_min = 0.0;
  for (VertexId j : one_ring(s.T, 0).cycle) rim_min = std::min(rim_min, std::min(uh.at(j), 0.0));
  CHECK(std::min(uh.at(0), 0.0) >= rim_min);
  CHECK(rim_min == 0.0);
}

TEST_CASE("key estimate experiment") {
  ExperimentConfig config;
  config.seed = 53;
  config.trials = 10;
  config.size = 4;
  config.amplitude = 0.25;
  ExperimentReport report = run_key_estimate(config);
  CHECK(report.failed() == 0);
  CHECK(report.passed() >= 10);
  CHECK(report.worst_margin() > 0.0);
}

TEST_CASE("pure dilation meets the key estimate with predictable slack") {
  auto [T, base] = gen_hex_disk(3);
  double c = 0.4;
  PlanarCoords mapped;
  for (VertexId v : T.vertices()) mapped.positions[v] = std::exp(c) * base.at(v);

  PLMetric l = unit_metric(T);
  double eps = nondegeneracy_margin(T, l);  // both metrics share angles
  double M = -std::log(std::pow(std::sin(eps), 3) / 2.0);

  double r = 0.0;
  for (VertexId v : T.vertices()) r = std::max(r, std::abs(base.at(v)));
  double r0 = std::numeric_limits<double>::infinity();
  std::vector<VertexId> cycle = T.boundary_cycle();
  for (std::size_t k = 0; k < cycle.size(); ++k)
    r0 = std::min(r0, point_segment_distance({0, 0}, base.at(cycle[k]),
                                             base.at(cycle[(k + 1) % cycle.size()])));
  double r_prime = std::exp(c) * r0;

  // u == c >= log(r'/r) - M with slack exactly M + log(r/r0)
  double slack = c - (std::log(r_prime / r) - M);
  CHECK(slack == doctest::Approx(M + std::log(r / r0)).epsilon(1e-9));
  CHECK(slack > 0.0);
}

TEST_CASE("gradient estimate experiment and tightness") {
  ExperimentConfig config;
  config.seed = 59;
  config.trials = 500;
  ExperimentReport report = run_gradient_estimate(config);
  CHECK(report.failed() == 0);

  // engineered extreme: both triangles have angles (eps, pi/2, pi/2 - eps)
  // with the roles of i and j swapped; the bound is attained exactly
  double eps = 0.3;
  Triangulation T = build_triangulation({{0, 1, 2}});
  PLMetric l, l2;
  l.lengths[Edge(1, 2)] = 1.0;              // opposite the right angle at 0
  l.lengths[Edge(0, 2)] = std::sin(eps);    // opposite the angle eps at 1
  l.lengths[Edge(0, 1)] = std::cos(eps);    // opposite pi/2 - eps at 2
  l2.lengths[Edge(0, 2)] = 1.0;
  l2.lengths[Edge(1, 2)] = std::sin(eps);
  l2.lengths[Edge(0, 1)] = std::cos(eps);
  ConformalFactor u = conformal_factor_between(T, l, l2);
  double bound = 4.0 * std::log(1.0 / std::sin(eps));
  CHECK(std::abs(u.at(0) - u.at(1)) == doctest::Approx(bound).epsilon(1e-9));
  double margin = std::min(nondegeneracy_margin(T, l), nondegeneracy_margin(T, l2));
  CHECK(margin == doctest::Approx(eps).epsilon(1e-12));
}

TEST_CASE("rigidity decay produces a table and constant boundaries are exact") {
  ExperimentConfig config;
  config.seed = 61;
  config.trials = 8;
  config.size = 4;
  config.amplitude = 0.0;  // constant boundary: all oscillations must vanish
  ExperimentReport report = run_rigidity_decay(config);
  REQUIRE(report.table.size() >= 2);
  for (const TrialRecord& rec : report.trials)
    if (rec.status == TrialStatus::Pass) CHECK(std::abs(rec.margin) < 1e-10);
}

TEST_CASE("reports are byte-stable for a fixed config") {
  ExperimentConfig config;
  config.seed = 67;
  config.trials = 50;
  auto render = [&]() {
    std::ostringstream os;
    run_lemma21(config).write_text(os);
    return os.str();
  };
  std::string first = render();
  CHECK(first == render());
  CHECK(first.find("summary:") != std::string::npos);
}

TEST_CASE("csv export carries one row per trial") {
  ExperimentConfig config;
  config.seed = 71;
  config.trials = 5;
  ExperimentReport report = run_gradient_estimate(config);
  std::ostringstream os;
  report.write_csv(os);
  std::string text = os.str();
  int rows = 0;
  for (char ch : text) rows += ch == '\n';
  CHECK(rows == 6);  // header + 5 trials
}

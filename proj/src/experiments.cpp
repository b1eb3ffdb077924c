#include "dcg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace dcg {

namespace {

std::string fmt(double x) { return format_double(x); }

}  // namespace

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

std::pair<Triangulation, PlanarCoords> gen_hex_disk(int rings) {
  if (rings < 1) fail(ErrorCode::FormatError, "rings must be >= 1");

  auto hex_ring = [](int q, int r) { return std::max({std::abs(q), std::abs(r), std::abs(q + r)}); };

  // Lattice points sorted by (ring, q, r); the center gets id 0.
  std::vector<std::array<int, 2>> cells;
  for (int q = -rings; q <= rings; ++q)
    for (int r = -rings; r <= rings; ++r)
      if (hex_ring(q, r) <= rings) cells.push_back({q, r});
  std::sort(cells.begin(), cells.end(), [&](const auto& a, const auto& b) {
    int ra = hex_ring(a[0], a[1]), rb = hex_ring(b[0], b[1]);
    if (ra != rb) return ra < rb;
    return a < b;
  });

  std::map<std::array<int, 2>, VertexId> id_of;
  PlanarCoords coords;
  const Complex v1(1.0, 0.0), v2(0.5, std::sqrt(3.0) / 2.0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    id_of[cells[i]] = VertexId(i);
    coords.positions[VertexId(i)] = double(cells[i][0]) * v1 + double(cells[i][1]) * v2;
  }

  auto has = [&](int q, int r) { return hex_ring(q, r) <= rings; };
  std::vector<Face> faces;
  for (int q = -rings - 1; q <= rings; ++q)
    for (int r = -rings - 1; r <= rings; ++r) {
      if (has(q, r) && has(q + 1, r) && has(q, r + 1))
        faces.push_back({id_of.at({q, r}), id_of.at({q + 1, r}), id_of.at({q, r + 1})});
      if (has(q + 1, r) && has(q + 1, r + 1) && has(q, r + 1))
        faces.push_back({id_of.at({q + 1, r}), id_of.at({q + 1, r + 1}), id_of.at({q, r + 1})});
    }

  return {Triangulation::build(faces), std::move(coords)};
}

PLMetric unit_metric(const Triangulation& T) {
  PLMetric l;
  for (const Edge& e : T.edges()) l.lengths[e] = 1.0;
  return l;
}

namespace {

// > 0 when d lies strictly inside the circumcircle of the ccw triangle abc.
double incircle_det(Complex a, Complex b, Complex c, Complex d) {
  double adx = a.real() - d.real(), ady = a.imag() - d.imag();
  double bdx = b.real() - d.real(), bdy = b.imag() - d.imag();
  double cdx = c.real() - d.real(), cdy = c.imag() - d.imag();
  double ad = adx * adx + ady * ady;
  double bd = bdx * bdx + bdy * bdy;
  double cd = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) +
         ad * (bdx * cdy - bdy * cdx);
}

struct BowyerWatson {
  std::vector<Complex> points;  // sites then three super vertices
  std::vector<std::array<int, 3>> tris;

  explicit BowyerWatson(std::vector<Complex> sites) : points(std::move(sites)) {
    int s = int(points.size());
    const double R = 1024.0;
    points.push_back(Complex(R * std::cos(M_PI / 2), R * std::sin(M_PI / 2)));
    points.push_back(Complex(R * std::cos(M_PI * 7 / 6), R * std::sin(M_PI * 7 / 6)));
    points.push_back(Complex(R * std::cos(M_PI * 11 / 6), R * std::sin(M_PI * 11 / 6)));
    tris.push_back({s, s + 1, s + 2});
    for (int p = 0; p < s; ++p) insert(p);
  }

  void insert(int p) {
    std::vector<std::array<int, 3>> good;
    std::set<std::pair<int, int>> cavity;  // directed edges of the bad triangles
    for (const auto& t : tris) {
      if (incircle_det(points[t[0]], points[t[1]], points[t[2]], points[p]) > 0.0) {
        for (int k = 0; k < 3; ++k) cavity.insert({t[k], t[(k + 1) % 3]});
      } else {
        good.push_back(t);
      }
    }
    tris = std::move(good);
    for (const auto& e : cavity) {
      // edges interior to the cavity appear with both directions
      if (cavity.count({e.second, e.first})) continue;
      tris.push_back({e.first, e.second, p});
    }
  }

  std::vector<Face> faces_without_super() const {
    int s = int(points.size()) - 3;
    std::vector<Face> out;
    for (const auto& t : tris) {
      if (t[0] >= s || t[1] >= s || t[2] >= s) continue;
      Face f = {t[0], t[1], t[2]};
      // canonical rotation: smallest id first, orientation preserved
      int lo = int(std::min_element(f.begin(), f.end()) - f.begin());
      Face g = {f[lo], f[(lo + 1) % 3], f[(lo + 2) % 3]};
      out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

}  // namespace

std::pair<Triangulation, PlanarCoords> gen_random_delaunay_disk(int n, std::uint64_t seed) {
  if (n < 3) fail(ErrorCode::DegenerateSample, "need at least 3 points");

  for (int attempt = 0; attempt < 16; ++attempt) {
    SplitMix64 rng = SplitMix64::stream(seed, std::uint64_t(attempt));
    std::vector<Complex> sites;
    sites.reserve(std::size_t(n) + 64);
    for (int i = 0; i < n; ++i) {
      double radius = std::sqrt(rng.next_double());
      double angle = 2.0 * M_PI * rng.next_double();
      sites.push_back(std::polar(radius, angle));
    }
    if (n >= 4) {
      // Fence just outside the unit circle. The radial spread is deliberately
      // wide: near-equal radii would make consecutive fence triples almost
      // collinear and produce sliver caps on the hull.
      int fence = 16 + 2 * int(std::sqrt(double(n)));
      for (int k = 0; k < fence; ++k) {
        double angle = 2.0 * M_PI * (double(k) + 0.3 * rng.next_double()) / double(fence);
        double radius = 1.05 + 0.18 * rng.next_double();
        sites.push_back(std::polar(radius, angle));
      }
    }

    BowyerWatson bw(sites);
    std::vector<Face> faces = bw.faces_without_super();
    if (faces.empty()) continue;

    PlanarCoords coords;
    std::size_t used = 0;
    for (const Face& f : faces)
      for (VertexId v : f)
        if (!coords.positions.count(v)) {
          coords.positions[v] = sites[std::size_t(v)];
          ++used;
        }
    if (used != sites.size()) continue;  // a site failed to appear

    try {
      Triangulation T = Triangulation::build(faces);
      PLMetric l = induced_metric(T, coords);
      if (delaunay_margin(T, l) < 0.0) continue;
      // sliver caps (three nearly collinear samples) count as degenerate:
      // their triangle-inequality slack is cubic in the minimum angle
      if (nondegeneracy_margin(T, l) < 5e-3) continue;
      if (!is_geodesic_embedding(T, coords).pass) continue;
      return {std::move(T), std::move(coords)};
    } catch (const Error&) {
      continue;
    }
  }
  fail(ErrorCode::DegenerateSample, "no valid sample after 16 attempts");
}

// ---------------------------------------------------------------------------
// randomized constructions shared by experiments
// ---------------------------------------------------------------------------

std::optional<ConformalPair> try_conformal_hex_pair(int rings, double amplitude, double offset,
                                                    SplitMix64& rng) {
  auto [T, base] = gen_hex_disk(rings);
  PLMetric l = unit_metric(T);

  // smooth low-frequency field + global offset
  struct Mode {
    double kx, ky, phase, amp;
  };
  std::vector<Mode> modes;
  for (int m = 0; m < 3; ++m) {
    double wavelen = rng.uniform(0.3, 1.2) / double(rings);
    double dir = rng.uniform(0.0, 2.0 * M_PI);
    modes.push_back({wavelen * std::cos(dir), wavelen * std::sin(dir),
                     rng.uniform(0.0, 2.0 * M_PI), amplitude * rng.uniform(0.2, 1.0) / 3.0});
  }
  auto field = [&](Complex z) {
    double s = offset;
    for (const Mode& m : modes)
      s += m.amp * std::cos(m.kx * z.real() + m.ky * z.imag() + m.phase);
    return s;
  };

  ConformalFactor init;
  VertexMap<double> boundary;
  for (VertexId v : T.vertices()) init.values[v] = field(base.at(v));
  for (VertexId v : T.boundary_vertices()) boundary[v] = init.at(v);

  SolveOptions options;
  options.tolerance = 1e-12;
  options.init = init;
  ConformalFactor u;
  try {
    u = newton_prescribed_curvature(T, l, CurvatureTarget::flat(T, boundary), options).first;
  } catch (const Error&) {
    return std::nullopt;
  }

  PLMetric scaled = apply_conformal(T, l, u);
  if (delaunay_margin(T, scaled) < 0.0) return std::nullopt;

  PlanarCoords mapped;
  try {
    mapped = develop_flat_metric(T, scaled);
  } catch (const Error&) {
    return std::nullopt;
  }
  Complex shift = mapped.at(0);
  for (auto& [v, z] : mapped.positions) z -= shift;

  EmbeddingOptions emb;
  emb.exhaustive = rings <= 4;
  if (!is_geodesic_embedding(T, mapped, emb).pass) return std::nullopt;

  return ConformalPair{std::move(T), std::move(base), std::move(mapped), std::move(u)};
}

RingSample sample_hypothesis_ring(SplitMix64& rng, double max_center_abs) {
  for (;;) {
    int m = rng.uniform_int(4, 9);
    Complex z0 = std::polar(max_center_abs * std::sqrt(rng.next_double()),
                            2.0 * M_PI * rng.next_double());

    // gaps bounded away from 0 and pi, summing to 2*pi
    std::vector<double> weights(static_cast<std::size_t>(m));
    double total = 0.0;
    for (double& w : weights) total += (w = rng.uniform(0.7, 1.3));
    double rotation = rng.uniform(0.0, 2.0 * M_PI);
    std::vector<double> direction(static_cast<std::size_t>(m));
    double acc = rotation;
    for (int k = 0; k < m; ++k) {
      direction[std::size_t(k)] = acc;
      acc += 2.0 * M_PI * weights[std::size_t(k)] / total;
    }
    std::vector<double> spoke(static_cast<std::size_t>(m));
    for (double& s : spoke) s = rng.uniform(0.6, 1.0);

    std::vector<Face> faces;
    for (int k = 1; k <= m; ++k) faces.push_back({0, k, k % m + 1});

    Triangulation T = Triangulation::build(faces);

    // unit-scale ring; eps is its nondegeneracy margin
    DiskCoords unitc;
    unitc.positions[0] = Complex(0, 0);
    for (int k = 0; k < m; ++k)
      unitc.positions[k + 1] = std::polar(spoke[std::size_t(k)], direction[std::size_t(k)]);
    PLMetric lu;
    try {
      lu = induced_metric(T, unitc.as_planar());
    } catch (const Error&) {
      continue;
    }
    double min_angle = nondegeneracy_margin(T, lu);
    if (min_angle < 0.05) continue;
    double eps = min_angle * (1.0 - 1e-12);

    double max_spoke = *std::max_element(spoke.begin(), spoke.end());
    double scale = rng.uniform(0.5, 0.9) * (1.0 - std::norm(z0)) * std::sin(eps) / max_spoke;

    RingSample sample;
    sample.T = std::move(T);
    sample.center = 0;
    sample.coords.positions[0] = z0;
    for (int k = 0; k < m; ++k)
      sample.coords.positions[k + 1] =
          z0 + scale * std::polar(spoke[std::size_t(k)], direction[std::size_t(k)]);
    sample.eps = eps;

    // all points must stay in the disk; tiny centers always do
    bool inside = true;
    for (const auto& [v, z] : sample.coords.positions) inside = inside && std::abs(z) < 1.0;
    if (!inside) continue;
    return sample;
  }
}

// ---------------------------------------------------------------------------
// experiments
// ---------------------------------------------------------------------------

namespace {

// Runs trials keyed by attempt index until `config.trials` of them are
// valid; throws InsufficientValidTrials when the skip rate reaches one half.
template <class TrialFn>
ExperimentReport run_valid_trials(const char* name, const ExperimentConfig& config,
                                  TrialFn&& trial) {
  ExperimentReport report;
  report.name = name;
  report.config = config;
  int cap = 2 * config.trials;
  int valid = 0;
  for (int attempt = 0; attempt < cap && valid < config.trials; ++attempt) {
    TrialRecord rec = trial(attempt, SplitMix64::stream(config.seed, std::uint64_t(attempt)));
    rec.index = attempt;
    if (rec.status != TrialStatus::Skip) ++valid;
    report.trials.push_back(std::move(rec));
  }
  if (valid < config.trials)
    fail(ErrorCode::InsufficientValidTrials,
         std::string(name) + ": " + std::to_string(valid) + "/" +
             std::to_string(config.trials) + " valid trials");
  return report;
}

}  // namespace

ExperimentReport run_max_principle(const ExperimentConfig& config) {
  int lo = 3, hi = std::max(3, config.size);
  return run_valid_trials("max-principle", config, [&](int attempt, SplitMix64 rng) {
    TrialRecord rec;
    int rings = lo + attempt % (hi - lo + 1);
    bool constant_case = attempt % 20 == 0;

    auto [T, coords] = gen_hex_disk(rings);
    PLMetric l = unit_metric(T);

    VertexMap<double> boundary;
    double constant = rng.uniform(-config.amplitude, config.amplitude);
    for (VertexId v : T.boundary_vertices())
      boundary[v] = constant_case ? constant : rng.uniform(-config.amplitude, config.amplitude);

    SolveOptions options;
    options.tolerance = 1e-12;
    ConformalFactor u;
    try {
      u = newton_prescribed_curvature(T, l, CurvatureTarget::flat(T, boundary), options).first;
    } catch (const Error& e) {
      rec.status = TrialStatus::Skip;
      rec.note = std::string("solver: ") + to_string(e.code());
      return rec;
    }

    // lemma side conditions: u*l must redevelop into a Delaunay embedding
    PLMetric scaled = apply_conformal(T, l, u);
    if (delaunay_margin(T, scaled) < 0.0) {
      rec.status = TrialStatus::Skip;
      rec.note = "delaunay lost";
      return rec;
    }
    PlanarCoords developed;
    try {
      developed = develop_flat_metric(T, scaled);
    } catch (const Error& e) {
      rec.status = TrialStatus::Skip;
      rec.note = std::string("development: ") + to_string(e.code());
      return rec;
    }
    EmbeddingOptions emb;
    emb.exhaustive = true;
    if (!is_geodesic_embedding(T, developed, emb).pass) {
      rec.status = TrialStatus::Skip;
      rec.note = "did not embed";
      return rec;
    }

    double margin = std::numeric_limits<double>::infinity();
    std::string witness;

    double boundary_max = 0.0, global_max = 0.0;
    for (VertexId v : T.boundary_vertices()) boundary_max = std::max(boundary_max, std::abs(u.at(v)));
    for (VertexId v : T.vertices()) global_max = std::max(global_max, std::abs(u.at(v)));
    if (boundary_max - global_max < margin) {
      margin = boundary_max - global_max;
      witness = "global";
    }

    for (VertexId i : T.interior_vertices()) {
      double ring_max = 0.0;
      for (VertexId j : T.neighbors(i)) ring_max = std::max(ring_max, std::abs(u.at(j)));
      double m = ring_max - std::abs(u.at(i));
      if (m < margin) {
        margin = m;
        witness = "ring at vertex " + std::to_string(i);
      }
    }

    if (constant_case) {
      double dev = 0.0;
      for (VertexId v : T.vertices()) dev = std::max(dev, std::abs(u.at(v) - constant));
      rec.note = "constant-boundary dev=" + fmt(dev);
      if (dev >= 1e-10) {
        rec.status = TrialStatus::Fail;
        rec.margin = -dev;
        rec.note += " (nonconstant)";
        return rec;
      }
    }

    rec.margin = margin;
    if (margin < -config.tolerance) {
      rec.status = TrialStatus::Fail;
      rec.note = "violation " + witness;
    } else {
      rec.status = TrialStatus::Pass;
    }
    return rec;
  });
}

ExperimentReport run_lemma21(const ExperimentConfig& config) {
  ExperimentReport report;
  report.name = "lemma21";
  report.config = config;
  for (int t = 0; t < config.trials; ++t) {
    SplitMix64 rng = SplitMix64::stream(config.seed, std::uint64_t(t));
    RingSample sample = sample_hypothesis_ring(rng, 0.9);
    OneRing ring = one_ring(sample.T, sample.center);
    TrialRecord rec;
    rec.index = t;
    InduceOptions options;
    options.claim2_tol = config.tolerance;
    try {
      auto [coords, claims] = induce_hyperbolic_embedding(ring, sample.coords, sample.eps, options);
      (void)coords;
      rec.status = TrialStatus::Pass;
      rec.margin = claims.claim1_margin;
      rec.note = "claim2_dev=" + fmt(claims.claim2_deviation);
    } catch (const Error& e) {
      rec.status = TrialStatus::Fail;
      rec.margin = -1.0;
      rec.note = e.what();
    }
    report.trials.push_back(std::move(rec));
  }
  return report;
}

ExperimentReport run_hyp_min_principle(const ExperimentConfig& config) {
  return run_valid_trials("hyp-min-principle", config, [&](int attempt, SplitMix64 rng) {
    TrialRecord rec;
    bool identical_case = attempt % 10 == 0;

    RingSample first = sample_hypothesis_ring(rng, 0.5);
    const Triangulation& T = first.T;
    OneRing ring = one_ring(T, first.center);
    int m = int(ring.cycle.size());

    DiskCoords second;
    if (identical_case) {
      second = first.coords;
    } else {
      PLMetric l = induced_metric(T, first.coords.as_planar());
      VertexMap<double> boundary;
      for (VertexId v : T.boundary_vertices())
        boundary[v] = rng.uniform(-config.amplitude, config.amplitude);
      SolveOptions options;
      options.tolerance = 1e-13;
      ConformalFactor u;
      try {
        u = newton_prescribed_curvature(T, l, CurvatureTarget::flat(T, boundary), options).first;
      } catch (const Error& e) {
        rec.status = TrialStatus::Skip;
        rec.note = std::string("solver: ") + to_string(e.code());
        return rec;
      }
      PLMetric scaled = apply_conformal(T, l, u);
      PlanarCoords developed;
      try {
        developed = develop_flat_metric(T, scaled);
      } catch (const Error& e) {
        rec.status = TrialStatus::Skip;
        rec.note = std::string("development: ") + to_string(e.code());
        return rec;
      }

      // place: random center, scale into the hypothesis regime, random turn
      double eps2 = nondegeneracy_margin(T, scaled) * (1.0 - 1e-12);
      double max_spoke = 0.0;
      for (int k = 0; k < m; ++k)
        max_spoke = std::max(max_spoke, scaled.at(Edge(first.center, ring.cycle[std::size_t(k)])));
      Complex c2 = std::polar(0.5 * std::sqrt(rng.next_double()), 2.0 * M_PI * rng.next_double());
      double scale = rng.uniform(0.5, 0.9) * (1.0 - std::norm(c2)) * std::sin(eps2) / max_spoke;
      Complex turn = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
      Complex shift = developed.at(first.center);
      for (VertexId v : T.vertices())
        second.positions[v] = c2 + scale * turn * (developed.at(v) - shift);
    }

    // both rings must satisfy the hypothesis (claims come along)
    try {
      induce_hyperbolic_embedding(ring, first.coords, first.eps);
      double eps2 = nondegeneracy_margin(T, induced_metric(T, second.as_planar())) * (1.0 - 1e-12);
      induce_hyperbolic_embedding(ring, second, eps2);
    } catch (const Error& e) {
      rec.status = TrialStatus::Skip;
      rec.note = std::string("hypothesis: ") + to_string(e.code());
      return rec;
    }

    // both must be Delaunay
    if (!is_hyp_delaunay(T, first.coords).pass || !is_hyp_delaunay(T, second).pass) {
      rec.status = TrialStatus::Skip;
      rec.note = "delaunay lost";
      return rec;
    }

    ConformalFactor uh;
    try {
      uh = hyp_factor_between(T, induced_hyp_metric(T, first.coords),
                              induced_hyp_metric(T, second));
    } catch (const Error& e) {
      rec.status = TrialStatus::Skip;
      rec.note = std::string("extraction: ") + to_string(e.code());
      return rec;
    }

    // min{u^h, 0} over the ring is attained on the rim
    double rim_min = 0.0;
    for (VertexId j : ring.cycle) rim_min = std::min(rim_min, uh.at(j));
    double center_min = std::min(uh.at(first.center), 0.0);
    double margin = center_min - rim_min;

    // Mobius normalization invariance: translate both centers to the origin
    DiskCoords norm1, norm2;
    for (VertexId v : T.vertices()) {
      norm1.positions[v] = mobius_to_origin(first.coords.at(first.center), first.coords.at(v));
      norm2.positions[v] = mobius_to_origin(second.at(first.center), second.at(v));
    }
    ConformalFactor uh_norm =
        hyp_factor_between(T, induced_hyp_metric(T, norm1), induced_hyp_metric(T, norm2));
    double invariance_dev = 0.0;
    for (VertexId v : T.vertices())
      invariance_dev = std::max(invariance_dev, std::abs(uh_norm.at(v) - uh.at(v)));

    rec.margin = margin;
    rec.note = "invariance_dev=" + fmt(invariance_dev);
    if (identical_case) {
      double sup = 0.0;
      for (VertexId v : T.vertices()) sup = std::max(sup, std::abs(uh.at(v)));
      rec.note += " identical_sup=" + fmt(sup);
      if (sup > 1e-12) {
        rec.status = TrialStatus::Fail;
        rec.margin = -sup;
        return rec;
      }
    }
    if (margin < -config.tolerance || invariance_dev > 1e-10) {
      rec.status = TrialStatus::Fail;
    } else {
      rec.status = TrialStatus::Pass;
    }
    return rec;
  });
}

ExperimentReport run_key_estimate(const ExperimentConfig& config) {
  int rings = std::max(3, config.size);
  return run_valid_trials("key-estimate", config, [&](int attempt, SplitMix64 rng) {
    (void)attempt;
    TrialRecord rec;
    double offset = rng.uniform(-0.75, 0.75);
    std::optional<ConformalPair> pair =
        try_conformal_hex_pair(rings, config.amplitude, offset, rng);
    if (!pair) {
      rec.status = TrialStatus::Skip;
      rec.note = "no valid conformal pair";
      return rec;
    }
    const Triangulation& T = pair->T;
    PLMetric l = unit_metric(T);
    PLMetric scaled = apply_conformal(T, l, pair->u);

    // inner sub-disk; the threshold splits lattice ring h from ring h+1
    int h = (rings + 1) / 2;
    double threshold = 0.5 * (double(h) + double(h + 1) * std::sqrt(3.0) / 2.0);
    std::vector<VertexId> inner;
    for (VertexId v : T.vertices())
      if (std::abs(pair->base.at(v)) <= threshold) inner.push_back(v);
    Triangulation T0 = subcomplex(T, inner);

    double eps = std::min(nondegeneracy_margin(T, l), nondegeneracy_margin(T, scaled));
    double bound_const = -std::log(std::pow(std::sin(eps), 3) / 2.0);  // M(eps)

    double r = 0.0;
    for (VertexId v : T0.vertices()) r = std::max(r, std::abs(pair->base.at(v)));
    double r_prime = std::numeric_limits<double>::infinity();
    std::vector<VertexId> cycle = T0.boundary_cycle();
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      Complex p = pair->mapped.at(cycle[k]);
      Complex q = pair->mapped.at(cycle[(k + 1) % cycle.size()]);
      r_prime = std::min(r_prime, point_segment_distance(Complex(0, 0), p, q));
    }

    double lower = std::log(r_prime / r) - bound_const;
    double margin = std::numeric_limits<double>::infinity();
    VertexId worst = -1;
    for (VertexId v : T0.vertices()) {
      if (!(std::abs(pair->mapped.at(v)) < 0.5 * r_prime)) continue;
      double m = pair->u.at(v) - lower;
      if (m < margin) {
        margin = m;
        worst = v;
      }
    }

    rec.margin = margin;
    rec.note = "eps=" + fmt(eps) + " r=" + fmt(r) + " r_prime=" + fmt(r_prime);
    if (margin < 0.0) {
      rec.status = TrialStatus::Fail;
      rec.note += " violated at vertex " + std::to_string(worst);
    } else {
      rec.status = TrialStatus::Pass;
    }
    return rec;
  });
}

ExperimentReport run_gradient_estimate(const ExperimentConfig& config) {
  ExperimentReport report;
  report.name = "gradient";
  report.config = config;
  for (int t = 0; t < config.trials; ++t) {
    SplitMix64 rng = SplitMix64::stream(config.seed, std::uint64_t(t));
    Triangulation T = Triangulation::build({{0, 1, 2}});

    PLMetric l, l2;
    for (;;) {
      double a = std::exp(rng.uniform(-0.7, 0.7));
      double b = std::exp(rng.uniform(-0.7, 0.7));
      double top = a + b, bot = std::abs(a - b);
      double c = rng.uniform(bot + 0.02 * top, 0.98 * top);
      if (!triangle_valid(a, b, c)) continue;
      l.lengths[Edge(0, 1)] = a;
      l.lengths[Edge(1, 2)] = b;
      l.lengths[Edge(0, 2)] = c;
      ConformalFactor u;
      for (VertexId v : {0, 1, 2}) u.values[v] = rng.uniform(-0.6, 0.6);
      try {
        l2 = apply_conformal(T, l, u);
      } catch (const Error&) {
        continue;
      }
      break;
    }

    ConformalFactor u = conformal_factor_between(T, l, l2);
    double eps = std::min(nondegeneracy_margin(T, l), nondegeneracy_margin(T, l2));
    double sin_eps = std::sin(eps);

    double margin = std::numeric_limits<double>::infinity();
    std::string witness;
    for (const PLMetric* metric : {&l, &l2}) {
      const Face& f = T.faces()[0];
      std::array<double, 3> s = {metric->at(Edge(f[0], f[1])), metric->at(Edge(f[1], f[2])),
                                 metric->at(Edge(f[0], f[2]))};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          double m = s[std::size_t(i)] / s[std::size_t(j)] - sin_eps;
          if (m < margin) {
            margin = m;
            witness = "ratio";
          }
        }
    }
    double grad_bound = 4.0 * std::log(1.0 / sin_eps);
    for (const Edge& e : T.edges()) {
      double m = grad_bound - std::abs(u.at(e.a) - u.at(e.b));
      if (m < margin) {
        margin = m;
        witness = "gradient at " + edge_name(e);
      }
    }

    TrialRecord rec;
    rec.index = t;
    rec.margin = margin;
    rec.note = "eps=" + fmt(eps);
    if (margin < -1e-12) {
      rec.status = TrialStatus::Fail;
      rec.note += " violated: " + witness;
    } else {
      rec.status = TrialStatus::Pass;
    }
    report.trials.push_back(std::move(rec));
  }
  return report;
}

ExperimentReport run_rigidity_decay(const ExperimentConfig& config) {
  ExperimentReport report;
  report.name = "rigidity-decay";
  report.config = config;
  report.table.push_back("rings,valid,median_osc,mean_osc");

  int max_rings = std::max(3, config.size);
  for (int rings = 2; rings <= max_rings; ++rings) {
    auto [T, coords] = gen_hex_disk(rings);
    PLMetric l = unit_metric(T);
    std::vector<VertexId> inner;
    for (VertexId v : T.vertices())
      if (std::abs(coords.at(v)) <= 0.5 * double(rings) + 1e-12) inner.push_back(v);

    std::vector<double> oscillations;
    for (int t = 0; t < config.trials; ++t) {
      int attempt = (rings - 2) * config.trials + t;
      SplitMix64 rng = SplitMix64::stream(config.seed, std::uint64_t(attempt));
      VertexMap<double> boundary;
      for (VertexId v : T.boundary_vertices())
        boundary[v] = rng.uniform(-config.amplitude, config.amplitude);

      TrialRecord rec;
      rec.index = attempt;
      SolveOptions options;
      options.tolerance = 1e-12;
      try {
        ConformalFactor u =
            newton_prescribed_curvature(T, l, CurvatureTarget::flat(T, boundary), options).first;
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (VertexId v : inner) {
          lo = std::min(lo, u.at(v));
          hi = std::max(hi, u.at(v));
        }
        double osc = hi - lo;
        oscillations.push_back(osc);
        rec.status = TrialStatus::Pass;
        rec.margin = osc;
        rec.note = "rings=" + std::to_string(rings);
      } catch (const Error& e) {
        rec.status = TrialStatus::Skip;
        rec.note = "rings=" + std::to_string(rings) + " solver: " + to_string(e.code());
      }
      report.trials.push_back(std::move(rec));
    }

    std::sort(oscillations.begin(), oscillations.end());
    double median = 0.0, mean = 0.0;
    if (!oscillations.empty()) {
      std::size_t n = oscillations.size();
      median = n % 2 ? oscillations[n / 2]
                     : 0.5 * (oscillations[n / 2 - 1] + oscillations[n / 2]);
      for (double o : oscillations) mean += o;
      mean /= double(n);
    }
    std::ostringstream row;
    row << rings << "," << oscillations.size() << "," << fmt(median) << "," << fmt(mean);
    report.table.push_back(row.str());
  }
  return report;
}

}  // namespace dcg

#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "dcg/conformal.hpp"
#include "dcg/hyper.hpp"
#include "dcg/report.hpp"
#include "dcg/rng.hpp"

namespace dcg {

/// Triangular-lattice disk with `rings` hexagonal layers and unit edge
/// coordinates; the center vertex gets id 0 and sits at the origin.
std::pair<Triangulation, PlanarCoords> gen_hex_disk(int rings);

/// The metric assigning exactly 1 to every edge.
PLMetric unit_metric(const Triangulation& T);

/// Incremental (circumcircle-insertion) Delaunay triangulation of n points
/// sampled uniformly in the unit disk. For n >= 4 a jittered boundary fence
/// just outside the unit circle is added (ids n..n+M-1) so the complex is a
/// well-shaped disk; n == 3 returns the sampled triangle. The result passes
/// the embedding check and has nonnegative Delaunay margin; degenerate
/// samples are retried internally, then DegenerateSample is thrown.
std::pair<Triangulation, PlanarCoords> gen_random_delaunay_disk(int n, std::uint64_t seed);

/// A pair of discrete-conformal flat hexagonal-disk embeddings: `base` is
/// the unit hex layout, `mapped` develops u*l, both with the center vertex
/// at the origin.
struct ConformalPair {
  Triangulation T;
  PlanarCoords base;
  PlanarCoords mapped;
  ConformalFactor u;
};

/// Samples a smooth low-frequency factor field plus a global offset, keeps
/// its boundary values as Dirichlet data, solves the interior flat, and
/// develops. Returns nullopt when the solve fails, the scaled metric loses
/// Delaunayness, or the development does not embed.
std::optional<ConformalPair> try_conformal_hex_pair(int rings, double amplitude, double offset,
                                                    SplitMix64& rng);

/// A randomized 1-ring in the disk satisfying the hyperbolic-embedding
/// hypothesis with constant `eps`: center id 0 at coords.at(0), neighbors
/// 1..m in cyclic order.
struct RingSample {
  Triangulation T;
  VertexId center = 0;
  DiskCoords coords;
  double eps = 0.0;
};

RingSample sample_hypothesis_ring(SplitMix64& rng, double max_center_abs);

ExperimentReport run_max_principle(const ExperimentConfig& config);
ExperimentReport run_hyp_min_principle(const ExperimentConfig& config);
ExperimentReport run_lemma21(const ExperimentConfig& config);
ExperimentReport run_key_estimate(const ExperimentConfig& config);
ExperimentReport run_gradient_estimate(const ExperimentConfig& config);
ExperimentReport run_rigidity_decay(const ExperimentConfig& config);

}  // namespace dcg

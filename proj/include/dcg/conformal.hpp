#pragma once

#include <Eigen/SparseCore>
#include <optional>
#include <utility>
#include <vector>

#include "dcg/euclid.hpp"
#include "dcg/mesh.hpp"
#include "dcg/types.hpp"

namespace dcg {

/// u^h_i = u_i + log((1-|z_i|^2)/(1-|z'_i|^2)), the Euclidean-to-hyperbolic
/// conversion of conformal factors between two disk embeddings.
ConformalFactor factor_e2h(const ConformalFactor& u, const DiskCoords& coordsA,
                           const DiskCoords& coordsB);

/// Inverse of factor_e2h (subtracts the same correction term).
ConformalFactor factor_h2e(const ConformalFactor& uh, const DiskCoords& coordsA,
                           const DiskCoords& coordsB);

/// Extracts u from the induced Euclidean metrics and u^h from the induced
/// hyperbolic metrics of the two embeddings and reports the sup-norm
/// discrepancy between u^h and factor_e2h(u). margin = discrepancy; passes
/// when it is below pass_tol.
MarginReport verify_ehconf(const Triangulation& T, const DiskCoords& coordsA,
                           const DiskCoords& coordsB, double pass_tol = 1e-9);

/// Jacobian of the interior curvatures with respect to interior factors,
/// evaluated on the scaled metric: dK_i/du_j = -eta_ij for neighbors,
/// dK_i/du_i = sum of eta_ij over all edges at i. Rows/columns follow
/// T.interior_vertices() order.
Eigen::SparseMatrix<double> curvature_jacobian(const Triangulation& T, const PLMetric& l,
                                               const ConformalFactor& u);

/// Prescribed interior curvatures plus Dirichlet factor values on the
/// boundary.
struct CurvatureTarget {
  VertexMap<double> interior_curvature;
  VertexMap<double> boundary_factor;

  /// Target K = 0 at every interior vertex with the given boundary data.
  static CurvatureTarget flat(const Triangulation& T, const VertexMap<double>& boundary);
};

struct SolveReport {
  int iterations = 0;
  double final_residual = 0.0;
  std::vector<double> delaunay_margin_trace;  // margin of the scaled metric per iterate
  std::vector<double> residual_trace;         // sup-norm residual per iterate
  bool converged = false;
};

struct SolveOptions {
  double tolerance = 1e-10;
  int max_iterations = 50;
  double min_step = 9.5367431640625e-07;  // 2^-20
  /// Starting interior values; defaults to the discrete harmonic extension
  /// of the boundary data under the base metric's cotangent weights.
  std::optional<ConformalFactor> init;
};

/// Newton iteration for K_i(u*l) = target at interior vertices with the
/// boundary factors held fixed. Steps are halved until every face of u*l
/// satisfies the triangle inequalities. The solver does not flip edges; if
/// an iterate leaves the Delaunay cone it continues and records the margin
/// trace. Throws NonConvergence, LineSearchStall or SingularSystem.
std::pair<ConformalFactor, SolveReport> newton_prescribed_curvature(
    const Triangulation& T, const PLMetric& l, const CurvatureTarget& target,
    const SolveOptions& options = {});

}  // namespace dcg

#pragma once

#include "dcg/mesh.hpp"
#include "dcg/types.hpp"

namespace dcg {

namespace tol {
/// Relative slack on triangle inequalities (fraction of the largest side).
inline constexpr double kTriangleRel = 1e-12;
/// Interior angle-sum tolerance in embedding checks.
inline constexpr double kAngleSum = 1e-9;
/// Residual tolerance for conformal-factor extraction.
inline constexpr double kFactorConsistency = 1e-8;
/// Interior curvature gate for flat development.
inline constexpr double kFlat = 1e-8;
/// Positional consistency (holonomy) in flat development.
inline constexpr double kHolonomy = 1e-7;
}  // namespace tol

// -- plane geometry helpers --------------------------------------------------

double signed_area(Complex p, Complex q, Complex r);
/// Angle at p0 between the rays to p1 and p2, in [0, pi].
double angle_at(Complex p0, Complex p1, Complex p2);
/// True when segments pq and rs share a point (touching counts).
bool segments_intersect(Complex p, Complex q, Complex r, Complex s);
/// Distance from x to the segment pq.
double point_segment_distance(Complex x, Complex p, Complex q);
/// Circumcircle of a nondegenerate point triple.
struct Circumcircle {
  Complex center;
  double radius = 0.0;
};
Circumcircle circumcircle(Complex p, Complex q, Complex r);

// -- metrics, angles, curvature ----------------------------------------------

/// True when a,b,c satisfy the strict triangle inequalities up to the
/// relative slack tol::kTriangleRel.
bool triangle_valid(double a, double b, double c);

/// Interior angle at the corner between sides a and b, opposite side c.
/// Law of cosines with the arccos argument clamped to [-1,1]; throws
/// InvalidTriangle if the inequalities fail beyond tolerance.
double corner_angle(double a, double b, double c);

/// Throws InvalidTriangle naming the first bad face.
void validate_metric(const Triangulation& T, const PLMetric& l);

CornerAngles corner_angles(const Triangulation& T, const PLMetric& l);

/// Angle defect per vertex: 2*pi minus the incident angle sum at interior
/// vertices, pi minus it at boundary vertices.
CurvatureVector curvature_vector(const Triangulation& T, const PLMetric& l);

/// Per interior edge ij: (cot(angle at k) + cot(angle at l))/2 for the two
/// opposite corners. Nonnegative exactly when the edge is Delaunay.
CotWeights cot_weights(const Triangulation& T, const PLMetric& l);

/// min over interior edges of pi - (sum of the two opposite angles).
/// +infinity when there are no interior edges. Delaunay iff >= 0;
/// uniformly Delaunay with constant eps iff >= eps.
double delaunay_margin(const Triangulation& T, const PLMetric& l);

/// Minimum corner angle over all faces.
double nondegeneracy_margin(const Triangulation& T, const PLMetric& l);

/// min over faces of pi/2 - (max corner angle); positive iff uniformly acute.
double acuteness_margin(const Triangulation& T, const PLMetric& l);

/// New metric with each edge scaled by exp((u_i+u_j)/2), validated per face.
/// Throws TriangleInequalityViolated when the scaled lengths fail.
PLMetric apply_conformal(const Triangulation& T, const PLMetric& l, const ConformalFactor& u);

/// The unique u with l2 = apply_conformal(l, u), if one exists: per-face
/// 3x3 solves propagated across the mesh, then a global consistency check.
/// Throws NotConformal with the worst inconsistent edge as witness.
ConformalFactor conformal_factor_between(const Triangulation& T, const PLMetric& l,
                                         const PLMetric& l2,
                                         double tolerance = tol::kFactorConsistency);

/// l_ij = |z_i - z_j|; throws DegenerateFace on a zero-area face.
PLMetric induced_metric(const Triangulation& T, const PlanarCoords& coords);

struct EmbeddingOptions {
  /// Also run the quadratic-time all-pairs edge intersection test.
  bool exhaustive = false;
  double angle_sum_tol = tol::kAngleSum;
};

/// Geodesic-embedding check: (a) positive face areas, (b) interior angle
/// sums equal 2*pi, (c) simple boundary polygon, and optionally (d) no two
/// non-adjacent edges intersect. margin = min face area when it passes.
MarginReport is_geodesic_embedding(const Triangulation& T, const PlanarCoords& coords,
                                   const EmbeddingOptions& options = {});

/// Breadth-first development of a flat metric: the root face is placed with
/// its first edge on the positive real axis. Throws NotFlat when interior
/// curvature exceeds flat_tol, InconsistentDevelopment on holonomy.
PlanarCoords develop_flat_metric(const Triangulation& T, const PLMetric& l, int root_face = 0,
                                 double flat_tol = tol::kFlat);

/// Circumcircle form of the Delaunay test on embedded coordinates: per
/// interior edge, the opposite vertex must not lie strictly inside the
/// adjacent face's circumcircle. margin = min over interior edges of
/// (distance to circumcenter)/radius - 1.
MarginReport circumcircle_delaunay(const Triangulation& T, const PlanarCoords& coords);

namespace detail {
/// Solves u_a + u_b = d_ab over all edges by face propagation; used by both
/// conformal-factor extractions. Throws NotConformal via the caller-supplied
/// label when the worst residual exceeds tolerance.
VertexMap<double> solve_vertex_scales(const Triangulation& T, const EdgeMap<double>& d,
                                      double tolerance, const char* label);
}  // namespace detail

}  // namespace dcg

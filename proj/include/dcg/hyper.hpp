#pragma once

#include <utility>

#include "dcg/euclid.hpp"
#include "dcg/mesh.hpp"
#include "dcg/types.hpp"

namespace dcg {

/// Tangent vector at a base point of the Poincare disk, identified with C
/// by translating the base point to the origin. Its modulus is the
/// hyperbolic distance from base to target.
using LogVector = Complex;

/// Poincare-disk distance 2*artanh|(z-w)/(1-conj(z)w)|.
double hyp_distance(Complex z, Complex w);

/// The disk isometry (z - z0)/(1 - conj(z0) z) sending z0 to the origin.
/// Its derivative at z0 is 1/(1-|z0|^2) > 0, so directions at the base
/// point are preserved.
Complex mobius_to_origin(Complex z0, Complex z);

/// Inverse exponential map at z0: direction arg(mobius_to_origin(z0,z)),
/// modulus hyp_distance(z0,z). Throws CoincidentPoints when z == z0.
LogVector log_map(Complex z0, Complex z);

/// Hyperbolic law of cosines: angle between sides a and b, opposite c.
double hyp_corner_angle(double a, double b, double c);

void validate_hyp_metric(const Triangulation& T, const HypPLMetric& lh);

CornerAngles hyp_corner_angles(const Triangulation& T, const HypPLMetric& lh);

/// Angle defect with hyperbolic corner angles (same formula as Euclidean).
CurvatureVector hyp_curvature_vector(const Triangulation& T, const HypPLMetric& lh);

/// l^h_ij = hyperbolic distance between the endpoint coordinates.
HypPLMetric induced_hyp_metric(const Triangulation& T, const DiskCoords& coords);

/// New metric with sinh(l'/2) = exp((u_i+u_j)/2) sinh(l/2) per edge,
/// validated per face.
HypPLMetric apply_hyp_conformal(const Triangulation& T, const HypPLMetric& lh,
                                const ConformalFactor& uh);

/// The unique u^h relating two hyperbolic metrics on T, when it exists.
ConformalFactor hyp_factor_between(const Triangulation& T, const HypPLMetric& lh,
                                   const HypPLMetric& lh2,
                                   double tolerance = tol::kFactorConsistency);

/// Hyperbolic Delaunay test: the Euclidean circumcircle of the coordinate
/// triple must not strictly contain the opposite vertex ("in the Euclidean
/// sense"; no geodesic circumcircle is computed). Identical to the
/// Euclidean circumcircle predicate on the same points.
MarginReport is_hyp_delaunay(const Triangulation& T, const DiskCoords& coords);

/// Margins attached to the two claims behind the hyperbolic-embedding
/// induction: each consecutive log-vector turn must lie in (0,pi) and the
/// turns must sum to 2*pi.
struct ClaimReport {
  std::vector<double> turns;     // arg(v(z_{k+1})/v(z_k)) per consecutive pair
  double claim1_margin = 0.0;    // min over k of min(turn, pi - turn)
  double claim2_deviation = 0.0; // |sum of turns - 2*pi|
  bool pass = false;
};

struct InduceOptions {
  /// Enforce the edge-length hypothesis on all ring edges, not only those
  /// incident to the center.
  bool strict_all_edges = false;
  double claim1_slack = 1e-10;
  double claim2_tol = 1e-9;
};

/// Reinterprets a small Euclidean geodesic embedding of a 1-ring as a
/// hyperbolic geodesic embedding with the same vertex positions.
/// Hypothesis checked: the ring coordinates embed with every corner angle
/// >= eps, and every edge at the center has length < (1-|z_center|^2) sin(eps).
/// Throws HypothesisViolated when the hypothesis fails and ClaimFailed when
/// either claim is violated numerically.
std::pair<DiskCoords, ClaimReport> induce_hyperbolic_embedding(const OneRing& ring,
                                                               const DiskCoords& coords,
                                                               double eps,
                                                               const InduceOptions& options = {});

}  // namespace dcg

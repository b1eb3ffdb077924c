#include "dcg/conformal.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <sstream>

#include "dcg/hyper.hpp"

namespace dcg {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

double disk_term(Complex z, Complex z2) {
  double a = 1.0 - std::norm(z);
  double b = 1.0 - std::norm(z2);
  if (!(a > 0.0) || !(b > 0.0)) fail(ErrorCode::OutOfDisk, "coordinate outside the unit disk");
  return std::log(a / b);
}

std::string trace_tail(const std::vector<double>& trace) {
  std::ostringstream os;
  os.precision(6);
  os << "margin trace [";
  std::size_t start = trace.size() > 8 ? trace.size() - 8 : 0;
  for (std::size_t i = start; i < trace.size(); ++i) os << (i > start ? " " : "") << trace[i];
  os << "]";
  return os.str();
}

}  // namespace

ConformalFactor factor_e2h(const ConformalFactor& u, const DiskCoords& coordsA,
                           const DiskCoords& coordsB) {
  ConformalFactor uh;
  for (const auto& [v, value] : u.values)
    uh.values[v] = value + disk_term(coordsA.at(v), coordsB.at(v));
  return uh;
}

ConformalFactor factor_h2e(const ConformalFactor& uh, const DiskCoords& coordsA,
                           const DiskCoords& coordsB) {
  ConformalFactor u;
  for (const auto& [v, value] : uh.values)
    u.values[v] = value - disk_term(coordsA.at(v), coordsB.at(v));
  return u;
}

MarginReport verify_ehconf(const Triangulation& T, const DiskCoords& coordsA,
                           const DiskCoords& coordsB, double pass_tol) {
  PLMetric lA = induced_metric(T, coordsA.as_planar());
  PLMetric lB = induced_metric(T, coordsB.as_planar());
  ConformalFactor u = conformal_factor_between(T, lA, lB);

  HypPLMetric lhA = induced_hyp_metric(T, coordsA);
  HypPLMetric lhB = induced_hyp_metric(T, coordsB);
  ConformalFactor uh = hyp_factor_between(T, lhA, lhB);

  ConformalFactor predicted = factor_e2h(u, coordsA, coordsB);
  MarginReport report;
  report.margin = 0.0;
  VertexId worst = -1;
  for (VertexId v : T.vertices()) {
    double d = std::abs(uh.at(v) - predicted.at(v));
    if (d > report.margin) {
      report.margin = d;
      worst = v;
    }
  }
  report.pass = report.margin < pass_tol;
  if (!report.pass)
    report.detail = "discrepancy " + fmt(report.margin) + " at vertex " + std::to_string(worst);
  return report;
}

Eigen::SparseMatrix<double> curvature_jacobian(const Triangulation& T, const PLMetric& l,
                                               const ConformalFactor& u) {
  PLMetric scaled = apply_conformal(T, l, u);
  CotWeights eta = cot_weights(T, scaled);

  const auto& interior = T.interior_vertices();
  Eigen::SparseMatrix<double> J(interior.size(), interior.size());
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t r = 0; r < interior.size(); ++r) {
    VertexId i = interior[r];
    double diag = 0.0;
    for (VertexId j : T.neighbors(i)) {
      double w = eta.at(Edge(i, j));  // every edge at an interior vertex is interior
      diag += w;
      if (!T.is_boundary(j))
        triplets.emplace_back(int(r), int(T.interior_index(j)), -w);
    }
    triplets.emplace_back(int(r), int(r), diag);
  }
  J.setFromTriplets(triplets.begin(), triplets.end());
  return J;
}

CurvatureTarget CurvatureTarget::flat(const Triangulation& T, const VertexMap<double>& boundary) {
  CurvatureTarget t;
  for (VertexId v : T.interior_vertices()) t.interior_curvature[v] = 0.0;
  for (VertexId v : T.boundary_vertices())
    t.boundary_factor[v] = detail::map_at(boundary, v, "boundary factor", std::to_string(v));
  return t;
}

namespace {

ConformalFactor assemble_factor(const Triangulation& T, const CurvatureTarget& target,
                                const Eigen::VectorXd& x) {
  ConformalFactor u;
  const auto& interior = T.interior_vertices();
  for (std::size_t r = 0; r < interior.size(); ++r) u.values[interior[r]] = x[r];
  for (VertexId v : T.boundary_vertices())
    u.values[v] = detail::map_at(target.boundary_factor, v, "boundary factor", std::to_string(v));
  return u;
}

bool scaled_metric_valid(const Triangulation& T, const PLMetric& l, const ConformalFactor& u) {
  for (const Face& f : T.faces()) {
    auto scale = [&](VertexId p, VertexId q) {
      return std::exp(0.5 * (u.at(p) + u.at(q))) * l.at(Edge(p, q));
    };
    if (!triangle_valid(scale(f[0], f[1]), scale(f[1], f[2]), scale(f[0], f[2]))) return false;
  }
  return true;
}

// Discrete harmonic extension of the boundary data under the base metric's
// cotangent weights; reproduces constants exactly.
Eigen::VectorXd harmonic_init(const Triangulation& T, const PLMetric& l,
                              const CurvatureTarget& target) {
  CotWeights eta = cot_weights(T, l);
  const auto& interior = T.interior_vertices();
  Eigen::SparseMatrix<double> L(interior.size(), interior.size());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(interior.size());
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t r = 0; r < interior.size(); ++r) {
    VertexId i = interior[r];
    double diag = 0.0;
    for (VertexId j : T.neighbors(i)) {
      double w = eta.at(Edge(i, j));
      diag += w;
      if (T.is_boundary(j))
        rhs[r] += w * detail::map_at(target.boundary_factor, j, "boundary factor",
                                     std::to_string(j));
      else
        triplets.emplace_back(int(r), int(T.interior_index(j)), -w);
    }
    triplets.emplace_back(int(r), int(r), diag);
  }
  L.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(L);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::SingularSystem, "harmonic initialization factorization failed");
  Eigen::VectorXd x = solver.solve(rhs);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::SingularSystem, "harmonic initialization solve failed");
  return x;
}

}  // namespace

std::pair<ConformalFactor, SolveReport> newton_prescribed_curvature(const Triangulation& T,
                                                                    const PLMetric& l,
                                                                    const CurvatureTarget& target,
                                                                    const SolveOptions& options) {
  validate_metric(T, l);
  const auto& interior = T.interior_vertices();
  if (interior.empty()) fail(ErrorCode::EmptyResult, "no interior vertices to solve for");

  Eigen::VectorXd x;
  if (options.init.has_value()) {
    x.resize(interior.size());
    for (std::size_t r = 0; r < interior.size(); ++r)
      x[r] = options.init->at(interior[r]);
  } else {
    x = harmonic_init(T, l, target);
  }

  // Scale the initial interior values toward zero until the scaled metric
  // is valid; zero interior values with finite boundary data are always
  // reachable but may not be valid either, so stall cleanly if not.
  {
    double t = 1.0;
    while (!scaled_metric_valid(T, l, assemble_factor(T, target, t * x))) {
      t *= 0.5;
      if (t < options.min_step)
        fail(ErrorCode::LineSearchStall, "no valid initial scaling");
    }
    x *= t;
  }

  SolveReport report;
  auto record = [&](const ConformalFactor& u) {
    report.delaunay_margin_trace.push_back(delaunay_margin(T, apply_conformal(T, l, u)));
  };

  for (int iter = 0; iter <= options.max_iterations; ++iter) {
    ConformalFactor u = assemble_factor(T, target, x);
    PLMetric scaled = apply_conformal(T, l, u);
    CurvatureVector K = curvature_vector(T, scaled);

    Eigen::VectorXd F(interior.size());
    for (std::size_t r = 0; r < interior.size(); ++r)
      F[r] = K.at(interior[r]) - detail::map_at(target.interior_curvature, interior[r],
                                                "interior target", std::to_string(interior[r]));
    double residual = F.size() ? F.cwiseAbs().maxCoeff() : 0.0;
    report.residual_trace.push_back(residual);
    record(u);

    if (residual <= options.tolerance) {
      report.iterations = iter;
      report.final_residual = residual;
      report.converged = true;
      return {u, report};
    }
    if (iter == options.max_iterations) break;

    Eigen::SparseMatrix<double> J = curvature_jacobian(T, l, u);
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(J);
    if (solver.info() != Eigen::Success)
      fail(ErrorCode::SingularSystem,
           "Jacobian factorization failed; " + trace_tail(report.delaunay_margin_trace));
    Eigen::VectorXd delta = solver.solve(-F);
    if (solver.info() != Eigen::Success)
      fail(ErrorCode::SingularSystem,
           "Jacobian solve failed; " + trace_tail(report.delaunay_margin_trace));

    double t = 1.0;
    while (!scaled_metric_valid(T, l, assemble_factor(T, target, x + t * delta))) {
      t *= 0.5;
      if (t < options.min_step)
        fail(ErrorCode::LineSearchStall,
             "no valid step above 2^-20; " + trace_tail(report.delaunay_margin_trace));
    }
    x += t * delta;
  }

  report.iterations = options.max_iterations;
  report.final_residual = report.residual_trace.back();
  fail(ErrorCode::NonConvergence, "residual " + fmt(report.final_residual) + " after " +
                                      std::to_string(options.max_iterations) + " iterations; " +
                                      trace_tail(report.delaunay_margin_trace));
}

}  // namespace dcg

#include "dcg/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <ostream>

#include "dcg/conformal.hpp"
#include "dcg/experiments.hpp"
#include "dcg/mesh_io.hpp"
#include "dcg/report.hpp"

namespace dcg {

namespace {

MeshFile mesh_for_gen(const Triangulation& T, const PlanarCoords& coords, bool unit_lengths) {
  MeshFile mesh;
  mesh.vertex_order = T.vertices();
  mesh.faces = T.faces();
  mesh.coordinates = coords;
  if (unit_lengths) mesh.edge_lengths = unit_metric(T);
  return mesh;
}

void emit_mesh(const MeshFile& mesh, const std::string& out_path, std::ostream& out) {
  if (out_path.empty())
    write_mesh(out, mesh);
  else
    write_mesh_file(out_path, mesh);
}

// Complete factor sections scale the document's metric; partial ones are
// solver boundary data and are never applied implicitly.
bool factors_complete(const Triangulation& T, const MeshFile& mesh) {
  if (!mesh.factors) return false;
  for (VertexId v : T.vertices())
    if (!mesh.factors->values.count(v)) return false;
  return true;
}

PLMetric document_metric(const Triangulation& T, const MeshFile& mesh) {
  PLMetric l = metric_from_mesh(T, mesh);
  if (factors_complete(T, mesh)) l = apply_conformal(T, l, *mesh.factors);
  return l;
}

int emit_report(const ExperimentReport& report, const std::string& report_path,
                const std::string& csv_path, std::ostream& out) {
  if (report_path.empty()) {
    report.write_text(out);
  } else {
    std::ofstream os(report_path);
    if (!os) fail(ErrorCode::FormatError, "cannot write " + report_path);
    report.write_text(os);
  }
  if (!csv_path.empty()) {
    std::ofstream os(csv_path);
    if (!os) fail(ErrorCode::FormatError, "cannot write " + csv_path);
    report.write_csv(os);
  }
  return report.failed() == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"discrete conformal geometry on triangulated disks"};
  app.require_subcommand(1);

  // --- gen ------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate meshes");
  gen->require_subcommand(1);

  auto* gen_hex = gen->add_subcommand("hex", "hexagonal-lattice disk");
  int rings = 3;
  std::string gen_out;
  gen_hex->add_option("--rings", rings, "number of hexagonal layers")->required();
  gen_hex->add_option("--out", gen_out, "output mesh path (default: stdout)");

  auto* gen_random = gen->add_subcommand("random", "random Delaunay disk");
  int npoints = 50;
  std::uint64_t gen_seed = 1;
  gen_random->add_option("--n", npoints, "number of sampled points")->required();
  gen_random->add_option("--seed", gen_seed, "random seed");
  gen_random->add_option("--out", gen_out, "output mesh path (default: stdout)");

  // --- check ----------------------------------------------------------
  auto* check = app.add_subcommand("check", "evaluate a predicate with its margin");
  std::string check_mesh, what;
  bool exhaustive = false;
  check->add_option("--mesh", check_mesh, "input mesh path")->required();
  check
      ->add_option("--what", what, "predicate to check")
      ->required()
      ->check(CLI::IsMember({"delaunay", "nondegenerate", "acute", "embedding", "hyp-delaunay"}));
  check->add_flag("--exhaustive", exhaustive, "all-pairs edge intersection in embedding checks");

  // --- curvature --------------------------------------------------------
  auto* curvature = app.add_subcommand("curvature", "per-vertex curvature of a mesh metric");
  std::string curv_mesh;
  curvature->add_option("--mesh", curv_mesh, "input mesh path")->required();

  // --- solve ------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "prescribed flat curvature with Dirichlet boundary");
  std::string solve_mesh, solve_out, solve_report;
  double solve_tolerance = 1e-10;
  int solve_max_iterations = 50;
  solve->add_option("--mesh", solve_mesh, "input mesh with boundary factors")->required();
  solve->add_option("--out", solve_out, "output mesh path (default: stdout)");
  solve->add_option("--tolerance", solve_tolerance, "sup-norm curvature residual")
      ->envname("DCG_TOLERANCE");
  solve->add_option("--max-iterations", solve_max_iterations, "Newton iteration cap");
  solve->add_option("--report", solve_report, "iteration report path");

  // --- experiment -------------------------------------------------------
  auto* experiment = app.add_subcommand("experiment", "run a lemma verifier");
  std::string kind, report_path, csv_path;
  ExperimentConfig config;
  experiment->add_option("kind", kind, "which experiment")
      ->required()
      ->check(CLI::IsMember({"max-principle", "hyp-min-principle", "lemma21", "key-estimate",
                             "gradient", "rigidity-decay"}));
  experiment->add_option("--seed", config.seed, "random seed");
  experiment->add_option("--trials", config.trials, "number of (valid) trials");
  experiment->add_option("--size", config.size, "mesh-scale parameter");
  experiment->add_option("--amplitude", config.amplitude, "boundary-factor magnitude");
  experiment->add_option("--tolerance", config.tolerance, "assertion tolerance")
      ->envname("DCG_TOLERANCE");
  experiment->add_option("--report", report_path, "report path (default: stdout)");
  experiment->add_option("--csv", csv_path, "tabular export path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help() << "\n";
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    err << app.help() << "\n";
    return 2;
  }

  try {
    if (gen_hex->parsed()) {
      auto [T, coords] = gen_hex_disk(rings);
      emit_mesh(mesh_for_gen(T, coords, true), gen_out, out);
      return 0;
    }
    if (gen_random->parsed()) {
      auto [T, coords] = gen_random_delaunay_disk(npoints, gen_seed);
      emit_mesh(mesh_for_gen(T, coords, false), gen_out, out);
      return 0;
    }

    if (check->parsed()) {
      MeshFile mesh = read_mesh_file(check_mesh);
      Triangulation T = Triangulation::build(mesh.faces);
      bool pass = false;
      double margin = 0.0;
      std::string detail;
      if (what == "delaunay" || what == "nondegenerate" || what == "acute") {
        PLMetric l = document_metric(T, mesh);
        if (what == "delaunay") {
          margin = delaunay_margin(T, l);
          pass = margin >= 0.0;
        } else if (what == "nondegenerate") {
          margin = nondegeneracy_margin(T, l);
          pass = margin > 0.0;
        } else {
          margin = acuteness_margin(T, l);
          pass = margin > 0.0;
        }
      } else if (what == "embedding") {
        if (!mesh.coordinates) fail(ErrorCode::FormatError, "embedding check needs coordinates");
        EmbeddingOptions options;
        options.exhaustive = exhaustive;
        MarginReport r = is_geodesic_embedding(T, *mesh.coordinates, options);
        pass = r.pass;
        margin = r.margin;
        detail = r.detail;
      } else {  // hyp-delaunay
        if (!mesh.coordinates) fail(ErrorCode::FormatError, "hyp-delaunay check needs coordinates");
        DiskCoords disk{mesh.coordinates->positions};
        MarginReport r = is_hyp_delaunay(T, disk);
        pass = r.pass;
        margin = r.margin;
        detail = r.detail;
      }
      out << "what=" << what << " margin=" << format_double(margin)
          << (pass ? " pass" : " fail");
      if (!detail.empty()) out << " " << detail;
      out << "\n";
      return pass ? 0 : 1;
    }

    if (curvature->parsed()) {
      MeshFile mesh = read_mesh_file(curv_mesh);
      Triangulation T = Triangulation::build(mesh.faces);
      CurvatureVector K = curvature_vector(T, document_metric(T, mesh));
      double sum = 0.0;
      for (VertexId v : T.vertices()) {
        out << "K " << v << " " << format_double(K.at(v)) << "\n";
        sum += K.at(v);
      }
      out << "sum " << format_double(sum) << "\n";
      return 0;
    }

    if (solve->parsed()) {
      MeshFile mesh = read_mesh_file(solve_mesh);
      Triangulation T = Triangulation::build(mesh.faces);
      PLMetric l = metric_from_mesh(T, mesh);
      if (!mesh.factors) fail(ErrorCode::FormatError, "solve needs boundary factors");
      VertexMap<double> boundary;
      for (VertexId v : T.boundary_vertices())
        boundary[v] = mesh.factors->at(v);

      SolveOptions options;
      options.tolerance = solve_tolerance;
      options.max_iterations = solve_max_iterations;
      auto [u, report] =
          newton_prescribed_curvature(T, l, CurvatureTarget::flat(T, boundary), options);

      // base metric + full factors: downstream verbs see the solved metric
      MeshFile solved;
      solved.vertex_order = T.vertices();
      solved.faces = T.faces();
      solved.factors = u;
      solved.edge_lengths = l;
      PLMetric scaled = apply_conformal(T, l, u);
      solved.coordinates = develop_flat_metric(T, scaled);
      emit_mesh(solved, solve_out, out);
      if (!solve_report.empty()) {
        // one record per Newton iterate, in the experiment report format
        ExperimentReport iteration_report;
        iteration_report.name = "solve";
        iteration_report.config.seed = 0;
        iteration_report.config.trials = int(report.residual_trace.size());
        iteration_report.config.size = int(T.vertex_count());
        iteration_report.config.amplitude = 0.0;
        iteration_report.config.tolerance = solve_tolerance;
        for (std::size_t k = 0; k < report.residual_trace.size(); ++k) {
          TrialRecord rec;
          rec.index = int(k);
          rec.status = TrialStatus::Pass;
          rec.margin = report.residual_trace[k];
          rec.note =
              "delaunay_margin=" + format_double(report.delaunay_margin_trace[k]);
          iteration_report.trials.push_back(std::move(rec));
        }
        std::ofstream os(solve_report);
        if (!os) fail(ErrorCode::FormatError, "cannot write " + solve_report);
        iteration_report.write_text(os);
      }
      err << "converged iterations=" << report.iterations
          << " residual=" << format_double(report.final_residual)
          << " delaunay_margin=" << format_double(report.delaunay_margin_trace.back()) << "\n";
      return 0;
    }

    if (experiment->parsed()) {
      ExperimentReport report;
      if (kind == "max-principle") report = run_max_principle(config);
      else if (kind == "hyp-min-principle") report = run_hyp_min_principle(config);
      else if (kind == "lemma21") report = run_lemma21(config);
      else if (kind == "key-estimate") report = run_key_estimate(config);
      else if (kind == "gradient") report = run_gradient_estimate(config);
      else report = run_rigidity_decay(config);
      return emit_report(report, report_path, csv_path, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace dcg

// Command-line driver for the elastica library.
//
// Every subcommand writes a run manifest (default: <out>.manifest.json)
// recording the command line, the parsed configuration, input file hashes,
// and the outcome, whatever that outcome is. Exit codes: 0 success, 2 input
// or validation failure, 3 numerical abort (edge collapse, landmark
// collision, shooting divergence).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "elastica/csv.hpp"
#include "elastica/document.hpp"
#include "elastica/dynamics.hpp"
#include "elastica/generators.hpp"
#include "elastica/landmarks.hpp"
#include "elastica/manifest.hpp"
#include "elastica/metric.hpp"
#include "elastica/operators.hpp"
#include "elastica/planar.hpp"
#include "elastica/srvt.hpp"
#include "elastica/svg.hpp"

namespace fs = std::filesystem;
using namespace elastica;

namespace {

constexpr const char* kCsvContract =
    "Trajectory CSV columns: t, c{i}_x{j} (vertices, vertex-major), then "
    "v{i}_x{j} (velocity) or a{i}_x{j} (momentum), then energy, length, "
    "min_edge, vertex_sum_inf, momentum_sum_inf.";

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::degenerate_edge:
    case ErrorKind::degenerate_landmarks:
    case ErrorKind::no_convergence:
      return 3;
    default:
      return 2;
  }
}

// Relative output paths resolve under $ELASTICA_OUT_DIR when set; parent
// directories are created on demand.
std::string resolve_out(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* base = std::getenv("ELASTICA_OUT_DIR")) p = fs::path(base) / p;
  }
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p.string();
}

std::string strip_trailing_separators(std::string s) {
  while (s.size() > 1 && (s.back() == '/' || s.back() == '\\')) s.pop_back();
  return s;
}

struct IntegratorOpts {
  double dt = 1e-3;
  double t_end = 1.0;
  int stride = 1;
  double edge_guard = 1.0;
};

void add_integrator_options(CLI::App* cmd, IntegratorOpts& o, bool with_guard = true) {
  cmd->add_option("--dt", o.dt, "RK4 step size")->capture_default_str();
  cmd->add_option("--t-end", o.t_end, "integration end time")->capture_default_str();
  cmd->add_option("--stride", o.stride, "store every stride-th step")->capture_default_str();
  if (with_guard)
    cmd->add_option("--edge-guard", o.edge_guard, "abort margin multiplier on the minimum edge")
        ->capture_default_str();
}

nlohmann::json echo_integrator(const IntegratorOpts& o, bool with_guard = true) {
  nlohmann::json j{{"dt", o.dt}, {"t_end", o.t_end}, {"stride", o.stride}};
  if (with_guard) j["edge_guard"] = o.edge_guard;
  return j;
}

struct ShootingOpts {
  IntegratorOpts integrator{.dt = 1e-2, .t_end = 1.0, .stride = 1, .edge_guard = 1.0};
  int max_iterations = 100;
  double tolerance = 1e-8;
  double fd_step = 1e-6;
};

void add_shooting_options(CLI::App* cmd, ShootingOpts& o) {
  add_integrator_options(cmd, o.integrator);
  cmd->add_option("--max-iter", o.max_iterations, "Gauss-Newton iteration cap")
      ->capture_default_str();
  cmd->add_option("--tol", o.tolerance, "endpoint sup-norm tolerance")->capture_default_str();
  cmd->add_option("--fd-step", o.fd_step, "Jacobian finite-difference step")
      ->capture_default_str();
}

ShootingConfig to_shooting_config(const ShootingOpts& o) {
  return {.integrator = {.dt = o.integrator.dt,
                         .t_end = o.integrator.t_end,
                         .sample_stride = o.integrator.stride,
                         .edge_guard = o.integrator.edge_guard},
          .max_iterations = o.max_iterations,
          .tolerance = o.tolerance,
          .fd_step = o.fd_step};
}

nlohmann::json echo_shooting(const ShootingOpts& o) {
  nlohmann::json j = echo_integrator(o.integrator);
  j["max_iterations"] = o.max_iterations;
  j["tolerance"] = o.tolerance;
  j["fd_step"] = o.fd_step;
  return j;
}

Polygon load_polygon(RunManifest& m, const std::string& path, bool recenter) {
  add_input(m, path);
  Polygon c = to_polygon(load_document(path));
  return recenter ? c.recentered() : c;
}

VertexField load_tangent(RunManifest& m, const std::string& path, bool recenter) {
  add_input(m, path);
  VertexField h = to_vertex_field(load_document(path));
  return recenter ? pi1(h) : h;
}

Covector load_covector(RunManifest& m, const std::string& path) {
  add_input(m, path);
  return to_covector(load_document(path));
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

FourierSeries load_fourier_series(RunManifest& m, const std::string& path) {
  add_input(m, path);
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open coefficient file '" + path + "'");
  nlohmann::json root = nlohmann::json::parse(in, nullptr, false);
  if (root.is_discarded() || !root.is_object())
    throw SchemaError("coefficients '" + path + "': expected a JSON object");
  auto read_matrix = [&](const char* key, int rows, int cols) {
    const auto& arr = root.at(key);
    if (!arr.is_array() || arr.empty()) throw SchemaError(std::string("/") + key + ": expected a non-empty array of rows");
    if (rows < 0) {
      rows = static_cast<int>(arr.size());
      cols = static_cast<int>(arr.at(0).is_array() ? arr.at(0).size() : 0);
    }
    if (static_cast<int>(arr.size()) != rows)
      throw SchemaError(std::string("/") + key + ": expected " + std::to_string(rows) + " rows");
    Eigen::MatrixXd mat(rows, cols);
    for (int i = 0; i < rows; ++i) {
      const auto& row = arr.at(i);
      if (!row.is_array() || static_cast<int>(row.size()) != cols)
        throw SchemaError(std::string("/") + key + "/" + std::to_string(i) + ": expected " +
                          std::to_string(cols) + " numbers");
      for (int j = 0; j < cols; ++j) {
        if (!row.at(j).is_number())
          throw SchemaError(std::string("/") + key + "/" + std::to_string(i) + "/" +
                            std::to_string(j) + ": expected a number");
        mat(i, j) = row.at(j).get<double>();
      }
    }
    return mat;
  };
  FourierSeries series;
  series.cos_coeffs = read_matrix("cos", -1, -1);
  if (root.contains("sin"))
    series.sin_coeffs = read_matrix("sin", static_cast<int>(series.cos_coeffs.rows()),
                                    static_cast<int>(series.cos_coeffs.cols()));
  else
    series.sin_coeffs =
        Eigen::MatrixXd::Zero(series.cos_coeffs.rows(), series.cos_coeffs.cols());
  return series;
}

// Runs one subcommand body under the manifest/exit-code contract. The body
// returns an abort reason when the computation terminated early but still
// produced its (truncated) outputs.
int run_guarded(RunManifest& manifest, const std::string& manifest_path,
                const std::function<std::optional<std::string>()>& body) {
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (auto abort = body()) {
      manifest.status = "numerical-abort";
      manifest.abort_reason = *abort;
      std::cerr << "aborted: " << *abort << "\n";
      code = 3;
    }
  } catch (const Error& e) {
    code = exit_code_for(e);
    manifest.status = code == 3 ? "numerical-abort" : "validation-error";
    manifest.abort_reason = e.what();
    std::cerr << "error: " << e.what() << "\n";
  }
  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    write_manifest(manifest_path, manifest);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (code == 0) code = 2;
  }
  return code;
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("Geodesic toolkit for closed polygonal curves under the "
                           "scale-invariant first-order metric.\n") +
               kCsvContract +
               "\nDocuments are JSON (schema_version 1); relative outputs resolve "
               "under $ELASTICA_OUT_DIR when set."};
  app.require_subcommand(1);

  // ---- exp ----------------------------------------------------------------
  struct {
    std::string in, vel, out, manifest;
    IntegratorOpts integ;
    bool recenter = false;
  } exp_o;
  CLI::App* exp_cmd = app.add_subcommand(
      "exp", std::string("Integrate the geodesic initial value problem (second-order "
                         "form, RK4).\n") +
                 kCsvContract);
  exp_cmd->add_option("--in", exp_o.in, "initial curve document (role polygon)")->required();
  exp_cmd->add_option("--vel", exp_o.vel, "initial velocity document (role tangent)")
      ->required();
  exp_cmd->add_option("--out", exp_o.out, "trajectory CSV path")->required();
  add_integrator_options(exp_cmd, exp_o.integ);
  exp_cmd->add_flag("--recenter", exp_o.recenter,
                    "subtract vertex means from curve and velocity before integrating");
  exp_cmd->add_option("--manifest", exp_o.manifest, "manifest path (default <out>.manifest.json)");

  // ---- log ----------------------------------------------------------------
  struct {
    std::string from, to, out, manifest;
    ShootingOpts shooting;
    bool recenter = false;
  } log_o;
  CLI::App* log_cmd = app.add_subcommand(
      "log", "Solve the geodesic boundary value problem by Gauss-Newton shooting; "
             "writes the initial velocity as a tangent document.");
  log_cmd->add_option("--from", log_o.from, "start curve document")->required();
  log_cmd->add_option("--to", log_o.to, "target curve document")->required();
  log_cmd->add_option("--out", log_o.out, "output tangent document path")->required();
  add_shooting_options(log_cmd, log_o.shooting);
  log_cmd->add_flag("--recenter", log_o.recenter, "subtract vertex means from both curves");
  log_cmd->add_option("--manifest", log_o.manifest, "manifest path (default <out>.manifest.json)");

  // ---- dist ---------------------------------------------------------------
  struct {
    std::string from, to, out = "result.json", manifest;
    ShootingOpts shooting;
    bool recenter = false;
  } dist_o;
  CLI::App* dist_cmd = app.add_subcommand(
      "dist", "Geodesic distance between two curves (shooting + metric norm); "
              "writes {distance, iterations, residual} JSON.");
  dist_cmd->add_option("--from", dist_o.from, "start curve document")->required();
  dist_cmd->add_option("--to", dist_o.to, "target curve document")->required();
  dist_cmd->add_option("--out", dist_o.out, "output JSON path")->capture_default_str();
  add_shooting_options(dist_cmd, dist_o.shooting);
  dist_cmd->add_flag("--recenter", dist_o.recenter, "subtract vertex means from both curves");
  dist_cmd->add_option("--manifest", dist_o.manifest,
                       "manifest path (default <out>.manifest.json)");

  // ---- flow-hamiltonian -----------------------------------------------------
  struct {
    std::string in, mom, out, manifest;
    IntegratorOpts integ;
    bool recenter = false;
  } ham_o;
  CLI::App* ham_cmd = app.add_subcommand(
      "flow-hamiltonian",
      std::string("Integrate the first-order Hamiltonian form from a curve and a "
                  "covector.\n") +
          kCsvContract);
  ham_cmd->add_option("--in", ham_o.in, "initial curve document (role polygon)")->required();
  ham_cmd->add_option("--mom", ham_o.mom, "initial momentum document (role covector)")
      ->required();
  ham_cmd->add_option("--out", ham_o.out, "trajectory CSV path")->required();
  add_integrator_options(ham_cmd, ham_o.integ);
  ham_cmd->add_flag("--recenter", ham_o.recenter, "subtract vertex means from the curve");
  ham_cmd->add_option("--manifest", ham_o.manifest, "manifest path (default <out>.manifest.json)");

  // ---- flow-lddmm -----------------------------------------------------------
  struct {
    std::string in, mom, out, manifest;
    double sigma = 1.0;
    IntegratorOpts integ;
  } lddmm_o;
  CLI::App* lddmm_cmd = app.add_subcommand(
      "flow-lddmm", "Integrate the Gaussian-kernel landmark Hamiltonian flow. Landmark "
                    "configurations are point lists stored with the polygon role; CSV "
                    "columns: t, q{i}_x{j}, p{i}_x{j}, hamiltonian, min_pair_distance, "
                    "momentum_sum_inf.");
  lddmm_cmd->add_option("--in", lddmm_o.in, "landmark configuration document (role polygon)")
      ->required();
  lddmm_cmd->add_option("--mom", lddmm_o.mom, "initial momenta document (role covector)")
      ->required();
  lddmm_cmd->add_option("--out", lddmm_o.out, "trajectory CSV path")->required();
  lddmm_cmd->add_option("--sigma", lddmm_o.sigma, "Gaussian kernel width")
      ->capture_default_str();
  add_integrator_options(lddmm_cmd, lddmm_o.integ, /*with_guard=*/false);
  lddmm_cmd->add_option("--manifest", lddmm_o.manifest,
                        "manifest path (default <out>.manifest.json)");

  // ---- kernel ---------------------------------------------------------------
  struct {
    std::string in, out, kind = "elastic", manifest;
    double sigma = 1.0;
  } kernel_o;
  CLI::App* kernel_cmd = app.add_subcommand(
      "kernel", "Emit kernel weight grids as CSV (one '# kind=<name> n=<n>' header per "
                "grid): the curve-metric kernel, the Gaussian landmark kernel, or both.");
  kernel_cmd->add_option("--in", kernel_o.in, "point configuration document (role polygon)")
      ->required();
  kernel_cmd->add_option("--out", kernel_o.out, "output CSV path")->required();
  kernel_cmd->add_option("--kind", kernel_o.kind, "elastic | gaussian | both")
      ->check(CLI::IsMember({"elastic", "gaussian", "both"}))
      ->capture_default_str();
  kernel_cmd->add_option("--sigma", kernel_o.sigma, "Gaussian kernel width")
      ->capture_default_str();
  kernel_cmd->add_option("--manifest", kernel_o.manifest,
                         "manifest path (default <out>.manifest.json)");

  // ---- srvt -----------------------------------------------------------------
  struct {
    std::string in, out, tangent, tangent_out, report, manifest;
  } srvt_o;
  CLI::App* srvt_cmd = app.add_subcommand(
      "srvt", "Map a square-root-velocity pair to its polygon; optionally push a "
              "tangent through the chart and report both sides of the isometry "
              "comparison.");
  srvt_cmd->add_option("--in", srvt_o.in, "srv pair document (role srv_pair)")->required();
  srvt_cmd->add_option("--out", srvt_o.out, "output curve document path")->required();
  CLI::Option* tangent_opt = srvt_cmd->add_option(
      "--tangent", srvt_o.tangent, "tangent document (role tangent, columns de|df)");
  srvt_cmd->add_option("--tangent-out", srvt_o.tangent_out,
                       "output document for the pushed-forward tangent")
      ->needs(tangent_opt);
  srvt_cmd
      ->add_option("--report", srvt_o.report,
                   "write {pullback, flat, curve_length, pullback_times_length_over_flat} "
                   "JSON for the given tangent")
      ->needs(tangent_opt);
  srvt_cmd->add_option("--manifest", srvt_o.manifest,
                       "manifest path (default <out>.manifest.json)");

  // ---- validate ---------------------------------------------------------------
  struct {
    std::string in, manifest = "validate.manifest.json";
  } validate_o;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Load a document and re-check every declared invariant; prints a "
                  "one-line summary on success.");
  validate_cmd->add_option("--in", validate_o.in, "document path")->required();
  validate_cmd->add_option("--manifest", validate_o.manifest, "manifest path")
      ->capture_default_str();

  // ---- gen ------------------------------------------------------------------
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "Generate reference curve documents.");
  gen_cmd->require_subcommand(1);

  struct {
    double t = 0.0;
    std::string out, vel, acc, manifest;
  } diamond_o;
  CLI::App* diamond_cmd = gen_cmd->add_subcommand(
      "diamond", "Four-vertex analytic geodesic family: vertices (+/-sin t, 0), (0, +/-cos t).");
  diamond_cmd->add_option("--t", diamond_o.t, "family parameter")->required();
  diamond_cmd->add_option("--out", diamond_o.out, "output curve document path")->required();
  diamond_cmd->add_option("--vel", diamond_o.vel, "also write the velocity tangent document");
  diamond_cmd->add_option("--acc", diamond_o.acc,
                          "also write the acceleration tangent document");
  diamond_cmd->add_option("--manifest", diamond_o.manifest,
                          "manifest path (default <out>.manifest.json)");

  struct {
    int n = 0;
    double radius = 1.0;
    std::string out, manifest;
  } regular_o;
  CLI::App* regular_cmd =
      gen_cmd->add_subcommand("regular", "Regular n-gon of given circumradius.");
  regular_cmd->add_option("--n", regular_o.n, "vertex count (>= 3)")->required();
  regular_cmd->add_option("--radius", regular_o.radius, "circumradius")->capture_default_str();
  regular_cmd->add_option("--out", regular_o.out, "output curve document path")->required();
  regular_cmd->add_option("--manifest", regular_o.manifest,
                          "manifest path (default <out>.manifest.json)");

  struct {
    std::string coeffs, out, manifest;
    int n = 0;
  } fourier_o;
  CLI::App* fourier_cmd = gen_cmd->add_subcommand(
      "fourier", "Sample a trigonometric curve on the uniform n-grid. Coefficient file: "
                 "{\"cos\": [[...d numbers...] per harmonic], \"sin\": [...]} with row m "
                 "holding the coefficient of harmonic m.");
  fourier_cmd->add_option("--coeffs", fourier_o.coeffs, "coefficient JSON path")->required();
  fourier_cmd->add_option("--n", fourier_o.n, "sample count")->required();
  fourier_cmd->add_option("--out", fourier_o.out, "output curve document path")->required();
  fourier_cmd->add_option("--manifest", fourier_o.manifest,
                          "manifest path (default <out>.manifest.json)");

  // ---- render -----------------------------------------------------------------
  struct {
    std::string traj, out, manifest;
    int width = 640;
  } render_o;
  CLI::App* render_cmd = app.add_subcommand(
      "render", std::string("Render a trajectory CSV as one SVG polygon frame per stored "
                            "sample (frame_000000.svg, ...), all sharing one viewport.\n") +
                    kCsvContract);
  render_cmd->add_option("--traj", render_o.traj, "trajectory CSV path")->required();
  render_cmd->add_option("--out", render_o.out, "output frame directory")->required();
  render_cmd->add_option("--width", render_o.width, "frame width in pixels")
      ->capture_default_str();
  render_cmd->add_option("--manifest", render_o.manifest,
                         "manifest path (default <out>.manifest.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  RunManifest manifest;
  manifest.command_line = join_args(argc, argv);
  manifest.tool_version = kToolVersion;

  auto manifest_path_for = [&](const std::string& out, const std::string& override_path) {
    return override_path.empty() ? strip_trailing_separators(out) + ".manifest.json"
                                 : resolve_out(override_path);
  };

  if (app.got_subcommand(exp_cmd)) {
    const std::string out = resolve_out(exp_o.out);
    manifest.config = echo_integrator(exp_o.integ);
    manifest.config["recenter"] = exp_o.recenter;
    return run_guarded(manifest, manifest_path_for(out, exp_o.manifest),
                       [&]() -> std::optional<std::string> {
                         Polygon c = load_polygon(manifest, exp_o.in, exp_o.recenter);
                         VertexField v = load_tangent(manifest, exp_o.vel, exp_o.recenter);
                         Trajectory traj = integrate_lagrangian(
                             c, v,
                             {.dt = exp_o.integ.dt,
                              .t_end = exp_o.integ.t_end,
                              .sample_stride = exp_o.integ.stride,
                              .edge_guard = exp_o.integ.edge_guard});
                         write_trajectory_csv(out, traj);
                         std::cout << out << ": " << traj.samples.size() << " samples\n";
                         return traj.abort_reason;
                       });
  }

  if (app.got_subcommand(log_cmd)) {
    const std::string out = resolve_out(log_o.out);
    manifest.config = echo_shooting(log_o.shooting);
    manifest.config["recenter"] = log_o.recenter;
    return run_guarded(manifest, manifest_path_for(out, log_o.manifest),
                       [&]() -> std::optional<std::string> {
                         Polygon c0 = load_polygon(manifest, log_o.from, log_o.recenter);
                         Polygon c1 = load_polygon(manifest, log_o.to, log_o.recenter);
                         LogResult r = log_map(c0, c1, to_shooting_config(log_o.shooting));
                         CurveDocument doc = from_vertex_field(r.initial_velocity);
                         doc.metadata["iterations"] = std::to_string(r.iterations);
                         doc.metadata["residual"] = format_double(r.residual);
                         save_document(out, doc);
                         std::cout << out << ": converged in " << r.iterations
                                   << " iterations, residual " << r.residual << "\n";
                         return std::nullopt;
                       });
  }

  if (app.got_subcommand(dist_cmd)) {
    const std::string out = resolve_out(dist_o.out);
    manifest.config = echo_shooting(dist_o.shooting);
    manifest.config["recenter"] = dist_o.recenter;
    return run_guarded(manifest, manifest_path_for(out, dist_o.manifest),
                       [&]() -> std::optional<std::string> {
                         Polygon c0 = load_polygon(manifest, dist_o.from, dist_o.recenter);
                         Polygon c1 = load_polygon(manifest, dist_o.to, dist_o.recenter);
                         LogResult r = log_map(c0, c1, to_shooting_config(dist_o.shooting));
                         const double d = std::sqrt(
                             metric(c0, r.initial_velocity, r.initial_velocity));
                         write_json(out, {{"distance", d},
                                          {"iterations", r.iterations},
                                          {"residual", r.residual}});
                         std::cout << "distance " << d << "\n";
                         return std::nullopt;
                       });
  }

  if (app.got_subcommand(ham_cmd)) {
    const std::string out = resolve_out(ham_o.out);
    manifest.config = echo_integrator(ham_o.integ);
    manifest.config["recenter"] = ham_o.recenter;
    return run_guarded(manifest, manifest_path_for(out, ham_o.manifest),
                       [&]() -> std::optional<std::string> {
                         Polygon c = load_polygon(manifest, ham_o.in, ham_o.recenter);
                         Covector a = load_covector(manifest, ham_o.mom);
                         Trajectory traj = integrate_hamiltonian(
                             c, a,
                             {.dt = ham_o.integ.dt,
                              .t_end = ham_o.integ.t_end,
                              .sample_stride = ham_o.integ.stride,
                              .edge_guard = ham_o.integ.edge_guard});
                         write_trajectory_csv(out, traj);
                         std::cout << out << ": " << traj.samples.size() << " samples\n";
                         return traj.abort_reason;
                       });
  }

  if (app.got_subcommand(lddmm_cmd)) {
    const std::string out = resolve_out(lddmm_o.out);
    manifest.config = echo_integrator(lddmm_o.integ, /*with_guard=*/false);
    manifest.config["sigma"] = lddmm_o.sigma;
    return run_guarded(
        manifest, manifest_path_for(out, lddmm_o.manifest),
        [&]() -> std::optional<std::string> {
          add_input(manifest, lddmm_o.in);
          Eigen::MatrixXd q = to_polygon(load_document(lddmm_o.in)).vertices();
          Covector p = load_covector(manifest, lddmm_o.mom);
          LandmarkTrajectory traj =
              lddmm_hamiltonian_flow(LandmarkConfig(q, lddmm_o.sigma), p.values,
                                     {.dt = lddmm_o.integ.dt,
                                      .t_end = lddmm_o.integ.t_end,
                                      .sample_stride = lddmm_o.integ.stride});
          write_landmark_trajectory_csv(out, traj);
          std::cout << out << ": " << traj.samples.size() << " samples\n";
          return traj.abort_reason;
        });
  }

  if (app.got_subcommand(kernel_cmd)) {
    const std::string out = resolve_out(kernel_o.out);
    manifest.config = {{"kind", kernel_o.kind}, {"sigma", kernel_o.sigma}};
    return run_guarded(
        manifest, manifest_path_for(out, kernel_o.manifest),
        [&]() -> std::optional<std::string> {
          add_input(manifest, kernel_o.in);
          Eigen::MatrixXd points = to_polygon(load_document(kernel_o.in)).vertices();
          std::vector<std::pair<std::string, Eigen::MatrixXd>> grids;
          if (kernel_o.kind == "elastic" || kernel_o.kind == "both")
            grids.emplace_back("elastic",
                               elastic_kernel_weights(LandmarkConfig(points, kernel_o.sigma)));
          if (kernel_o.kind == "gaussian" || kernel_o.kind == "both")
            grids.emplace_back(
                "gaussian",
                lddmm_kernel_matrix(LandmarkConfig(points, kernel_o.sigma)).weights());
          write_kernel_csv(out, grids);
          std::cout << out << ": " << grids.size() << " grid(s)\n";
          return std::nullopt;
        });
  }

  if (app.got_subcommand(srvt_cmd)) {
    const std::string out = resolve_out(srvt_o.out);
    manifest.config = {{"tangent", !srvt_o.tangent.empty()},
                       {"report", !srvt_o.report.empty()}};
    return run_guarded(
        manifest, manifest_path_for(out, srvt_o.manifest),
        [&]() -> std::optional<std::string> {
          add_input(manifest, srvt_o.in);
          SqrtVelocityPair s = to_srv_pair(load_document(srvt_o.in));
          save_document(out, from_polygon(phi(s)));
          std::cout << out << ": curve written\n";
          if (!srvt_o.tangent.empty()) {
            add_input(manifest, srvt_o.tangent);
            CurveDocument tdoc = load_document(srvt_o.tangent);
            if (tdoc.role != DocumentRole::tangent)
              throw ValidationError("srvt: --tangent document role is '" +
                                    role_name(tdoc.role) + "', expected 'tangent'");
            if (tdoc.grid.d != 2 || tdoc.grid.n != s.n())
              throw ValidationError("srvt: tangent document must be n x 2 (de|df columns) "
                                    "on the pair's grid");
            const Eigen::VectorXd de = tdoc.values.col(0);
            const Eigen::VectorXd df = tdoc.values.col(1);
            if (!srvt_o.tangent_out.empty())
              save_document(resolve_out(srvt_o.tangent_out),
                            from_vertex_field(phi_tangent(s, de, df)));
            if (!srvt_o.report.empty()) {
              IsometryDefect defect = pullback_isometry_defect(s, de, df);
              write_json(resolve_out(srvt_o.report),
                         {{"pullback", defect.pullback},
                          {"flat", defect.flat},
                          {"curve_length", defect.curve_length},
                          {"pullback_times_length_over_flat",
                           defect.pullback * defect.curve_length / defect.flat}});
            }
          }
          return std::nullopt;
        });
  }

  if (app.got_subcommand(validate_cmd)) {
    manifest.config = {{"in", validate_o.in}};
    return run_guarded(manifest, resolve_out(validate_o.manifest),
                       [&]() -> std::optional<std::string> {
                         add_input(manifest, validate_o.in);
                         CurveDocument doc = load_document(validate_o.in);
                         std::cout << "ok: role=" << role_name(doc.role) << " n=" << doc.grid.n
                                   << " d=" << doc.grid.d << "\n";
                         return std::nullopt;
                       });
  }

  if (app.got_subcommand(gen_cmd)) {
    if (gen_cmd->got_subcommand(diamond_cmd)) {
      const std::string out = resolve_out(diamond_o.out);
      manifest.config = {{"t", diamond_o.t}};
      return run_guarded(manifest, manifest_path_for(out, diamond_o.manifest),
                         [&]() -> std::optional<std::string> {
                           DiamondState s = gen_diamond(diamond_o.t);
                           save_document(out, from_polygon(s.curve));
                           if (!diamond_o.vel.empty())
                             save_document(resolve_out(diamond_o.vel),
                                           from_vertex_field(s.velocity));
                           if (!diamond_o.acc.empty())
                             save_document(resolve_out(diamond_o.acc),
                                           from_vertex_field(s.acceleration));
                           std::cout << out << ": diamond at t=" << diamond_o.t << "\n";
                           return std::nullopt;
                         });
    }
    if (gen_cmd->got_subcommand(regular_cmd)) {
      const std::string out = resolve_out(regular_o.out);
      manifest.config = {{"n", regular_o.n}, {"radius", regular_o.radius}};
      return run_guarded(manifest, manifest_path_for(out, regular_o.manifest),
                         [&]() -> std::optional<std::string> {
                           save_document(
                               out, from_polygon(gen_regular_polygon(regular_o.n,
                                                                     regular_o.radius)));
                           std::cout << out << ": regular " << regular_o.n << "-gon\n";
                           return std::nullopt;
                         });
    }
    if (gen_cmd->got_subcommand(fourier_cmd)) {
      const std::string out = resolve_out(fourier_o.out);
      manifest.config = {{"n", fourier_o.n}};
      return run_guarded(
          manifest, manifest_path_for(out, fourier_o.manifest),
          [&]() -> std::optional<std::string> {
            FourierSeries series = load_fourier_series(manifest, fourier_o.coeffs);
            save_document(out, from_polygon(gen_fourier_curve(series, fourier_o.n)));
            std::cout << out << ": " << fourier_o.n << " samples\n";
            return std::nullopt;
          });
    }
  }

  if (app.got_subcommand(render_cmd)) {
    const std::string out = strip_trailing_separators(resolve_out(render_o.out));
    manifest.config = {{"width", render_o.width}};
    return run_guarded(manifest, manifest_path_for(out, render_o.manifest),
                       [&]() -> std::optional<std::string> {
                         add_input(manifest, render_o.traj);
                         Trajectory traj = read_trajectory_csv(render_o.traj);
                         fs::create_directories(out);
                         render_trajectory_frames(traj, out, render_o.width);
                         std::cout << out << ": " << traj.samples.size() << " frames\n";
                         return std::nullopt;
                       });
  }

  std::cerr << "error: no subcommand selected\n";
  return 2;
}

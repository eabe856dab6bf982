#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "elastica/csv.hpp"
#include "elastica/document.hpp"
#include "elastica/dynamics.hpp"
#include "elastica/generators.hpp"
#include "elastica/landmarks.hpp"
#include "elastica/manifest.hpp"
#include "elastica/metric.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

using namespace elastica;
using testutil::TempDir;
using testutil::slurp;
using testutil::spit;
namespace fs = std::filesystem;

namespace {

// End-to-end tests drive the installed binary exactly as a user would: shell
// out, then inspect exit code, outputs, and the run manifest.

std::string cli() { return ELASTICA_CLI_PATH; }

int run(const std::string& args, const TempDir& dir, const std::string& env = "") {
  const std::string cmd = "cd '" + dir.path.string() + "' && " + env + (env.empty() ? "" : " ") +
                          "'" + cli() + "' " + args + " >cli_stdout.txt 2>cli_stderr.txt";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

nlohmann::json read_json(const std::string& path) {
  return nlohmann::json::parse(slurp(path));
}

}  // namespace

TEST_CASE("gen writes documents matching the library generators") {
  TempDir dir;
  CHECK(run("gen diamond --t 0.4 --out c.json --vel v.json --acc a.json", dir) == 0);
  DiamondState s = gen_diamond(0.4);
  CHECK(to_polygon(load_document(dir.file("c.json"))).vertices() == s.curve.vertices());
  CHECK(to_vertex_field(load_document(dir.file("v.json"))).values == s.velocity.values);
  CHECK(to_vertex_field(load_document(dir.file("a.json"))).values == s.acceleration.values);

  CHECK(run("gen regular --n 7 --radius 2.5 --out r.json", dir) == 0);
  CHECK(to_polygon(load_document(dir.file("r.json"))).vertices() ==
        gen_regular_polygon(7, 2.5).vertices());

  // manifest accompanies the primary output and records the run
  nlohmann::json m = read_json(dir.file("c.json.manifest.json"));
  CHECK(m["status"] == "ok");
  CHECK(m["config"]["t"] == 0.4);
  CHECK(m["tool_version"] == kToolVersion);
  std::string cmdline = m["command_line"];
  CHECK(cmdline.find("gen diamond") != std::string::npos);
}

TEST_CASE("gen fourier consumes a coefficient file") {
  TempDir dir;
  spit(dir.file("coeffs.json"), R"({"cos": [[0,0],[1.5,0]], "sin": [[0,0],[0,1.5]]})");
  CHECK(run("gen fourier --coeffs coeffs.json --n 16 --out c.json", dir) == 0);
  FourierSeries series;
  series.cos_coeffs = Eigen::MatrixXd::Zero(2, 2);
  series.sin_coeffs = Eigen::MatrixXd::Zero(2, 2);
  series.cos_coeffs(1, 0) = 1.5;
  series.sin_coeffs(1, 1) = 1.5;
  CHECK(to_polygon(load_document(dir.file("c.json"))).vertices() ==
        gen_fourier_curve(series, 16).vertices());

  // input hash is recorded
  nlohmann::json m = read_json(dir.file("c.json.manifest.json"));
  REQUIRE(m["inputs"].size() == 1);
  CHECK(m["inputs"][0]["fnv1a64"] == hash_file(dir.file("coeffs.json")));

  spit(dir.file("bad.json"), R"({"cos": [[0,0],[1.5]]})");
  CHECK(run("gen fourier --coeffs bad.json --n 16 --out c2.json", dir) == 2);
}

TEST_CASE("exp reproduces the library trajectory byte for byte") {
  TempDir dir;
  CHECK(run("gen diamond --t 0.4 --out c.json --vel v.json", dir) == 0);
  CHECK(run("exp --in c.json --vel v.json --dt 0.01 --t-end 0.3 --stride 5 --out traj.csv",
            dir) == 0);

  DiamondState s = gen_diamond(0.4);
  Trajectory expected = integrate_lagrangian(
      s.curve, s.velocity, {.dt = 0.01, .t_end = 0.3, .sample_stride = 5});
  write_trajectory_csv(dir.file("expected.csv"), expected);
  CHECK(slurp(dir.file("traj.csv")) == slurp(dir.file("expected.csv")));

  // a second identical run leaves identical bytes (determinism)
  CHECK(run("exp --in c.json --vel v.json --dt 0.01 --t-end 0.3 --stride 5 --out traj2.csv",
            dir) == 0);
  CHECK(slurp(dir.file("traj2.csv")) == slurp(dir.file("traj.csv")));
}

TEST_CASE("flow-hamiltonian runs the momentum chart") {
  TempDir dir;
  CHECK(run("gen diamond --t 0.4 --out c.json", dir) == 0);
  DiamondState s = gen_diamond(0.4);
  save_document(dir.file("a.json"), from_covector(momentum(s.curve, s.velocity)));

  CHECK(run("flow-hamiltonian --in c.json --mom a.json --dt 0.01 --t-end 0.3 --out h.csv",
            dir) == 0);
  Trajectory traj = read_trajectory_csv(dir.file("h.csv"));
  CHECK(traj.chart == Chart::hamiltonian);
  // endpoint agrees with the second-order chart on the same problem
  Trajectory lag = integrate_lagrangian(s.curve, s.velocity, {.dt = 0.01, .t_end = 0.3});
  CHECK((traj.final_sample().vertices - lag.final_sample().vertices).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("kernel output matches the library bit for bit") {
  TempDir dir;
  CHECK(run("gen regular --n 6 --out c.json", dir) == 0);
  CHECK(run("kernel --in c.json --kind both --sigma 0.75 --out k.csv", dir) == 0);

  Eigen::MatrixXd points = gen_regular_polygon(6).vertices();
  LandmarkConfig lm(points, 0.75);
  write_kernel_csv(dir.file("expected.csv"),
                   {{"elastic", elastic_kernel_weights(lm)},
                    {"gaussian", lddmm_kernel_matrix(lm).weights()}});
  CHECK(slurp(dir.file("k.csv")) == slurp(dir.file("expected.csv")));

  CHECK(run("kernel --in c.json --kind gaussian --out g.csv", dir) == 0);
  CHECK(slurp(dir.file("g.csv")).rfind("# kind=gaussian n=6\n", 0) == 0);

  // --kind outside the member set is a usage error
  CHECK(run("kernel --in c.json --kind fancy --out f.csv", dir) == 2);
}

TEST_CASE("flow-lddmm integrates landmark documents") {
  TempDir dir;
  Eigen::MatrixXd q(2, 2), p(2, 2);
  q << -1, 0, 1, 0;
  p << 1, 0, -1, 0;
  CurveDocument qdoc{1, GridInfo(2, 2), DocumentRole::polygon, q, {}, {}};
  save_document(dir.file("q.json"), qdoc);
  save_document(dir.file("p.json"),
                from_covector(Covector(GridInfo(2, 2), p)));

  CHECK(run("flow-lddmm --in q.json --mom p.json --sigma 1 --dt 0.01 --t-end 0.5 "
            "--out l.csv",
            dir) == 0);
  LandmarkTrajectory expected =
      lddmm_hamiltonian_flow(LandmarkConfig(q, 1.0), p, {.dt = 0.01, .t_end = 0.5});
  write_landmark_trajectory_csv(dir.file("expected.csv"), expected);
  CHECK(slurp(dir.file("l.csv")) == slurp(dir.file("expected.csv")));
}

TEST_CASE("log and dist recover the dilation geodesic") {
  TempDir dir;
  CHECK(run("gen regular --n 5 --out c0.json", dir) == 0);
  Polygon c0 = gen_regular_polygon(5);
  save_document(dir.file("c1.json"),
                from_polygon(Polygon(c0.grid(), 1.25 * c0.vertices(), true)));

  CHECK(run("log --from c0.json --to c1.json --out h.json", dir) == 0);
  CurveDocument hdoc = load_document(dir.file("h.json"));
  CHECK(hdoc.role == DocumentRole::tangent);
  CHECK(hdoc.metadata.count("iterations") == 1);
  CHECK(hdoc.metadata.count("residual") == 1);

  CHECK(run("dist --from c0.json --to c1.json --out d.json", dir) == 0);
  nlohmann::json d = read_json(dir.file("d.json"));
  CHECK(std::abs(d["distance"].get<double>() - std::log(1.25)) < 1e-6);

  // dist defaults its output path to result.json
  CHECK(run("dist --from c0.json --to c1.json", dir) == 0);
  CHECK(fs::exists(dir.file("result.json")));
  CHECK(fs::exists(dir.file("result.json.manifest.json")));
}

TEST_CASE("srvt writes the curve and the isometry report") {
  TempDir dir;
  const int n = 12;
  Eigen::VectorXd e(n), f(n);
  for (int i = 0; i < n; ++i) {
    e[i] = std::sqrt(2.0) * std::cos(kTwoPi * i / (2.0 * n));
    f[i] = std::sqrt(2.0) * std::sin(kTwoPi * i / (2.0 * n));
  }
  save_document(dir.file("pair.json"), from_srv_pair(SqrtVelocityPair(e, f)));
  // the radial direction doubles the curve, so the report is exactly computable
  Eigen::MatrixXd tvals(n, 2);
  tvals.col(0) = e;
  tvals.col(1) = f;
  CurveDocument tdoc{1, GridInfo(n, 2), DocumentRole::tangent, tvals, {}, {}};
  save_document(dir.file("tan.json"), tdoc);

  CHECK(run("srvt --in pair.json --out curve.json --tangent tan.json "
            "--tangent-out push.json --report report.json",
            dir) == 0);

  Polygon curve = to_polygon(load_document(dir.file("curve.json")));
  CHECK(curve.vertices() == phi(SqrtVelocityPair(e, f)).vertices());
  VertexField pushed = to_vertex_field(load_document(dir.file("push.json")));
  CHECK((pushed.values - 2.0 * curve.vertices()).cwiseAbs().maxCoeff() < 1e-12);

  nlohmann::json rep = read_json(dir.file("report.json"));
  CHECK(rep["curve_length"].get<double>() == doctest::Approx(kTwoPi).epsilon(1e-12));
  CHECK(rep["pullback_times_length_over_flat"].get<double>() ==
        doctest::Approx(2.0).epsilon(1e-12));

  // --report without --tangent is rejected at parse time
  CHECK(run("srvt --in pair.json --out c2.json --report r2.json", dir) == 2);
}

TEST_CASE("validate accepts good documents and rejects bad ones") {
  TempDir dir;
  CHECK(run("gen regular --n 4 --out c.json", dir) == 0);
  CHECK(run("validate --in c.json", dir) == 0);
  CHECK(slurp(dir.file("cli_stdout.txt")).rfind("ok: role=polygon n=4 d=2", 0) == 0);
  CHECK(read_json(dir.file("validate.manifest.json"))["status"] == "ok");

  spit(dir.file("bad.json"), R"({"schema_version":1,"grid":{"n":2,"d":2}})");
  CHECK(run("validate --in bad.json", dir) == 2);
  CHECK(read_json(dir.file("validate.manifest.json"))["status"] == "validation-error");
  CHECK(slurp(dir.file("cli_stderr.txt")).rfind("error:", 0) == 0);

  // declared flag violated by the data
  spit(dir.file("off.json"),
       R"({"schema_version":1,"grid":{"n":2,"d":2},"role":"polygon",)"
       R"("values":[[0,0],[1,0]],"flags":{"mean_zero":true}})");
  CHECK(run("validate --in off.json", dir) == 2);

  CHECK(run("validate --in nowhere.json", dir) == 2);
}

TEST_CASE("numerical aborts exit 3 and still write outputs") {
  TempDir dir;
  CHECK(run("gen diamond --t 0.785398163397448 --out c.json", dir) == 0);
  DiamondState s = gen_diamond(0.785398163397448);
  save_document(dir.file("vneg.json"),
                from_vertex_field(VertexField(s.curve.grid(), -s.curve.vertices(), true)));

  // pure shrinking dilation with an enormous guard margin: aborts mid-flow
  CHECK(run("exp --in c.json --vel vneg.json --dt 0.01 --t-end 4 --edge-guard 1e7 "
            "--out traj.csv",
            dir) == 3);
  nlohmann::json m = read_json(dir.file("traj.csv.manifest.json"));
  CHECK(m["status"] == "numerical-abort");
  std::string reason = m["abort_reason"];
  CHECK(reason.find("guard") != std::string::npos);
  // the truncated trajectory was still written and parses back
  Trajectory traj = read_trajectory_csv(dir.file("traj.csv"));
  CHECK(traj.samples.size() > 10);
  CHECK(traj.final_sample().t < 4.0);

  // boundary value problem starved of iterations
  save_document(dir.file("c3.json"),
                from_polygon(Polygon(s.curve.grid(), 3.0 * s.curve.vertices(), true)));
  CHECK(run("log --from c.json --to c3.json --max-iter 1 --tol 1e-16 --out h.json", dir) == 3);
  CHECK(read_json(dir.file("h.json.manifest.json"))["status"] == "numerical-abort");
}

TEST_CASE("recenter flag fixes shifted inputs") {
  TempDir dir;
  Polygon c = gen_regular_polygon(5);
  Eigen::MatrixXd shifted = c.vertices();
  shifted.col(0).array() += 3.0;
  CurveDocument doc{1, c.grid(), DocumentRole::polygon, shifted, {}, {}};
  save_document(dir.file("shifted.json"), doc);
  save_document(dir.file("v.json"),
                from_vertex_field(VertexField(c.grid(), c.vertices(), true)));

  CHECK(run("exp --in shifted.json --vel v.json --dt 0.1 --t-end 0.2 --out t.csv", dir) == 2);
  CHECK(run("exp --in shifted.json --vel v.json --dt 0.1 --t-end 0.2 --recenter "
            "--out t.csv",
            dir) == 0);
  Trajectory traj = read_trajectory_csv(dir.file("t.csv"));
  CHECK((traj.samples.front().vertices - c.vertices()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("render emits one frame per stored sample") {
  TempDir dir;
  CHECK(run("gen diamond --t 0.4 --out c.json --vel v.json", dir) == 0);
  CHECK(run("exp --in c.json --vel v.json --dt 0.05 --t-end 0.2 --out traj.csv", dir) == 0);
  CHECK(run("render --traj traj.csv --out frames", dir) == 0);
  Trajectory traj = read_trajectory_csv(dir.file("traj.csv"));
  size_t count = 0;
  for (const auto& entry : fs::directory_iterator(dir.file("frames"))) {
    CHECK(entry.path().extension() == ".svg");
    ++count;
  }
  CHECK(count == traj.samples.size());
  CHECK(fs::exists(dir.file("frames.manifest.json")));
}

TEST_CASE("relative outputs resolve under the output directory override") {
  TempDir dir;
  fs::create_directories(dir.file("sandbox"));
  CHECK(run("gen regular --n 4 --out sub/c.json", dir, "ELASTICA_OUT_DIR=sandbox") == 0);
  CHECK(fs::exists(dir.file("sandbox/sub/c.json")));
  CHECK(fs::exists(dir.file("sandbox/sub/c.json.manifest.json")));
  CHECK(!fs::exists(dir.file("sub/c.json")));
}

TEST_CASE("usage errors and help") {
  TempDir dir;
  CHECK(run("--help", dir) == 0);
  CHECK(slurp(dir.file("cli_stdout.txt")).find("exp") != std::string::npos);
  CHECK(run("exp --help", dir) == 0);
  // the trajectory column contract is documented in the help text
  CHECK(slurp(dir.file("cli_stdout.txt")).find("vertex_sum_inf") != std::string::npos);

  CHECK(run("", dir) == 2);                               // no subcommand
  CHECK(run("exp --in c.json", dir) == 2);                // missing required options
  CHECK(run("frobnicate", dir) == 2);                     // unknown subcommand
  CHECK(run("gen regular --n 4 --bogus --out c.json", dir) == 2);
}

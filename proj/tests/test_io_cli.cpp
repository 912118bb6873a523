#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stark/pipeline.hpp"

using namespace stark;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path p = fs::temp_directory_path() / "stark_io_tests";
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("'") + STARK_CLI_PATH + "' " + args;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json stark_example_json() {
  return {{"n", 1},
          {"basis", "standard"},
          {"entries", {{0.0, 0.8, 1.3}, {0.8, 0.0, 0.0}, {1.3, 0.0, 0.0}}}};
}

}  // namespace

TEST_CASE("shape operator JSON round trip") {
  const ShapeOperatorRep rep = shape_operator_from_json(stark_example_json());
  CHECK(rep.n() == 1);
  CHECK(rep.basis() == BasisKind::Standard);
  CHECK(rep.mat()(0, 1) == doctest::Approx(0.8));

  const nlohmann::json split = {{"n", 2},
                                {"basis", {{"split", {1, 1}}}},
                                {"entries", nlohmann::json::array()}};
  nlohmann::json with_entries = split;
  std::vector<std::vector<double>> zeros(5, std::vector<double>(5, 0.0));
  with_entries["entries"] = zeros;
  const ShapeOperatorRep sr = shape_operator_from_json(with_entries);
  CHECK(sr.basis() == BasisKind::Split);
  CHECK(sr.split_k() == 1);
  CHECK(sr.split_l() == 1);
}

TEST_CASE("shape operator JSON errors") {
  CHECK_THROWS_AS(shape_operator_from_json(nlohmann::json{{"n", 1}}), ParseError);
  nlohmann::json bad = stark_example_json();
  bad["entries"][0] = {0.0, 0.8};  // ragged row
  CHECK_THROWS_AS(shape_operator_from_json(bad), ParseError);
  nlohmann::json wrong = stark_example_json();
  wrong["n"] = 2;
  CHECK_THROWS_AS(shape_operator_from_json(wrong), ParseError);
}

TEST_CASE("fmt_full is exact under round trip") {
  for (double v : {1.0 / 3.0, -2.7182818284590452, 1e-300, 0.0, 189.0}) {
    CHECK(std::strtod(fmt_full(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("CSV writers produce the documented headers") {
  const fs::path dir = scratch();
  FlowConfig cfg;
  cfg.c0 = -1.0 / 3.0;
  cfg.d0 = 2.0 / 3.0;
  cfg.v0 = 1.0;
  cfg.x_max = 2e-3;
  cfg.y_max = 2e-3;
  cfg.step = 2e-3;
  const FlowResult flow = integrate_flow(cfg);
  const fs::path flow_csv = dir / "flow.csv";
  write_flow_csv(flow_csv.string(), flow);
  std::ifstream in(flow_csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,y,t,u,v,beta,mu,kappa,C,D,ratio");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == flow.nx * flow.ny);

  const SurfaceGrid grid = integrate_surface_frames(flow, CMat3::Identity());
  const fs::path grid_csv = dir / "grid.csv";
  write_grid_csv(grid_csv.string(), grid);
  std::ifstream gin(grid_csv);
  std::getline(gin, header);
  CHECK(header.rfind("x,y,f00_re,f00_im", 0) == 0);

  const PointCloud cloud = sweep(grid, {0.0, 0.1});
  const fs::path pts_csv = dir / "points.csv";
  write_points_csv(pts_csv.string(), cloud);
  std::ifstream pin(pts_csv);
  std::getline(pin, header);
  CHECK(header == "x,y,s,z0_re,z0_im,z1_re,z1_im,z2_re,z2_im");
}

TEST_CASE("canonical and closure JSON carry the advertised keys") {
  Mat a(3, 3);
  a << 0, 0.8, 1.3, 0.8, 0, 0, 1.3, 0, 0;
  const CanonicalForm cf = reduce_to_canonical(ShapeOperatorRep(a, BasisKind::Standard));
  const nlohmann::json cj = canonical_to_json(cf);
  CHECK(cj.at("kind") == "irreducible");
  CHECK(cj.at("l") == 1);
  CHECK(cj.contains("residual"));
  CHECK(cj.contains("transform"));

  const HelixSpec spec = make_helix_spec({3.0, 0.0, 0.0});
  const nlohmann::json hj = closure_to_json(spec, 64, 1e-8);
  CHECK(hj.at("closed") == true);
  CHECK(hj.at("length") == doctest::Approx(M_PI));
}

TEST_CASE("run_construct produces a coherent report and files") {
  const fs::path dir = scratch() / "construct";
  fs::create_directories(dir);
  ConstructConfig cfg;
  cfg.has_scalars0 = true;
  cfg.scalars0 = {1.0, 1.0, 1.0};
  cfg.x_max = 0.01;
  cfg.y_max = 0.01;
  cfg.step = 2.5e-3;
  cfg.s_max = 0.3;
  cfg.s_step = 0.1;
  cfg.points_csv = (dir / "points.csv").string();
  cfg.report_json = (dir / "report.json").string();
  const ConstructOutput out = run_construct(cfg);
  CHECK(out.flow.nx == 5);
  CHECK(out.points.size() == static_cast<size_t>(5 * 5 * 4));
  CHECK(out.report.at("grid").at("nx") == 5);
  CHECK(out.report.at("drift").at("max_first_integral").get<double>() < 1e-9);
  CHECK(fs::exists(dir / "points.csv"));
  CHECK(fs::exists(dir / "report.json"));
  const auto loaded = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(loaded.at("grid").at("nx") == 5);
}

TEST_CASE("cli: helix subcommand") {
  const fs::path dir = scratch();
  const fs::path out = dir / "helix.json";
  const int rc = run_cli("helix --beta 3 --mu 0 --kappa 0 --json-out '" + out.string() +
                         "' > /dev/null");
  CHECK(rc == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("closed") == true);
}

TEST_CASE("cli: check passes stark input and flags non-stark input") {
  const fs::path dir = scratch();
  const fs::path good = dir / "good.json";
  std::ofstream(good) << stark_example_json().dump();
  CHECK(run_cli("check '" + good.string() + "' > /dev/null") == 0);

  const fs::path bad = dir / "bad.json";
  nlohmann::json bj = {{"n", 1},
                       {"basis", "standard"},
                       {"entries", {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}}};
  std::ofstream(bad) << bj.dump();
  CHECK(run_cli("check '" + bad.string() + "' > /dev/null") == 1);

  CHECK(run_cli("check '" + (dir / "missing.json").string() + "' 2> /dev/null") == 2);
}

TEST_CASE("cli: canon writes the normal form") {
  const fs::path dir = scratch();
  const fs::path in = dir / "op.json";
  std::ofstream(in) << stark_example_json().dump();
  const fs::path out = dir / "canon.json";
  CHECK(run_cli("canon '" + in.string() + "' --json-out '" + out.string() + "' > /dev/null") ==
        0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("kind") == "irreducible");
}

TEST_CASE("cli: flow reports region exits with code 3") {
  const int rc = run_cli("flow --c 0 --d 10 --v 0.001 --x-max 0 --y-max 0 2> /dev/null");
  CHECK(rc == 3);
  const int ok = run_cli("flow --beta 1 --mu 1 --kappa 1 --x-max 0.01 --y-max 0.01 "
                         "--step 0.001 > /dev/null");
  CHECK(ok == 0);
}

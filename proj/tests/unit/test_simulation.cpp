#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "silsrob/simulation.hpp"
#include "silsrob/validation.hpp"

using namespace silsrob;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const Scenario& s, RunOptions opt = {}) {
  std::ostringstream out, err;
  const int code = run_scenario(s, opt, out, err);
  return {code, out.str(), err.str()};
}

std::size_t data_rows(const std::string& csv) {
  std::size_t n = 0;
  for (char c : csv) n += c == '\n';
  return n - 2;
}

}  // namespace

TEST_CASE("exit code table") {
  CHECK(exit_code_for(ErrorKind::Unreachable) == 2);
  CHECK(exit_code_for(ErrorKind::JointLimit) == 2);
  CHECK(exit_code_for(ErrorKind::SingularConfiguration) == 3);
  CHECK(exit_code_for(ErrorKind::GimbalProximity) == 1);
  CHECK(exit_code_for(ErrorKind::InvalidLimits) == 1);
  CHECK(exit_code_for(ErrorKind::DegenerateInput) == 1);
}

TEST_CASE("reference scenario writes 451 rows") {
  const Run r = run(reference_scenario());
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(data_rows(r.out) == 451);
}

TEST_CASE("runs are byte-identical") {
  CHECK(run(reference_scenario()).out == run(reference_scenario()).out);
}

TEST_CASE("zero reorientation writes one row") {
  Scenario s = reference_scenario();
  s.d_psi = s.d_theta = 0;
  const Run r = run(s);
  CHECK(r.code == 0);
  CHECK(data_rows(r.out) == 1);
}

TEST_CASE("dt override") {
  RunOptions opt;
  opt.dt = 0.1;
  CHECK(data_rows(run(reference_scenario(), opt).out) == 46);
}

TEST_CASE("unreachable tip exits with 2") {
  Scenario s = reference_scenario();
  s.instruments[0].tip = Vec3{55.5, -60.4, -504.1};
  const Run r = run(s);
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("Unreachable") != std::string::npos);
  CHECK(r.err.find("t = ") != std::string::npos);
}

TEST_CASE("singular joint move exits with 3") {
  Scenario s = reference_scenario();
  s.motion = MotionType::Type3Manipulate;
  s.instruments[0].geometry.q2_min = -180;
  s.instruments[0].geometry.q2_max = 180;
  s.instruments[0].joints = SphericalJoints{0, 0, 100};
  s.instruments[0].target = SphericalJoints{0, 120, 100};
  CHECK(run(s).code == 3);
}

TEST_CASE("input problems exit with 1") {
  Scenario s = reference_scenario();
  s.start.theta = 90;
  CHECK(run(s).code == 1);
  s = reference_scenario();
  s.angular.eps_max = -1;
  CHECK(run(s).code == 1);
}

TEST_CASE("output path and plot subsets") {
  const auto path = std::filesystem::temp_directory_path() / "silsrob_test_fig5.csv";
  RunOptions opt;
  opt.out = path.string();
  opt.columns = PlotData::Fig5;
  const Run r = run(reference_scenario(), opt);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string version, header;
  std::getline(in, version);
  std::getline(in, header);
  CHECK(header == "t,psi,theta,phi,psi_dot,theta_dot,psi_ddot,theta_ddot");
  std::filesystem::remove(path);
}

TEST_CASE("insertion and manipulation scenarios run") {
  for (const char* name : {"insert.cfg", "manipulate.cfg"}) {
    const Scenario s = load_scenario(std::string(SILSROB_SCENARIO_DIR) + "/" + name);
    RunOptions opt;
    opt.out = "-";
    CHECK(run(s, opt).code == 0);
  }
}

#include <cmath>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "silsrob/simulation.hpp"
#include "silsrob/timehistory.hpp"
#include "silsrob/validation.hpp"

using namespace silsrob;

namespace {

MotionPlan scenario_plan() { return plan_scenario(reference_scenario()); }

std::string csv(const MotionPlan& plan, PlotData cols = PlotData::Full,
                std::optional<double> endo = std::nullopt) {
  std::ostringstream out;
  write_csv(out, plan, cols, endo);
  return out.str();
}

}  // namespace

TEST_CASE("value formatting") {
  CHECK(format_value(1.5) == "1.500000000");
  CHECK(format_value(-0.0) == "0.000000000");
  CHECK(format_value(-1e-12) == "0.000000000");
  CHECK(format_value(-620.0) == "-620.000000000");
}

TEST_CASE("full table layout") {
  const MotionPlan plan = scenario_plan();
  const std::string text = csv(plan);
  std::istringstream in(text);
  const CsvTable t = read_csv(in);
  CHECK(t.rows.size() == 451);
  const std::vector<std::string> head(t.header.begin(), t.header.begin() + 11);
  CHECK(head == std::vector<std::string>{"t", "X_P", "Y_P", "Z_P", "psi", "theta", "phi", "psi_dot",
                                         "theta_dot", "psi_ddot", "theta_ddot"});
  CHECK(t.header.size() == 11 + 12 + 1);
  CHECK(t.header.back() == "singularity");
  CHECK(t.rows.back()[t.column("t")] == 4.5);
  CHECK(t.rows.back()[t.column("theta")] == 35.0);
  CHECK(t.rows.front()[t.column("left_tip_z")] == -620.0);
  CHECK(text.rfind("# silsrob-timehistory v1\n", 0) == 0);
}

TEST_CASE("round trip reproduces values") {
  const MotionPlan plan = scenario_plan();
  std::istringstream in(csv(plan));
  const CsvTable t = read_csv(in);
  for (std::size_t k = 0; k < plan.samples.size(); ++k) {
    const PlanSample& s = plan.samples[k];
    const InstrumentState& st = s.instruments[0];
    const double values[] = {s.t, s.pose.psi, s.pose.theta, s.pose_rates.psi_dot, st.joints.q1,
                             st.joints.q3, st.rates.q2_dot, st.accels.q3_ddot, st.tip_fixed.x,
                             s.singularity()};
    const char* names[] = {"t", "psi", "theta", "psi_dot", "left_q1", "left_q3", "left_q2_dot",
                           "left_q3_ddot", "left_tip_x", "singularity"};
    for (int c = 0; c < 10; ++c) {
      const double read = t.rows[k][t.column(names[c])];
      CHECK(std::fabs(read - values[c]) <= 1e-9 * std::max(1.0, std::fabs(values[c])));
    }
  }
}

TEST_CASE("plot column subsets") {
  const MotionPlan plan = scenario_plan();
  CHECK(csv_header(plan, PlotData::Fig5) ==
        std::vector<std::string>{"t", "psi", "theta", "phi", "psi_dot", "theta_dot", "psi_ddot",
                                 "theta_ddot"});
  const auto fig7 = csv_header(plan, PlotData::Fig7);
  CHECK(fig7.size() == 10);
  CHECK(fig7[1] == "left_q1");
  CHECK(fig7[9] == "left_q3_ddot");
  CHECK(parse_plot_data("fig5") == PlotData::Fig5);
  CHECK_FALSE(parse_plot_data("fig6").has_value());
}

TEST_CASE("endoscope insertion column") {
  const MotionPlan plan = scenario_plan();
  std::istringstream in(csv(plan, PlotData::Full, 80.0));
  const CsvTable t = read_csv(in);
  CHECK(t.rows[17][t.column("endoscope_q3")] == 80.0);
  CHECK(csv_header(plan, PlotData::Fig5, true).size() == 8);
}

TEST_CASE("malformed input is rejected") {
  std::istringstream no_version("t,x\n1,2\n");
  CHECK_THROWS(read_csv(no_version));
  std::istringstream ragged("# silsrob-timehistory v1\nt,x\n1,2,3\n");
  CHECK_THROWS(read_csv(ragged));
  std::istringstream junk("# silsrob-timehistory v1\nt,x\n1,abc\n");
  CHECK_THROWS(read_csv(junk));
}

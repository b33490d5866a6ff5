// silsrob: batch simulator and kinematics calculator.
//
//   silsrob run <scenario> [--dt s] [--out file] [--plot-data fig5|fig7] [--branch principal|mirror]
//   silsrob validate
//   silsrob fk --pose x,y,z,psi,theta,phi --joints q1,q2,q3 [--side left|right]
//   silsrob ik --pose x,y,z,psi,theta,phi --tip x,y,z [--side left|right] [--branch ...]
//   silsrob profile --delta d [--omega w] [--eps e] [--dt s]

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "silsrob/simulation.hpp"
#include "silsrob/validation.hpp"

namespace {

using namespace silsrob;

SphericalGeometry geometry_for(const std::string& side) {
  return side == "right" ? SphericalGeometry::right_default() : SphericalGeometry::left_default();
}

int report(const KinematicsError& e) {
  std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
  return exit_code_for(e.kind());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinematics library and batch simulator for a SILS parallel robot with spherical RCM modules"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Plan a scenario file and write its time history as CSV");
  std::string scenario_path;
  double dt = 0.0;
  std::string out_path, plot_data = "full", branch_name;
  run->add_option("scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  auto* dt_opt = run->add_option("--dt", dt, "Sample period in s (overrides the file)")
                     ->check(CLI::PositiveNumber);
  auto* out_opt = run->add_option("--out", out_path, "Output CSV path, '-' for stdout");
  run->add_option("--plot-data", plot_data, "Column subset")
      ->check(CLI::IsMember({"full", "fig5", "fig7"}));
  auto* branch_opt = run->add_option("--branch", branch_name, "IK branch")
                         ->check(CLI::IsMember({"principal", "mirror"}));

  app.add_subcommand("validate", "Run the oracle self-checks");

  auto* fk = app.add_subcommand("fk", "Fixed-frame tip position from platform pose and joints");
  std::vector<double> pose_v, joints_v, tip_v;
  std::string side = "left";
  fk->add_option("--pose", pose_v, "x,y,z,psi,theta,phi")->required()->expected(6)->delimiter(',');
  fk->add_option("--joints", joints_v, "q1,q2,q3")->required()->expected(3)->delimiter(',');
  fk->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));

  auto* ik = app.add_subcommand("ik", "Module joints that reach a fixed-frame tip");
  ik->add_option("--pose", pose_v, "x,y,z,psi,theta,phi")->required()->expected(6)->delimiter(',');
  ik->add_option("--tip", tip_v, "x,y,z")->required()->expected(3)->delimiter(',');
  ik->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));
  ik->add_option("--branch", branch_name)->check(CLI::IsMember({"principal", "mirror"}));

  auto* profile = app.add_subcommand("profile", "Sample a trapezoidal velocity profile");
  double delta = 0.0, omega = 10.0, eps = 5.0, profile_dt = 0.1;
  profile->add_option("--delta", delta)->required();
  profile->add_option("--omega", omega);
  profile->add_option("--eps", eps);
  profile->add_option("--dt", profile_dt)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (run->parsed()) {
      const Scenario s = load_scenario(scenario_path);
      RunOptions opt;
      if (*dt_opt) opt.dt = dt;
      if (*out_opt) opt.out = out_path;
      if (*branch_opt) opt.branch = parse_branch(branch_name);
      opt.columns = *parse_plot_data(plot_data);
      return run_scenario(s, opt, std::cout, std::cerr);
    }
    if (app.got_subcommand("validate")) {
      const ValidationReport r = run_validation();
      print_report(std::cout, r);
      return r.all_passed() ? kExitOk : kExitValidationFailed;
    }
    if (fk->parsed() || ik->parsed()) {
      const PlatformPose pose{pose_v[0], pose_v[1], pose_v[2], pose_v[3], pose_v[4], pose_v[5]};
      const SphericalGeometry g = geometry_for(side);
      if (fk->parsed()) {
        const Vec3 t = fk_tip_fixed(pose, {joints_v[0], joints_v[1], joints_v[2]}, g);
        std::cout << fmt::format("{:.9f},{:.9f},{:.9f}\n", t.x, t.y, t.z);
      } else {
        const IkBranch b = branch_name.empty() ? IkBranch::Principal : *parse_branch(branch_name);
        const SphericalJoints j = ik_full(pose, {tip_v[0], tip_v[1], tip_v[2]}, g, b);
        std::cout << fmt::format("{:.9f},{:.9f},{:.9f}\n", j.q1, j.q2, j.q3);
      }
      return kExitOk;
    }
    if (profile->parsed()) {
      const TrapezoidProfile p = plan_profile(delta, {omega, eps});
      std::cout << fmt::format("# t_acc={:.9f} t_cruise={:.9f} t_total={:.9f} peak_rate={:.9f}\n",
                               p.t_acc, p.t_cruise, p.t_total, p.peak_rate);
      std::cout << "t,pos,vel,acc\n";
      for (double t : time_grid(p.t_total, profile_dt)) {
        const ProfileSample s = sample_profile(p, t);
        std::cout << fmt::format("{},{},{},{}\n", format_value(t), format_value(s.pos),
                                 format_value(s.vel), format_value(s.acc));
      }
      return kExitOk;
    }
  } catch (const KinematicsError& e) {
    return report(e);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitOk;
}

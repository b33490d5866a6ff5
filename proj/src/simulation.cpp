#include "silsrob/simulation.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace silsrob {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Unreachable:
    case ErrorKind::JointLimit:
      return kExitUnreachable;
    case ErrorKind::SingularConfiguration:
      return kExitSingular;
    default:
      return kExitConfigError;
  }
}

MotionPlan plan_scenario(const Scenario& s) {
  switch (s.motion) {
    case MotionType::Type4Reorient: {
      std::vector<Instrument> instruments;
      for (const auto& ins : s.instruments) instruments.push_back({ins.name, ins.geometry, *ins.tip});
      return plan_type4(s.start, s.d_psi, s.d_theta, s.angular, s.dt, instruments, s.branch);
    }
    case MotionType::Type2Insert:
    case MotionType::Type3Manipulate: {
      std::vector<JointMove> moves;
      for (const auto& ins : s.instruments) {
        SphericalJoints target = ins.target.value_or(*ins.joints);
        if (s.motion == MotionType::Type2Insert) target = {ins.joints->q1, ins.joints->q2, *ins.insert_to};
        moves.push_back({ins.name, ins.geometry, *ins.joints, target});
      }
      MotionPlan plan = s.motion == MotionType::Type2Insert
                            ? plan_type2_insert(s.start, moves, s.linear, s.dt)
                            : plan_type3_manipulate(s.start, moves, s.angular, s.linear, s.dt);
      plan.branch = s.branch;
      return plan;
    }
    case MotionType::Type1Reposition:
      break;
  }
  throw std::invalid_argument("type1 motion is not supported");
}

int run_scenario(const Scenario& scenario, const RunOptions& options, std::ostream& out,
                 std::ostream& err) {
  Scenario s = scenario;
  if (options.dt) s.dt = *options.dt;
  if (options.branch) s.branch = *options.branch;
  if (options.out) s.output = *options.out;

  MotionPlan plan;
  try {
    validate_scenario(s);
    plan = plan_scenario(s);
  } catch (const KinematicsError& e) {
    err << fmt::format("error: {}: {}\n", to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const ValidationError& e) {
    err << "error: invalid scenario: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  if (s.output && *s.output != "-") {
    std::ofstream file(*s.output, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << fmt::format("error: cannot write '{}'\n", *s.output);
      return kExitConfigError;
    }
    write_csv(file, plan, options.columns, s.endoscope_insertion);
  } else {
    write_csv(out, plan, options.columns, s.endoscope_insertion);
  }
  return kExitOk;
}

}  // namespace silsrob

#include "silsrob/timehistory.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace silsrob {
namespace {

std::vector<double> pose_values(const PlanSample& s) {
  return {s.pose.x, s.pose.y, s.pose.z, s.pose.psi, s.pose.theta, s.pose.phi};
}

std::vector<double> rate_values(const PlanSample& s) {
  return {s.pose_rates.psi_dot, s.pose_rates.theta_dot, s.pose_rates.psi_ddot,
          s.pose_rates.theta_ddot};
}

std::vector<double> joint_values(const InstrumentState& st) {
  return {st.joints.q1,      st.joints.q2,      st.joints.q3,      st.rates.q1_dot,
          st.rates.q2_dot,   st.rates.q3_dot,   st.accels.q1_ddot, st.accels.q2_ddot,
          st.accels.q3_ddot};
}

const std::vector<std::string> kPoseColumns = {"X_P", "Y_P", "Z_P", "psi", "theta", "phi"};
const std::vector<std::string> kRateColumns = {"psi_dot", "theta_dot", "psi_ddot", "theta_ddot"};
const std::vector<std::string> kJointColumns = {"q1",      "q2",      "q3",      "q1_dot", "q2_dot",
                                                "q3_dot",  "q1_ddot", "q2_ddot", "q3_ddot"};
const std::vector<std::string> kTipColumns = {"tip_x", "tip_y", "tip_z"};

}  // namespace

std::optional<PlotData> parse_plot_data(std::string_view name) {
  if (name == "full") return PlotData::Full;
  if (name == "fig5") return PlotData::Fig5;
  if (name == "fig7") return PlotData::Fig7;
  return std::nullopt;
}

std::string format_value(double v) {
  std::string s = fmt::format("{:.9f}", v);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::vector<std::string> csv_header(const MotionPlan& plan, PlotData columns, bool with_endoscope) {
  std::vector<std::string> h{"t"};
  const auto append = [&h](const std::vector<std::string>& cols, const std::string& prefix = "") {
    for (const auto& c : cols) h.push_back(prefix + c);
  };
  switch (columns) {
    case PlotData::Full:
      append(kPoseColumns);
      append(kRateColumns);
      if (with_endoscope) h.emplace_back("endoscope_q3");
      for (const auto& name : plan.instrument_names) {
        append(kJointColumns, name + "_");
        append(kTipColumns, name + "_");
      }
      h.emplace_back("singularity");
      break;
    case PlotData::Fig5:
      append({"psi", "theta", "phi"});
      append(kRateColumns);
      break;
    case PlotData::Fig7:
      for (const auto& name : plan.instrument_names) append(kJointColumns, name + "_");
      break;
  }
  return h;
}

void write_csv(std::ostream& out, const MotionPlan& plan, PlotData columns,
               std::optional<double> endoscope_insertion) {
  const bool endo = columns == PlotData::Full && endoscope_insertion.has_value();
  out << kTimeHistoryVersionLine << '\n';
  const auto header = csv_header(plan, columns, endo);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';

  std::vector<double> row;
  for (const PlanSample& s : plan.samples) {
    row.assign(1, s.t);
    const auto append = [&row](const std::vector<double>& v) { row.insert(row.end(), v.begin(), v.end()); };
    switch (columns) {
      case PlotData::Full:
        append(pose_values(s));
        append(rate_values(s));
        if (endo) row.push_back(*endoscope_insertion);
        for (const auto& st : s.instruments) {
          append(joint_values(st));
          append({st.tip_fixed.x, st.tip_fixed.y, st.tip_fixed.z});
        }
        row.push_back(s.singularity());
        break;
      case PlotData::Fig5:
        append({s.pose.psi, s.pose.theta, s.pose.phi});
        append(rate_values(s));
        break;
      case PlotData::Fig7:
        for (const auto& st : s.instruments) append(joint_values(st));
        break;
    }
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_value(row[i]);
    out << '\n';
  }
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::out_of_range(fmt::format("no column '{}'", name));
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line) || line != kTimeHistoryVersionLine)
    throw std::runtime_error("missing time-history version line");
  if (!std::getline(in, line)) throw std::runtime_error("missing header");
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    table.header.push_back(line.substr(pos, comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p <= end) {
      const char* comma = std::find(p, end, ',');
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(p, comma, v);
      if (ec != std::errc() || ptr != comma) throw std::runtime_error("malformed number in CSV");
      row.push_back(v);
      p = comma + 1;
    }
    if (row.size() != table.header.size()) throw std::runtime_error("row width differs from header");
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace silsrob

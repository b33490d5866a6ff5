#include "silsrob/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "silsrob/errors.hpp"

namespace silsrob {
namespace {

const std::set<std::string, std::less<>> kGlobalKeys = {
    "motion", "pose",    "instruments", "branch", "dt",     "d_psi",  "d_theta",
    "omega_max", "eps_max", "v_max",    "a_max",  "output", "endoscope_insertion"};

const std::set<std::string, std::less<>> kInstrumentKeys = {
    "alpha", "beta",      "radius",    "port",      "tip",      "joints",
    "target", "insert_to", "q1_limits", "q2_limits", "q3_limits"};

const std::set<std::string, std::less<>> kInstrumentNames = {"left", "right"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '.';
  });
}

struct Entry {
  int line = 0;
  std::string value;
};

class Entries {
 public:
  explicit Entries(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto end = std::min(text.find('\n', pos), text.size());
      std::string_view line = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;

      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ParseError(line_no, "", fmt::format("expected 'key = value', got '{}'", line));
      const std::string key(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      if (!valid_key(key)) throw ParseError(line_no, key, "malformed key");
      if (!known(key)) throw ParseError(line_no, key, "unknown key");
      if (value.empty()) throw ParseError(line_no, key, "missing value");
      if (map_.contains(key))
        throw ParseError(line_no, key, fmt::format("duplicate key (first set on line {})",
                                                   map_.at(key).line));
      map_.emplace(key, Entry{line_no, value});
    }
    if (map_.empty()) throw ParseError(0, "", "scenario is empty");
  }

  const Entry* find(const std::string& key) const {
    const auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
  }

  const Entry& require(const std::string& key) const {
    if (const Entry* e = find(key)) return *e;
    throw ParseError(0, key, "missing required key");
  }

  const std::map<std::string, Entry>& all() const { return map_; }

 private:
  static bool known(std::string_view key) {
    if (kGlobalKeys.contains(key)) return true;
    const auto dot = key.find('.');
    if (dot == std::string_view::npos) return false;
    return kInstrumentNames.contains(key.substr(0, dot)) &&
           kInstrumentKeys.contains(key.substr(dot + 1));
  }

  std::map<std::string, Entry> map_;
};

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> items;
  std::size_t pos = 0;
  while (true) {
    const auto comma = value.find(',', pos);
    items.emplace_back(trim(value.substr(pos, comma == std::string_view::npos ? value.npos
                                                                             : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return items;
}

double to_number(const std::string& key, const Entry& e, std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty() || !std::isfinite(v))
    throw ParseError(e.line, key, fmt::format("expected a number, got '{}'", text));
  return v;
}

double number(const std::string& key, const Entry& e) { return to_number(key, e, e.value); }

std::vector<double> numbers(const std::string& key, const Entry& e, std::size_t count) {
  const auto items = split_list(e.value);
  if (items.size() != count)
    throw ParseError(e.line, key, fmt::format("expected {} comma-separated numbers", count));
  std::vector<double> out;
  for (const auto& item : items) out.push_back(to_number(key, e, item));
  return out;
}

Vec3 vec3(const std::string& key, const Entry& e) {
  const auto v = numbers(key, e, 3);
  return {v[0], v[1], v[2]};
}

void read_number(const Entries& entries, const std::string& key, double& out) {
  if (const Entry* e = entries.find(key)) out = number(key, *e);
}

void read_range(const Entries& entries, const std::string& key, double& lo, double& hi) {
  if (const Entry* e = entries.find(key)) {
    const auto v = numbers(key, *e, 2);
    lo = v[0];
    hi = v[1];
  }
}

MotionType parse_motion(const Entry& e) {
  if (e.value == "type1") return MotionType::Type1Reposition;
  if (e.value == "type2") return MotionType::Type2Insert;
  if (e.value == "type3") return MotionType::Type3Manipulate;
  if (e.value == "type4") return MotionType::Type4Reorient;
  throw ParseError(e.line, "motion", fmt::format("unknown motion type '{}'", e.value));
}

SphericalGeometry read_geometry(const Entries& entries, const std::string& name,
                                SphericalGeometry g) {
  const std::string p = name + ".";
  read_number(entries, p + "alpha", g.alpha);
  read_number(entries, p + "beta", g.beta);
  read_number(entries, p + "radius", g.radius);
  if (const Entry* e = entries.find(p + "port")) {
    g.port = RcmPort::custom(vec3(p + "port", *e),
                             name == "left" ? PortSide::Left : PortSide::Right);
  }
  read_range(entries, p + "q1_limits", g.q1_min, g.q1_max);
  read_range(entries, p + "q2_limits", g.q2_min, g.q2_max);
  read_range(entries, p + "q3_limits", g.q3_min, g.q3_max);
  return g;
}

std::optional<SphericalJoints> read_joints(const Entries& entries, const std::string& key) {
  const Entry* e = entries.find(key);
  if (!e) return std::nullopt;
  const auto v = numbers(key, *e, 3);
  return SphericalJoints{v[0], v[1], v[2]};
}

void require_positive(double v, const char* field) {
  if (!(std::isfinite(v) && v > 0.0)) throw ValidationError(field, "must be positive");
}

}  // namespace

ParseError::ParseError(int line, std::string field, const std::string& what)
    : std::runtime_error(line > 0 ? fmt::format("line {}: {}{}{}", line, field,
                                                field.empty() ? "" : ": ", what)
                                  : fmt::format("{}{}{}", field, field.empty() ? "" : ": ", what)),
      line_(line),
      field_(std::move(field)) {}

ValidationError::ValidationError(std::string field, const std::string& what)
    : std::runtime_error(fmt::format("{}: {}", field, what)), field_(std::move(field)) {}

std::optional<IkBranch> parse_branch(std::string_view name) {
  if (name == "principal") return IkBranch::Principal;
  if (name == "mirror") return IkBranch::Mirror;
  return std::nullopt;
}

std::string_view to_string(IkBranch branch) {
  return branch == IkBranch::Principal ? "principal" : "mirror";
}

Scenario parse_scenario(std::string_view text) {
  const Entries entries(text);
  Scenario s;
  s.motion = parse_motion(entries.require("motion"));

  const auto pose = numbers("pose", entries.require("pose"), 6);
  s.start = {pose[0], pose[1], pose[2], pose[3], pose[4], pose[5]};

  std::vector<std::string> names{"left"};
  if (const Entry* e = entries.find("instruments")) {
    names = split_list(e->value);
    for (const auto& n : names) {
      if (!kInstrumentNames.contains(n))
        throw ParseError(e->line, "instruments", fmt::format("unknown instrument '{}'", n));
    }
    if (std::set<std::string>(names.begin(), names.end()).size() != names.size())
      throw ValidationError("instruments", "an instrument is listed twice");
  }
  for (const auto& [key, entry] : entries.all()) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) continue;
    const std::string owner = key.substr(0, dot);
    if (std::find(names.begin(), names.end(), owner) == names.end()) {
      throw ValidationError(key, fmt::format("instrument '{}' is not listed in 'instruments'", owner));
    }
  }

  if (const Entry* e = entries.find("branch")) {
    const auto b = parse_branch(e->value);
    if (!b) throw ParseError(e->line, "branch", "expected 'principal' or 'mirror'");
    s.branch = *b;
  }
  read_number(entries, "dt", s.dt);
  read_number(entries, "d_psi", s.d_psi);
  read_number(entries, "d_theta", s.d_theta);
  read_number(entries, "omega_max", s.angular.omega_max);
  read_number(entries, "eps_max", s.angular.eps_max);
  read_number(entries, "v_max", s.linear.omega_max);
  read_number(entries, "a_max", s.linear.eps_max);
  if (const Entry* e = entries.find("endoscope_insertion"))
    s.endoscope_insertion = number("endoscope_insertion", *e);
  if (const Entry* e = entries.find("output")) s.output = e->value;

  // The right module mirrors the left one unless configured explicitly.
  const SphericalGeometry left = read_geometry(entries, "left", SphericalGeometry::left_default());
  for (const auto& name : names) {
    InstrumentConfig ins;
    ins.name = name;
    ins.geometry = name == "left" ? left : read_geometry(entries, "right", left.mirrored());
    const std::string p = name + ".";
    if (const Entry* e = entries.find(p + "tip")) ins.tip = vec3(p + "tip", *e);
    ins.joints = read_joints(entries, p + "joints");
    ins.target = read_joints(entries, p + "target");
    if (const Entry* e = entries.find(p + "insert_to")) ins.insert_to = number(p + "insert_to", *e);
    s.instruments.push_back(std::move(ins));
  }

  validate_scenario(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "", fmt::format("cannot open scenario '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

void validate_scenario(const Scenario& s) {
  if (s.motion == MotionType::Type1Reposition) {
    throw ValidationError("motion",
                          "type1 repositioning needs the parallel robot leg model, which this "
                          "library does not provide");
  }
  try {
    check_pose(s.start);
  } catch (const KinematicsError& e) {
    throw ValidationError("pose", e.what());
  }
  require_positive(s.dt, "dt");
  require_positive(s.angular.omega_max, "omega_max");
  require_positive(s.angular.eps_max, "eps_max");
  require_positive(s.linear.omega_max, "v_max");
  require_positive(s.linear.eps_max, "a_max");
  if (!std::isfinite(s.d_psi)) throw ValidationError("d_psi", "must be finite");
  if (!std::isfinite(s.d_theta)) throw ValidationError("d_theta", "must be finite");
  if (s.endoscope_insertion && !(*s.endoscope_insertion >= 0.0))
    throw ValidationError("endoscope_insertion", "must be non-negative");
  if (s.instruments.empty()) throw ValidationError("instruments", "at least one is required");

  for (const InstrumentConfig& ins : s.instruments) {
    const std::string p = ins.name + ".";
    try {
      check_geometry(ins.geometry);
    } catch (const std::invalid_argument& e) {
      const std::string what = e.what();
      throw ValidationError(p + what.substr(0, what.find(':')), what);
    }
    switch (s.motion) {
      case MotionType::Type4Reorient:
        if (!ins.tip) throw ValidationError(p + "tip", "required for type4 motion");
        break;
      case MotionType::Type2Insert:
        if (!ins.joints) throw ValidationError(p + "joints", "required for type2 motion");
        if (!ins.insert_to) throw ValidationError(p + "insert_to", "required for type2 motion");
        break;
      case MotionType::Type3Manipulate:
        if (!ins.joints) throw ValidationError(p + "joints", "required for type3 motion");
        if (!ins.target) throw ValidationError(p + "target", "required for type3 motion");
        break;
      case MotionType::Type1Reposition:
        break;
    }
  }
}

}  // namespace silsrob

#include "hugperch/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hugperch/error.hpp"
#include "hugperch/units.hpp"
#include "text_util.hpp"

namespace hugperch {
namespace {

using detail::split;
using detail::trim;

struct UnitFactor {
  std::string_view unit;
  double (*convert)(double);
};

double same(double v) { return v; }
double from_cm(double v) { return v / 100.0; }
double from_milli(double v) { return v / 1000.0; }
double from_nm_per_deg(double v) { return v * 180.0 / kPi; }

const std::vector<UnitFactor>& units_for(Quantity kind) {
  static const std::vector<UnitFactor> length{{"m", same}, {"cm", from_cm}, {"mm", mm_to_m}};
  static const std::vector<UnitFactor> mass{{"kg", same}, {"g", from_milli}};
  static const std::vector<UnitFactor> force{{"N", same}};
  static const std::vector<UnitFactor> stiffness{
      {"N*m/rad", same},         {"Nm/rad", same},
      {"N*mm/deg", nmm_per_deg_to_nm_per_rad}, {"Nmm/deg", nmm_per_deg_to_nm_per_rad},
      {"N*m/deg", from_nm_per_deg}, {"N*mm/rad", from_milli}};
  static const std::vector<UnitFactor> angle{{"deg", deg_to_rad}, {"rad", same}};
  static const std::vector<UnitFactor> time{{"s", same}, {"ms", from_milli}};
  static const std::vector<UnitFactor> percent{{"%", same}};
  switch (kind) {
    case Quantity::Length: return length;
    case Quantity::Mass: return mass;
    case Quantity::Force: return force;
    case Quantity::Stiffness: return stiffness;
    case Quantity::Angle: return angle;
    case Quantity::Time: return time;
    case Quantity::Percent: return percent;
  }
  return length;
}

std::string unit_list(Quantity kind) {
  std::string out;
  for (const auto& u : units_for(kind)) {
    if (!out.empty()) out += ", ";
    out += u.unit;
  }
  return out;
}

// Leading number plus remainder.
std::pair<double, std::string_view> leading_number(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr == text.data()) {
    throw Error(ErrorKind::Parse, "expected a number in '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) throw Error(ErrorKind::Parse, "non-finite number '" + std::string(text) + "'");
  return {value, trim(std::string_view(res.ptr, text.data() + text.size() - res.ptr))};
}

// Function-call syntax: name(arg, arg, ...).
std::optional<std::vector<std::string_view>> call_args(std::string_view text, std::string_view name) {
  text = trim(text);
  if (text.size() < name.size() + 2 || text.substr(0, name.size()) != name) return std::nullopt;
  std::string_view rest = trim(text.substr(name.size()));
  if (rest.empty() || rest.front() != '(' || rest.back() != ')') return std::nullopt;
  return split(rest.substr(1, rest.size() - 2), ',');
}

int parse_int(std::string_view text) {
  const double v = parse_number(text);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw Error(ErrorKind::Parse, "expected an integer, got '" + std::string(trim(text)) + "'");
  }
  return static_cast<int>(v);
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw Error(ErrorKind::Parse, "linspace needs at least one point");
  if (n == 1) return {a};
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
  return v;
}

AxisSpec parse_axis(std::string_view text, std::optional<Quantity> kind) {
  auto value_of = [&](std::string_view t) { return kind ? parse_quantity(t, *kind) : parse_number(t); };
  AxisSpec axis;
  if (auto args = call_args(text, "linspace")) {
    if (args->size() != 3) throw Error(ErrorKind::Parse, "linspace takes (start, stop, count)");
    axis.values = linspace(value_of((*args)[0]), value_of((*args)[1]), parse_int((*args)[2]));
    return axis;
  }
  if (auto args = call_args(text, "admissible")) {
    if (!kind || *kind != Quantity::Length) {
      throw Error(ErrorKind::Parse, "admissible(n) is only valid for diameters");
    }
    if (args->size() != 1) throw Error(ErrorKind::Parse, "admissible takes (count)");
    axis.admissible_count = parse_int((*args)[0]);
    if (*axis.admissible_count < 1) throw Error(ErrorKind::Parse, "admissible count must be >= 1");
    return axis;
  }
  for (auto part : split(text, ',')) axis.values.push_back(value_of(part));
  return axis;
}

std::vector<double> parse_list(std::string_view text, Quantity kind) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_quantity(part, kind));
  return out;
}

std::string sig17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class SectionReader {
 public:
  SectionReader(const ConfigDocument& doc, const ConfigSection& sec) : doc_(doc), sec_(sec) {
    for (const auto& e : sec.entries) {
      if (!seen_.insert(e.key).second) fail(e.line, "duplicate key '" + e.key + "'");
    }
  }

  void allow(std::initializer_list<std::string_view> keys) {
    for (const auto& e : sec_.entries) {
      if (std::find(keys.begin(), keys.end(), e.key) == keys.end()) unknown(e);
    }
  }

  const ConfigEntry* find(std::string_view key) {
    for (const auto& e : sec_.entries) {
      if (e.key == key) {
        used_.insert(e.key);
        return &e;
      }
    }
    return nullptr;
  }

  const ConfigEntry& require(std::string_view key) {
    const ConfigEntry* e = find(key);
    if (!e) fail(sec_.line, "section [" + sec_.name + "] is missing '" + std::string(key) + "'");
    return *e;
  }

  template <typename Fn>
  auto convert(const ConfigEntry& e, Fn&& fn) -> decltype(fn(e.value)) {
    try {
      return fn(e.value);
    } catch (const Error& err) {
      fail(e.line, "'" + e.key + "': " + err.what(), err.kind());
    }
  }

  void finish() {
    for (const auto& e : sec_.entries) {
      if (!used_.count(e.key)) unknown(e);
    }
  }

  [[noreturn]] void unknown(const ConfigEntry& e) const {
    fail(e.line, "unknown key '" + e.key + "' in [" + sec_.name + "]");
  }

  [[noreturn]] void fail(int line, const std::string& msg, ErrorKind kind = ErrorKind::Validation) const {
    throw Error(kind, doc_.source + ":" + std::to_string(line) + ": " + msg);
  }

  int line() const { return sec_.line; }

 private:
  const ConfigDocument& doc_;
  const ConfigSection& sec_;
  std::set<std::string> seen_;
  std::set<std::string> used_;
};

RobotGeometry read_robot(SectionReader& r) {
  RobotGeometry robot;
  r.allow({"rigid_base_width", "segment_lengths", "spring_stiffness", "body_mass"});
  robot.rigid_base_width = r.convert(r.require("rigid_base_width"),
                                     [](auto v) { return parse_quantity(v, Quantity::Length); });
  robot.segment_lengths = r.convert(r.require("segment_lengths"),
                                    [](auto v) { return parse_list(v, Quantity::Length); });
  const auto& k_entry = r.require("spring_stiffness");
  auto k = r.convert(k_entry, [](auto v) { return parse_list(v, Quantity::Stiffness); });
  if (k.size() == 1 && robot.segment_lengths.size() > 1) k.assign(robot.segment_lengths.size(), k.front());
  robot.spring_stiffnesses = k;
  robot.body_mass = r.convert(r.require("body_mass"), [](auto v) { return parse_quantity(v, Quantity::Mass); });
  r.finish();
  try {
    robot.validate();
  } catch (const Error& e) {
    r.fail(r.line(), e.what());
  }
  return robot;
}

PoleSpec read_pole(SectionReader& r) {
  PoleSpec pole;
  r.allow({"label", "diameter", "mu_static"});
  if (const auto* e = r.find("label")) pole.label = e->value;
  pole.diameter = r.convert(r.require("diameter"), [](auto v) { return parse_quantity(v, Quantity::Length); });
  pole.mu_static = r.convert(r.require("mu_static"), [](auto v) { return parse_number(v); });
  r.finish();
  try {
    pole.validate();
  } catch (const Error& e) {
    r.fail(r.line(), e.what());
  }
  return pole;
}

SweepSettings read_sweep(SectionReader& r) {
  SweepSettings s;
  r.allow({"diameters", "mu_values", "weight", "load_mass"});
  s.diameters = r.convert(r.require("diameters"), [](auto v) { return parse_axis(v, Quantity::Length); });
  s.mu_values = r.convert(r.require("mu_values"), [](auto v) { return parse_axis(v, std::nullopt); });
  if (const auto* e = r.find("weight")) {
    s.weight = r.convert(*e, [](auto v) { return parse_quantity(v, Quantity::Force); });
  }
  if (const auto* e = r.find("load_mass")) {
    if (s.weight) r.fail(e->line, "give either 'weight' or 'load_mass', not both");
    s.weight = r.convert(*e, [](auto v) { return parse_quantity(v, Quantity::Mass); }) * kGravity;
  }
  r.finish();
  return s;
}

AnalysisSettings read_analysis(SectionReader& r) {
  AnalysisSettings a;
  r.allow({"impact_threshold_g", "sustain_samples", "vertical_threshold", "window", "smoothing_window", "grid_step"});
  if (const auto* e = r.find("impact_threshold_g")) a.impact.threshold_g = r.convert(*e, [](auto v) { return parse_number(v); });
  if (const auto* e = r.find("sustain_samples")) a.impact.sustain_samples = r.convert(*e, [](auto v) { return parse_int(v); });
  if (const auto* e = r.find("vertical_threshold")) {
    a.reorientation.vertical_threshold = r.convert(*e, [](auto v) { return parse_quantity(v, Quantity::Angle); });
  }
  if (const auto* e = r.find("window")) a.reorientation.window = r.convert(*e, [](auto v) { return parse_quantity(v, Quantity::Time); });
  if (const auto* e = r.find("smoothing_window")) a.kinematics.smoothing_window = r.convert(*e, [](auto v) { return parse_int(v); });
  if (const auto* e = r.find("grid_step")) a.grid_step_percent = r.convert(*e, [](auto v) { return parse_quantity(v, Quantity::Percent); });
  r.finish();
  if (!(a.impact.threshold_g > 0.0)) r.fail(r.line(), "impact_threshold_g must be > 0");
  if (a.impact.sustain_samples < 1) r.fail(r.line(), "sustain_samples must be >= 1");
  if (a.kinematics.smoothing_window < 1) r.fail(r.line(), "smoothing_window must be >= 1");
  if (!(a.reorientation.window > 0.0)) r.fail(r.line(), "window must be > 0");
  if (!(a.grid_step_percent > 0.0 && a.grid_step_percent <= 100.0)) r.fail(r.line(), "grid_step must lie in (0, 100] %");
  return a;
}

SegmentationConfig read_segmentation(SectionReader& r) {
  SegmentationConfig c;
  r.allow({"label", "rigid_base_width", "segment_lengths"});
  c.label = r.require("label").value;
  c.rigid_base_width = r.convert(r.require("rigid_base_width"), [](auto v) { return parse_quantity(v, Quantity::Length); });
  c.segment_lengths = r.convert(r.require("segment_lengths"), [](auto v) { return parse_list(v, Quantity::Length); });
  r.finish();
  return c;
}

}  // namespace

double parse_number(std::string_view text) {
  auto [value, rest] = leading_number(text);
  if (!rest.empty()) {
    throw Error(ErrorKind::Parse, "unexpected trailing text '" + std::string(rest) + "'");
  }
  return value;
}

double parse_quantity(std::string_view text, Quantity kind) {
  auto [value, unit] = leading_number(text);
  if (unit.empty()) {
    throw Error(ErrorKind::Parse, "missing unit in '" + std::string(trim(text)) + "' (expected one of " +
                                      unit_list(kind) + ")");
  }
  for (const auto& u : units_for(kind)) {
    if (u.unit == unit) return u.convert(value);
  }
  throw Error(ErrorKind::Parse, "unknown unit '" + std::string(unit) + "' (expected one of " +
                                    unit_list(kind) + ")");
}

std::vector<double> AxisSpec::resolve(const std::optional<RobotGeometry>& robot) const {
  if (!admissible_count) return values;
  if (!robot) throw Error(ErrorKind::Validation, "admissible(n) needs a [robot] section");
  const DiameterRange range = diameter_range(*robot);
  return linspace(range.d_min, range.d_max, *admissible_count);
}

ConfigDocument parse_config_document(std::string_view text, const std::string& source) {
  ConfigDocument doc;
  doc.source = source;
  int line_no = 0;
  for (auto raw : split(text, '\n', /*keep_empty=*/true)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw Error(ErrorKind::Parse, source + ":" + std::to_string(line_no) + ": " + msg);
    };
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      std::string name(trim(line.substr(1, line.size() - 2)));
      if (name.empty()) fail("empty section name");
      doc.sections.push_back(ConfigSection{name, line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = value'");
    if (doc.sections.empty()) fail("key outside of any [section]");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) fail("empty key");
    if (value.empty()) fail("empty value for '" + key + "'");
    doc.sections.back().entries.push_back(ConfigEntry{key, value, line_no});
  }
  return doc;
}

RunConfig interpret(const ConfigDocument& doc) {
  RunConfig cfg;
  std::map<std::string, int> once;
  bool analysis_seen = false;
  for (const auto& sec : doc.sections) {
    SectionReader r(doc, sec);
    auto single = [&]() {
      if (once[sec.name]++ > 0) r.fail(sec.line, "section [" + sec.name + "] may appear only once");
    };
    if (sec.name == "robot") {
      single();
      cfg.robot = read_robot(r);
    } else if (sec.name == "pole") {
      cfg.poles.push_back(read_pole(r));
    } else if (sec.name == "sweep") {
      single();
      cfg.sweep = read_sweep(r);
    } else if (sec.name == "design") {
      single();
      DesignSettings d;
      r.allow({"wingspan"});
      d.wingspan = r.convert(r.require("wingspan"), [](auto v) { return parse_quantity(v, Quantity::Length); });
      r.finish();
      cfg.design = d;
    } else if (sec.name == "segmentation") {
      cfg.segmentations.push_back(read_segmentation(r));
    } else if (sec.name == "analysis") {
      single();
      analysis_seen = true;
      cfg.analysis = read_analysis(r);
    } else {
      r.fail(sec.line, "unknown section [" + sec.name + "]");
    }
  }
  (void)analysis_seen;
  return cfg;
}

RunConfig parse_run_config(std::string_view text, const std::string& source) {
  return interpret(parse_config_document(text, source));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig load_run_config(const std::vector<std::filesystem::path>& paths) {
  if (paths.empty()) throw Error(ErrorKind::Validation, "no configuration file given");
  ConfigDocument merged;
  for (const auto& p : paths) {
    const ConfigDocument doc = parse_config_document(read_text_file(p), p.string());
    // Validate each file on its own so messages name the right file.
    interpret(doc);
    merged.sections.insert(merged.sections.end(), doc.sections.begin(), doc.sections.end());
  }
  // Cross-file duplicates of single sections are reported against the merge.
  merged.source = paths.size() == 1 ? paths.front().string() : std::string("<merged configuration>");
  return interpret(merged);
}

std::string format_robot(const RobotGeometry& robot) {
  std::ostringstream os;
  os << "[robot]\n";
  os << "rigid_base_width = " << sig17(robot.rigid_base_width) << " m\n";
  os << "segment_lengths = ";
  for (std::size_t i = 0; i < robot.segment_lengths.size(); ++i) {
    os << (i ? ", " : "") << sig17(robot.segment_lengths[i]) << " m";
  }
  os << "\nspring_stiffness = ";
  for (std::size_t i = 0; i < robot.spring_stiffnesses.size(); ++i) {
    os << (i ? ", " : "") << sig17(robot.spring_stiffnesses[i]) << " N*m/rad";
  }
  os << "\nbody_mass = " << sig17(robot.body_mass) << " kg\n";
  return os.str();
}

std::string format_pole(const PoleSpec& pole) {
  std::ostringstream os;
  os << "[pole]\n";
  if (!pole.label.empty()) os << "label = " << pole.label << "\n";
  os << "diameter = " << sig17(pole.diameter) << " m\n";
  os << "mu_static = " << sig17(pole.mu_static) << "\n";
  return os.str();
}

}  // namespace hugperch

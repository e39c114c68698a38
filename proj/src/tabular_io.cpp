#include <cmath>
#include <cstdio>
#include <sstream>

#include "hugperch/config.hpp"
#include "hugperch/error.hpp"
#include "hugperch/units.hpp"
#include "text_util.hpp"

namespace hugperch {
namespace {

using detail::split;
using detail::trim;

[[noreturn]] void fail_at(const std::string& source, int line, const std::string& msg,
                          ErrorKind kind = ErrorKind::Parse) {
  throw Error(kind, source + ":" + std::to_string(line) + ": " + msg);
}

double cell_number(std::string_view cell, const std::string& source, int line, std::string_view column) {
  try {
    return parse_number(cell);
  } catch (const Error& e) {
    fail_at(source, line, "column '" + std::string(column) + "': " + e.what());
  }
}

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace

TrackedTrajectory parse_trajectory(std::string_view text, const std::string& source,
                                   std::optional<double> mass_override) {
  std::optional<double> rate;
  std::optional<double> mass;
  bool header_seen = false;
  TrackedTrajectory traj;
  int line_no = 0;
  for (auto raw : split(text, '\n', true)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      for (auto token : split(line.substr(1), ' ')) {
        const auto eq = token.find('=');
        if (eq == std::string_view::npos) continue;
        const auto key = token.substr(0, eq);
        const auto value = token.substr(eq + 1);
        if (key == "rate_hz") rate = cell_number(value, source, line_no, key);
        if (key == "mass_kg") mass = cell_number(value, source, line_no, key);
      }
      continue;
    }
    if (!header_seen) {
      const auto cols = split(line, ',');
      const std::vector<std::string_view> expected{"t", "x", "y", "z", "roll", "pitch", "yaw"};
      if (cols != expected) fail_at(source, line_no, "expected header 't,x,y,z,roll,pitch,yaw'");
      header_seen = true;
      continue;
    }
    const auto cells = split(line, ',', true);
    if (cells.size() != 7) {
      fail_at(source, line_no, "expected 7 columns, got " + std::to_string(cells.size()));
    }
    double v[7];
    static const char* names[7] = {"t", "x", "y", "z", "roll", "pitch", "yaw"};
    for (int c = 0; c < 7; ++c) v[c] = cell_number(cells[c], source, line_no, names[c]);
    traj.timestamps.push_back(v[0]);
    traj.positions.emplace_back(v[1], v[2], v[3]);
    traj.attitudes.emplace_back(deg_to_rad(v[4]), deg_to_rad(v[5]), deg_to_rad(v[6]));
  }
  if (!header_seen) throw Error(ErrorKind::Parse, source + ": missing column header");
  if (!rate || !(*rate > 0.0)) throw Error(ErrorKind::Parse, source + ": missing or invalid '# rate_hz=' header");
  if (mass_override) mass = mass_override;
  if (!mass) throw Error(ErrorKind::Parse, source + ": no mass given (header 'mass_kg=' or --mass)");
  traj.dt = 1.0 / *rate;
  traj.mass = *mass;
  try {
    traj.validate();
  } catch (const Error& e) {
    throw Error(e.kind(), source + ": " + e.what());
  }
  return traj;
}

TrackedTrajectory load_trajectory(const std::filesystem::path& path, std::optional<double> mass_override) {
  return parse_trajectory(read_text_file(path), path.string(), mass_override);
}

std::string format_trajectory(const TrackedTrajectory& traj) {
  std::ostringstream os;
  os << "# rate_hz=" << fmt(1.0 / traj.dt, 17) << " mass_kg=" << fmt(traj.mass, 17) << "\n";
  os << "t,x,y,z,roll,pitch,yaw\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << fmt(traj.timestamps[k], 17);
    for (int c = 0; c < 3; ++c) os << ',' << fmt(traj.positions[k][c], 17);
    for (int c = 0; c < 3; ++c) os << ',' << fmt(rad_to_deg(traj.attitudes[k][c]), 17);
    os << '\n';
  }
  return os.str();
}

std::vector<FrictionMeasurement> parse_friction_csv(std::string_view text, const std::string& source) {
  static const std::vector<std::string_view> expected{"method", "f_pull_n", "mass_kg", "angle_deg",
                                                      "k_n_per_m", "dl_mm"};
  std::vector<FrictionMeasurement> out;
  bool header_seen = false;
  int line_no = 0;
  for (auto raw : split(text, '\n', true)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto cells = split(line, ',', true);
    for (auto& c : cells) c = trim(c);
    if (!header_seen) {
      if (cells != expected) fail_at(source, line_no, "expected header 'method,f_pull_n,mass_kg,angle_deg,k_n_per_m,dl_mm'");
      header_seen = true;
      continue;
    }
    if (cells.size() != expected.size()) {
      fail_at(source, line_no, "expected 6 columns, got " + std::to_string(cells.size()));
    }
    FrictionMeasurement m;
    try {
      m.method = parse_friction_method(cells[0]);
    } catch (const Error& e) {
      fail_at(source, line_no, e.what());
    }
    auto need = [&](std::size_t col) {
      if (cells[col].empty()) {
        fail_at(source, line_no, "method '" + std::string(cells[0]) + "' needs column '" +
                                     std::string(expected[col]) + "'");
      }
      return cell_number(cells[col], source, line_no, expected[col]);
    };
    switch (m.method) {
      case FrictionMethod::Pull:
        m.f_pull = need(1);
        m.mass = need(2);
        break;
      case FrictionMethod::Incline:
        m.angle = deg_to_rad(need(3));
        break;
      case FrictionMethod::VerticalTool:
        m.f_pull = need(1);
        m.mass = need(2);
        m.stiffness = need(4);
        m.compression = mm_to_m(need(5));
        break;
    }
    try {
      m = evaluate(m);
    } catch (const Error& e) {
      fail_at(source, line_no, e.what(), e.kind());
    }
    out.push_back(m);
  }
  if (!header_seen) throw Error(ErrorKind::Parse, source + ": missing column header");
  if (out.empty()) throw Error(ErrorKind::Empty, source + ": no measurements");
  return out;
}

}  // namespace hugperch

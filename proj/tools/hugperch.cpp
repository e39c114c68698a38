#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hugperch/config.hpp"
#include "hugperch/design_explorer.hpp"
#include "hugperch/error.hpp"
#include "hugperch/flight_kinematics.hpp"
#include "hugperch/friction_lab.hpp"
#include "hugperch/report.hpp"
#include "hugperch/statics_solver.hpp"
#include "hugperch/svg_plot.hpp"
#include "hugperch/units.hpp"
#include "hugperch/wrap_geometry.hpp"

#ifndef HUGPERCH_VERSION
#define HUGPERCH_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace hugperch;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct Options {
  std::vector<std::string> configs;
  std::string out_dir = "hugperch-out";
  std::string format = "csv";
  std::optional<double> grid_step;
  std::optional<double> impact_threshold_g;
  std::optional<double> vertical_threshold_deg;
  std::optional<double> weight;
  std::optional<double> payload;
  std::optional<double> mass;
  std::vector<std::string> inputs;
  bool serial = false;
  bool states = false;
};

// Everything a command produces; written only after the command succeeds.
struct Outputs {
  std::vector<std::pair<std::string, std::string>> files;
  std::string stdout_text;
  std::vector<std::string> notes;

  void add(std::string name, std::string content) { files.emplace_back(std::move(name), std::move(content)); }
};

bool want_csv(const Options& o) { return o.format != "svg"; }
bool want_svg(const Options& o) { return o.format != "csv"; }

RunConfig load(const Options& o) {
  std::vector<fs::path> paths(o.configs.begin(), o.configs.end());
  return load_run_config(paths);
}

const RobotGeometry& need_robot(const RunConfig& cfg) {
  if (!cfg.robot) throw Error(ErrorKind::Validation, "configuration has no [robot] section");
  return *cfg.robot;
}

SplitSearchOptions search_options(const Options& o, const RunConfig& cfg) {
  const double step = o.grid_step.value_or(cfg.analysis.grid_step_percent);
  if (!(step > 0.0 && step <= 100.0)) throw Error(ErrorKind::Validation, "--grid-step must lie in (0, 100]");
  return SplitSearchOptions::from_step_percent(step, !o.serial);
}

std::string pole_name(const PoleSpec& pole, std::size_t index) {
  return pole.label.empty() ? "#" + std::to_string(index + 1) : pole.label;
}

std::string without_header(const std::string& csv) {
  const auto nl = csv.find('\n');
  return nl == std::string::npos ? std::string() : csv.substr(nl + 1);
}

double nan_unless(bool ok, double v) { return ok ? v : std::nan(""); }

int cmd_solve(const Options& o, Outputs& out) {
  const RunConfig cfg = load(o);
  const RobotGeometry& robot = need_robot(cfg);
  if (cfg.poles.empty()) throw Error(ErrorKind::Validation, "configuration has no [pole] section");
  if (o.weight && o.payload) throw Error(ErrorKind::Validation, "give either --weight or --payload, not both");
  if (o.weight && !(*o.weight >= 0.0)) throw Error(ErrorKind::Validation, "--weight must be >= 0");
  if (o.payload && !(*o.payload >= 0.0)) throw Error(ErrorKind::Validation, "--payload must be >= 0");
  const double body_weight = robot.body_mass * kGravity;
  const double weight = o.weight ? *o.weight : body_weight + o.payload.value_or(0.0) * kGravity;
  const SplitSearchOptions opts = search_options(o, cfg);

  std::ostringstream text;
  std::string csv;
  bool all_feasible = true;
  for (std::size_t i = 0; i < cfg.poles.size(); ++i) {
    const PoleSpec& pole = cfg.poles[i];
    text << "== pole " << pole_name(pole, i) << " ==\n";
    WrapGeometry wrap;
    try {
      wrap = solve_wrap(robot, pole);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::GeometryInfeasible) throw;
      text << "status: " << to_string(e.kind()) << "\n" << e.what() << "\nverdict: infeasible\n\n";
      all_feasible = false;
      continue;
    }
    const StaticSolution sol = find_min_friction_split(wrap, robot, weight, opts);
    const EquilibriumResiduals res = equilibrium_residuals(sol, robot);
    const double envelope = max_vertical_capacity(wrap, robot, opts);
    text << solution_text(sol, res, weight);
    text << "payload headroom: " << format_sig(envelope - weight) << " N ("
         << format_sig((envelope - weight) / kGravity) << " kg)\n";
    text << "verdict: " << (sol.feasible ? "feasible" : "infeasible") << "\n\n";
    all_feasible = all_feasible && sol.feasible;
    const std::string rows = solution_csv(sol);
    csv += csv.empty() ? rows : without_header(rows);
  }
  out.stdout_text = text.str();
  out.add("report.txt", text.str());
  if (want_csv(o) && !csv.empty()) out.add("solution.csv", csv);
  return all_feasible ? kExitOk : kExitInfeasible;
}

int cmd_range(const Options& o, Outputs& out) {
  const RunConfig cfg = load(o);
  const RobotGeometry& robot = need_robot(cfg);
  const DiameterRange range = diameter_range(robot);
  const double span = robot.wingspan();
  std::ostringstream text;
  text << "wingspan: " << format_sig(m_to_mm(span)) << " mm\n";
  text << "d_min: " << format_sig(m_to_mm(range.d_min)) << " mm (" << format_sig(100.0 * range.d_min / span)
       << " % of wingspan)\n";
  text << "d_max: " << format_sig(m_to_mm(range.d_max)) << " mm (" << format_sig(100.0 * range.d_max / span)
       << " % of wingspan)\n";
  out.stdout_text = text.str();
  if (want_csv(o)) {
    out.add("range.csv", range_csv(robot, range));
    out.add("wrap_angles.csv", wrap_curve_csv(robot, 0.9 * range.d_min, 1.1 * range.d_max, 81));
  }
  if (want_svg(o)) {
    Series wrap_s{"wrap angle", {}, {}}, tip_s{"tip angle", {}, {}};
    for (int i = 0; i <= 80; ++i) {
      const double d = 0.9 * range.d_min + (1.1 * range.d_max - 0.9 * range.d_min) * i / 80.0;
      wrap_s.x.push_back(m_to_mm(d));
      tip_s.x.push_back(m_to_mm(d));
      wrap_s.y.push_back(rad_to_deg(wrap_angle_at(robot, d)));
      tip_s.y.push_back(rad_to_deg(tip_angle_at(robot, d)));
    }
    LinePlot plot{"Wrap and wingtip angle", "pole diameter (mm)", "angle (deg)", {wrap_s, tip_s}};
    out.add("wrap_angles.svg", render_svg(plot));
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, Outputs& out) {
  const RunConfig cfg = load(o);
  const RobotGeometry& robot = need_robot(cfg);
  if (!cfg.sweep) throw Error(ErrorKind::Validation, "configuration has no [sweep] section");
  SweepGrid grid;
  grid.robot = robot;
  grid.diameters = cfg.sweep->diameters.resolve(cfg.robot);
  grid.mu_values = cfg.sweep->mu_values.resolve(cfg.robot);
  const double weight = cfg.sweep->weight.value_or(robot.body_mass * kGravity);
  const SplitSearchOptions opts = search_options(o, cfg);
  const SweepTable table = sweep(grid, weight, opts, !o.serial);

  std::size_t feasible = 0, failed = 0;
  for (const auto& c : table.cells) {
    feasible += c.feasible ? 1 : 0;
    failed += c.error ? 1 : 0;
  }
  std::ostringstream text;
  text << "cells: " << table.cells.size() << ", feasible: " << feasible << ", errors: " << failed << "\n";
  out.stdout_text = text.str();
  if (want_csv(o)) out.add("sweep.csv", sweep_csv(table));
  if (want_svg(o)) {
    auto plot_of = [&](const std::string& title, const std::string& y_label, auto value) {
      LinePlot plot{title, "pole diameter (mm)", y_label, {}};
      for (std::size_t m = 0; m < table.mu_values.size(); ++m) {
        Series s{"mu_s = " + format_sig(table.mu_values[m]), {}, {}};
        for (std::size_t d = 0; d < table.diameters.size(); ++d) {
          s.x.push_back(m_to_mm(table.diameters[d]));
          s.y.push_back(value(table.at(d, m)));
        }
        plot.series.push_back(std::move(s));
      }
      return render_svg(plot);
    };
    out.add("squeeze_force.svg", plot_of("Squeeze force", "squeeze force (N)", [](const SweepCell& c) {
              return nan_unless(!c.error, c.squeeze_force);
            }));
    out.add("max_payload.svg", plot_of("Maximum payload", "payload (kg)", [](const SweepCell& c) {
              return nan_unless(!c.error, c.max_payload);
            }));
    out.add("vertical_fraction.svg", plot_of("Vertical friction share", "F_v / F_f", [](const SweepCell& c) {
              return nan_unless(c.feasible, c.vertical_fraction);
            }));
  }
  return kExitOk;
}

int cmd_design(const Options& o, Outputs& out) {
  const RunConfig cfg = load(o);
  const RobotGeometry& robot = need_robot(cfg);
  if (!cfg.design) throw Error(ErrorKind::Validation, "configuration has no [design] section");
  if (cfg.segmentations.empty()) throw Error(ErrorKind::Validation, "configuration has no [segmentation] section");
  const SegmentationRanking ranking =
      compare_segmentations(cfg.design->wingspan, cfg.segmentations, cfg.poles, robot, search_options(o, cfg));

  std::ostringstream text;
  for (const auto& r : ranking.ranked()) {
    text << r.rank << ". " << r.label << ": mean payload " << format_sig(r.mean_common_payload) << " kg, "
         << r.feasible_count << "/" << ranking.poles.size() << " poles held\n";
  }
  out.stdout_text = text.str();
  if (want_csv(o)) out.add("design.csv", design_csv(ranking));
  if (want_svg(o)) {
    BarChart chart{"Payload by segmentation", "payload (kg)", {}, {}};
    for (std::size_t p = 0; p < ranking.poles.size(); ++p) chart.categories.push_back(pole_name(ranking.poles[p], p));
    for (const auto& r : ranking.results) chart.groups.push_back({r.label, r.payloads});
    out.add("design.svg", render_svg(chart));
  }
  return kExitOk;
}

int cmd_predict(const Options& o, Outputs& out) {
  const RunConfig cfg = load(o);
  const RobotGeometry& robot = need_robot(cfg);
  if (cfg.poles.empty()) throw Error(ErrorKind::Validation, "configuration has no [pole] section");
  const auto predictions = predict_static_experiments(robot, cfg.poles, search_options(o, cfg));

  std::ostringstream text;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const auto& p = predictions[i];
    text << pole_name(p.pole, i) << ": d = " << format_sig(m_to_mm(p.pole.diameter)) << " mm, mu_s = "
         << format_sig(p.pole.mu_static) << ", "
         << (p.body_supported ? "holds " + format_sig(p.predicted_mass) + " kg" : std::string("slips")) << "\n";
  }
  out.stdout_text = text.str();
  if (want_csv(o)) out.add("predict.csv", predict_csv(predictions));
  if (want_svg(o)) {
    BarChart chart{"Predicted perching mass", "mass (kg)", {}, {{"predicted mass", {}}}};
    for (std::size_t i = 0; i < predictions.size(); ++i) {
      chart.categories.push_back(pole_name(predictions[i].pole, i));
      chart.groups[0].values.push_back(predictions[i].body_supported ? predictions[i].predicted_mass : 0.0);
    }
    out.add("predict.svg", render_svg(chart));
  }
  return kExitOk;
}

int cmd_analyze(const Options& o, Outputs& out) {
  AnalysisSettings settings;
  if (!o.configs.empty()) settings = load(o).analysis;
  if (o.impact_threshold_g) settings.impact.threshold_g = *o.impact_threshold_g;
  if (o.vertical_threshold_deg) settings.reorientation.vertical_threshold = deg_to_rad(*o.vertical_threshold_deg);
  if (!(settings.impact.threshold_g > 0.0)) throw Error(ErrorKind::Validation, "--impact-threshold-g must be > 0");
  if (o.mass && !(*o.mass > 0.0)) throw Error(ErrorKind::Validation, "--mass must be > 0");
  if (o.inputs.empty()) throw Error(ErrorKind::Validation, "no trajectory files given");

  std::vector<FlightRecord> flights;
  for (const auto& input : o.inputs) {
    FlightRecord rec;
    rec.source = input;
    try {
      const TrackedTrajectory traj = load_trajectory(input, o.mass);
      rec.mass = traj.mass;
      const BodyStates states = estimate_body_states(traj, settings.kinematics);
      rec.impact = detect_impact(traj, states, settings.impact);
      rec.outcome = classify_reorientation(traj, rec.impact, settings.reorientation);
      if (o.states && want_csv(o)) {
        out.add("states_" + fs::path(input).stem().string() + ".csv", body_states_csv(traj, states));
      }
    } catch (const Error& e) {
      rec.error = std::string(to_string(e.kind())) + ": " + e.what();
    }
    flights.push_back(std::move(rec));
  }
  const FlightSummary summary = summarize(flights);

  std::ostringstream text;
  for (const auto& f : flights) {
    text << f.source << ": ";
    if (!f.error.empty()) {
      text << f.error << "\n";
      continue;
    }
    text << "V_i = " << format_sig(f.impact.impact_speed) << " m/s, F_i = " << format_sig(f.impact.peak_force)
         << " N, " << (f.outcome.success ? "success" : "failure") << "\n";
  }
  text << "success rate: " << format_sig(summary.success_rate) << " (" << summary.analysed << " analysed, "
       << summary.failed << " failed)\n";
  text << "mean impact speed: " << format_sig(summary.mean_impact_speed) << " m/s\n";
  text << "mean duration to vertical: " << format_sig(summary.mean_duration) << " s\n";
  text << "success criterion: pitch proxy (wall contact is not observable from pose data)\n";
  out.stdout_text = text.str();
  out.notes.push_back("success_criterion = pitch >= " +
                      format_sig(rad_to_deg(settings.reorientation.vertical_threshold)) + " deg within " +
                      format_sig(settings.reorientation.window) + " s (proxy; wall contact not observed)");

  if (want_csv(o)) {
    out.add("flights.csv", flights_csv(flights));
    out.add("flight_summary.csv", flight_summary_csv(summary));
  }
  if (want_svg(o)) {
    Series s{"flights", {}, {}};
    for (const auto& f : flights) {
      if (!f.error.empty()) continue;
      s.x.push_back(f.impact.impact_speed);
      s.y.push_back(f.impact.peak_force);
    }
    LinePlot plot{"Impact force", "impact speed (m/s)", "peak force (N)", {s}, true};
    out.add("impact_force.svg", render_svg(plot));
  }
  return summary.analysed > 0 ? kExitOk : kExitError;
}

int cmd_friction(const Options& o, Outputs& out) {
  if (o.inputs.empty()) throw Error(ErrorKind::Validation, "no friction measurement files given");
  std::vector<FrictionMeasurement> all;
  for (const auto& input : o.inputs) {
    const auto batch = parse_friction_csv(read_text_file(input), input);
    all.insert(all.end(), batch.begin(), batch.end());
  }
  const std::string table = friction_csv(all);
  const FrictionSummary pooled = aggregate(std::span<const FrictionMeasurement>(all));
  std::ostringstream text;
  text << "mu_s = " << format_sig(pooled.mean) << " +/- " << format_sig(pooled.stddev) << " (n = " << pooled.count
       << ")\n";
  out.stdout_text = text.str();
  if (want_csv(o)) out.add("friction.csv", table);
  if (want_svg(o)) {
    BarChart chart{"Static friction coefficient", "mu_s", {}, {{"mean", {}}}};
    for (auto method : {FrictionMethod::Pull, FrictionMethod::Incline, FrictionMethod::VerticalTool}) {
      std::vector<double> values;
      for (const auto& m : all) {
        if (m.method == method) values.push_back(m.mu_static);
      }
      if (values.empty()) continue;
      chart.categories.emplace_back(to_string(method));
      chart.groups[0].values.push_back(aggregate(values).mean);
    }
    out.add("friction.svg", render_svg(chart));
  }
  return kExitOk;
}

void write_outputs(const Options& o, const std::string& command, const Outputs& out) {
  const fs::path dir = o.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create '" + dir.string() + "': " + ec.message());
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::Io, "cannot write '" + (dir / name).string() + "'");
    f << content;
  };
  for (const auto& [name, content] : out.files) write(name, content);
  std::ostringstream meta;
  meta << "tool = hugperch " << HUGPERCH_VERSION << "\n";
  meta << "command = " << command << "\n";
  meta << "format = " << o.format << "\n";
  for (const auto& note : out.notes) meta << note << "\n";
  meta << "files =";
  for (const auto& [name, content] : out.files) meta << ' ' << name;
  meta << "\n";
  write("metadata.txt", meta.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static perching, flight analysis and friction tools for hugging-wing robots"};
  app.set_version_flag("--version", HUGPERCH_VERSION);
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", o.configs, "configuration file(s), merged in order");
    if (config_required) c->required();
    sub->add_option("--out-dir", o.out_dir, "output directory")->capture_default_str();
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "svg", "both"}))
        ->capture_default_str();
  };
  auto grid = [&](CLI::App* sub) {
    sub->add_option("--grid-step", o.grid_step, "friction-split grid step in percent");
    sub->add_flag("--serial", o.serial, "disable worker threads");
  };

  auto* solve = app.add_subcommand("solve", "static equilibrium on each configured pole");
  common(solve, true);
  grid(solve);
  solve->add_option("--weight", o.weight, "supported weight in N (default: body weight)");
  solve->add_option("--payload", o.payload, "added mass in kg on top of the body");

  auto* range = app.add_subcommand("range", "perchable diameter range");
  common(range, true);

  auto* sweep_cmd = app.add_subcommand("sweep", "diameter x friction sweep");
  common(sweep_cmd, true);
  grid(sweep_cmd);

  auto* design = app.add_subcommand("design", "compare wing segmentations");
  common(design, true);
  grid(design);

  auto* predict = app.add_subcommand("predict", "payload prediction per pole");
  common(predict, true);
  grid(predict);

  auto* analyze = app.add_subcommand("analyze", "impact and reorientation from tracked flights");
  common(analyze, false);
  analyze->add_option("trajectories", o.inputs, "trajectory files")->required();
  analyze->add_option("--mass", o.mass, "robot mass in kg (overrides file headers)");
  analyze->add_option("--impact-threshold-g", o.impact_threshold_g, "impact deceleration threshold in g");
  analyze->add_option("--vertical-threshold-deg", o.vertical_threshold_deg, "pitch counted as vertical");
  analyze->add_flag("--states", o.states, "also write per-flight body states");

  auto* friction = app.add_subcommand("friction", "static friction from measurement batches");
  common(friction, false);
  friction->add_option("measurements", o.inputs, "measurement CSV files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    Outputs out;
    int code = kExitOk;
    if (name == "solve") code = cmd_solve(o, out);
    else if (name == "range") code = cmd_range(o, out);
    else if (name == "sweep") code = cmd_sweep(o, out);
    else if (name == "design") code = cmd_design(o, out);
    else if (name == "predict") code = cmd_predict(o, out);
    else if (name == "analyze") code = cmd_analyze(o, out);
    else code = cmd_friction(o, out);
    if (code != kExitError) write_outputs(o, name, out);
    std::cout << out.stdout_text;
    return code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}

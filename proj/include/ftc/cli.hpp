#ifndef FTC_CLI_HPP
#define FTC_CLI_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "ftc/analysis.hpp"
#include "ftc/bounds.hpp"
#include "ftc/error.hpp"
#include "ftc/report.hpp"
#include "ftc/repro.hpp"
#include "ftc/scenario_io.hpp"
#include "ftc/simulation.hpp"
#include "ftc/spectral.hpp"
#include "ftc/trajectory_io.hpp"

namespace ftc::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kDisconnected = 3,
  kTimedOut = 4,
};

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // Round-off residue such as -1e-17 would otherwise print as "-0.000000".
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  return parse_scenario(in);
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorKind::IoError, "cannot write " + path.string());
}

inline void print_bounds(const BoundsReport& r, std::ostream& out) {
  out << "alpha=" << fixed6(r.alpha) << '\n'
      << "V1_0=" << fixed6(r.v1_0) << '\n'
      << "V2_0=" << fixed6(r.v2_0) << '\n'
      << "lambda2_A=" << fixed6(r.lambda2_A) << '\n'
      << "lambda2_B=" << fixed6(r.lambda2_B) << '\n'
      << "t1=" << fixed6(r.t1) << '\n'
      << "t1_limit_alpha0=" << fixed6(r.t1_limit_alpha0) << '\n'
      << "t2=" << fixed6(r.t2) << '\n';
  if (r.t3) out << "t3=" << fixed6(*r.t3) << '\n';
}

inline int simulate_command(const std::string& file, const std::string& csv_path,
                            const std::string& report_path, std::ostream& out) {
  const Scenario sc = load_scenario(file);
  const Trajectory traj = integrate(sc);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw Error(ErrorKind::IoError, "cannot open " + csv_path);
    write_trajectory_csv(traj, csv);
  }

  std::vector<ReportRow> rows;
  const bool converged = traj.status == RunStatus::Converged;
  rows.push_back({"observed_time", std::nullopt, traj.converged_at.value_or(std::nan("")),
                  converged ? "converged" : "timed out before agreement"});
  if (traj.final_value)
    rows.push_back({"final_value", std::nullopt, *traj.final_value, "common value at agreement"});
  rows.push_back({"mean_x0", std::nullopt, sum_of(sc.x0) / static_cast<double>(sc.x0.size()),
                  "average of the initial states"});
  if (sc.protocol.kind() != ProtocolKind::P1)
    rows.push_back({"conservation_drift", std::nullopt, conservation_drift(traj),
                    "max |sum x(t) - sum x(0)|"});
  if (sc.protocol.kind() != ProtocolKind::Linear && traj.all_connected) {
    const auto b = bounds_command(sc);
    if (sc.protocol.kind() == ProtocolKind::P1)
      rows.push_back({"t1", std::nullopt, b.t1, "upper bound for protocol 1"});
    else if (sc.schedule && sc.schedule->phases.size() > 1)
      rows.push_back({"t3", std::nullopt, *b.t3, "upper bound under switching"});
    else
      rows.push_back({"t2", std::nullopt, b.t2, "upper bound for protocol 2"});
  }
  if (!report_path.empty()) write_text(report_path, render_report(rows));

  out << "status=" << (converged ? "converged" : "timed_out") << '\n';
  if (traj.converged_at) out << "converged_at=" << fixed6(*traj.converged_at) << '\n';
  if (traj.final_value) out << "final_value=" << fixed6(*traj.final_value) << '\n';
  out << "samples=" << traj.samples.size() << '\n';
  return converged ? kOk : kTimedOut;
}

inline int spectral_command(const std::string& file, std::ostream& out) {
  const Scenario sc = load_scenario(file);
  for (const auto& [name, t] : sc.topologies) {
    const auto spectrum = eigenvalues_symmetric(laplacian(t));
    out << name << ":";
    for (double v : spectrum.eigenvalues) out << ' ' << fixed6(v);
    out << "\n  lambda2=" << fixed6(t.size() > 1 ? spectrum.eigenvalues[1] : 0.0)
        << " connected=" << (is_connected(t) ? "yes" : "no");
    if (sc.protocol.kind() != ProtocolKind::Linear)
      out << " lambda2_B="
          << fixed6(algebraic_connectivity(exponent_transform(t, sc.protocol.alpha())));
    out << '\n';
  }
  return kOk;
}

inline int repro_command(const std::string& out_dir, const std::string& report_path,
                         std::ostream& out) {
  const auto r = repro::run_repro();
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    write_trajectory_csv(r.p1_run, dir / "repro_p1.csv");
    write_trajectory_csv(r.p2_run, dir / "repro_p2.csv");
    write_trajectory_csv(r.switching_run, dir / "repro_switching.csv");
    write_text(dir / "repro_switching.scn", render_scenario(r.switching));
  }
  const std::string doc = render_report(r.rows);
  if (!report_path.empty()) write_text(report_path, doc);
  out << doc;
  const bool all_converged = r.p1_run.status == RunStatus::Converged &&
                             r.p2_run.status == RunStatus::Converged &&
                             r.switching_run.status == RunStatus::Converged;
  return all_converged ? kOk : kTimedOut;
}

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-time consensus simulator"};
  app.require_subcommand(1);

  std::string file, csv_path, report_path, out_dir;
  auto* simulate = app.add_subcommand("simulate", "integrate a scenario file");
  simulate->add_option("file", file, "scenario file")->required();
  simulate->add_option("--out", csv_path, "trajectory CSV destination");
  simulate->add_option("--report", report_path, "JSON report destination");

  auto* bounds = app.add_subcommand("bounds", "print convergence-time bounds");
  bounds->add_option("file", file, "scenario file")->required();

  auto* spectral = app.add_subcommand("spectral", "list Laplacian eigenvalues per topology");
  spectral->add_option("file", file, "scenario file")->required();

  auto* repro = app.add_subcommand("repro", "rerun the built-in six-agent experiment");
  repro->add_option("--out-dir", out_dir, "directory for trajectory CSVs");
  repro->add_option("--report", report_path, "JSON report destination");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (simulate->parsed()) return simulate_command(file, csv_path, report_path, out);
    if (bounds->parsed()) {
      print_bounds(bounds_command(load_scenario(file)), out);
      return kOk;
    }
    if (spectral->parsed()) return spectral_command(file, out);
    if (repro->parsed()) return repro_command(out_dir, report_path, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::DisconnectedTopology ? kDisconnected : kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace ftc::cli

#endif  // FTC_CLI_HPP

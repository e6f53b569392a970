#ifndef FTC_SIMULATION_HPP
#define FTC_SIMULATION_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftc/bounds.hpp"
#include "ftc/error.hpp"
#include "ftc/graph.hpp"
#include "ftc/protocols.hpp"

namespace ftc {

using TopologyMap = std::map<std::string, Topology>;

struct Phase {
  std::string topology_id;
  double dwell = 0.0;

  friend bool operator==(const Phase&, const Phase&) = default;
};

/// Piecewise-constant, right-continuous assignment of topologies over time.
struct SwitchingSchedule {
  std::vector<Phase> phases;
  bool cyclic = false;

  double period() const {
    double total = 0.0;
    for (const auto& p : phases) total += p.dwell;
    return total;
  }

  friend bool operator==(const SwitchingSchedule&, const SwitchingSchedule&) = default;
};

inline void validate_schedule(const SwitchingSchedule& s) {
  if (s.phases.empty()) throw Error(ErrorKind::ConfigError, "schedule has no phases");
  for (const auto& p : s.phases)
    if (!(p.dwell > 0.0) || !std::isfinite(p.dwell))
      throw Error(ErrorKind::ConfigError, "dwell of '" + p.topology_id + "' must be positive");
}

/// Topology in force at time t; phase k owns the half-open interval
/// [start_k, start_k + dwell_k).
inline const Topology& topology_at(const SwitchingSchedule& s, const TopologyMap& topologies,
                                   double t) {
  validate_schedule(s);
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "time must be nonnegative");
  const double period = s.period();
  double local = t;
  if (s.cyclic) {
    local = std::fmod(t, period);
  } else if (t >= period) {
    throw Error(ErrorKind::TimeBeyondSchedule, "t is past the end of a non-cyclic schedule");
  }
  const Phase* chosen = &s.phases.back();
  double start = 0.0;
  for (const auto& p : s.phases) {
    if (local < start + p.dwell) {
      chosen = &p;
      break;
    }
    start += p.dwell;
  }
  auto it = topologies.find(chosen->topology_id);
  if (it == topologies.end())
    throw Error(ErrorKind::UnknownTopologyId, "no topology named '" + chosen->topology_id + "'");
  return it->second;
}

struct Scenario {
  ProtocolSpec protocol;
  TopologyMap topologies;
  /// Absent: the single entry of `topologies` is used for all time.
  std::optional<SwitchingSchedule> schedule;
  StateVector x0;
  double dt = 1e-3;
  double t_max = 100.0;
  double agree_tol = 1e-6;
  std::size_t record_every = 10;
};

/// Throws ConfigError when the scenario is not runnable.
inline void validate(const Scenario& sc) {
  if (sc.x0.empty()) throw Error(ErrorKind::ConfigError, "x0 is empty");
  for (double v : sc.x0)
    if (!std::isfinite(v)) throw Error(ErrorKind::ConfigError, "x0 has a non-finite entry");
  if (!(sc.dt > 0.0) || !std::isfinite(sc.dt))
    throw Error(ErrorKind::ConfigError, "dt must be positive");
  if (!(sc.t_max > 0.0) || !std::isfinite(sc.t_max))
    throw Error(ErrorKind::ConfigError, "t_max must be positive");
  if (!(sc.agree_tol > 0.0)) throw Error(ErrorKind::ConfigError, "agree_tol must be positive");
  if (sc.record_every == 0) throw Error(ErrorKind::ConfigError, "record_every must be >= 1");
  if (sc.topologies.empty()) throw Error(ErrorKind::ConfigError, "no topology defined");
  for (const auto& [name, t] : sc.topologies)
    if (t.size() != sc.x0.size())
      throw Error(ErrorKind::ConfigError, "topology '" + name + "' has " +
                                              std::to_string(t.size()) + " vertices but x0 has " +
                                              std::to_string(sc.x0.size()) + " entries");
  if (!sc.schedule) {
    if (sc.topologies.size() != 1)
      throw Error(ErrorKind::ConfigError, "several topologies defined but no schedule");
    return;
  }
  validate_schedule(*sc.schedule);
  for (const auto& p : sc.schedule->phases) {
    if (!sc.topologies.contains(p.topology_id))
      throw Error(ErrorKind::ConfigError, "schedule references unknown topology '" +
                                              p.topology_id + "'");
    const double steps = p.dwell / sc.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps) || std::round(steps) < 1)
      throw Error(ErrorKind::ConfigError,
                  "dwell of '" + p.topology_id + "' is not a positive multiple of dt");
  }
}

/// Topologies the scenario actually uses, in schedule order (deduplicated).
inline std::vector<std::string> scheduled_topology_ids(const Scenario& sc) {
  std::vector<std::string> ids;
  if (!sc.schedule) {
    ids.push_back(sc.topologies.begin()->first);
    return ids;
  }
  for (const auto& p : sc.schedule->phases)
    if (std::find(ids.begin(), ids.end(), p.topology_id) == ids.end())
      ids.push_back(p.topology_id);
  return ids;
}

struct Sample {
  double t = 0.0;
  StateVector x;
  double v1 = 0.0;
  double v2 = 0.0;
  double spread = 0.0;
  double sum = 0.0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

enum class RunStatus { Converged, TimedOut };

struct Trajectory {
  std::vector<Sample> samples;
  std::optional<double> converged_at;
  std::optional<double> final_value;
  RunStatus status = RunStatus::TimedOut;
  ProtocolKind protocol = ProtocolKind::P2;
  double dt = 0.0;
  bool all_connected = false;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

inline double spread_of(std::span<const double> x) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *hi - *lo;
}

inline double sum_of(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

namespace detail {

inline constexpr int kMaxRefinement = 20;

class Stepper {
 public:
  Stepper(const ProtocolSpec& p, double agree_tol) : protocol_(p), agree_tol_(agree_tol) {}

  /// Advances x by h under topology t with classical RK4. The field is
  /// non-Lipschitz at agreement, so near it a full step can overshoot and
  /// settle into a sign-flipping cycle. A step is therefore accepted only if
  /// the spread does not grow and the protocol's Lyapunov function drops by at
  /// least a quarter of its first-order prediction h·∇V·u; otherwise it is
  /// replaced by two half steps, recursively.
  StateVector advance(const Topology& t, const StateVector& x, double h, int depth = 0) const {
    StateVector y = rk4(t, x, h);
    if (depth >= kMaxRefinement || !all_finite(y) || acceptable(t, x, y, h)) return y;
    StateVector mid = advance(t, x, 0.5 * h, depth + 1);
    if (spread_of(mid) <= agree_tol_) return mid;
    return advance(t, mid, 0.5 * h, depth + 1);
  }

 private:
  StateVector rk4(const Topology& t, const StateVector& x, double h) const {
    const std::size_t n = x.size();
    StateVector tmp(n);
    const auto k1 = evaluate_field(protocol_, t, x);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    const auto k2 = evaluate_field(protocol_, t, tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    const auto k3 = evaluate_field(protocol_, t, tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
    const auto k4 = evaluate_field(protocol_, t, tmp);
    StateVector y(n);
    for (std::size_t i = 0; i < n; ++i)
      y[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return y;
  }

  static bool all_finite(const StateVector& x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
  }

  double lyapunov(const Topology& t, const StateVector& x) const {
    return protocol_.kind() == ProtocolKind::P1 ? v1(t, x) : v2(x);
  }

  /// ∇V·u at x: the gradient is Lx for V1 and the disagreement vector for V2.
  double lyapunov_rate(const Topology& t, const StateVector& x) const {
    const auto u = evaluate_field(protocol_, t, x);
    const std::size_t n = x.size();
    double rate = 0.0;
    if (protocol_.kind() == ProtocolKind::P1) {
      for (std::size_t i = 0; i < n; ++i) {
        double g = 0.0;
        for (std::size_t j = 0; j < n; ++j) g += t.weight(i, j) * (x[i] - x[j]);
        rate += g * u[i];
      }
    } else {
      const double mean = sum_of(x) / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) rate += (x[i] - mean) * u[i];
    }
    return rate;
  }

  bool acceptable(const Topology& t, const StateVector& x, const StateVector& y, double h) const {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    if (spread_of(y) > spread_of(x) + 4.0 * eps * scale) return false;
    const double before = lyapunov(t, x);
    const double predicted = std::min(0.0, h * lyapunov_rate(t, x));
    return lyapunov(t, y) <= before + 0.25 * predicted + 16.0 * eps * before;
  }

  ProtocolSpec protocol_;
  double agree_tol_;
};

}  // namespace detail

/// Integrates dx/dt = u(x) on the fixed grid t_k = k·dt until the spread
/// falls to agree_tol (then snaps to the mean) or t_max passes.
inline Trajectory integrate(const Scenario& sc) {
  validate(sc);
  const std::size_t n = sc.x0.size();

  // Phase index per step, computed on integer step counts so switch instants
  // land exactly on grid points.
  std::vector<const Topology*> phase_topology;
  std::vector<long long> phase_steps;
  bool cyclic = true;
  if (sc.schedule) {
    cyclic = sc.schedule->cyclic;
    for (const auto& p : sc.schedule->phases) {
      phase_topology.push_back(&sc.topologies.at(p.topology_id));
      phase_steps.push_back(std::llround(p.dwell / sc.dt));
    }
  } else {
    phase_topology.push_back(&sc.topologies.begin()->second);
    phase_steps.push_back(1);
  }
  long long period_steps = 0;
  for (long long s : phase_steps) period_steps += s;

  long long max_steps = static_cast<long long>(std::ceil(sc.t_max / sc.dt - 1e-9));
  if (!cyclic) max_steps = std::min(max_steps, period_steps);

  auto topology_for_step = [&](long long k) -> const Topology& {
    long long pos = cyclic ? k % period_steps : std::min(k, period_steps - 1);
    for (std::size_t i = 0; i < phase_steps.size(); ++i) {
      if (pos < phase_steps[i]) return *phase_topology[i];
      pos -= phase_steps[i];
    }
    return *phase_topology.back();
  };

  Trajectory traj;
  traj.protocol = sc.protocol.kind();
  traj.dt = sc.dt;
  traj.all_connected = true;
  for (const auto* t : phase_topology) traj.all_connected = traj.all_connected && is_connected(*t);

  auto record = [&](long long k, const StateVector& x) {
    const Topology& t = topology_for_step(k);
    traj.samples.push_back({static_cast<double>(k) * sc.dt, x, v1(t, x), v2(x), spread_of(x),
                            sum_of(x)});
  };

  const detail::Stepper stepper(sc.protocol, sc.agree_tol);
  StateVector x = sc.x0;
  for (long long k = 0;; ++k) {
    if (spread_of(x) <= sc.agree_tol) {
      const double mean = sum_of(x) / static_cast<double>(n);
      std::fill(x.begin(), x.end(), mean);
      record(k, x);
      traj.status = RunStatus::Converged;
      traj.converged_at = static_cast<double>(k) * sc.dt;
      traj.final_value = mean;
      return traj;
    }
    const bool recorded = k % static_cast<long long>(sc.record_every) == 0;
    if (recorded) record(k, x);
    if (k >= max_steps) {
      if (!recorded) record(k, x);
      traj.status = RunStatus::TimedOut;
      return traj;
    }
    x = stepper.advance(topology_for_step(k), x, sc.dt);
    for (double v : x)
      if (!std::isfinite(v))
        throw Error(ErrorKind::NumericalBlowup,
                    "non-finite state at t=" + std::to_string(static_cast<double>(k + 1) * sc.dt));
  }
}

inline std::optional<double> observed_convergence_time(const Trajectory& traj) {
  return traj.converged_at;
}

struct EnvelopeCheck {
  bool pass = true;
  /// Largest value of V(t) − envelope(t) − slack over the samples; ≤ 0 on pass.
  double max_violation = -std::numeric_limits<double>::infinity();
};

/// The sampled Lyapunov series matching the trajectory's protocol
/// (V1 for protocol 1, V2 otherwise).
inline std::vector<double> lyapunov_series(const Trajectory& traj) {
  std::vector<double> v;
  v.reserve(traj.samples.size());
  for (const auto& s : traj.samples) v.push_back(traj.protocol == ProtocolKind::P1 ? s.v1 : s.v2);
  return v;
}

/// Largest increase between consecutive samples of the Lyapunov series.
inline double max_lyapunov_increase(const Trajectory& traj) {
  const auto v = lyapunov_series(traj);
  double worst = 0.0;
  for (std::size_t k = 1; k < v.size(); ++k) worst = std::max(worst, v[k] - v[k - 1]);
  return worst;
}

/// Checks V(t) ≤ envelope(v_0, K, α, t) + slack at every sample, with
/// slack = 1e-6·v_0 + 10·dt·|dV/dt| (finite-difference estimate).
inline EnvelopeCheck verify_envelope(const Trajectory& traj, double v_0, double k, double alpha) {
  if (!traj.all_connected)
    throw Error(ErrorKind::DisconnectedTopology, "envelope needs connected topologies");
  if (!(k > 0.0)) throw Error(ErrorKind::InvalidArgument, "K must be positive");
  const auto v = lyapunov_series(traj);
  EnvelopeCheck out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double rate = 0.0;
    if (i > 0)
      rate = std::max(rate, std::abs(v[i] - v[i - 1]) /
                                (traj.samples[i].t - traj.samples[i - 1].t));
    if (i + 1 < v.size())
      rate = std::max(rate, std::abs(v[i + 1] - v[i]) /
                                (traj.samples[i + 1].t - traj.samples[i].t));
    const double slack = 1e-6 * v_0 + 10.0 * traj.dt * rate;
    const double excess = v[i] - envelope(v_0, k, alpha, traj.samples[i].t) - slack;
    out.max_violation = std::max(out.max_violation, excess);
    if (excess > 0.0) out.pass = false;
  }
  return out;
}

/// max_k |Σx(t_k) − Σx(0)|; refuses protocol 1, which does not conserve the sum.
inline double conservation_drift(const Trajectory& traj) {
  if (traj.protocol == ProtocolKind::P1)
    throw Error(ErrorKind::ProtocolMismatch, "protocol 1 does not conserve the state sum");
  if (traj.samples.empty()) return 0.0;
  const double s0 = traj.samples.front().sum;
  double drift = 0.0;
  for (const auto& s : traj.samples) drift = std::max(drift, std::abs(s.sum - s0));
  return drift;
}

}  // namespace ftc

#endif  // FTC_SIMULATION_HPP

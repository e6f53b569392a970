#ifndef FTC_PROTOCOLS_HPP
#define FTC_PROTOCOLS_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "ftc/error.hpp"
#include "ftc/graph.hpp"

namespace ftc {

using StateVector = std::vector<double>;

enum class ProtocolKind { P1, P2, Linear };

inline const char* to_string(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::P1: return "p1";
    case ProtocolKind::P2: return "p2";
    case ProtocolKind::Linear: return "linear";
  }
  return "?";
}

/// Which agreement protocol drives the agents, and its exponent.
class ProtocolSpec {
 public:
  ProtocolSpec(ProtocolKind kind, double alpha) : kind_(kind), alpha_(alpha) {
    if (kind == ProtocolKind::Linear) {
      if (alpha != 1.0)
        throw Error(ErrorKind::AlphaOutOfRange, "linear protocol requires alpha = 1");
    } else if (!(alpha > 0.0 && alpha < 1.0)) {
      throw Error(ErrorKind::AlphaOutOfRange,
                  std::string(to_string(kind)) + " requires alpha in (0,1)");
    }
  }

  static ProtocolSpec linear() { return {ProtocolKind::Linear, 1.0}; }

  ProtocolKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }

  friend bool operator==(const ProtocolSpec&, const ProtocolSpec&) = default;

 private:
  ProtocolKind kind_;
  double alpha_;
};

namespace detail {

// Unchecked sig; computed on |r| and then signed so that sig(-r) == -sig(r) bitwise.
inline double sig_unchecked(double r, double alpha) {
  if (r == 0.0) return 0.0;
  const double mag = std::pow(std::abs(r), alpha);
  return r > 0.0 ? mag : -mag;
}

inline void check_dims(const Topology& t, std::span<const double> x) {
  if (t.size() != x.size())
    throw Error(ErrorKind::DimensionMismatch,
                "state has " + std::to_string(x.size()) + " entries, topology has " +
                    std::to_string(t.size()) + " vertices");
}

inline void check_alpha_open(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorKind::AlphaOutOfRange, "alpha must lie in (0,1)");
}

}  // namespace detail

/// sig(r, α) = sign(r)·|r|^α
inline double sig(double r, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw Error(ErrorKind::AlphaOutOfRange, "sig needs alpha in (0,1]");
  return detail::sig_unchecked(r, alpha);
}

/// u_i = sig(Σ_j a_ij (x_j − x_i), α)
inline StateVector protocol1_field(const Topology& t, std::span<const double> x, double alpha) {
  detail::check_dims(t, x);
  detail::check_alpha_open(alpha);
  const std::size_t n = x.size();
  StateVector u(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = t.weight(i, j);
      if (a > 0.0) s += a * (x[j] - x[i]);
    }
    u[i] = detail::sig_unchecked(s, alpha);
  }
  return u;
}

/// u_i = Σ_j a_ij·sig(x_j − x_i, α)
///
/// Each edge term is computed once and applied with opposite signs to both
/// endpoints, so the components sum to zero up to accumulation roundoff.
inline StateVector protocol2_field(const Topology& t, std::span<const double> x, double alpha) {
  detail::check_dims(t, x);
  detail::check_alpha_open(alpha);
  const std::size_t n = x.size();
  StateVector u(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = t.weight(i, j);
      if (a <= 0.0) continue;
      const double term = a * detail::sig_unchecked(x[j] - x[i], alpha);
      u[i] += term;
      u[j] -= term;
    }
  }
  return u;
}

/// u = −L(A)·x
inline StateVector linear_field(const Topology& t, std::span<const double> x) {
  detail::check_dims(t, x);
  const std::size_t n = x.size();
  StateVector u(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = t.weight(i, j);
      if (a > 0.0) s += a * (x[j] - x[i]);
    }
    u[i] = s;
  }
  return u;
}

inline StateVector evaluate_field(const ProtocolSpec& p, const Topology& t,
                                  std::span<const double> x) {
  switch (p.kind()) {
    case ProtocolKind::P1: return protocol1_field(t, x, p.alpha());
    case ProtocolKind::P2: return protocol2_field(t, x, p.alpha());
    case ProtocolKind::Linear: return linear_field(t, x);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown protocol");
}

/// ‖u(x)‖∞ ≤ tol. Only meaningful on a connected graph, where the
/// equilibrium set is exactly span(𝟏).
inline bool is_equilibrium(const Topology& t, std::span<const double> x, const ProtocolSpec& p,
                           double tol) {
  if (!is_connected(t))
    throw Error(ErrorKind::DisconnectedTopology,
                "equilibrium characterization requires a connected graph");
  const auto u = evaluate_field(p, t, x);
  double norm = 0.0;
  for (double v : u) norm = std::max(norm, std::abs(v));
  return norm <= tol;
}

}  // namespace ftc

#endif  // FTC_PROTOCOLS_HPP

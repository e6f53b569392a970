#ifndef FTC_BOUNDS_HPP
#define FTC_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "ftc/error.hpp"
#include "ftc/graph.hpp"

namespace ftc {

/// x = kappa·𝟏 + delta, with delta summing to zero.
struct DisagreementDecomposition {
  double kappa = 0.0;
  std::vector<double> delta;
};

struct BoundsReport {
  double v1_0 = 0.0;
  double v2_0 = 0.0;
  double lambda2_A = 0.0;
  double lambda2_B = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  std::optional<double> t3;
  double t1_limit_alpha0 = 0.0;
  double alpha = 0.0;
};

namespace detail {

inline void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorKind::AlphaOutOfRange, "alpha must lie in (0,1)");
}

inline void require_connected(double lambda2) {
  if (!(lambda2 > 0.0))
    throw Error(ErrorKind::DisconnectedTopology, "algebraic connectivity must be positive");
}

inline void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0)) throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be >= 0");
}

}  // namespace detail

/// m(n, p) = min{n^(1−p), 1}, the constant with Σ y_i^p ≥ m·(Σ y_i)^p for y ≥ 0.
inline double lemma1_constant(std::size_t n, double p) {
  if (n < 1 || !(p > 0.0))
    throw Error(ErrorKind::InvalidArgument, "lemma1_constant needs n >= 1 and p > 0");
  return std::min(std::pow(static_cast<double>(n), 1.0 - p), 1.0);
}

/// V1 = ¼ Σ_i Σ_j a_ij (x_j − x_i)²
inline double v1(const Topology& t, std::span<const double> x) {
  if (t.size() != x.size())
    throw Error(ErrorKind::DimensionMismatch, "state length differs from vertex count");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double d = x[j] - x[i];
      s += t.weight(i, j) * d * d;
    }
  return 0.25 * s;
}

inline DisagreementDecomposition disagreement(std::span<const double> x) {
  if (x.empty()) throw Error(ErrorKind::InvalidArgument, "empty state");
  DisagreementDecomposition d;
  double sum = 0.0;
  for (double v : x) sum += v;
  d.kappa = sum / static_cast<double>(x.size());
  d.delta.reserve(x.size());
  for (double v : x) d.delta.push_back(v - d.kappa);
  return d;
}

/// V2 = ½ Σ δ_i²
inline double v2(std::span<const double> x) {
  const auto d = disagreement(x);
  double s = 0.0;
  for (double v : d.delta) s += v * v;
  return 0.5 * s;
}

/// Upper bound on the protocol-1 agreement time:
/// (2V1(0))^((1−α)/2) / ((1−α)·λ2(L_A)^((1+α)/2)).
inline double t1_bound(double v1_0, double lambda2_A, double alpha) {
  detail::require_alpha(alpha);
  detail::require_connected(lambda2_A);
  detail::require_nonnegative(v1_0, "V1(0)");
  if (v1_0 == 0.0) return 0.0;
  return std::pow(2.0 * v1_0, (1.0 - alpha) / 2.0) /
         ((1.0 - alpha) * std::pow(lambda2_A, (1.0 + alpha) / 2.0));
}

/// α → 0⁺ limit of t1_bound: sqrt(2V1(0)/λ2(L_A)).
inline double t1_limit_alpha0(double v1_0, double lambda2_A) {
  detail::require_connected(lambda2_A);
  detail::require_nonnegative(v1_0, "V1(0)");
  return std::sqrt(2.0 * v1_0 / lambda2_A);
}

/// Upper bound on the protocol-2 average-agreement time:
/// 2^(1−α)·V2(0)^((1−α)/2) / ((1−α)·λ2(L_B)^((1+α)/2)).
inline double t2_bound(double v2_0, double lambda2_B, double alpha) {
  detail::require_alpha(alpha);
  detail::require_connected(lambda2_B);
  detail::require_nonnegative(v2_0, "V2(0)");
  if (v2_0 == 0.0) return 0.0;
  return std::pow(2.0, 1.0 - alpha) * std::pow(v2_0, (1.0 - alpha) / 2.0) /
         ((1.0 - alpha) * std::pow(lambda2_B, (1.0 + alpha) / 2.0));
}

/// Switching-topology bound; lambda_min is the smallest λ2 of the transformed
/// graphs over the schedule. Same closed form as t2_bound.
inline double t3_bound(double v2_0, double lambda_min, double alpha) {
  return t2_bound(v2_0, lambda_min, alpha);
}

/// Decay constant of V1 under protocol 1: K1 = (2λ2(L_A))^((1+α)/2).
inline double k1_constant(double lambda2_A, double alpha) {
  return std::pow(2.0 * lambda2_A, (1.0 + alpha) / 2.0);
}

/// Decay constant of V2 under protocol 2: K2 = 2^α·λ2(L_B)^((1+α)/2).
inline double k2_constant(double lambda2_B, double alpha) {
  return std::pow(2.0, alpha) * std::pow(lambda2_B, (1.0 + alpha) / 2.0);
}

/// (max(0, v_0^((1−α)/2) − K(1−α)/2·t))^(2/(1−α)), the solution of the
/// comparison equation dV/dt = −K·V^((1+α)/2), clamped at zero after it lands.
inline double envelope(double v_0, double k, double alpha, double t) {
  const double e = (1.0 - alpha) / 2.0;
  const double base = std::max(0.0, std::pow(v_0, e) - k * e * t);
  if (t == 0.0) return v_0;
  return std::pow(base, 1.0 / e);
}

/// Time at which envelope() reaches zero.
inline double envelope_zero_time(double v_0, double k, double alpha) {
  return 2.0 * std::pow(v_0, (1.0 - alpha) / 2.0) / (k * (1.0 - alpha));
}

}  // namespace ftc

#endif  // FTC_BOUNDS_HPP

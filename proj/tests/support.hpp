#ifndef FTC_TESTS_SUPPORT_HPP
#define FTC_TESTS_SUPPORT_HPP

// Shared generators and independent oracles for the test suites. Nothing in
// here calls into the code paths it is used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "ftc/graph.hpp"

namespace ftc::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Erdős–Rényi graph with random positive weights.
inline Topology random_graph(Rng& rng, std::size_t n, double edge_prob = 0.5, double w_lo = 0.5,
                             double w_hi = 2.5) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (uniform(rng, 0.0, 1.0) < edge_prob) edges.push_back({i, j, uniform(rng, w_lo, w_hi)});
  return Topology(n, edges);
}

/// Union-find connectivity, independent of the library's BFS.
inline bool connected_by_union_find(const Topology& t) {
  std::vector<std::size_t> parent(t.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = t.size();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t.weight(i, j) > 0.0) {
        const auto a = find(i), b = find(j);
        if (a != b) {
          parent[a] = b;
          --components;
        }
      }
  return components == 1;
}

inline Topology random_connected_graph(Rng& rng, std::size_t n, double edge_prob = 0.5) {
  while (true) {
    Topology t = random_graph(rng, n, edge_prob);
    if (connected_by_union_find(t)) return t;
  }
}

inline std::vector<double> random_state(Rng& rng, std::size_t n, double lo = -10.0,
                                        double hi = 10.0) {
  std::vector<double> x(n);
  for (auto& v : x) v = uniform(rng, lo, hi);
  return x;
}

/// ½ Σ_i Σ_j a_ij (x_j − x_i)², the double-sum form of xᵀLx.
inline double quadratic_double_sum(const Topology& t, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) s += t.weight(i, j) * (x[j] - x[i]) * (x[j] - x[i]);
  return 0.5 * s;
}

inline Topology unit_path(std::size_t n, double w = 1.0) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, w});
  return Topology(n, e);
}

inline Topology unit_cycle(std::size_t n, double w = 1.0) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, w});
  return Topology(n, e);
}

inline Topology complete_graph(std::size_t n, double w = 1.0) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.push_back({i, j, w});
  return Topology(n, e);
}

inline Topology two_triangles() {
  return Topology(6, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}});
}

/// Closed-form λ2 of unit-weight path, cycle and complete graphs.
inline double path_lambda2(std::size_t n) {
  return 2.0 * (1.0 - std::cos(std::numbers::pi / static_cast<double>(n)));
}
inline double cycle_lambda2(std::size_t n) {
  return 2.0 * (1.0 - std::cos(2.0 * std::numbers::pi / static_cast<double>(n)));
}

/// Eigenvalues of a symmetric 3×3 matrix as the roots of its characteristic
/// polynomial (trigonometric form of the cubic solution), ascending.
inline std::array<double, 3> cubic_eigenvalues(const std::array<std::array<double, 3>, 3>& m) {
  const double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
  const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
  const double p2 = (m[0][0] - q) * (m[0][0] - q) + (m[1][1] - q) * (m[1][1] - q) +
                    (m[2][2] - q) * (m[2][2] - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  std::array<double, 3> out{q, q, q};
  if (p == 0.0) return out;
  std::array<std::array<double, 3>, 3> b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = (m[i][j] - (i == j ? q : 0.0)) / p;
  const double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                     b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                     b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  const double r = std::clamp(det / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  out = {e1, e2, e3};
  std::sort(out.begin(), out.end());
  return out;
}

/// Two agents on one edge: the gap obeys d' = −rate·d^α (rate = 2a for
/// protocol 2, 2a^α for protocol 1), so d(t)^(1−α) = d0^(1−α) − rate(1−α)t
/// and the gap closes at d0^(1−α)/(rate(1−α)).
inline double two_agent_hitting_time(double d0, double rate, double alpha) {
  return std::pow(d0, 1.0 - alpha) / (rate * (1.0 - alpha));
}

/// Time at which the closed-form gap first falls to `gap` (> 0).
inline double two_agent_time_to_gap(double d0, double rate, double alpha, double gap) {
  return (std::pow(d0, 1.0 - alpha) - std::pow(gap, 1.0 - alpha)) / (rate * (1.0 - alpha));
}

inline double two_agent_gap(double d0, double rate, double alpha, double t) {
  const double base = std::pow(d0, 1.0 - alpha) - rate * (1.0 - alpha) * t;
  return base <= 0.0 ? 0.0 : std::pow(base, 1.0 / (1.0 - alpha));
}

}  // namespace ftc::testing

#endif  // FTC_TESTS_SUPPORT_HPP

#ifndef FTC_GRAPH_HPP
#define FTC_GRAPH_HPP

#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "ftc/error.hpp"
#include "ftc/matrix.hpp"

namespace ftc {

struct Edge {
  std::size_t i;
  std::size_t j;
  double weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted undirected interaction graph G(A).
///
/// Invariants (checked at construction, immutable afterwards): the weight
/// matrix is symmetric, has a zero diagonal and nonnegative entries. Agent j
/// is a neighbor of agent i iff weight(i, j) > 0.
class Topology {
 public:
  Topology(std::size_t n, const std::vector<Edge>& edges) : weights_(n) {
    std::vector<bool> present(n * n, false);
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "topology needs at least one vertex");
    for (const auto& e : edges) {
      if (e.i >= n || e.j >= n)
        throw Error(ErrorKind::IndexOutOfRange,
                    "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                        ") outside 0.." + std::to_string(n - 1));
      if (e.i == e.j)
        throw Error(ErrorKind::SelfLoop, "self loop at vertex " + std::to_string(e.i));
      if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
        throw Error(ErrorKind::NegativeWeight, "edge weight must be finite and >= 0");
      if (present[e.i * n + e.j])
        throw Error(ErrorKind::DuplicateEdge,
                    "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") given twice");
      present[e.i * n + e.j] = present[e.j * n + e.i] = true;
      weights_(e.i, e.j) = e.weight;
      weights_(e.j, e.i) = e.weight;
      listed_.push_back(e);
    }
  }

  std::size_t size() const noexcept { return weights_.size(); }
  double weight(std::size_t i, std::size_t j) const { return weights_(i, j); }
  const SquareMatrix& weights() const noexcept { return weights_; }

  /// Edges exactly as given at construction (including zero-weight ones).
  const std::vector<Edge>& edges() const noexcept { return listed_; }

  std::vector<std::size_t> neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < size(); ++j)
      if (weights_(i, j) > 0.0) out.push_back(j);
    return out;
  }

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.weights_ == b.weights_;
  }

 private:
  SquareMatrix weights_;
  std::vector<Edge> listed_;
};

/// Breadth-first search from vertex 0 over positive-weight edges.
inline bool is_connected(const Topology& t) {
  const std::size_t n = t.size();
  std::vector<bool> visited(n, false);
  std::queue<std::size_t> frontier;
  visited[0] = true;
  frontier.push(0);
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t i = frontier.front();
    frontier.pop();
    for (std::size_t j = 0; j < n; ++j) {
      if (!visited[j] && t.weight(i, j) > 0.0) {
        visited[j] = true;
        ++reached;
        frontier.push(j);
      }
    }
  }
  return reached == n;
}

/// Graph Laplacian: l_ii = Σ_{k≠i} a_ik, l_ij = −a_ij.
inline SquareMatrix laplacian(const Topology& t) {
  const std::size_t n = t.size();
  SquareMatrix l(n);
  for (std::size_t i = 0; i < n; ++i) {
    double degree = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      l(i, j) = -t.weight(i, j);
      degree += t.weight(i, j);
    }
    l(i, i) = degree;
  }
  return l;
}

/// B-matrix of the average-agreement bound: b_ij = a_ij^(2/(1+α)).
inline Topology exponent_transform(const Topology& t, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorKind::AlphaOutOfRange, "exponent transform needs alpha in (0,1)");
  const double p = 2.0 / (1.0 + alpha);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t.weight(i, j) > 0.0) edges.push_back({i, j, std::pow(t.weight(i, j), p)});
  return Topology(t.size(), edges);
}

}  // namespace ftc

#endif  // FTC_GRAPH_HPP

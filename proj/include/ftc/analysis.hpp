#ifndef FTC_ANALYSIS_HPP
#define FTC_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ftc/bounds.hpp"
#include "ftc/error.hpp"
#include "ftc/graph.hpp"
#include "ftc/simulation.hpp"
#include "ftc/spectral.hpp"

namespace ftc {

/// Smallest λ2 over the exponent-transformed graphs of a scenario's schedule.
inline double min_transformed_connectivity(const Scenario& sc, double alpha) {
  double lambda = std::numeric_limits<double>::infinity();
  for (const auto& id : scheduled_topology_ids(sc))
    lambda = std::min(lambda, algebraic_connectivity(exponent_transform(sc.topologies.at(id), alpha)));
  return lambda;
}

/// Composes spectral and bound computations for a scenario. Fixed topology:
/// the single graph; schedules: t1/t2 use the first scheduled graph and t3
/// uses the minimum transformed connectivity over all of them.
inline BoundsReport bounds_command(const Scenario& sc) {
  validate(sc);
  if (sc.protocol.kind() == ProtocolKind::Linear)
    throw Error(ErrorKind::InvalidArgument, "finite-time bounds need alpha in (0,1)");
  const double alpha = sc.protocol.alpha();
  const auto ids = scheduled_topology_ids(sc);
  for (const auto& id : ids)
    if (!is_connected(sc.topologies.at(id)))
      throw Error(ErrorKind::DisconnectedTopology, "topology '" + id + "' is not connected");

  const Topology& first = sc.topologies.at(ids.front());
  BoundsReport r;
  r.alpha = alpha;
  r.v1_0 = v1(first, sc.x0);
  r.v2_0 = v2(sc.x0);
  r.lambda2_A = algebraic_connectivity(first);
  r.lambda2_B = algebraic_connectivity(exponent_transform(first, alpha));
  r.t1 = t1_bound(r.v1_0, r.lambda2_A, alpha);
  r.t2 = t2_bound(r.v2_0, r.lambda2_B, alpha);
  r.t1_limit_alpha0 = t1_limit_alpha0(r.v1_0, r.lambda2_A);
  r.t3 = ids.size() == 1 ? r.t2 : t3_bound(r.v2_0, min_transformed_connectivity(sc, alpha), alpha);
  return r;
}

struct GraphCandidate {
  std::uint64_t edge_mask = 0;  // bit k set ⟺ k-th pair (i<j, row-major) present
  Topology topology;
  double v1 = 0.0;
  double lambda2_B = 0.0;
};

struct ReconstructionQuery {
  std::vector<double> x0;
  double v1_target = 0.0;
  double lambda2B_target = 0.0;
  double alpha = 0.5;
  double edge_weight = 2.0;
  double v1_tol = 1e-9;
  double lambda_tol = 5e-4;
};

inline constexpr std::size_t kMaxReconstructionVertices = 8;

/// Unordered vertex pairs (i<j) in row-major order; index k is bit k of an edge mask.
inline std::vector<std::pair<std::size_t, std::size_t>> vertex_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

inline Topology topology_from_mask(std::size_t n, std::uint64_t mask, double weight) {
  const auto pairs = vertex_pairs(n);
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (mask >> k & 1U) edges.push_back({pairs[k].first, pairs[k].second, weight});
  return Topology(n, edges);
}

/// Exhaustive search over every uniform-weight graph on len(x0) vertices for
/// connected graphs whose V1(x0) and transformed algebraic connectivity hit
/// the targets. Candidates come back in increasing edge-mask order.
inline std::vector<GraphCandidate> reconstruct_paper_graph(const ReconstructionQuery& q) {
  const std::size_t n = q.x0.size();
  if (n > kMaxReconstructionVertices)
    throw Error(ErrorKind::SearchSpaceTooLarge,
                "graph search is limited to " + std::to_string(kMaxReconstructionVertices) +
                    " vertices");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty initial state");
  const auto pairs = vertex_pairs(n);
  // V1 = ½ Σ_{i<j} a_ij (x_j − x_i)², so each pair contributes independently.
  std::vector<double> contribution;
  for (const auto& [i, j] : pairs) {
    const double d = q.x0[j] - q.x0[i];
    contribution.push_back(0.5 * q.edge_weight * d * d);
  }

  std::vector<GraphCandidate> out;
  const std::uint64_t count = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double value = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (mask >> k & 1U) value += contribution[k];
    if (std::abs(value - q.v1_target) > q.v1_tol) continue;
    Topology t = topology_from_mask(n, mask, q.edge_weight);
    if (!is_connected(t)) continue;
    const double lambda = algebraic_connectivity(exponent_transform(t, q.alpha));
    if (std::abs(lambda - q.lambda2B_target) > q.lambda_tol) continue;
    const double exact_v1 = v1(t, q.x0);
    out.push_back({mask, std::move(t), exact_v1, lambda});
  }
  return out;
}

}  // namespace ftc

#endif  // FTC_ANALYSIS_HPP

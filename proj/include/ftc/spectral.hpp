#ifndef FTC_SPECTRAL_HPP
#define FTC_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "ftc/error.hpp"
#include "ftc/graph.hpp"
#include "ftc/matrix.hpp"

namespace ftc {

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  double residual = 0.0;            // max_k |M v_k − λ_k v_k|∞
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;          // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with eigenvalues[k]
  double residual = 0.0;
};

inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic Jacobi rotation method for a real symmetric matrix.
///
/// Sweeps over all (p,q) pairs in row order, annihilating each off-diagonal
/// entry with a plane rotation, until the off-diagonal Frobenius norm drops
/// below 1e-12 of the matrix's initial Frobenius norm. Rotations are
/// accumulated so the residual of every eigenpair can be reported.
inline EigenDecomposition symmetric_eigen(const SquareMatrix& m) {
  if (!m.is_symmetric(1e-12))
    throw Error(ErrorKind::NotSymmetric, "eigensolver input is not symmetric");
  const std::size_t n = m.size();
  SquareMatrix a = m;
  SquareMatrix v(n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) total += m(i, j) * m(i, j);
  const double threshold = 1e-12 * std::sqrt(total);

  int sweep = 0;
  while (off_norm() > threshold) {
    if (++sweep > kJacobiMaxSweeps)
      throw Error(ErrorKind::NoConvergence, "Jacobi sweeps exhausted");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle from the stable formula t = sgn(θ)/(|θ| + sqrt(θ²+1)).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  EigenDecomposition out;
  for (std::size_t idx : order) {
    const double lambda = a(idx, idx);
    std::vector<double> vec(n);
    for (std::size_t k = 0; k < n; ++k) vec[k] = v(k, idx);
    const auto mv = m.multiply(vec);
    for (std::size_t k = 0; k < n; ++k)
      out.residual = std::max(out.residual, std::abs(mv[k] - lambda * vec[k]));
    out.eigenvalues.push_back(lambda);
    out.vectors.push_back(std::move(vec));
  }
  return out;
}

inline SpectrumResult eigenvalues_symmetric(const SquareMatrix& m) {
  auto d = symmetric_eigen(m);
  return {std::move(d.eigenvalues), d.residual};
}

/// λ2 of the graph Laplacian; 0 for a single vertex.
inline double algebraic_connectivity(const Topology& t) {
  if (t.size() < 2) return 0.0;
  return eigenvalues_symmetric(laplacian(t)).eigenvalues[1];
}

/// Unit eigenvector of the Laplacian paired with λ2.
inline std::vector<double> fiedler_vector(const Topology& t) {
  if (t.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "Fiedler vector needs at least two vertices");
  return symmetric_eigen(laplacian(t)).vectors[1];
}

/// Checks xᵀLx ≥ λ2·xᵀx for a zero-sum x.
inline bool rayleigh_bound_check(const Topology& t, std::span<const double> x) {
  if (x.size() != t.size())
    throw Error(ErrorKind::DimensionMismatch, "state length differs from vertex count");
  double sum = 0.0;
  double abs_sum = 0.0;
  double norm2 = 0.0;
  for (double v : x) {
    sum += v;
    abs_sum += std::abs(v);
    norm2 += v * v;
  }
  if (norm2 == 0.0) throw Error(ErrorKind::InvalidArgument, "x must be nonzero");
  if (std::abs(sum) > 1e-9 * abs_sum)
    throw Error(ErrorKind::NotZeroSum, "x must be orthogonal to the ones vector");
  const auto l = laplacian(t);
  const double lambda2 = algebraic_connectivity(t);
  const double scale = std::max(1.0, l.max_abs()) * norm2;
  return l.quadratic_form(x) >= lambda2 * norm2 - 1e-9 * scale;
}

}  // namespace ftc

#endif  // FTC_SPECTRAL_HPP

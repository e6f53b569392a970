#ifndef FTC_MATRIX_HPP
#define FTC_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "ftc/error.hpp"

namespace ftc {

/// Dense row-major square matrix. Sizes here are small (a few hundred at most).
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  SquareMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : n_(rows.size()), data_(rows.size() * rows.size(), 0.0) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != n_)
        throw Error(ErrorKind::DimensionMismatch, "matrix rows must be square");
      std::copy(row.begin(), row.end(), data_.begin() + i * n_);
      ++i;
    }
  }

  std::size_t size() const noexcept { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Infinity norm (max absolute row sum).
  double norm_inf() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (double v : row(i)) s += std::abs(v);
      m = std::max(m, s);
    }
    return m;
  }

  double trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
  }

  bool is_symmetric(double rel_tol) const {
    const double scale = std::max(max_abs(), 1e-300);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (std::abs((*this)(i, j) - (*this)(j, i)) > rel_tol * scale) return false;
    return true;
  }

  std::vector<double> multiply(std::span<const double> x) const {
    if (x.size() != n_)
      throw Error(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += data_[i * n_ + j] * x[j];
      y[i] = s;
    }
    return y;
  }

  /// xᵀ M x
  double quadratic_form(std::span<const double> x) const {
    const auto mx = multiply(x);
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += x[i] * mx[i];
    return s;
  }

  friend SquareMatrix operator*(double c, SquareMatrix m) {
    for (double& v : m.data_) v *= c;
    return m;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace ftc

#endif  // FTC_MATRIX_HPP

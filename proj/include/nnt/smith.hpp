#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace nnt {

using Integer = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& values);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// U * B * V = diag(d) with U, V unimodular and d_1 | d_2 | ... | d_k,
/// k = min(rows, cols). Invariants are nonnegative; trailing zeros mark rank
/// deficiency.
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix v;
  std::vector<Integer> d;
};

/// Pivot-by-smallest-nonzero elimination with fixed tie-breaking (smallest
/// row, then column), so the output is a deterministic function of the input.
/// Runs in 64-bit arithmetic and restarts over arbitrary precision when an
/// intermediate would overflow.
SmithDecomposition smith_normal_form(const IntMatrix& b);

/// Number of times the 64-bit path overflowed and was rerun; for tests.
std::size_t smith_overflow_restarts() noexcept;

}  // namespace nnt

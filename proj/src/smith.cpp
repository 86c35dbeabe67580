#include "nnt/smith.hpp"

#include <atomic>
#include <limits>
#include <utility>

#include "nnt/error.hpp"

namespace nnt {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& values)
    : rows_(rows), cols_(cols), data_(values.begin(), values.end()) {
  if (values.size() != rows * cols) throw DimensionError("matrix data size mismatch");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

namespace {

std::atomic<std::size_t> overflow_restarts{0};

struct Overflow {};

// Arithmetic kernels. The int64 versions throw Overflow instead of wrapping.
void sub_mul(std::int64_t& a, std::int64_t q, std::int64_t b) {
  std::int64_t p;
  if (__builtin_mul_overflow(q, b, &p) || __builtin_sub_overflow(a, p, &a)) throw Overflow{};
}
void sub_mul(Integer& a, const Integer& q, const Integer& b) { a -= q * b; }

void add_to(std::int64_t& a, std::int64_t b) {
  if (__builtin_add_overflow(a, b, &a)) throw Overflow{};
}
void add_to(Integer& a, const Integer& b) { a += b; }

void negate(std::int64_t& a) {
  if (a == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
  a = -a;
}
void negate(Integer& a) { a = -a; }

std::int64_t magnitude(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
  return a < 0 ? -a : a;
}
Integer magnitude(const Integer& a) { return a < 0 ? Integer(-a) : a; }

template <class T>
struct Dense {
  std::size_t rows, cols;
  std::vector<T> data;
  T& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
};

template <class T>
Dense<T> identity_dense(std::size_t n) {
  Dense<T> m{n, n, std::vector<T>(n * n, T(0))};
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = T(1);
  return m;
}

template <class T>
void swap_rows(Dense<T>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
}

template <class T>
void swap_cols(Dense<T>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
}

// row_target -= q * row_source
template <class T>
void row_sub(Dense<T>& m, std::size_t target, std::size_t source, const T& q) {
  for (std::size_t j = 0; j < m.cols; ++j) sub_mul(m.at(target, j), q, m.at(source, j));
}

template <class T>
void col_sub(Dense<T>& m, std::size_t target, std::size_t source, const T& q) {
  for (std::size_t i = 0; i < m.rows; ++i) sub_mul(m.at(i, target), q, m.at(i, source));
}

template <class T>
struct Result {
  Dense<T> u, v;
  std::vector<T> d;
};

template <class T>
Result<T> smith_impl(Dense<T> s) {
  const std::size_t rows = s.rows, cols = s.cols;
  Dense<T> u = identity_dense<T>(rows);
  Dense<T> v = identity_dense<T>(cols);
  const std::size_t k = std::min(rows, cols);

  for (std::size_t p = 0; p < k; ++p) {
    for (;;) {
      // Smallest nonzero magnitude in the trailing block; first in row-major order.
      bool found = false;
      std::size_t pr = p, pc = p;
      T best{};
      for (std::size_t i = p; i < rows; ++i) {
        for (std::size_t j = p; j < cols; ++j) {
          if (s.at(i, j) == 0) continue;
          T mag = magnitude(s.at(i, j));
          if (!found || mag < best) {
            found = true;
            best = mag;
            pr = i;
            pc = j;
          }
        }
      }
      if (!found) break;  // trailing block is zero
      swap_rows(s, p, pr);
      swap_rows(u, p, pr);
      swap_cols(s, p, pc);
      swap_cols(v, p, pc);

      bool clean = true;
      for (std::size_t i = p + 1; i < rows; ++i) {
        if (s.at(i, p) == 0) continue;
        const T q = s.at(i, p) / s.at(p, p);
        row_sub(s, i, p, q);
        row_sub(u, i, p, q);
        if (s.at(i, p) != 0) clean = false;
      }
      for (std::size_t j = p + 1; j < cols; ++j) {
        if (s.at(p, j) == 0) continue;
        const T q = s.at(p, j) / s.at(p, p);
        col_sub(s, j, p, q);
        col_sub(v, j, p, q);
        if (s.at(p, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce d_p | every trailing entry: fold an offending row into row p.
      bool divides = true;
      for (std::size_t i = p + 1; i < rows && divides; ++i) {
        for (std::size_t j = p + 1; j < cols; ++j) {
          if (s.at(i, j) % s.at(p, p) != 0) {
            for (std::size_t c = 0; c < cols; ++c) add_to(s.at(p, c), s.at(i, c));
            for (std::size_t c = 0; c < rows; ++c) add_to(u.at(p, c), u.at(i, c));
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (s.at(p, p) < 0) {
      for (std::size_t c = 0; c < cols; ++c) negate(s.at(p, c));
      for (std::size_t c = 0; c < rows; ++c) negate(u.at(p, c));
    }
  }

  Result<T> r{std::move(u), std::move(v), {}};
  r.d.reserve(k);
  for (std::size_t p = 0; p < k; ++p) r.d.push_back(s.at(p, p));
  return r;
}

template <class T>
IntMatrix to_int_matrix(const Dense<T>& m) {
  IntMatrix out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) out(i, j) = Integer(m.data[i * m.cols + j]);
  }
  return out;
}

template <class T>
SmithDecomposition package(const Result<T>& r) {
  SmithDecomposition out{to_int_matrix(r.u), to_int_matrix(r.v), {}};
  for (const auto& x : r.d) out.d.emplace_back(x);
  return out;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& b) {
  constexpr auto lo = std::numeric_limits<std::int64_t>::min();
  constexpr auto hi = std::numeric_limits<std::int64_t>::max();
  bool fits = true;
  Dense<std::int64_t> narrow{b.rows(), b.cols(), std::vector<std::int64_t>(b.rows() * b.cols())};
  for (std::size_t i = 0; i < b.rows() && fits; ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (b(i, j) < lo || b(i, j) > hi) {
        fits = false;
        break;
      }
      narrow.at(i, j) = static_cast<std::int64_t>(b(i, j));
    }
  }
  if (fits) {
    try {
      return package(smith_impl(std::move(narrow)));
    } catch (const Overflow&) {
      ++overflow_restarts;
    }
  }
  Dense<Integer> wide{b.rows(), b.cols(), std::vector<Integer>(b.rows() * b.cols())};
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) wide.at(i, j) = b(i, j);
  }
  return package(smith_impl(std::move(wide)));
}

std::size_t smith_overflow_restarts() noexcept { return overflow_restarts.load(); }

}  // namespace nnt

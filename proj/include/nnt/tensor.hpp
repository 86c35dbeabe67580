#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nnt {

using Index = std::uint32_t;
using Complex = std::complex<double>;
using DenseVector = std::vector<Complex>;
using RealVector = std::vector<double>;

/// One coordinate entry, 0-based indices.
struct Entry {
  std::vector<Index> index;
  double value = 0.0;
};

/// Nonnegative tensor of order m and dimension n in coordinate form.
///
/// Tuples are stored sorted lexicographically in one flat index array; every
/// stored value is strictly positive. Instances are immutable once built.
class SparseTensor {
 public:
  /// Zero tensor.
  SparseTensor(std::size_t order, std::size_t dim);

  /// Builds a tensor from coordinate entries. Zero values are dropped;
  /// negative or non-finite values, out-of-range indices, wrong arity and
  /// duplicate tuples throw InvalidArgument.
  static SparseTensor from_entries(std::size_t order, std::size_t dim, std::vector<Entry> entries);

  std::size_t order() const noexcept { return order_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  bool is_zero() const noexcept { return values_.empty(); }

  std::span<const Index> index(std::size_t k) const {
    return {indices_.data() + k * order_, order_};
  }
  double value(std::size_t k) const { return values_[k]; }
  std::span<const double> values() const noexcept { return values_; }

  /// Value at a tuple, zero when absent.
  double at(std::span<const Index> tuple) const;
  bool contains(std::span<const Index> tuple) const;

  /// Same support with every value replaced by `f(value, k)`; f must stay positive.
  template <class F>
  SparseTensor map_values(F&& f) const {
    SparseTensor out = *this;
    for (std::size_t k = 0; k < out.values_.size(); ++k) out.values_[k] = f(values_[k], k);
    out.check_values();
    return out;
  }

  friend bool operator==(const SparseTensor&, const SparseTensor&) = default;

 private:
  void check_values() const;

  std::size_t order_;
  std::size_t dim_;
  std::vector<Index> indices_;
  std::vector<double> values_;
};

/// Complex-valued coordinate tensor. Arises only from diagonal products.
struct ComplexTensor {
  std::size_t order = 0;
  std::size_t dim = 0;
  std::vector<Index> indices;
  std::vector<Complex> values;

  std::size_t nnz() const noexcept { return values.size(); }
  std::span<const Index> index(std::size_t k) const {
    return {indices.data() + k * order, order};
  }
};

ComplexTensor to_complex(const SparseTensor& a);

/// The zero-nonzero pattern of a tensor: its sorted tuple set.
class Support {
 public:
  explicit Support(const SparseTensor& a);

  std::size_t order() const noexcept { return order_; }
  std::size_t size() const noexcept { return order_ == 0 ? 0 : flat_.size() / order_; }
  std::span<const Index> tuple(std::size_t k) const { return {flat_.data() + k * order_, order_}; }
  bool contains(std::span<const Index> tuple) const;

  friend bool operator==(const Support&, const Support&) = default;

 private:
  std::size_t order_;
  std::vector<Index> flat_;
};

/// Row-major n-by-n real matrix.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

/// (A x^{m-1})_i = sum over tuples (i, i2, ..., im) of a * x_{i2} ... x_{im}.
/// Summation runs in stored tuple order, so results do not depend on scheduling.
template <class T>
std::vector<T> apply(const SparseTensor& a, std::span<const T> x);

inline RealVector apply(const SparseTensor& a, const RealVector& x) {
  return apply<double>(a, std::span<const double>(x));
}
inline DenseVector apply(const SparseTensor& a, const DenseVector& x) {
  return apply<Complex>(a, std::span<const Complex>(x));
}

/// A + c * I.
SparseTensor add_identity(const SparseTensor& a, double c = 1.0);

SparseTensor identity_tensor(std::size_t order, std::size_t dim);

/// (P A Q)_{i1..im} = p_{i1} a_{i1..im} q_{i2} ... q_{im}. Entries that become
/// exactly zero are dropped.
ComplexTensor diagonal_product(std::span<const Complex> p, const ComplexTensor& a,
                               std::span<const Complex> q);

Support support(const SparseTensor& a);
bool is_symmetric(const SparseTensor& a);
bool is_combinatorially_symmetric(const SparseTensor& a);

/// M(A)_{ij} = a_{ij...j}.
DenseMatrix majorization(const SparseTensor& a);

/// Keeps the entries whose trailing indices are all equal.
SparseTensor induced(const SparseTensor& a);

struct Subtensor {
  SparseTensor tensor;
  /// parent[k] is the index in the original tensor of local index k.
  std::vector<Index> parent;
};

/// Principal subtensor A[alpha], reindexed by increasing parent index.
Subtensor subtensor(const SparseTensor& a, std::span<const Index> alpha);

// Text format: first non-comment line "m n nnz", then nnz lines
// "i1 ... im value" with 1-based indices. '#' starts a comment.
SparseTensor load_tensor(std::istream& in);
SparseTensor parse_tensor(std::string_view text);
SparseTensor load_tensor_file(const std::string& path);

/// Canonical rendering: sorted tuples, values with 17 significant digits.
void store_tensor(std::ostream& out, const SparseTensor& a);
std::string format_tensor(const SparseTensor& a);

/// Value rendering shared by the tensor writer and reports.
std::string format_double(double v);

}  // namespace nnt

#include "nnt/phase_group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

#include "nnt/error.hpp"

namespace nnt {

namespace {

std::uint64_t reduce(const Integer& x, Modulus m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t checked_u64(const Integer& x, const char* what) {
  if (x < 0 || x > Integer(std::numeric_limits<std::uint64_t>::max() / 2)) {
    throw BudgetExceeded(std::string(what) + " does not fit in 63 bits");
  }
  return static_cast<std::uint64_t>(x);
}

Integer upow(std::uint64_t base, std::size_t exponent) {
  Integer r = 1;
  for (std::size_t k = 0; k < exponent; ++k) r *= base;
  return r;
}

// Inverse of a modulo m, gcd(a, m) = 1.
Integer mod_inverse(Integer a, const Integer& m) {
  Integer old_r = a % m, r = m, old_s = 1, s = 0;
  if (old_r < 0) old_r += m;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  Integer inv = old_s % m;
  if (inv < 0) inv += m;
  return inv;
}

// Coefficient rows in sorted, duplicate-free order.
std::set<std::vector<std::int64_t>> coefficient_rows(const SparseTensor& a) {
  std::set<std::vector<std::int64_t>> rows;
  const auto degree = static_cast<std::int64_t>(a.order() - 1);
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    auto idx = a.index(k);
    std::vector<std::int64_t> row(a.dim(), 0);
    row[idx[0]] += degree;
    for (std::size_t p = 1; p < idx.size(); ++p) row[idx[p]] -= 1;
    rows.insert(std::move(row));
  }
  return rows;
}

// The system's matrix with the normalization row t_1 = 0 appended.
IntMatrix normalized_matrix(const CongruenceSystem& sys) {
  IntMatrix c(sys.rows() + 1, sys.columns);
  for (std::size_t r = 0; r < sys.rows(); ++r) {
    auto row = sys.row(r);
    for (std::size_t j = 0; j < sys.columns; ++j) c(r, j) = row[j];
  }
  c(sys.rows(), 0) = 1;
  return c;
}

std::optional<TorusGroup> torus_from(const IntMatrix& c) {
  if (c.rows() < c.cols()) return std::nullopt;
  const auto snf = smith_normal_form(c);
  TorusGroup g{1, 1};
  for (const auto& d : snf.d) {
    if (d == 0) return std::nullopt;
    g.order *= d;
  }
  if (!snf.d.empty()) g.exponent = snf.d.back();
  return g;
}

std::vector<std::uint64_t> divisors_descending(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = m; d >= 1; --d) {
    if (m % d == 0) out.push_back(d);
  }
  return out;
}

struct ResolvedModulus {
  ModulusPolicy policy;
  Modulus modulus;
  bool extended = false;
  std::uint64_t exponent = 0;
};

ResolvedModulus resolve_modulus(const SparseTensor& a, const StructureProfile& profile) {
  auto [policy, modulus] = modulus_policy(a, profile);
  ResolvedModulus r{policy, modulus};
  if (policy == ModulusPolicy::kSymmetricIrreducible) return r;
  const auto torus = stabilizer_torus(a);
  if (!torus) throw std::logic_error("stabilizer group of a weakly irreducible tensor is infinite");
  r.exponent = checked_u64(torus->exponent, "group exponent");
  if (modulus % r.exponent != 0) {
    if (policy != ModulusPolicy::kWeaklyIrreducible) {
      throw std::logic_error("structural modulus does not contain the stabilizer group");
    }
    r.modulus = std::lcm(modulus, r.exponent);
    r.extended = true;
  }
  return r;
}

PhaseDiagonal add_mod(const PhaseDiagonal& x, const PhaseDiagonal& y) {
  std::vector<std::uint64_t> t(x.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = (x.t()[k] + y.t()[k]) % x.modulus();
  return PhaseDiagonal(x.modulus(), std::move(t));
}

// Lexicographically smallest element of rep + group, when the group is small.
PhaseDiagonal canonical_representative(const SparseTensor& a, const PhaseDiagonal& rep,
                                       std::size_t cap) {
  const auto lattice = homogeneous_solutions(constraint_system(a, 0, 1, rep.modulus()));
  if (lattice.count > cap) return rep;
  PhaseDiagonal best = rep;
  for (const auto& g : enumerate_lattice(lattice, cap)) best = std::min(best, add_mod(rep, g));
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// PhaseDiagonal

PhaseDiagonal::PhaseDiagonal(Modulus modulus, std::vector<std::uint64_t> t)
    : modulus_(modulus), t_(std::move(t)) {
  if (modulus_ < 1) throw InvalidArgument("phase modulus must be positive");
  if (t_.empty() || t_[0] != 0) throw InvalidArgument("phase diagonal must be normalized with t_1 = 0");
  for (auto v : t_) {
    if (v >= modulus_) throw InvalidArgument("phase exponent outside [0, M)");
  }
}

PhaseDiagonal PhaseDiagonal::identity(Modulus modulus, std::size_t n) {
  return PhaseDiagonal(modulus, std::vector<std::uint64_t>(n, 0));
}

DenseVector PhaseDiagonal::phases() const {
  DenseVector out;
  out.reserve(t_.size());
  for (auto v : t_) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(v) / static_cast<double>(modulus_);
    out.push_back(v == 0 ? Complex(1.0, 0.0) : std::polar(1.0, angle));
  }
  return out;
}

PhaseDiagonal PhaseDiagonal::lifted(Modulus multiple) const {
  if (multiple % modulus_ != 0) throw InvalidArgument("lift target is not a multiple of the modulus");
  const auto factor = multiple / modulus_;
  std::vector<std::uint64_t> t(t_);
  for (auto& v : t) v *= factor;
  return PhaseDiagonal(multiple, std::move(t));
}

bool PhaseDiagonal::has_order_dividing(std::uint64_t power) const {
  const Integer p = power;
  return std::all_of(t_.begin(), t_.end(), [&](std::uint64_t v) { return (p * v) % modulus_ == 0; });
}

// ---------------------------------------------------------------------------
// Congruence systems

bool CongruenceSystem::is_homogeneous() const {
  return std::all_of(rhs.begin(), rhs.end(), [](std::uint64_t v) { return v == 0; });
}

bool CongruenceSystem::satisfied_by(std::span<const std::uint64_t> t) const {
  if (t.size() != columns) throw DimensionError("phase vector length mismatch");
  for (std::size_t r = 0; r < rows(); ++r) {
    Integer lhs = 0;
    auto coeff = row(r);
    for (std::size_t j = 0; j < columns; ++j) lhs += Integer(coeff[j]) * t[j];
    if (reduce(lhs, modulus) != rhs[r]) return false;
  }
  return true;
}

IntMatrix CongruenceSystem::matrix() const {
  IntMatrix c(rows(), columns);
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t j = 0; j < columns; ++j) c(r, j) = coefficients[r * columns + j];
  }
  return c;
}

CongruenceSystem constraint_system(const SparseTensor& a, std::int64_t j, std::uint64_t ell,
                                   Modulus modulus) {
  if (modulus < 1 || ell < 1) throw InvalidArgument("modulus and ell must be positive");
  std::uint64_t rhs = 0;
  if (j != 0) {
    if (modulus % ell != 0) throw InvalidArgument("ell must divide the modulus when j != 0");
    const Integer shift = Integer(modulus / ell) * j;
    rhs = reduce(-shift, modulus);
  }
  CongruenceSystem sys;
  sys.columns = a.dim();
  sys.modulus = modulus;
  for (const auto& row : coefficient_rows(a)) {
    sys.coefficients.insert(sys.coefficients.end(), row.begin(), row.end());
    sys.rhs.push_back(rhs);
  }
  return sys;
}

SolutionLattice homogeneous_solutions(const CongruenceSystem& sys) {
  if (!sys.is_homogeneous()) throw InvalidArgument("solution lattice needs a homogeneous system");
  const Modulus m = sys.modulus;
  const auto snf = smith_normal_form(normalized_matrix(sys));
  const std::size_t n = sys.columns;
  const std::size_t k = snf.d.size();

  SolutionLattice lattice;
  lattice.modulus = m;
  lattice.columns = n;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t order = m;
    if (i < k) {
      const Integer g = snf.d[i] == 0 ? Integer(m) : Integer(gcd(snf.d[i], Integer(m)));
      order = static_cast<std::uint64_t>(g);
    }
    if (order == 1) continue;
    const std::uint64_t scale = m / order;
    std::vector<std::uint64_t> t(n);
    for (std::size_t r = 0; r < n; ++r) t[r] = reduce(snf.v(r, i) * scale, m);
    lattice.basis.emplace_back(m, std::move(t));
    lattice.orders.push_back(order);
    lattice.count *= order;
  }
  return lattice;
}

Integer count_solutions(const CongruenceSystem& sys) { return homogeneous_solutions(sys).count; }

std::optional<PhaseDiagonal> solvable(const CongruenceSystem& sys) {
  const Modulus m = sys.modulus;
  const auto c = normalized_matrix(sys);
  const auto snf = smith_normal_form(c);
  const std::size_t rows = c.rows(), n = c.cols(), k = snf.d.size();

  std::vector<Integer> b(rows, 0);
  for (std::size_t r = 0; r < sys.rows(); ++r) b[r] = sys.rhs[r];
  std::vector<Integer> ub(rows, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    Integer acc = 0;
    for (std::size_t r = 0; r < rows; ++r) acc += snf.u(i, r) * b[r];
    ub[i] = reduce(acc, m);
  }

  std::vector<Integer> u(n, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (i >= k) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    const Integer di = snf.d[i] % m;
    const Integer g = di == 0 ? Integer(m) : Integer(gcd(di, Integer(m)));
    if (ub[i] % g != 0) return std::nullopt;
    if (di == 0) continue;  // ub[i] == 0 (mod m), any u_i works
    const Integer reduced_mod = Integer(m) / g;
    u[i] = (ub[i] / g) * mod_inverse(di / g, reduced_mod) % reduced_mod;
  }
  std::vector<std::uint64_t> t(n);
  for (std::size_t r = 0; r < n; ++r) {
    Integer acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += snf.v(r, i) * u[i];
    t[r] = reduce(acc, m);
  }
  if (t[0] != 0 || !sys.satisfied_by(t)) {
    throw std::logic_error("congruence witness failed verification");
  }
  return PhaseDiagonal(m, std::move(t));
}

// ---------------------------------------------------------------------------
// Torus groups

std::optional<TorusGroup> stabilizer_torus(const SparseTensor& a) {
  const auto rows = coefficient_rows(a);
  IntMatrix c(rows.size() + 1, a.dim());
  std::size_t r = 0;
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < a.dim(); ++j) c(r, j) = row[j];
    ++r;
  }
  c(r, 0) = 1;
  return torus_from(c);
}

std::optional<TorusGroup> rotation_torus(const SparseTensor& a) {
  const auto rows = coefficient_rows(a);
  IntMatrix c(rows.size() + 1, a.dim() + 1);
  std::size_t r = 0;
  for (const auto& row : rows) {
    c(r, 0) = 1;
    for (std::size_t j = 0; j < a.dim(); ++j) c(r, j + 1) = row[j];
    ++r;
  }
  c(r, 1) = 1;
  return torus_from(c);
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<PhaseDiagonal> enumerate_lattice(const SolutionLattice& lattice, std::size_t cap) {
  if (lattice.count > cap) {
    throw BudgetExceeded("group of order " + lattice.count.str() + " exceeds enumeration cap " +
                         std::to_string(cap));
  }
  const Modulus m = lattice.modulus;
  const std::size_t n = lattice.columns;
  std::vector<PhaseDiagonal> out;
  out.reserve(static_cast<std::size_t>(lattice.count));
  std::vector<std::uint64_t> digits(lattice.basis.size(), 0);
  std::vector<std::uint64_t> t(n, 0);
  for (;;) {
    out.emplace_back(m, t);
    std::size_t pos = 0;
    for (; pos < digits.size(); ++pos) {
      const auto& g = lattice.basis[pos].t();
      if (++digits[pos] < lattice.orders[pos]) {
        for (std::size_t r = 0; r < n; ++r) t[r] = (t[r] + g[r]) % m;
        break;
      }
      // wrap this digit back to zero: subtract (order - 1) * g, i.e. add g once more
      digits[pos] = 0;
      for (std::size_t r = 0; r < n; ++r) t[r] = (t[r] + g[r]) % m;
    }
    if (pos == digits.size()) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() != static_cast<std::size_t>(lattice.count)) {
    throw std::logic_error("solution lattice basis is not a direct sum");
  }
  return out;
}

std::vector<PhaseDiagonal> canonical_generators(std::span<const PhaseDiagonal> sorted_elements) {
  std::vector<PhaseDiagonal> gens;
  if (sorted_elements.empty()) return gens;
  std::set<PhaseDiagonal> generated{sorted_elements.front()};  // identity sorts first
  for (const auto& e : sorted_elements) {
    if (generated.contains(e)) continue;
    gens.push_back(e);
    // generated <- generated + <e>
    std::vector<PhaseDiagonal> current(generated.begin(), generated.end());
    for (const auto& h : current) {
      PhaseDiagonal x = add_mod(h, e);
      while (!generated.contains(x)) {
        generated.insert(x);
        x = add_mod(x, e);
      }
    }
  }
  return gens;
}

// ---------------------------------------------------------------------------
// Stabilizing index and cyclic index

std::string to_string(ModulusPolicy policy) {
  switch (policy) {
    case ModulusPolicy::kSymmetricIrreducible:
      return "symmetric-irreducible";
    case ModulusPolicy::kSymmetric:
      return "symmetric";
    case ModulusPolicy::kIrreducible:
      return "irreducible";
    case ModulusPolicy::kWeaklyIrreducible:
      return "weakly-irreducible";
  }
  return "unknown";
}

std::pair<ModulusPolicy, Modulus> modulus_policy(const SparseTensor& a,
                                                 const StructureProfile& profile) {
  const std::uint64_t m = a.order();
  if (profile.combinatorially_symmetric && profile.irreducible) {
    return {ModulusPolicy::kSymmetricIrreducible, m};
  }
  if (profile.combinatorially_symmetric) return {ModulusPolicy::kSymmetric, m};
  if (profile.irreducible) {
    return {ModulusPolicy::kIrreducible,
            checked_u64(upow(m - 1, profile.solid_component_count), "modulus")};
  }
  const auto power = checked_u64(upow(m - 1, a.dim() - 1), "modulus");
  return {ModulusPolicy::kWeaklyIrreducible, std::lcm(m, power)};
}

EigenvarietyReport stabilizing_index(const SparseTensor& a, const StructureProfile& profile,
                                     const PhaseGroupOptions& options) {
  if (!profile.weakly_irreducible) throw NotWeaklyIrreducible();
  const auto resolved = resolve_modulus(a, profile);

  EigenvarietyReport report;
  report.policy = resolved.policy;
  report.modulus_used = resolved.modulus;
  report.modulus_extended = resolved.extended;
  report.group_exponent = resolved.exponent;
  report.exact = true;

  if (resolved.policy == ModulusPolicy::kSymmetricIrreducible) {
    report.s = 1;
    report.group_exponent = 1;
  } else {
    const auto lattice = homogeneous_solutions(constraint_system(a, 0, 1, resolved.modulus));
    report.s = checked_u64(lattice.count, "stabilizing index");
    if (lattice.count <= options.cap) {
      const auto elements = enumerate_lattice(lattice, options.cap);
      report.generators = canonical_generators(elements);
    } else {
      report.generators = lattice.basis;
      report.canonical_generators = false;
    }
  }

  auto cyclic = cyclic_index(a, profile, options);
  report.ell = cyclic.ell;
  report.coset_modulus = cyclic.modulus;
  report.cosets = std::move(cyclic.cosets);
  return report;
}

EigenvarietyReport stabilizing_index(const SparseTensor& a, const PhaseGroupOptions& options) {
  return stabilizing_index(a, structure_profile(a), options);
}

CyclicStructure cyclic_index(const SparseTensor& a, const StructureProfile& profile,
                             const PhaseGroupOptions& options) {
  if (!profile.weakly_irreducible) throw NotWeaklyIrreducible();
  CyclicStructure out;
  if (profile.combinatorially_symmetric) {
    const Modulus m = a.order();
    out.modulus = m;
    for (auto ell : divisors_descending(m)) {
      if (solvable(constraint_system(a, 1, ell, m))) {
        out.ell = ell;
        break;
      }
    }
  } else {
    const auto rotations = rotation_torus(a);
    const auto stabilizer = stabilizer_torus(a);
    if (!rotations || !stabilizer) throw std::logic_error("phase group is infinite");
    if (rotations->order % stabilizer->order != 0) {
      throw std::logic_error("stabilizer order does not divide the rotation group order");
    }
    out.ell = checked_u64(rotations->order / stabilizer->order, "cyclic index");
    const auto resolved = resolve_modulus(a, profile);
    out.modulus = std::lcm(resolved.modulus, checked_u64(rotations->exponent, "group exponent"));
  }
  for (std::uint64_t j = 0; j < out.ell; ++j) {
    auto witness = solvable(constraint_system(a, static_cast<std::int64_t>(j), out.ell, out.modulus));
    if (witness) witness = canonical_representative(a, *witness, options.cap);
    out.cosets.push_back(std::move(witness));
  }
  return out;
}

std::vector<PhaseDiagonal> coset_elements(const SparseTensor& a, const EigenvarietyReport& report,
                                          std::uint64_t j, std::size_t cap) {
  if (j >= report.ell) throw InvalidArgument("coset index must lie in [0, ell)");
  const auto& rep = report.cosets.at(j);
  if (!rep) return {};
  const auto lattice = homogeneous_solutions(constraint_system(a, 0, 1, rep->modulus()));
  std::vector<PhaseDiagonal> out;
  for (const auto& g : enumerate_lattice(lattice, cap)) out.push_back(add_mod(*rep, g));
  std::sort(out.begin(), out.end());
  return out;
}

DenseVector phase_scaled(const PhaseDiagonal& d, std::span<const double> perron) {
  if (perron.size() != d.size()) throw DimensionError("perron vector length mismatch");
  DenseVector x = d.phases();
  for (std::size_t k = 0; k < x.size(); ++k) x[k] *= perron[k];
  return x;
}

EigenvectorSet eigenvectors(const SparseTensor& a, const SpectralResult& spectral,
                            const EigenvarietyReport& report, std::uint64_t j,
                            const EigenvectorOptions& options) {
  if (j >= report.ell) throw InvalidArgument("coset index must lie in [0, ell)");
  if (spectral.perron.size() != a.dim()) throw InvalidArgument("missing perron vector");
  EigenvectorSet out;
  out.j = j;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(report.ell);
  out.lambda = j == 0 ? Complex(spectral.rho, 0.0) : std::polar(spectral.rho, angle);
  if (report.s > options.cap) {
    out.truncated = true;
    out.generators = report.generators;
    return out;
  }
  const double threshold = options.tol * std::max(1.0, spectral.rho);
  for (const auto& d : coset_elements(a, report, j, options.cap)) {
    DenseVector x = phase_scaled(d, spectral.perron);
    const double r = eigen_residual(a, out.lambda, x);
    if (r > threshold) {
      ++out.rejected;
      continue;
    }
    out.max_residual = std::max(out.max_residual, r);
    out.phases.push_back(d);
    out.vectors.push_back(std::move(x));
  }
  return out;
}

}  // namespace nnt

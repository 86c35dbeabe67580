#include "nnt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "nnt/error.hpp"

namespace nnt {

namespace {

Complex cpow(Complex z, std::size_t e) {
  Complex r = 1.0;
  for (std::size_t k = 0; k < e; ++k) r *= z;
  return r;
}

}  // namespace

OracleResult enumerate_spectral_circle(const SparseTensor& a, const SpectralResult& spectral,
                                       Modulus modulus, const OracleOptions& options) {
  const std::size_t n = a.dim();
  if (spectral.perron.size() != n) throw InvalidArgument("oracle needs the Perron vector");
  if (modulus < 1) throw InvalidArgument("oracle modulus must be positive");
  Integer total = 1;
  for (std::size_t k = 1; k < n; ++k) total *= modulus;
  if (total > options.budget) {
    throw BudgetExceeded("oracle would try " + total.str() + " phase vectors (budget " +
                         std::to_string(options.budget) + ")");
  }

  const std::size_t degree = a.order() - 1;
  const double rho = spectral.rho;
  const double threshold = options.tol * std::max(1.0, rho);
  std::vector<Complex> roots(modulus);
  for (Modulus q = 0; q < modulus; ++q) {
    roots[q] = q == 0 ? Complex(1.0, 0.0)
                      : std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(q) /
                                            static_cast<double>(modulus));
  }
  const auto& p = spectral.perron;
  const std::size_t pivot =
      static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
  const double scale = std::pow(p[pivot], static_cast<double>(degree));

  OracleResult out;
  out.modulus_tried = modulus;
  out.tol = options.tol;
  std::vector<std::uint64_t> t(n, 0);
  DenseVector x(n), xpow(n);
  for (;;) {
    ++out.candidates;
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = p[k] * roots[t[k]];
      xpow[k] = cpow(x[k], degree);
    }
    const auto y = apply<Complex>(a, std::span<const Complex>(x));
    const Complex lambda = y[pivot] / xpow[pivot];
    if (std::abs(std::abs(lambda) - rho) <= threshold) {
      double angle = std::arg(lambda);
      if (angle < 0) angle += 2.0 * std::numbers::pi;
      const auto q = static_cast<std::uint64_t>(
                         std::llround(angle * static_cast<double>(modulus) / (2.0 * std::numbers::pi))) %
                     modulus;
      const Complex target = rho * roots[q];
      double worst = 0.0;
      for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(y[k] - target * xpow[k]));
      worst /= scale;
      if (worst <= threshold) {
        out.hits.push_back({q, PhaseDiagonal(modulus, t), worst});
        ++out.counts[q];
      }
    }
    // advance t_2..t_n as a base-M counter, last coordinate fastest
    bool done = true;
    for (std::size_t pos = n; pos > 1;) {
      --pos;
      if (++t[pos] < modulus) {
        done = false;
        break;
      }
      t[pos] = 0;
    }
    if (done) break;
  }
  return out;
}

std::string to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::kMatch:
      return "match";
    case VerdictStatus::kMismatch:
      return "mismatch";
    case VerdictStatus::kSkipped:
      return "skipped";
  }
  return "unknown";
}

OracleVerdict cross_validate(const SparseTensor& a, const SpectralResult& spectral,
                             const EigenvarietyReport& report, Modulus modulus,
                             const OracleOptions& options, std::size_t cap) {
  OracleVerdict v;
  v.modulus = modulus != 0 ? modulus : report.coset_modulus;
  try {
    v.result = enumerate_spectral_circle(a, spectral, v.modulus, options);
  } catch (const BudgetExceeded& e) {
    v.status = VerdictStatus::kSkipped;
    v.notes.push_back(e.what());
    return v;
  }
  const auto& res = *v.result;

  std::set<std::uint64_t> expected;
  if (v.modulus % report.ell != 0) {
    v.problems.push_back("modulus " + std::to_string(v.modulus) + " is not a multiple of ell = " +
                         std::to_string(report.ell));
  } else {
    for (std::uint64_t j = 0; j < report.ell; ++j) expected.insert(j * (v.modulus / report.ell));
  }
  std::set<std::uint64_t> found;
  for (const auto& [q, count] : res.counts) {
    found.insert(q);
    if (count != report.s) {
      v.problems.push_back("phase class " + std::to_string(q) + "/" + std::to_string(v.modulus) +
                           " has " + std::to_string(count) + " eigenvectors, report says s = " +
                           std::to_string(report.s));
    }
  }
  if (!expected.empty() && found != expected) {
    v.problems.push_back("oracle found " + std::to_string(found.size()) +
                         " phase classes, report says ell = " + std::to_string(report.ell));
  }

  if (report.s > cap) {
    v.notes.push_back("coset membership not checked: s exceeds the enumeration cap");
  } else {
    std::map<PhaseDiagonal, std::uint64_t> hits;
    for (const auto& h : res.hits) hits.emplace(h.t, h.q);
    for (std::uint64_t j = 0; j < report.ell; ++j) {
      if (!report.cosets[j]) {
        v.problems.push_back("report has no representative for j = " + std::to_string(j));
        continue;
      }
      if (v.modulus % report.cosets[j]->modulus() != 0) {
        v.notes.push_back("coset membership not checked for j = " + std::to_string(j) +
                          ": modulus is not a multiple of the coset modulus");
        continue;
      }
      for (const auto& d : coset_elements(a, report, j, cap)) {
        const auto hit = hits.find(d.lifted(v.modulus));
        const bool ok = hit != hits.end() && v.modulus % report.ell == 0 &&
                        hit->second == j * (v.modulus / report.ell);
        if (!ok) {
          std::ostringstream msg;
          msg << "coset element for j = " << j << " (t =";
          for (auto x : d.t()) msg << ' ' << x;
          msg << " mod " << d.modulus() << ") is not an oracle eigenvector in that phase class";
          v.problems.push_back(msg.str());
        }
      }
    }
  }

  v.status = v.problems.empty() ? VerdictStatus::kMatch : VerdictStatus::kMismatch;
  if (v.status == VerdictStatus::kMismatch) {
    std::ostringstream dump;
    dump << "report: s=" << report.s << " ell=" << report.ell << " modulus=" << report.modulus_used
         << " coset_modulus=" << report.coset_modulus << '\n';
    dump << "oracle: M=" << res.modulus_tried << " candidates=" << res.candidates << '\n';
    for (const auto& [q, count] : res.counts) dump << "  phase " << q << ": " << count << '\n';
    for (const auto& h : res.hits) {
      dump << "  hit q=" << h.q << " t=";
      for (auto x : h.t.t()) dump << ' ' << x;
      dump << '\n';
    }
    v.dump = dump.str();
  }
  return v;
}

}  // namespace nnt

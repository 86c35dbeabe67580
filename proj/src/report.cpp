#include "nnt/report.hpp"

#include <chrono>
#include <sstream>

#include "nnt/error.hpp"

namespace nnt {

using nlohmann::ordered_json;

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(AnalysisReport& report, bool enabled) : report_(report), enabled_(enabled) {}
  void lap(const char* stage) {
    if (!enabled_) return;
    const auto now = std::chrono::steady_clock::now();
    report_.timings.emplace_back(stage, std::chrono::duration<double>(now - last_).count());
    last_ = now;
  }

 private:
  AnalysisReport& report_;
  bool enabled_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

ordered_json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ordered_json one_based(std::span<const Index> v) {
  ordered_json out = ordered_json::array();
  for (Index i : v) out.push_back(i + 1);
  return out;
}

ordered_json radius_json(const ClassRadius& r) {
  return {{"rho", r.rho}, {"lower", r.lower}, {"upper", r.upper}, {"recursive", r.recursive}};
}

std::string set_text(std::span<const Index> v) {
  std::string s = "{";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k] + 1);
  return s + "}";
}

std::string phase_text(const PhaseDiagonal& d) {
  std::string s = "(";
  for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "," : "") + std::to_string(d.t()[k]);
  return s + ") mod " + std::to_string(d.modulus());
}

std::string complex_text(Complex z) {
  return format_double(z.real()) + (z.imag() < 0 ? " - " : " + ") + format_double(std::abs(z.imag())) + "i";
}

void add_classes(AnalysisReport& r, const ClassDecomposition& dec,
                 const std::vector<ClassRadius>* radii) {
  r.block_ok = dec.block_ok;
  for (std::size_t c = 0; c < dec.classes.size(); ++c) {
    ClassSummary cs{dec.classes[c], dec.per_class[c].weakly_irreducible, dec.per_class[c].zero, {}};
    if (radii) cs.radius = (*radii)[c];
    r.classes.push_back(std::move(cs));
  }
}

}  // namespace

std::string to_string(Pipeline p) {
  switch (p) {
    case Pipeline::kWeaklyIrreducible:
      return "weakly-irreducible";
    case Pipeline::kDecomposition:
      return "decomposition";
    case Pipeline::kStructureOnly:
      return "structure-only";
  }
  return "unknown";
}

InputDescriptor describe(const SparseTensor& a, std::string path) {
  InputDescriptor d;
  d.path = std::move(path);
  d.order = a.order();
  d.dim = a.dim();
  d.nnz = a.nnz();
  return d;
}

InputDescriptor describe(const UniformHypergraph& g, const SparseTensor& a, std::string path) {
  InputDescriptor d = describe(a, std::move(path));
  d.kind = "hypergraph";
  d.edges = g.edges.size();
  d.hypergraph_components = connected_components(g);
  return d;
}

AnalysisReport analyze(const SparseTensor& a, const AnalyzeOptions& options) {
  AnalysisReport r;
  r.input = describe(a);
  Stopwatch clock(r, options.timings);

  r.profile = structure_profile(a);
  r.reducibility_witness = reducibility_witness(a);
  clock.lap("structure");

  if (r.profile.weakly_irreducible) {
    r.pipeline = Pipeline::kWeaklyIrreducible;
    r.spectral = spectral_radius(a, options.spectral);
    clock.lap("spectral");
    PhaseGroupOptions po;
    po.cap = options.cap;
    r.eigen = stabilizing_index(a, r.profile, po);
    clock.lap("phase_group");
    if (r.eigen->s <= options.cap) {
      EigenvectorOptions eo;
      eo.cap = options.cap;
      for (std::uint64_t j = 0; j < r.eigen->ell; ++j) {
        r.eigenvector_counts.push_back(eigenvectors(a, *r.spectral, *r.eigen, j, eo).vectors.size());
      }
      clock.lap("eigenvectors");
    }
    const ClassRadius whole{0, r.spectral->rho, r.spectral->lower, r.spectral->upper, false};
    std::vector<ClassRadius> radii{whole};
    add_classes(r, decompose(a), &radii);
    r.dimension = DimensionVerdict{1, 0, r.spectral->rho, 0.0, {0}, radii};
    if (options.run_oracle) {
      r.oracle = cross_validate(a, *r.spectral, *r.eigen, 0, options.oracle, options.cap);
      clock.lap("oracle");
    }
    return r;
  }

  const auto dec = decompose(a);
  if (r.profile.combinatorially_symmetric && !a.is_zero()) {
    r.pipeline = Pipeline::kDecomposition;
    DimensionOptions dopt;
    dopt.spectral = options.spectral;
    r.dimension = eigenvariety_dimension(a, dec, dopt);
    add_classes(r, dec, &r.dimension->radii);
    ClassRadius best = r.dimension->radii.front();
    for (const auto& c : r.dimension->radii) {
      if (c.rho > best.rho) best = c;
    }
    r.general_rho = best;
    clock.lap("decomposition");
    return r;
  }

  r.pipeline = Pipeline::kStructureOnly;
  r.note = a.is_zero() ? "zero tensor: no eigenvariety claim"
                       : "weakly reducible and not combinatorially symmetric: no eigenvariety claim";
  const auto radii = class_spectral_radii(dec, options.spectral);
  add_classes(r, dec, &radii);
  ClassRadius best = radii.front();
  for (const auto& c : radii) {
    if (c.rho > best.rho) best = c;
  }
  r.general_rho = best;
  clock.lap("decomposition");
  return r;
}

ordered_json to_json(const PhaseDiagonal& d) { return {{"modulus", d.modulus()}, {"t", d.t()}}; }

ordered_json to_json(const StructureProfile& p) {
  return {{"essentially_positive", p.essentially_positive},
          {"weakly_positive", p.weakly_positive},
          {"weakly_irreducible", p.weakly_irreducible},
          {"irreducible", p.irreducible},
          {"strongly_irreducible", p.strongly_irreducible},
          {"weakly_primitive", p.weakly_primitive},
          {"strongly_primitive", p.strongly_primitive},
          {"symmetric", p.symmetric},
          {"combinatorially_symmetric", p.combinatorially_symmetric},
          {"solid_component_count", p.solid_component_count}};
}

ordered_json to_json(const SpectralResult& s) {
  return {{"rho", s.rho},           {"lower", s.lower},       {"upper", s.upper},
          {"tol", s.tol},           {"iterations", s.iterations}, {"residual", s.residual},
          {"perron", s.perron}};
}

ordered_json to_json(const EigenvarietyReport& e) {
  ordered_json gens = ordered_json::array();
  for (const auto& g : e.generators) gens.push_back(to_json(g));
  ordered_json cosets = ordered_json::array();
  for (const auto& c : e.cosets) cosets.push_back(c ? to_json(*c) : ordered_json(nullptr));
  return {{"s", e.s},
          {"ell", e.ell},
          {"policy", to_string(e.policy)},
          {"modulus_used", e.modulus_used},
          {"exact", e.exact},
          {"modulus_extended", e.modulus_extended},
          {"group_exponent", e.group_exponent},
          {"generators", gens},
          {"canonical_generators", e.canonical_generators},
          {"coset_modulus", e.coset_modulus},
          {"cosets", cosets}};
}

ordered_json to_json(const OracleVerdict& v) {
  ordered_json out{{"status", to_string(v.status)}, {"modulus", v.modulus}};
  if (v.result) {
    ordered_json counts = ordered_json::array();
    for (const auto& [q, count] : v.result->counts) counts.push_back({{"q", q}, {"count", count}});
    out["candidates"] = v.result->candidates;
    out["tol"] = v.result->tol;
    out["hits"] = v.result->hits.size();
    out["phase_counts"] = counts;
  }
  out["problems"] = v.problems;
  out["notes"] = v.notes;
  if (!v.dump.empty()) out["dump"] = v.dump;
  return out;
}

ordered_json to_json(const AnalysisReport& r) {
  ordered_json out;
  out["schema"] = kReportSchema;
  out["command"] = r.command;
  out["source"] = r.source;

  ordered_json input{{"path", r.input.path}, {"kind", r.input.kind}, {"order", r.input.order},
                     {"dim", r.input.dim},   {"nnz", r.input.nnz}};
  if (r.input.edges) input["edges"] = *r.input.edges;
  if (r.input.hypergraph_components) {
    ordered_json comps = ordered_json::array();
    for (const auto& c : *r.input.hypergraph_components) comps.push_back(one_based(c));
    input["components"] = comps;
  }
  out["input"] = input;

  auto structure = to_json(r.profile);
  structure["reducibility_witness"] =
      r.reducibility_witness ? one_based(*r.reducibility_witness) : ordered_json(nullptr);
  out["structure"] = structure;
  out["pipeline"] = to_string(r.pipeline);
  if (!r.note.empty()) out["note"] = r.note;

  if (r.spectral) out["spectral"] = to_json(*r.spectral);
  if (r.eigen) {
    auto e = to_json(*r.eigen);
    e["dim"] = 0;
    e["eigenvector_counts"] = r.eigenvector_counts;
    out["eigenvariety"] = e;
  }
  if (!r.eigenvectors.empty()) {
    ordered_json sets = ordered_json::array();
    for (const auto& s : r.eigenvectors) {
      ordered_json vectors = ordered_json::array();
      for (const auto& v : s.vectors) {
        ordered_json vec = ordered_json::array();
        for (const auto& z : v) vec.push_back(complex_json(z));
        vectors.push_back(vec);
      }
      ordered_json phases = ordered_json::array();
      for (const auto& d : s.phases) phases.push_back(to_json(d));
      ordered_json gens = ordered_json::array();
      for (const auto& d : s.generators) gens.push_back(to_json(d));
      sets.push_back({{"j", s.j},
                      {"lambda", complex_json(s.lambda)},
                      {"count", s.vectors.size()},
                      {"max_residual", s.max_residual},
                      {"rejected", s.rejected},
                      {"truncated", s.truncated},
                      {"phases", phases},
                      {"vectors", vectors},
                      {"generators", gens}});
    }
    out["eigenvectors"] = sets;
  }
  if (!r.classes.empty()) {
    ordered_json classes = ordered_json::array();
    for (const auto& c : r.classes) {
      ordered_json cj{{"members", one_based(c.members)},
                      {"weakly_irreducible", c.weakly_irreducible},
                      {"zero", c.zero}};
      if (c.radius) cj["radius"] = radius_json(*c.radius);
      classes.push_back(cj);
    }
    out["decomposition"] = {{"classes", classes}, {"block_ok", r.block_ok.value_or(false)}};
  }
  if (r.general_rho) out["rho"] = radius_json(*r.general_rho);
  if (r.dimension) {
    ordered_json attaining = ordered_json::array();
    for (auto c : r.dimension->attaining) attaining.push_back(c + 1);
    out["dimension"] = {{"k", r.dimension->k},
                        {"dim", r.dimension->dim},
                        {"rho", r.dimension->rho},
                        {"tie_tol", r.dimension->tie_tol},
                        {"attaining_classes", attaining}};
  }
  if (r.oracle) out["oracle"] = to_json(*r.oracle);
  if (!r.timings.empty()) {
    ordered_json t;
    for (const auto& [stage, seconds] : r.timings) t[stage] = seconds;
    out["timings"] = t;
  }
  return out;
}

std::string render_text(const AnalysisReport& r) {
  std::ostringstream o;
  o << "schema: " << kReportSchema << '\n';
  o << "command: " << r.command << '\n';
  o << "input: " << r.input.kind;
  if (!r.input.path.empty()) o << ' ' << r.input.path;
  o << " (m=" << r.input.order << ", n=" << r.input.dim << ", nnz=" << r.input.nnz;
  if (r.input.edges) o << ", edges=" << *r.input.edges;
  o << ")\n";

  const auto& p = r.profile;
  auto flag = [&](const char* name, bool v) { o << "  " << name << ": " << (v ? "yes" : "no") << '\n'; };
  o << "structure:\n";
  flag("essentially positive", p.essentially_positive);
  flag("weakly positive", p.weakly_positive);
  flag("weakly irreducible", p.weakly_irreducible);
  flag("irreducible", p.irreducible);
  flag("strongly irreducible", p.strongly_irreducible);
  flag("weakly primitive", p.weakly_primitive);
  flag("strongly primitive", p.strongly_primitive);
  flag("symmetric", p.symmetric);
  flag("combinatorially symmetric", p.combinatorially_symmetric);
  o << "  solid components: " << p.solid_component_count << '\n';
  if (r.reducibility_witness) o << "  reducibility witness: " << set_text(*r.reducibility_witness) << '\n';
  o << "pipeline: " << to_string(r.pipeline) << '\n';
  if (!r.note.empty()) o << "note: " << r.note << '\n';

  if (r.spectral) {
    const auto& s = *r.spectral;
    o << "spectral:\n";
    o << "  rho: " << format_double(s.rho) << '\n';
    o << "  bracket: [" << format_double(s.lower) << ", " << format_double(s.upper) << "]\n";
    o << "  tol: " << format_double(s.tol) << '\n';
    o << "  iterations: " << s.iterations << '\n';
    o << "  residual: " << format_double(s.residual) << '\n';
    o << "  perron:";
    for (double v : s.perron) o << ' ' << format_double(v);
    o << '\n';
  }
  if (r.eigen) {
    const auto& e = *r.eigen;
    o << "eigenvariety:\n";
    o << "  s: " << e.s << '\n';
    o << "  ell: " << e.ell << '\n';
    o << "  dim: 0\n";
    o << "  policy: " << to_string(e.policy) << '\n';
    o << "  modulus: " << e.modulus_used << (e.exact ? " (exact)" : " (inexact)")
      << (e.modulus_extended ? " extended" : "") << '\n';
    o << "  generators" << (e.canonical_generators ? "" : " (lattice basis)") << ':';
    if (e.generators.empty()) o << " none";
    o << '\n';
    for (const auto& g : e.generators) o << "    " << phase_text(g) << '\n';
    o << "  cosets:\n";
    for (std::size_t j = 0; j < e.cosets.size(); ++j) {
      o << "    j=" << j << ": " << (e.cosets[j] ? phase_text(*e.cosets[j]) : "none") << '\n';
    }
    if (!r.eigenvector_counts.empty()) {
      o << "  eigenvector counts:";
      for (auto c : r.eigenvector_counts) o << ' ' << c;
      o << '\n';
    }
  }
  for (const auto& s : r.eigenvectors) {
    o << "eigenvectors j=" << s.j << " lambda=" << complex_text(s.lambda) << ":\n";
    if (s.truncated) {
      o << "  truncated; generators:\n";
      for (const auto& g : s.generators) o << "    " << phase_text(g) << '\n';
      continue;
    }
    for (std::size_t k = 0; k < s.vectors.size(); ++k) {
      o << "  " << phase_text(s.phases[k]) << ':';
      for (const auto& z : s.vectors[k]) o << " [" << complex_text(z) << ']';
      o << '\n';
    }
    o << "  count: " << s.vectors.size() << ", max residual: " << format_double(s.max_residual)
      << ", rejected: " << s.rejected << '\n';
  }
  if (!r.classes.empty()) {
    o << "classes:" << (r.block_ok.value_or(false) ? "" : " (block form violated)") << '\n';
    for (std::size_t c = 0; c < r.classes.size(); ++c) {
      const auto& cl = r.classes[c];
      o << "  " << c + 1 << ": " << set_text(cl.members)
        << (cl.weakly_irreducible ? " weakly irreducible" : " weakly reducible") << (cl.zero ? " (zero block)" : "");
      if (cl.radius) {
        o << " rho=" << format_double(cl.radius->rho);
        if (cl.radius->recursive) o << " (recursive)";
      }
      o << '\n';
    }
  }
  if (r.dimension) {
    o << "dimension: " << r.dimension->dim << " (k=" << r.dimension->k
      << ", rho=" << format_double(r.dimension->rho) << ")\n";
  } else if (r.general_rho) {
    o << "rho: " << format_double(r.general_rho->rho) << '\n';
  }
  if (r.oracle) {
    const auto& v = *r.oracle;
    o << "oracle: " << to_string(v.status) << " (M=" << v.modulus << ")\n";
    if (v.result) {
      for (const auto& [q, count] : v.result->counts) {
        o << "  phase " << q << '/' << v.modulus << ": " << count << '\n';
      }
    }
    for (const auto& s : v.problems) o << "  problem: " << s << '\n';
    for (const auto& s : v.notes) o << "  note: " << s << '\n';
    if (!v.dump.empty()) o << v.dump;
  }
  for (const auto& [stage, seconds] : r.timings) {
    o << "time " << stage << ": " << format_double(seconds) << " s\n";
  }
  return o.str();
}

}  // namespace nnt

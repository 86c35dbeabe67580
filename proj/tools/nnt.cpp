// nnt: command-line front end for the nonnegative tensor library.
//
// Exit status: 0 on success, 2 when the oracle disagrees with the phase
// group computation, 1 for every other failure.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>

#include "nnt/nnt.hpp"

namespace {

struct Flags {
  std::string file;
  std::string format = "text";
  double tol = 1e-12;
  std::size_t max_iter = 100000;
  bool oracle = false;
  bool hypergraph = false;
  std::size_t cap = 10000;
  bool timings = false;
  std::uint64_t j = 0;
  std::uint64_t modulus = 0;
  std::uint64_t budget = 10'000'000;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("file", f.file, "tensor file (or hypergraph file with --hypergraph)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--format", f.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  sub->add_option("--tol", f.tol, "spectral bracket tolerance")->capture_default_str();
  sub->add_option("--max-iter", f.max_iter, "power iteration limit")->capture_default_str();
  sub->add_flag("--oracle", f.oracle, "cross-validate against brute-force enumeration");
  sub->add_option("--budget", f.budget, "most phase vectors the oracle may try")
      ->capture_default_str();
  sub->add_flag("--hypergraph", f.hypergraph, "input is a uniform hypergraph file");
  sub->add_option("--cap", f.cap, "largest group enumerated element by element")
      ->capture_default_str();
  sub->add_flag("--timings", f.timings, "include stage timings in the report");
}

struct Input {
  nnt::SparseTensor tensor;
  nnt::InputDescriptor descriptor;
};

Input read_input(const Flags& f) {
  if (f.hypergraph) {
    const auto g = nnt::load_hypergraph_file(f.file);
    auto a = nnt::adjacency_tensor(g);
    auto d = nnt::describe(g, a, f.file);
    return {std::move(a), std::move(d)};
  }
  auto a = nnt::load_tensor_file(f.file);
  auto d = nnt::describe(a, f.file);
  return {std::move(a), std::move(d)};
}

nnt::AnalyzeOptions analyze_options(const Flags& f) {
  nnt::AnalyzeOptions o;
  o.spectral.tol = f.tol;
  o.spectral.max_iter = f.max_iter;
  o.cap = f.cap;
  o.run_oracle = f.oracle;
  o.oracle.budget = f.budget;
  o.timings = f.timings;
  return o;
}

void emit(const nnt::AnalysisReport& r, const Flags& f) {
  if (f.format == "json") {
    std::cout << nnt::to_json(r).dump(2) << '\n';
  } else {
    std::cout << nnt::render_text(r);
  }
}

int exit_status(const nnt::AnalysisReport& r) {
  if (r.oracle && r.oracle->status == nnt::VerdictStatus::kMismatch) return 2;
  return 0;
}

// Structure, spectral data and the eigenvariety report, without the
// per-coset eigenvector enumeration or the decomposition path.
nnt::AnalysisReport weakly_irreducible_report(const Input& in, const Flags& f, const char* command,
                                              bool need_phase) {
  nnt::AnalysisReport r;
  r.command = command;
  r.input = in.descriptor;
  r.profile = nnt::structure_profile(in.tensor);
  r.reducibility_witness = nnt::reducibility_witness(in.tensor);
  if (!r.profile.weakly_irreducible) throw nnt::NotWeaklyIrreducible();
  r.pipeline = nnt::Pipeline::kWeaklyIrreducible;
  const auto opts = analyze_options(f);
  r.spectral = nnt::spectral_radius(in.tensor, opts.spectral);
  if (need_phase) {
    nnt::PhaseGroupOptions po;
    po.cap = f.cap;
    r.eigen = nnt::stabilizing_index(in.tensor, r.profile, po);
    if (f.oracle) {
      r.oracle = nnt::cross_validate(in.tensor, *r.spectral, *r.eigen, 0, opts.oracle, f.cap);
    }
  }
  return r;
}

int run(const std::string& command, const Flags& f) {
  const Input in = read_input(f);

  if (command == "canon") {
    nnt::store_tensor(std::cout, in.tensor);
    return 0;
  }
  if (command == "analyze") {
    auto r = nnt::analyze(in.tensor, analyze_options(f));
    r.input = in.descriptor;
    emit(r, f);
    return exit_status(r);
  }
  if (command == "rho") {
    nnt::AnalysisReport r;
    r.command = "rho";
    r.input = in.descriptor;
    r.profile = nnt::structure_profile(in.tensor);
    r.reducibility_witness = nnt::reducibility_witness(in.tensor);
    const auto opts = analyze_options(f);
    if (r.profile.weakly_irreducible) {
      r.pipeline = nnt::Pipeline::kWeaklyIrreducible;
      r.spectral = nnt::spectral_radius(in.tensor, opts.spectral);
    } else {
      r.pipeline = nnt::Pipeline::kStructureOnly;
      r.general_rho = nnt::general_spectral_radius(in.tensor, opts.spectral);
    }
    emit(r, f);
    return 0;
  }
  if (command == "stab" || command == "cyclic") {
    auto r = weakly_irreducible_report(in, f, command.c_str(), true);
    emit(r, f);
    return exit_status(r);
  }
  if (command == "eigvecs") {
    auto r = weakly_irreducible_report(in, f, "eigvecs", true);
    nnt::EigenvectorOptions eo;
    eo.cap = f.cap;
    r.eigenvectors.push_back(nnt::eigenvectors(in.tensor, *r.spectral, *r.eigen, f.j, eo));
    emit(r, f);
    return exit_status(r);
  }
  if (command == "oracle") {
    Flags g = f;
    g.oracle = false;
    auto r = weakly_irreducible_report(in, g, "oracle", true);
    r.source = "oracle";
    r.oracle = nnt::cross_validate(in.tensor, *r.spectral, *r.eigen, f.modulus,
                                    analyze_options(f).oracle, f.cap);
    emit(r, f);
    if (r.oracle->status == nnt::VerdictStatus::kSkipped) return 1;
    return exit_status(r);
  }
  throw nnt::InvalidArgument("unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral and eigenvariety analysis of nonnegative tensors"};
  app.require_subcommand(1);
  Flags flags;

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"analyze", "full report: structure, spectrum, eigenvariety or decomposition"},
      {"rho", "spectral radius and Perron vector"},
      {"stab", "stabilizing index s and the group generators"},
      {"cyclic", "cyclic index and coset representatives"},
      {"eigvecs", "all spectral-circle eigenvectors for one coset"},
      {"oracle", "brute-force enumeration checked against the phase group"},
      {"canon", "write the input as a canonical tensor file"},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, flags);
    if (std::string(c.name) == "eigvecs") {
      sub->add_option("--j", flags.j, "coset index in [0, ell)")->capture_default_str();
    }
    if (std::string(c.name) == "oracle") {
      sub->add_option("--modulus", flags.modulus, "enumeration modulus (default: coset modulus)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, flags);
  } catch (const nnt::ParseError& e) {
    std::cerr << "nnt: " << flags.file << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "nnt " << command << ": " << e.what() << '\n';
  }
  return 1;
}

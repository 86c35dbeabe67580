#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nnt/decomposition.hpp"
#include "nnt/graph.hpp"
#include "nnt/hypergraph.hpp"
#include "nnt/oracle.hpp"
#include "nnt/phase_group.hpp"
#include "nnt/spectral.hpp"
#include "nnt/tensor.hpp"

namespace nnt {

inline constexpr const char* kReportSchema = "nnt.report/1";

struct InputDescriptor {
  std::string path;
  std::string kind = "tensor";  // or "hypergraph"
  std::size_t order = 0;
  std::size_t dim = 0;
  std::size_t nnz = 0;
  std::optional<std::size_t> edges;
  /// Hypergraph input: vertex classes under shared edges.
  std::optional<IndexPartition> hypergraph_components;
};

enum class Pipeline {
  kWeaklyIrreducible,  // spectral + phase group
  kDecomposition,      // reducible, combinatorially symmetric: dimension verdict
  kStructureOnly,      // reducible, not symmetric (or zero): no eigenvariety claim
};
std::string to_string(Pipeline p);

struct ClassSummary {
  std::vector<Index> members;
  bool weakly_irreducible = false;
  bool zero = false;
  std::optional<ClassRadius> radius;
};

struct AnalysisReport {
  std::string command = "analyze";
  std::string source = "phase_group";  // "oracle" for the oracle subcommand
  InputDescriptor input;
  StructureProfile profile;
  std::optional<std::vector<Index>> reducibility_witness;
  Pipeline pipeline = Pipeline::kStructureOnly;
  std::string note;

  std::optional<SpectralResult> spectral;
  std::optional<EigenvarietyReport> eigen;
  /// |PV_{lambda_j}| for j = 0..ell-1, when s is within the cap.
  std::vector<std::size_t> eigenvector_counts;
  std::vector<EigenvectorSet> eigenvectors;

  std::vector<ClassSummary> classes;
  std::optional<bool> block_ok;
  std::optional<DimensionVerdict> dimension;
  /// rho of a reducible tensor from its classes.
  std::optional<ClassRadius> general_rho;

  std::optional<OracleVerdict> oracle;
  std::vector<std::pair<std::string, double>> timings;
};

struct AnalyzeOptions {
  SpectralOptions spectral;
  std::size_t cap = 10000;
  bool run_oracle = false;
  OracleOptions oracle;
  bool timings = false;
};

/// Full pipeline: structure, then spectral + phase group for weakly
/// irreducible input, the dimension verdict for reducible symmetric input,
/// and a structure-only report otherwise.
AnalysisReport analyze(const SparseTensor& a, const AnalyzeOptions& options = {});

InputDescriptor describe(const SparseTensor& a, std::string path = {});
InputDescriptor describe(const UniformHypergraph& g, const SparseTensor& a, std::string path = {});

nlohmann::ordered_json to_json(const AnalysisReport& report);
nlohmann::ordered_json to_json(const PhaseDiagonal& d);
nlohmann::ordered_json to_json(const StructureProfile& p);
nlohmann::ordered_json to_json(const SpectralResult& s);
nlohmann::ordered_json to_json(const EigenvarietyReport& e);
nlohmann::ordered_json to_json(const OracleVerdict& v);

/// Human-readable rendering with 1-based indices.
std::string render_text(const AnalysisReport& report);

}  // namespace nnt

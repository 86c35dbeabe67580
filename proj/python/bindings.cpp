#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nnt/nnt.hpp"

namespace py = pybind11;

namespace {

nnt::SparseTensor make_tensor(std::size_t order, std::size_t dim,
                              const std::vector<std::pair<std::vector<nnt::Index>, double>>& entries) {
  std::vector<nnt::Entry> es;
  es.reserve(entries.size());
  for (const auto& [idx, v] : entries) es.push_back({idx, v});
  return nnt::SparseTensor::from_entries(order, dim, std::move(es));
}

py::list entries_of(const nnt::SparseTensor& a) {
  py::list out;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    auto idx = a.index(k);
    out.append(py::make_tuple(py::tuple(py::cast(std::vector<nnt::Index>(idx.begin(), idx.end()))),
                              a.value(k)));
  }
  return out;
}

std::string analyze_json(const nnt::SparseTensor& a, double tol, std::size_t max_iter,
                         std::size_t cap, bool oracle) {
  nnt::AnalyzeOptions o;
  o.spectral.tol = tol;
  o.spectral.max_iter = max_iter;
  o.cap = cap;
  o.run_oracle = oracle;
  return nnt::to_json(nnt::analyze(a, o)).dump();
}

std::string stab_json(const nnt::SparseTensor& a, std::size_t cap) {
  nnt::PhaseGroupOptions o;
  o.cap = cap;
  return nnt::to_json(nnt::stabilizing_index(a, o)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral and eigenvariety analysis of nonnegative tensors (C++ core)";

  py::register_exception<nnt::Error>(m, "NntError", PyExc_ValueError);

  py::class_<nnt::SparseTensor>(m, "SparseTensor")
      .def(py::init(&make_tensor), py::arg("order"), py::arg("dim"), py::arg("entries"),
           "Entries are (index tuple, value) pairs with 0-based indices.")
      .def_property_readonly("order", &nnt::SparseTensor::order)
      .def_property_readonly("dim", &nnt::SparseTensor::dim)
      .def_property_readonly("nnz", &nnt::SparseTensor::nnz)
      .def("entries", &entries_of)
      .def("apply",
           [](const nnt::SparseTensor& a, const nnt::DenseVector& x) { return nnt::apply(a, x); })
      .def("to_text", &nnt::format_tensor)
      .def("__eq__", [](const nnt::SparseTensor& a, const nnt::SparseTensor& b) { return a == b; })
      .def("__repr__", [](const nnt::SparseTensor& a) {
        return "<SparseTensor order=" + std::to_string(a.order()) + " dim=" +
               std::to_string(a.dim()) + " nnz=" + std::to_string(a.nnz()) + ">";
      });

  m.def("parse_tensor", [](const std::string& text) { return nnt::parse_tensor(text); });
  m.def("load_tensor", &nnt::load_tensor_file, py::arg("path"));
  m.def("add_identity", &nnt::add_identity, py::arg("a"), py::arg("c") = 1.0);
  m.def("identity_tensor", &nnt::identity_tensor, py::arg("order"), py::arg("dim"));
  m.def("is_symmetric", &nnt::is_symmetric);
  m.def("is_combinatorially_symmetric", &nnt::is_combinatorially_symmetric);
  m.def("is_weakly_irreducible", &nnt::is_weakly_irreducible);
  m.def("is_irreducible", &nnt::is_irreducible);

  m.def("_structure_json", [](const nnt::SparseTensor& a) {
    return nnt::to_json(nnt::structure_profile(a)).dump();
  });
  m.def(
      "_spectral_json",
      [](const nnt::SparseTensor& a, double tol, std::size_t max_iter) {
        nnt::SpectralOptions o;
        o.tol = tol;
        o.max_iter = max_iter;
        return nnt::to_json(nnt::spectral_radius(a, o)).dump();
      },
      py::arg("a"), py::arg("tol") = 1e-12, py::arg("max_iter") = 100000);
  m.def("_stab_json", &stab_json, py::arg("a"), py::arg("cap") = 10000);
  m.def("_analyze_json", &analyze_json, py::arg("a"), py::arg("tol") = 1e-12,
        py::arg("max_iter") = 100000, py::arg("cap") = 10000, py::arg("oracle") = false);

  m.def(
      "eigenvectors",
      [](const nnt::SparseTensor& a, std::uint64_t j, std::size_t cap) {
        const auto spectral = nnt::spectral_radius(a);
        nnt::PhaseGroupOptions po;
        po.cap = cap;
        const auto report = nnt::stabilizing_index(a, po);
        nnt::EigenvectorOptions eo;
        eo.cap = cap;
        auto set = nnt::eigenvectors(a, spectral, report, j, eo);
        if (set.truncated) throw nnt::BudgetExceeded("coset exceeds the enumeration cap");
        return py::make_tuple(set.lambda, set.vectors);
      },
      py::arg("a"), py::arg("j") = 0, py::arg("cap") = 10000,
      "(lambda, vectors) for the coset j, each vector a list of complex components.");

  m.def("strongly_connected_components", [](const nnt::SparseTensor& a) {
    return nnt::strongly_connected_components(nnt::build_digraph(a));
  });
  m.def("eigenvariety_dimension", [](const nnt::SparseTensor& a) {
    const auto v = nnt::eigenvariety_dimension(a);
    return py::make_tuple(v.k, v.dim, v.rho);
  });

  m.def(
      "oracle_counts",
      [](const nnt::SparseTensor& a, std::uint64_t modulus) {
        const auto spectral = nnt::spectral_radius(a);
        return nnt::enumerate_spectral_circle(a, spectral, modulus).counts;
      },
      py::arg("a"), py::arg("modulus"), "Eigenvector count per phase class q (lambda = rho e^{2 pi i q/M}).");

  m.def(
      "hypergraph_tensor",
      [](std::size_t order, std::size_t n, std::vector<std::vector<nnt::Index>> edges) {
        return nnt::adjacency_tensor(nnt::make_hypergraph(order, n, std::move(edges)));
      },
      py::arg("m"), py::arg("n"), py::arg("edges"), "Adjacency tensor; edges use 0-based vertices.");
  m.def("parse_hypergraph_tensor", [](const std::string& text) {
    return nnt::adjacency_tensor(nnt::parse_hypergraph(text));
  });

  m.attr("__version__") = "0.3.0";
}

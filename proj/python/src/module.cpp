#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "hwcl/graph.hpp"
#include "hwcl/index_io.hpp"
#include "hwcl/labelling.hpp"
#include "hwcl/query.hpp"

namespace py = pybind11;
using namespace hwcl;

namespace {

// Queries take and return original vertex ids; dense ids stay internal.
class Index {
 public:
  Index(Graph g, BuildResult built)
      : engine_(std::move(g), std::move(built.labelling), std::move(built.highway)) {
    const auto& ids = engine_.graph().original_ids();
    for (VertexId v = 0; v < ids.size(); ++v) dense_.emplace(ids[v], v);
  }

  VertexId dense(Graph::OriginalId id) const {
    auto it = dense_.find(id);
    if (it == dense_.end()) throw DomainError("unknown vertex id " + std::to_string(id));
    return it->second;
  }

  py::object distance(Graph::OriginalId s, Graph::OriginalId t) const {
    return hops(engine_.distance(dense(s), dense(t)).distance);
  }
  py::object upper_bound(Graph::OriginalId s, Graph::OriginalId t) const {
    return hops(engine_.upper_bound(dense(s), dense(t)));
  }
  std::vector<py::object> distances(
      const std::vector<std::pair<Graph::OriginalId, Graph::OriginalId>>& pairs) const {
    SearchScratch scratch = engine_.make_scratch();
    std::vector<py::object> out;
    out.reserve(pairs.size());
    for (auto [s, t] : pairs) out.push_back(hops(engine_.distance(dense(s), dense(t), scratch).distance));
    return out;
  }

  std::vector<std::pair<Graph::OriginalId, unsigned>> label(Graph::OriginalId v) const {
    std::vector<std::pair<Graph::OriginalId, unsigned>> out;
    for (const LabelEntry& e : engine_.labelling().label(dense(v))) {
      out.emplace_back(engine_.graph().original_id(engine_.highway().landmark(e.landmark_rank)),
                       e.distance);
    }
    return out;
  }

  std::vector<Graph::OriginalId> landmarks() const {
    std::vector<Graph::OriginalId> out;
    for (VertexId r : engine_.highway().landmarks()) out.push_back(engine_.graph().original_id(r));
    return out;
  }

  py::dict stats() const {
    const LabellingStats s = labelling_stats(engine_.labelling(), engine_.highway());
    py::dict d;
    d["n"] = engine_.graph().num_vertices();
    d["m"] = engine_.graph().num_edges();
    d["k"] = s.k;
    d["size"] = s.size_total;
    d["als"] = s.avg_label_size;
    d["max_label"] = s.max_label_size;
    return d;
  }

  double coverage(std::size_t samples, std::uint64_t seed) const {
    return estimate_pair_coverage(engine_, samples, seed);
  }

  std::uint64_t save(const std::string& path, const std::string& format) const {
    IndexFormat f;
    if (format == "compressed") {
      f = IndexFormat::kCompressed;
    } else if (format == "wide") {
      f = IndexFormat::kWide;
    } else {
      throw DomainError("format must be 'compressed' or 'wide'");
    }
    std::ostringstream buffer(std::ios::binary);
    const auto bytes = save_index(engine_.labelling(), engine_.highway(),
                                  metadata_for(engine_.graph(), engine_.highway()), f, buffer);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "'");
    out << buffer.str();
    return bytes;
  }

  const Graph& graph() const { return engine_.graph(); }

 private:
  static py::object hops(Hops d) {
    return d == kInfinity ? py::object(py::none()) : py::object(py::int_(d));
  }

  QueryEngine engine_;
  std::unordered_map<Graph::OriginalId, VertexId> dense_;
};

Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_edge_list(in);
}

Index build_index(const Graph& g, std::size_t k, std::size_t threads) {
  const auto R = select_landmarks(g, k);
  return Index(g, threads > 1 ? build_parallel(g, R, threads) : build(g, R));
}

}  // namespace

PYBIND11_MODULE(_hwcl, m) {
  m.doc() = "Highway cover labelling for exact distance queries on unweighted graphs";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<LoadError>(m, "LoadError", PyExc_IOError);

  py::class_<Graph>(m, "Graph")
      .def_static("from_edges",
                  [](const std::vector<Graph::Edge>& edges) { return Graph::from_edges(edges); },
                  py::arg("edges"))
      .def_static("read", &read_graph, py::arg("path"), "Parse an edge-list file")
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def("original_ids", &Graph::original_ids)
      .def("largest_component", [](const Graph& g) { return largest_component(g); })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.num_vertices()) +
               " m=" + std::to_string(g.num_edges()) + ">";
      });

  m.def("select_landmarks",
        [](const Graph& g, std::size_t k) {
          std::vector<Graph::OriginalId> out;
          for (VertexId v : select_landmarks(g, k)) out.push_back(g.original_id(v));
          return out;
        },
        py::arg("graph"), py::arg("k"), "Top-k vertices by degree (original ids)");

  py::class_<Index>(m, "Index")
      .def_property_readonly("graph", &Index::graph)
      .def("distance", &Index::distance, py::arg("s"), py::arg("t"),
           "Exact distance, or None when unreachable")
      .def("distances", &Index::distances, py::arg("pairs"))
      .def("upper_bound", &Index::upper_bound, py::arg("s"), py::arg("t"))
      .def("label", &Index::label, py::arg("v"), "List of (landmark, distance)")
      .def("landmarks", &Index::landmarks)
      .def("stats", &Index::stats)
      .def("coverage", &Index::coverage, py::arg("samples") = 10000, py::arg("seed") = 1)
      .def("save", &Index::save, py::arg("path"), py::arg("format") = "compressed");

  m.def("build", &build_index, py::arg("graph"), py::arg("k") = 20, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());

  m.def("load",
        [](const std::string& path, const Graph& g) {
          std::ifstream in(path, std::ios::binary);
          if (!in) throw std::runtime_error("cannot open '" + path + "'");
          LoadedIndex loaded = load_index(in);
          Highway highway = loaded.bind(g);
          return Index(g, BuildResult{std::move(loaded.labelling), std::move(highway)});
        },
        py::arg("path"), py::arg("graph"));
}

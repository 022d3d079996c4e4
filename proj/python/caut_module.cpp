#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "caut/json_io.hpp"

namespace py = pybind11;
using namespace caut;

namespace {

using Matrix = std::vector<std::vector<int>>;

Quiver quiver_of(const Matrix& b) { return Quiver(static_cast<int>(b.size()), b); }

} // namespace

PYBIND11_MODULE(_caut, m) {
    m.doc() = "exact cluster-algebra engine: mutation, exchange graphs, automorphism groups";

    py::register_exception<input_error>(m, "InputError");
    py::register_exception<incomplete_graph_error>(m, "IncompleteGraphError");
    py::register_exception<error>(m, "CautError");

    m.def("mutate", [](const Matrix& b, int k) { return mutate_quiver(quiver_of(b), k - 1).b; },
          py::arg("b"), py::arg("k"), "mutate a skew-symmetric matrix at point k (1-based)");

    m.def("opposite", [](const Matrix& b) { return opposite(quiver_of(b)).b; });

    m.def("classify", [](const Matrix& b) { return classify_type(quiver_of(b)).to_string(); });

    m.def("canonical", [](const std::string& s, int nvars) {
              return parse_ratfn(s, nvars).to_string();
          },
          py::arg("expr"), py::arg("nvars"),
          "canonical form of a rational function in x1..xn");

    m.def("explore",
          [](const Matrix& b, int node_cap, int depth_cap) {
              ExchangeGraph g = explore(quiver_of(b), node_cap, depth_cap);
              py::dict out;
              out["clusters"] = static_cast<int>(g.nodes.size());
              std::vector<std::string> vars;
              for (const auto& v : cluster_variables(g)) vars.push_back(v.to_string());
              out["variables"] = vars;
              out["complete"] = g.complete;
              return out;
          },
          py::arg("b"), py::arg("node_cap") = kDefaultNodeCap,
          py::arg("depth_cap") = kDefaultDepthCap);

    m.def("aut_report",
          [](const Matrix& b, int node_cap, int depth_cap) {
              ExchangeGraph g = explore(quiver_of(b), node_cap, depth_cap);
              if (!g.complete) throw incomplete_graph_error("exploration hit a cap");
              Json rep = aut_group_report(aut_group(g));
              return rep.dump();
          },
          py::arg("b"), py::arg("node_cap") = kDefaultNodeCap,
          py::arg("depth_cap") = kDefaultDepthCap,
          "JSON report of the cluster automorphism group");

    m.def("check_automorphism",
          [](const Matrix& b, const std::vector<std::string>& images, int node_cap,
             int depth_cap) {
              ExchangeGraph g = explore(quiver_of(b), node_cap, depth_cap);
              std::vector<RationalFn> ims;
              for (const auto& s : images) ims.push_back(parse_ratfn(s, g.quiver.n));
              try {
                  ClusterAutomorphism f = check_cluster_automorphism(g, ims);
                  return std::string(f.direction == Direction::direct ? "direct" : "inverse");
              } catch (const no_quiver_iso_error&) {
                  return std::string("NoQuiverIso");
              } catch (const not_a_cluster_error&) {
                  return std::string("NotACluster");
              }
          },
          py::arg("b"), py::arg("images"), py::arg("node_cap") = kDefaultNodeCap,
          py::arg("depth_cap") = kDefaultDepthCap);

    m.def("surface_bmatrix", [](const std::string& name) {
        if (name == "figure2_left") return b_matrix(figure2_left()).b;
        if (name == "figure2_right") return b_matrix(figure2_right()).b;
        if (name == "torus") return b_matrix(markov_torus()).b;
        throw input_error("unknown surface name: " + name);
    });

    m.def("polygon_bmatrix", [](int mverts) { return b_matrix(polygon_fan(mverts)).b; });
    m.def("punctured_disc_bmatrix",
          [](int c, int p) { return b_matrix(punctured_disc_std(c, p)).b; });
    m.def("annulus_bmatrix", [](int p, int q) { return b_matrix(annulus_std(p, q)).b; });

    m.def("flip_graph_size",
          [](const std::string& name, int mverts) {
              if (name == "polygon") return enumerate_flip_graph(polygon_fan(mverts)).triangulations;
              if (name == "disc") return enumerate_flip_graph(punctured_disc_std(mverts, 1)).triangulations;
              throw input_error("unknown family: " + name);
          },
          py::arg("family"), py::arg("size"));
}

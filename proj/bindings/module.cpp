#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fiso/automorphism.hpp"
#include "fiso/io.hpp"
#include "fiso/tester.hpp"

namespace py = pybind11;
using namespace fiso;

namespace {

BooleanFunction make_function(const GroupSpec& g, const std::vector<int>& values) {
    if (values.size() != g.order()) throw ShapeError("value count must equal the group order");
    BooleanFunction f{g, std::vector<std::int8_t>(values.size())};
    for (std::size_t i = 0; i < values.size(); ++i) f.values[i] = static_cast<std::int8_t>(values[i]);
    f.validate();
    return f;
}

const char* decision_name(Decision d) {
    switch (d) {
        case Decision::Accept: return "Accept";
        case Decision::Reject: return "Reject";
        default: return "Fail";
    }
}

py::dict verdict_to_dict(const Verdict& v) {
    py::dict d;
    d["decision"] = decision_name(v.decision);
    d["best_correlation"] = v.best_correlation;
    d["theta"] = v.theta;
    d["m_tilde"] = v.m_tilde;
    d["norm_warning"] = v.norm_warning;
    d["total_queries"] = v.ledger.total();
    if (v.witness) d["witness_generator_images"] = v.witness->generator_images();
    return d;
}

}  // namespace

PYBIND11_MODULE(_fiso, m) {
    m.doc() = "tolerant isomorphism testing for Boolean functions on finite Abelian groups";

    py::register_exception<Error>(m, "FisoError");

    py::class_<GroupSpec>(m, "Group")
        .def(py::init([](const std::vector<std::uint64_t>& moduli) {
                 return group_from_moduli(moduli);
             }),
             py::arg("moduli"))
        .def_property_readonly("order", &GroupSpec::order)
        .def_property_readonly("lcm", &GroupSpec::lcm)
        .def_property_readonly("rank", &GroupSpec::rank)
        .def("element_at", &GroupSpec::element_at)
        .def("index_of", &GroupSpec::index_of);

    m.def("dft",
          [](const GroupSpec& g, const std::vector<int>& values) {
              return dft(make_function(g, values)).coeffs;
          },
          py::arg("group"), py::arg("values"),
          "Exact Fourier coefficients of a +/-1 truth table.");

    m.def("spectral_norm",
          [](const GroupSpec& g, const std::vector<int>& values) {
              return spectral_norm(dft(make_function(g, values)));
          });

    m.def("sparsity",
          [](const GroupSpec& g, const std::vector<int>& values, double tol) {
              return sparsity(dft(make_function(g, values)), tol);
          },
          py::arg("group"), py::arg("values"), py::arg("tol") = 1e-9);

    m.def("exact_automorphism_distance",
          [](const GroupSpec& g, const std::vector<int>& f, const std::vector<int>& h) {
              const auto r = exact_automorphism_distance(make_function(g, f), make_function(g, h));
              return py::make_tuple(r.distance, r.witness.generator_images());
          });

    m.def("test_isomorphism",
          [](const GroupSpec& g, const std::vector<int>& f_values,
             const std::vector<int>& g_values, double epsilon, double tau, std::uint64_t seed,
             double theta, std::uint32_t t, std::uint64_t m_tilde, double delta,
             std::uint64_t sparse, double eps_wt2, double eps_wt4, double eps_proj,
             double eps_coeff, double round_tol) {
              TesterConfig cfg;
              cfg.epsilon = epsilon;
              cfg.tau = tau;
              cfg.theta_override = theta;
              cfg.m_tilde = m_tilde;
              cfg.sieve.t = t;
              cfg.sieve.delta_wt2 = cfg.sieve.delta_wt4 = cfg.sieve.delta_proj =
                  cfg.sieve.delta_coeff = delta;
              cfg.sieve.eps_wt2 = eps_wt2;
              cfg.sieve.eps_wt4 = eps_wt4;
              cfg.sieve.eps_proj = eps_proj;
              cfg.sieve.eps_coeff = eps_coeff;
              cfg.sieve.rounding_tolerance = round_tol;
              const BooleanFunction gf = make_function(g, g_values);
              cfg.s = sparse ? static_cast<double>(sparse)
                             : std::max(1.0, spectral_norm(dft(gf)));
              QueryOracle oracle(make_function(g, f_values));
              Rng rng(seed);
              const Verdict v = sparse ? test_isomorphism_sparse(oracle, gf, sparse, cfg, rng)
                                       : test_isomorphism(oracle, gf, cfg, rng);
              return verdict_to_dict(v);
          },
          py::arg("group"), py::arg("f"), py::arg("g"), py::arg("epsilon") = 0.05,
          py::arg("tau") = 0.4, py::arg("seed") = 1, py::arg("theta") = 0.0, py::arg("t") = 1,
          py::arg("m_tilde") = 16, py::arg("delta") = 0.01, py::arg("sparse") = 0,
          py::arg("eps_wt2") = 0.0, py::arg("eps_wt4") = 0.0, py::arg("eps_proj") = 0.0,
          py::arg("eps_coeff") = 0.0, py::arg("round_tol") = 0.0);
}

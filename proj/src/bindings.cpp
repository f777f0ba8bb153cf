#include "cyclemld/certify.hpp"
#include "cyclemld/intersect.hpp"
#include "cyclemld/mle.hpp"
#include "cyclemld/model.hpp"
#include "cyclemld/poly.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;
using namespace cyclemld;

namespace {

py::int_ big_to_py(const BigInt& v) {
    const std::string s = v.str();
    PyObject* obj = PyLong_FromString(s.c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

MVariant m_variant(const std::string& name) {
    if (name == "path") return MVariant::path;
    if (name == "plus") return MVariant::plus;
    if (name == "minus") return MVariant::minus;
    throw std::invalid_argument("variant must be 'path', 'plus', or 'minus'");
}

ShiftVariant shift_variant(const std::string& name) {
    if (name == "plus") return ShiftVariant::plus;
    if (name == "minus") return ShiftVariant::minus;
    throw std::invalid_argument("variant must be 'plus' or 'minus'");
}

OracleSystem oracle_system(const std::string& name) {
    if (name == "concentration") return OracleSystem::concentration;
    if (name == "adjugate") return OracleSystem::covariance_adjugate;
    throw std::invalid_argument("system must be 'concentration' or 'adjugate'");
}

using PyMinor = std::pair<std::tuple<int, int, int>, std::tuple<int, int, int>>;

std::vector<MinorSpec> minors_from_py(const std::vector<PyMinor>& specs) {
    std::vector<MinorSpec> out;
    out.reserve(specs.size());
    for (const auto& [rows, cols] : specs)
        out.push_back({{std::get<0>(rows), std::get<1>(rows), std::get<2>(rows)},
                       {std::get<0>(cols), std::get<1>(cols), std::get<2>(cols)}});
    return out;
}

std::vector<PyMinor> minors_to_py(const std::vector<MinorSpec>& specs) {
    std::vector<PyMinor> out;
    out.reserve(specs.size());
    for (const auto& s : specs)
        out.emplace_back(std::make_tuple(s.rows[0], s.rows[1], s.rows[2]),
                         std::make_tuple(s.cols[0], s.cols[1], s.cols[2]));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Census, certification, and likelihood tools for cycle concentration models";

    py::register_exception<SimplicityError>(m, "SimplicityError");
    py::register_exception<NeedsMinorsError>(m, "NeedsMinorsError");
    py::register_exception<CensusError>(m, "CensusError");
    py::register_exception<ConvergenceError>(m, "ConvergenceError");

    py::class_<Polynomial>(m, "Polynomial")
        .def(py::init([](const std::vector<long long>& coeffs) {
                 std::vector<BigInt> cs;
                 cs.reserve(coeffs.size());
                 for (long long c : coeffs) cs.emplace_back(c);
                 return Polynomial(cs);
             }),
             py::arg("coeffs"))
        .def_property_readonly("coeffs",
                               [](const Polynomial& p) {
                                   py::list out;
                                   for (const BigInt& c : p.coeffs()) out.append(big_to_py(c));
                                   return out;
                               })
        .def_property_readonly("degree", &Polynomial::degree)
        .def("__call__", [](const Polynomial& p, std::complex<double> x) { return p.eval(x); })
        .def("__repr__", [](const Polynomial& p) { return "Polynomial(" + p.str() + ")"; });

    m.def("p_poly", &p_poly, py::arg("k"));
    m.def("char_poly_odd", &char_poly_odd, py::arg("m"));
    m.def("char_poly_even_plus", &char_poly_even_plus, py::arg("m"));
    m.def("char_poly_even_minus", &char_poly_even_minus, py::arg("m"));
    m.def(
        "poly_roots",
        [](const Polynomial& p, double tol) { return roots(p, tol).roots; },
        py::arg("p"), py::arg("tol") = 1e-10);
    m.def("factorization_check", &factorization_check, py::arg("n"));
    m.def("divisibility_check", &divisibility_check, py::arg("m"));

    m.def("ml_degree_formula", &ml_degree_formula, py::arg("n"));
    m.def(
        "variety_degree_formula",
        [](int n) { return big_to_py(variety_degree_formula(n)); }, py::arg("n"));

    m.def(
        "support_positions",
        [](int n) { return CycleModel(n).support_positions(); }, py::arg("n"));
    m.def(
        "m_matrix",
        [](int n, std::complex<double> x, const std::string& variant) {
            return m_matrix(n, x, m_variant(variant)).dense();
        },
        py::arg("n"), py::arg("x"), py::arg("variant") = "plus");
    m.def("checkerboard", [](int n) { return checkerboard(n).dense(); }, py::arg("n"));
    m.def(
        "conjugate_sign",
        [](const Eigen::MatrixXcd& a, const std::vector<int>& signs) {
            return conjugate_sign(SymMatrix(a), SignDiag(signs)).dense();
        },
        py::arg("a"), py::arg("signs"));
    m.def(
        "shift_conjugate",
        [](const Eigen::MatrixXcd& a, const std::string& variant) {
            return shift_conjugate(SymMatrix(a), shift_variant(variant)).dense();
        },
        py::arg("a"), py::arg("variant") = "plus");
    m.def(
        "project_l",
        [](const Eigen::MatrixXcd& a) {
            return project_l(SymMatrix(a), CycleModel(static_cast<int>(a.rows()))).dense();
        },
        py::arg("a"));
    m.def(
        "project_lperp",
        [](const Eigen::MatrixXcd& a) {
            return project_lperp(SymMatrix(a), CycleModel(static_cast<int>(a.rows()))).dense();
        },
        py::arg("a"));
    m.def(
        "in_affine_slice",
        [](const Eigen::MatrixXcd& a, double tol) {
            return in_affine_slice(SymMatrix(a), CycleModel(static_cast<int>(a.rows())), tol);
        },
        py::arg("a"), py::arg("tol") = 1e-8);
    m.def(
        "in_l_inverse",
        [](const Eigen::MatrixXcd& a, double tol,
           const std::optional<std::vector<PyMinor>>& minors) {
            const CycleModel model(static_cast<int>(a.rows()));
            if (!minors) return in_l_inverse(SymMatrix(a), model, tol);
            const auto specs = minors_from_py(*minors);
            return in_l_inverse(SymMatrix(a), model, tol, &specs);
        },
        py::arg("a"), py::arg("tol") = 1e-8, py::arg("minors") = py::none());

    py::class_<Certificate>(m, "Certificate")
        .def_readonly("point_label", &Certificate::point_label)
        .def_readonly("required_rank", &Certificate::required_rank)
        .def_readonly("achieved_rank", &Certificate::achieved_rank)
        .def_readonly("sigma_ratio", &Certificate::sigma_ratio)
        .def_readonly("minor_count", &Certificate::minor_count)
        .def_property_readonly("passed", &Certificate::pass)
        .def("__repr__", [](const Certificate& c) {
            return "Certificate(rank=" + std::to_string(c.achieved_rank) + "/" +
                   std::to_string(c.required_rank) + ", passed=" + (c.pass() ? "True" : "False") +
                   ")";
        });

    m.def(
        "harvest_minors",
        [](int n, int samples, double tol, std::uint64_t seed) {
            return minors_to_py(harvest_minors(n, samples, tol, seed));
        },
        py::arg("n"), py::arg("samples") = 20, py::arg("tol") = 1e-9, py::arg("seed") = 0);
    m.def(
        "jacobian_at",
        [](const Eigen::MatrixXcd& a, const std::vector<PyMinor>& minors) {
            const CycleModel model(static_cast<int>(a.rows()));
            return jacobian_at(SymMatrix(a), minors_from_py(minors), model);
        },
        py::arg("a"), py::arg("minors"));
    m.def(
        "rank_certificate",
        [](const Eigen::MatrixXcd& a, const std::vector<PyMinor>& minors,
           const std::string& label) {
            const CycleModel model(static_cast<int>(a.rows()));
            return rank_certificate(SymMatrix(a), label, minors_from_py(minors), model);
        },
        py::arg("a"), py::arg("minors"), py::arg("label") = "");
    m.def("rk_identity_check", &rk_identity_check, py::arg("n"), py::arg("k"),
          py::arg("samples") = 50, py::arg("tol") = 1e-9, py::arg("seed") = 0,
          py::arg("restore_cancelled_terms") = false);

    py::class_<IntersectionPoint>(m, "IntersectionPoint")
        .def_property_readonly("matrix",
                               [](const IntersectionPoint& p) { return p.matrix.dense(); })
        .def_property_readonly("family",
                               [](const IntersectionPoint& p) { return family_name(p.family); })
        .def_readonly("x", &IntersectionPoint::x)
        .def_readonly("signs", &IntersectionPoint::signs);

    py::class_<CensusReport>(m, "CensusReport")
        .def_readonly("n", &CensusReport::n)
        .def_readonly("formula_count", &CensusReport::formula_count)
        .def_readonly("distinct_count", &CensusReport::distinct_count)
        .def_readonly("min_pairwise_distance", &CensusReport::min_pairwise_distance)
        .def_readonly("cross_family_collisions", &CensusReport::cross_family_collisions)
        .def_readonly("points", &CensusReport::points)
        .def("__repr__", [](const CensusReport& r) {
            return "CensusReport(n=" + std::to_string(r.n) +
                   ", distinct_count=" + std::to_string(r.distinct_count) + ")";
        });

    m.def("enumerate_points", &enumerate_points, py::arg("n"), py::arg("tol") = 1e-10);

    py::class_<MleResult>(m, "MleResult")
        .def_property_readonly("k_hat", [](const MleResult& r) { return r.k_hat.dense(); })
        .def_property_readonly("sigma_hat", [](const MleResult& r) { return r.sigma_hat.dense(); })
        .def_readonly("iterations", &MleResult::iterations)
        .def_readonly("grad_norm", &MleResult::grad_norm)
        .def_readonly("loglik", &MleResult::loglik);

    py::class_<OracleReport>(m, "OracleReport")
        .def_readonly("n", &OracleReport::n)
        .def_property_readonly("s", [](const OracleReport& r) { return r.s.dense(); })
        .def_readonly("starts", &OracleReport::starts)
        .def_readonly("seed", &OracleReport::seed)
        .def_readonly("distinct_critical_points", &OracleReport::distinct_critical_points)
        .def_property_readonly("points",
                               [](const OracleReport& r) {
                                   std::vector<Eigen::MatrixXcd> out;
                                   out.reserve(r.points.size());
                                   for (const auto& p : r.points) out.push_back(p.dense());
                                   return out;
                               })
        .def_readonly("converged_starts", &OracleReport::converged_starts)
        .def_readonly("max_residual", &OracleReport::max_residual)
        .def_readonly("worst_jacobian_cond", &OracleReport::worst_jacobian_cond)
        .def_readonly("min_pairwise_distance", &OracleReport::min_pairwise_distance);

    m.def(
        "log_lik",
        [](const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& s) {
            return log_lik(SymMatrix(k), SymMatrix(s));
        },
        py::arg("k"), py::arg("s"));
    m.def(
        "likelihood_gradient",
        [](const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& s) {
            return likelihood_gradient(SymMatrix(k), SymMatrix(s),
                                       CycleModel(static_cast<int>(k.rows())));
        },
        py::arg("k"), py::arg("s"));
    m.def(
        "solve_mle",
        [](const Eigen::MatrixXcd& s, double tol, int max_iter) {
            return solve_mle(SymMatrix(s), tol, max_iter);
        },
        py::arg("s"), py::arg("tol") = 1e-10, py::arg("max_iter") = 200);
    m.def(
        "critical_points_oracle",
        [](int n, const Eigen::MatrixXcd& s, int starts, std::uint64_t seed, double tol,
           const std::string& system, int threads) {
            return critical_points_oracle(n, SymMatrix(s), starts, seed, tol,
                                          oracle_system(system), threads);
        },
        py::arg("n"), py::arg("s"), py::arg("starts"), py::arg("seed") = 0,
        py::arg("tol") = 1e-9, py::arg("system") = "concentration", py::arg("threads") = 1);
    m.def(
        "random_generic_s",
        [](int n, std::uint64_t seed, double scale) {
            return random_generic_s(n, seed, scale).dense();
        },
        py::arg("n"), py::arg("seed") = 0, py::arg("scale") = 0.3);
    m.def("oracle_generic_s", &oracle_generic_s, py::arg("n"), py::arg("starts"),
          py::arg("seed") = 0, py::arg("tol") = 1e-9, py::arg("threads") = 1);
}

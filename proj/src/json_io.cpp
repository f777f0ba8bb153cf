#include "cyclemld/json_io.hpp"

#include <limits>
#include <sstream>

namespace cyclemld {

namespace {

Json complex_pair(Complex v) {
    return Json::array({v.real(), v.imag()});
}

} // namespace

Json to_json(const Polynomial& p) {
    Json coeffs = Json::array();
    for (const BigInt& c : p.coeffs()) coeffs.push_back(big_int_to_json(c));
    return Json{{"coeffs", std::move(coeffs)}};
}

Json to_json(const RootSet& r) {
    Json roots = Json::array();
    for (const auto& z : r.roots) roots.push_back(complex_pair(z));
    return Json{{"roots", std::move(roots)}, {"tolerance", r.tolerance}};
}

Json to_json(const SymMatrix& a) {
    const int n = a.dim();
    Json rows = Json::array();
    for (int i = 0; i < n; ++i) {
        Json row = Json::array();
        for (int j = 0; j < n; ++j) row.push_back(complex_pair(a(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"n", n}, {"entries", std::move(rows)}};
}

Json to_json(const MinorSpec& m) {
    // 1-based in serialized output.
    return Json{{"rows", {m.rows[0] + 1, m.rows[1] + 1, m.rows[2] + 1}},
                {"cols", {m.cols[0] + 1, m.cols[1] + 1, m.cols[2] + 1}}};
}

Json to_json(const Certificate& c) {
    return Json{{"point_label", c.point_label}, {"required_rank", c.required_rank},
                {"achieved_rank", c.achieved_rank}, {"sigma_ratio", c.sigma_ratio},
                {"minor_count", c.minor_count}, {"pass", c.pass()}};
}

Json to_json(const IntersectionPoint& p) {
    Json j;
    j["family"] = family_name(p.family);
    j["x"] = p.x ? complex_pair(*p.x) : Json(nullptr);
    j["signs"] = p.signs;
    j["matrix"] = to_json(p.matrix);
    j["certificate"] = p.certificate ? to_json(*p.certificate) : Json(nullptr);
    return j;
}

Json to_json(const CensusReport& r) {
    Json points = Json::array();
    for (const auto& p : r.points) points.push_back(to_json(p));
    return Json{{"n", r.n},
                {"formula_count", r.formula_count},
                {"distinct_count", r.distinct_count},
                {"min_pairwise_distance", r.min_pairwise_distance},
                {"cross_family_collisions", r.cross_family_collisions},
                {"points", std::move(points)}};
}

Json to_json(const MleResult& r) {
    return Json{{"k_hat", to_json(r.k_hat)},
                {"sigma_hat", to_json(r.sigma_hat)},
                {"iterations", r.iterations},
                {"grad_norm", r.grad_norm},
                {"loglik", r.loglik}};
}

Json to_json(const OracleReport& r) {
    Json points = Json::array();
    for (const auto& p : r.points) points.push_back(to_json(p));
    return Json{{"n", r.n},
                {"s", to_json(r.s)},
                {"starts", r.starts},
                {"seed", r.seed},
                {"system", r.system == OracleSystem::concentration ? "concentration"
                                                                   : "covariance_adjugate"},
                {"distinct_critical_points", r.distinct_critical_points},
                {"converged_starts", r.converged_starts},
                {"max_residual", r.max_residual},
                {"worst_jacobian_cond", r.worst_jacobian_cond},
                {"min_pairwise_distance", r.min_pairwise_distance},
                {"points", std::move(points)}};
}

SymMatrix sym_matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw std::invalid_argument("sym_matrix_from_json: expected {\"n\", \"entries\"}");
    const int n = j.at("n").get<int>();
    if (n < 1) throw std::invalid_argument("sym_matrix_from_json: bad dimension");
    const Json& rows = j.at("entries");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw std::invalid_argument("sym_matrix_from_json: entries must be n rows");
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i) {
        const Json& row = rows.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw std::invalid_argument("sym_matrix_from_json: row length mismatch");
        for (int jj = 0; jj < n; ++jj) {
            const Json& cell = row.at(static_cast<std::size_t>(jj));
            if (cell.is_array() && cell.size() == 2)
                m(i, jj) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
            else if (cell.is_number())
                m(i, jj) = Complex(cell.get<double>(), 0.0);
            else
                throw std::invalid_argument("sym_matrix_from_json: cell must be [re,im] or number");
        }
    }
    return SymMatrix(std::move(m));
}

Json big_int_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return Json(v.convert_to<std::int64_t>());
    return Json(v.str());
}

std::string matrix_to_csv(const SymMatrix& a) {
    std::ostringstream os;
    os.precision(17);
    const int n = a.dim();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) os << ",";
            os << a(i, j).real();
        }
        os << "\n";
    }
    return os.str();
}

} // namespace cyclemld

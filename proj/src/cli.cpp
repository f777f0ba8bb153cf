#include "cyclemld/cli.hpp"

#include "cyclemld/certify.hpp"
#include "cyclemld/intersect.hpp"
#include "cyclemld/json_io.hpp"
#include "cyclemld/mle.hpp"
#include "cyclemld/model.hpp"
#include "cyclemld/poly.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace cyclemld {

namespace {

struct CommonOpts {
    std::string format = "json";
    std::string output;
    std::uint64_t seed = 0;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", opts.output, "Write output to a file instead of stdout");
    cmd->add_option("--seed", opts.seed, "Random seed");
    cmd->add_option("--threads", opts.threads, "Worker threads for parallel phases")
        ->check(CLI::PositiveNumber);
}

void flatten_csv(const Json& j, const std::string& prefix, std::ostream& os) {
    for (const auto& [key, value] : j.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object())
            flatten_csv(value, name, os);
        else if (!value.is_array())
            os << name << "," << value.dump() << "\n";
    }
}

int emit(const Json& j, const CommonOpts& opts) {
    std::ostringstream body;
    if (opts.format == "csv")
        flatten_csv(j, "", body);
    else
        body << j.dump(2) << "\n";
    if (opts.output.empty()) {
        std::cout << body.str();
        return 0;
    }
    std::ofstream f(opts.output);
    if (!f) {
        std::cerr << "error: cannot open output file " << opts.output << "\n";
        return 2;
    }
    f << body.str();
    return 0;
}

SymMatrix load_matrix(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::ios_base::failure("cannot open matrix file " + path);
    Json j;
    f >> j;
    return sym_matrix_from_json(j);
}

SymMatrix generic_pd_s(int n, std::uint64_t seed) {
    for (std::uint64_t attempt = 0; attempt < 20; ++attempt) {
        const SymMatrix s = random_generic_s(n, seed + 1000003ULL * attempt);
        Eigen::LLT<Eigen::MatrixXd> llt(s.real());
        if (llt.info() == Eigen::Success) return s;
    }
    throw std::runtime_error("generic_pd_s: could not draw a positive definite sample");
}

int default_starts(int n) {
    switch (n) {
        case 4: return 500;
        case 5: return 1000;
        default: return 4000;
    }
}

bool parse_range(const std::string& text, int& lo, int& hi) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoi(text);
        } else {
            lo = std::stoi(text.substr(0, dots));
            hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        return false;
    }
    return lo <= hi;
}

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

void print_table(const std::vector<CheckLine>& lines) {
    for (const auto& line : lines) {
        std::cerr << (line.pass ? "PASS" : "FAIL") << "  " << line.name;
        if (!line.detail.empty()) std::cerr << "  (" << line.detail << ")";
        std::cerr << "\n";
    }
}

int run_formula(int n, const CommonOpts& opts) {
    Json out;
    out["config"] = {{"subcommand", "formula"}, {"n", n}, {"format", opts.format}};
    out["ml_degree"] = ml_degree_formula(n);
    return emit(out, opts);
}

int run_degree(int n, const CommonOpts& opts) {
    Json out;
    out["config"] = {{"subcommand", "degree"}, {"n", n}, {"format", opts.format}};
    out["variety_degree"] = big_int_to_json(variety_degree_formula(n));
    return emit(out, opts);
}

int run_enumerate(int n, double tol, const CommonOpts& opts) {
    const CensusReport report = enumerate_points(n, tol);
    Json out = to_json(report);
    out["config"] = {{"subcommand", "enumerate"}, {"n", n}, {"tol", tol},
                     {"format", opts.format}};
    const int rc = emit(out, opts);
    if (rc != 0) return rc;
    return report.distinct_count == report.formula_count ? 0 : 1;
}

int run_certify(int n, double tol, int samples, double harvest_tol, const CommonOpts& opts) {
    const CensusReport report = enumerate_points(n, tol);
    const CycleModel model(n);
    const std::vector<MinorSpec> minors = harvest_minors(n, samples, harvest_tol, opts.seed);

    bool all_pass = true;
    double worst_ratio = 1.0;
    for (std::size_t i = 0; i < report.points.size(); ++i) {
        const Certificate cert = rank_certificate(report.points[i], minors, model);
        all_pass = all_pass && cert.pass();
        worst_ratio = std::min(worst_ratio, cert.sigma_ratio);
    }

    Json out;
    out["config"] = {{"subcommand", "certify"}, {"n", n}, {"tol", tol},
                     {"samples", samples}, {"harvest_tol", harvest_tol},
                     {"seed", opts.seed}, {"format", opts.format}};
    out["n"] = n;
    out["points_checked"] = report.points.size();
    out["all_pass"] = all_pass;
    out["worst_sigma_ratio"] = worst_ratio;
    const int rc = emit(out, opts);
    if (rc != 0) return rc;
    return all_pass ? 0 : 1;
}

int run_identities(int max_n, int samples, double tol, const CommonOpts& opts) {
    std::vector<CheckLine> lines;

    bool fact_ok = true;
    for (int n = 4; n <= max_n; ++n) fact_ok = fact_ok && factorization_check(n);
    lines.push_back({"factorization n=4.." + std::to_string(max_n), fact_ok, ""});

    const int max_m = std::max(2, (max_n - 1) / 2);
    bool div_ok = true;
    for (int m = 2; m <= max_m; ++m) div_ok = div_ok && divisibility_check(m);
    lines.push_back({"divisibility m=2.." + std::to_string(max_m), div_ok, ""});

    bool roots_ok = true;
    for (int n = 4; n <= max_n; ++n) {
        try {
            const RootSet rs = roots(p_poly(n - 3), 1e-10);
            roots_ok = roots_ok && static_cast<int>(rs.roots.size()) == std::max(0, p_poly(n - 3).degree());
        } catch (const SimplicityError&) {
            roots_ok = false;
        }
    }
    lines.push_back({"simple roots of P_(n-3), n=4.." + std::to_string(max_n), roots_ok, ""});

    bool rk_ok = true;
    for (int n = 5; n <= std::min(max_n, 8); ++n)
        for (int k = 3; k <= n - 1; ++k)
            rk_ok = rk_ok && rk_identity_check(n, k, samples, tol, opts.seed);
    lines.push_back({"edge relations n=5..8", rk_ok, ""});

    const bool mutation_detected = !rk_identity_check(6, 4, samples, tol, opts.seed, true);
    lines.push_back({"mutation detected", mutation_detected, ""});

    print_table(lines);
    const bool all_pass = fact_ok && div_ok && roots_ok && rk_ok && mutation_detected;
    Json out;
    out["config"] = {{"subcommand", "identities"}, {"max_n", max_n}, {"samples", samples},
                     {"tol", tol}, {"seed", opts.seed}, {"format", opts.format}};
    out["factorization"] = fact_ok;
    out["divisibility"] = div_ok;
    out["simple_roots"] = roots_ok;
    out["edge_relations"] = rk_ok;
    out["mutation_detected"] = mutation_detected;
    out["all_pass"] = all_pass;
    const int rc = emit(out, opts);
    if (rc != 0) return rc;
    return all_pass ? 0 : 1;
}

int run_mle(int n, const std::string& s_file, double tol, int max_iter, const CommonOpts& opts) {
    SymMatrix s(1);
    if (!s_file.empty()) {
        s = load_matrix(s_file);
        n = s.dim();
    } else {
        s = generic_pd_s(n, opts.seed);
    }
    const MleResult result = solve_mle(s, tol, max_iter);
    Json out = to_json(result);
    out["s"] = to_json(s);
    out["config"] = {{"subcommand", "mle"}, {"n", n}, {"tol", tol}, {"max_iter", max_iter},
                     {"s_file", s_file}, {"seed", opts.seed}, {"format", opts.format}};
    return emit(out, opts);
}

int run_oracle(int n, const std::string& s_file, int starts, double tol,
               const std::string& system_name, const CommonOpts& opts) {
    const OracleSystem system = system_name == "adjugate" ? OracleSystem::covariance_adjugate
                                                          : OracleSystem::concentration;
    OracleReport report;
    const bool generic = s_file.empty();
    if (generic && system == OracleSystem::concentration) {
        report = oracle_generic_s(n, starts, opts.seed, tol, opts.threads);
    } else {
        const SymMatrix s = generic ? generic_pd_s(n, opts.seed) : load_matrix(s_file);
        report = critical_points_oracle(n, s, starts, opts.seed, tol, system, opts.threads);
    }
    const std::int64_t formula = ml_degree_formula(n);

    Json out = to_json(report);
    out["config"] = {{"subcommand", "oracle"}, {"n", n}, {"starts", starts}, {"tol", tol},
                     {"system", system_name}, {"s_file", s_file}, {"seed", opts.seed},
                     {"threads", opts.threads}, {"format", opts.format}};
    out["formula_count"] = formula;
    out["agrees"] = report.distinct_critical_points == formula;
    const int rc = emit(out, opts);
    if (rc != 0) return rc;
    if (report.distinct_critical_points > formula) return 1; // contradiction: hard failure
    if (generic && report.distinct_critical_points != formula) return 1;
    return 0;
}

int run_all(int lo, int hi, const CommonOpts& opts) {
    std::vector<CheckLine> lines;

    {
        std::vector<int> ns;
        for (int n = std::max(4, lo); n <= hi; ++n) ns.push_back(n);
        bool ok = true;
        std::string detail;
        for (const CountCheck& c : count_check(ns, 1e-10)) {
            ok = ok && c.pass;
            if (!c.pass && detail.empty())
                detail = "n=" + std::to_string(c.n) + ": " + c.error;
        }
        lines.push_back({"census counts", ok, detail});
    }

    {
        bool ok = true;
        double worst = 1.0;
        for (int n = std::max(4, lo); n <= std::min(hi, 8); ++n) {
            const CensusReport report = enumerate_points(n, 1e-10);
            const CycleModel model(n);
            const auto minors = harvest_minors(n, 20, 1e-9, opts.seed);
            for (const auto& pt : report.points) {
                const Certificate cert = rank_certificate(pt, minors, model);
                ok = ok && cert.pass();
                worst = std::min(worst, cert.sigma_ratio);
            }
        }
        std::ostringstream detail;
        detail << "worst sigma ratio " << worst;
        lines.push_back({"rank certificates", ok, detail.str()});
    }

    {
        bool ok = true;
        for (int n = 4; n <= 40; ++n) ok = ok && factorization_check(n);
        for (int m = 2; m <= 15; ++m) ok = ok && divisibility_check(m);
        for (int n = 4; n <= 20; ++n) {
            const Polynomial p = p_poly(n - 3);
            const RootSet rs = roots(p, 1e-10);
            ok = ok && static_cast<int>(rs.roots.size()) == std::max(0, p.degree());
        }
        lines.push_back({"polynomial identities", ok, ""});
    }

    {
        bool ok = true;
        for (int n = 5; n <= 8; ++n)
            for (int k = 3; k <= n - 1; ++k)
                ok = ok && rk_identity_check(n, k, 50, 1e-9, opts.seed);
        ok = ok && !rk_identity_check(6, 4, 50, 1e-9, opts.seed, true);
        lines.push_back({"edge relations + mutation", ok, ""});
    }

    {
        bool ok = true;
        for (int n = 4; n <= 10; ++n) {
            const SymMatrix k0 = m_matrix(n, 0.2, MVariant::plus);
            const SymMatrix s(Eigen::MatrixXcd(k0.dense().inverse()));
            const MleResult res = solve_mle(s, 1e-10, 200);
            const double err = (res.k_hat.dense() - k0.dense()).cwiseAbs().maxCoeff();
            ok = ok && err <= 1e-8 * k0.max_abs();
        }
        for (int trial = 0; trial < 20 && ok; ++trial) {
            const SymMatrix s = generic_pd_s(5, opts.seed + 777ULL * static_cast<std::uint64_t>(trial) + 1);
            const MleResult res = solve_mle(s, 1e-10, 200);
            const CycleModel model(5);
            for (const auto& [i, j] : model.support_positions())
                ok = ok && std::abs(res.sigma_hat(i, j) - s(i, j)) <= 1e-8;
        }
        lines.push_back({"mle round-trips", ok, ""});
    }

    {
        bool ok = true;
        std::string detail;
        for (std::uint64_t trial = 0; trial < 3 && ok; ++trial) {
            const OracleReport rep = oracle_generic_s(4, 500, opts.seed + trial, 1e-9, opts.threads);
            ok = rep.distinct_critical_points == ml_degree_formula(4);
            if (!ok) detail = "n=4 count " + std::to_string(rep.distinct_critical_points);
        }
        if (ok) {
            const OracleReport rep = oracle_generic_s(5, 1000, opts.seed, 1e-9, opts.threads);
            ok = rep.distinct_critical_points == ml_degree_formula(5);
            if (!ok) detail = "n=5 count " + std::to_string(rep.distinct_critical_points);
        }
        lines.push_back({"multi-start oracle", ok, detail});
    }

    {
        const bool ok = ml_degree_formula(3) == 1 && variety_degree_formula(3) == 1;
        lines.push_back({"formula endpoints", ok, ""});
    }

    print_table(lines);
    bool all_pass = true;
    Json checks = Json::array();
    for (const auto& line : lines) {
        all_pass = all_pass && line.pass;
        checks.push_back({{"name", line.name}, {"pass", line.pass}, {"detail", line.detail}});
    }
    Json out;
    out["config"] = {{"subcommand", "all"},
                     {"n_range", std::to_string(lo) + ".." + std::to_string(hi)},
                     {"seed", opts.seed}, {"threads", opts.threads}, {"format", opts.format}};
    out["checks"] = std::move(checks);
    out["all_pass"] = all_pass;
    const int rc = emit(out, opts);
    if (rc != 0) return rc;
    return all_pass ? 0 : 1;
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"Census, certification, and likelihood tools for cycle concentration models"};
    app.require_subcommand(1);

    CommonOpts opts;
    int n = 4;
    double tol = 1e-10;
    int samples = 20;
    double harvest_tol = 1e-9;
    int max_n = 20;
    int id_samples = 50;
    double id_tol = 1e-9;
    std::string s_file;
    double mle_tol = 1e-10;
    int max_iter = 200;
    int starts = 0;
    double oracle_tol = 1e-9;
    std::string system_name = "concentration";
    std::string n_range = "4..8";

    CLI::App* formula = app.add_subcommand("formula", "Closed-form ML-degree");
    formula->add_option("--n", n, "Cycle length")->required()->check(CLI::Range(3, 59));
    add_common(formula, opts);

    CLI::App* degree = app.add_subcommand("degree", "Closed-form degree of the inverse variety");
    degree->add_option("--n", n, "Cycle length")->required()->check(CLI::Range(3, 200));
    add_common(degree, opts);

    CLI::App* enumerate_cmd = app.add_subcommand("enumerate", "Census of critical points at S = Id");
    enumerate_cmd->add_option("--n", n, "Cycle length")->required()->check(CLI::Range(4, 24));
    enumerate_cmd->add_option("--tol", tol, "Root/inversion tolerance");
    add_common(enumerate_cmd, opts);

    CLI::App* certify_cmd = app.add_subcommand("certify", "Rank certificates for the census");
    certify_cmd->add_option("--n", n, "Cycle length")->required()->check(CLI::Range(4, 24));
    certify_cmd->add_option("--tol", tol, "Root/inversion tolerance");
    certify_cmd->add_option("--samples", samples, "Harvest samples")->check(CLI::Range(10, 100000));
    certify_cmd->add_option("--harvest-tol", harvest_tol, "Harvest vanishing tolerance");
    add_common(certify_cmd, opts);

    CLI::App* identities = app.add_subcommand("identities", "Polynomial and ideal identity sweeps");
    identities->add_option("--max-n", max_n, "Sweep bound")->check(CLI::Range(4, 200));
    identities->add_option("--samples", id_samples, "Samples per edge-relation check");
    identities->add_option("--tol", id_tol, "Relative residual tolerance");
    add_common(identities, opts);

    CLI::App* mle = app.add_subcommand("mle", "Maximum likelihood concentration estimate");
    mle->add_option("--n", n, "Cycle length (ignored with --s)")->check(CLI::Range(3, 64));
    mle->add_option("--s", s_file, "Sample covariance as a JSON matrix file");
    mle->add_option("--tol", mle_tol, "Gradient norm tolerance");
    mle->add_option("--max-iter", max_iter, "Newton iteration cap");
    add_common(mle, opts);

    CLI::App* oracle = app.add_subcommand("oracle", "Multi-start critical point count");
    oracle->add_option("--n", n, "Cycle length")->required()->check(CLI::Range(4, 6));
    oracle->add_option("--starts", starts, "Newton starts (0 = per-n default)");
    oracle->add_option("--s", s_file, "Sample covariance as a JSON matrix file");
    oracle->add_option("--tol", oracle_tol, "Residual tolerance for reported solutions");
    oracle->add_option("--system", system_name, "Square system to solve")
        ->check(CLI::IsMember({"concentration", "adjugate"}));
    add_common(oracle, opts);

    CLI::App* all_cmd = app.add_subcommand("all", "Full verification pipeline");
    all_cmd->add_option("--n-range", n_range, "Census range A..B");
    add_common(all_cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (formula->parsed()) return run_formula(n, opts);
        if (degree->parsed()) return run_degree(n, opts);
        if (enumerate_cmd->parsed()) return run_enumerate(n, tol, opts);
        if (certify_cmd->parsed()) return run_certify(n, tol, samples, harvest_tol, opts);
        if (identities->parsed()) return run_identities(max_n, id_samples, id_tol, opts);
        if (mle->parsed()) return run_mle(n, s_file, mle_tol, max_iter, opts);
        if (oracle->parsed())
            return run_oracle(n, s_file, starts > 0 ? starts : default_starts(n), oracle_tol,
                              system_name, opts);
        if (all_cmd->parsed()) {
            int lo = 4, hi = 8;
            if (!parse_range(n_range, lo, hi)) {
                std::cerr << "error: bad --n-range, expected A..B\n";
                return 2;
            }
            return run_all(lo, hi, opts);
        }
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    }
}

} // namespace cyclemld

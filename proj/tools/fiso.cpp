// Command-line front door: dft, sieve, test-iso, gen, bench, verify.
// Exit codes: 0 success, 2 input error, 3 resource-cap error.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "fiso/automorphism.hpp"
#include "fiso/io.hpp"
#include "fiso/tester.hpp"

using nlohmann::json;

namespace {

std::vector<std::uint64_t> parse_uint_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoull(tok));
    return out;
}

// "r1,r2,...=b"
fiso::Constraint parse_constraint(const fiso::GroupSpec& g, const std::string& s) {
    const auto eq = s.find('=');
    const std::string lhs = eq == std::string::npos ? s : s.substr(0, eq);
    const std::uint64_t b = eq == std::string::npos ? 0 : std::stoull(s.substr(eq + 1));
    fiso::Constraint c{parse_uint_list(lhs), b};
    g.require_element(c.r);
    return c;
}

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty())
        std::cout << doc.dump(2) << "\n";
    else
        fiso::save_json(out_path, doc);
}

json sieve_report(const fiso::SieveOutput& out, std::uint64_t seed) {
    json rep;
    rep["seed"] = seed;
    rep["survivors"] = out.survivors;
    rep["bucket_labels"] = out.bucket_labels;
    rep["ledger"] = fiso::ledger_to_json(out.ledger);
    json q = json::array();
    for (const auto& row : out.q) {
        json r = json::array();
        for (const auto& e : row)
            r.push_back({{"exponent", e.root.exponent},
                         {"order", e.root.order},
                         {"displacement", e.displacement},
                         {"indeterminate", e.indeterminate}});
        q.push_back(std::move(r));
    }
    rep["q"] = std::move(q);
    json fc = json::array();
    for (auto v : out.f_column) fc.push_back(static_cast<int>(v));
    rep["f_column"] = std::move(fc);
    return rep;
}

const char* decision_name(fiso::Decision d) {
    switch (d) {
        case fiso::Decision::Accept: return "Accept";
        case fiso::Decision::Reject: return "Reject";
        default: return "Fail";
    }
}

struct SieveFlags {
    double theta = 0.25;
    std::uint32_t t = 0;
    std::uint64_t m_tilde = 0;
    double delta = 0.01;
    double eps_wt2 = 0.0, eps_wt4 = 0.0, eps_proj = 0.0, eps_coeff = 0.0;
    double round_tol = 0.0;
    bool paper_defaults = false;

    void add_stage_options(CLI::App* cmd) {
        cmd->add_option("--delta", delta, "per-stage failure probability");
        cmd->add_option("--eps-wt2", eps_wt2, "0: theta^2/4");
        cmd->add_option("--eps-wt4", eps_wt4, "0: theta^4/8");
        cmd->add_option("--eps-proj", eps_proj, "0: theta/2");
        cmd->add_option("--eps-coeff", eps_coeff, "0: theta^4/32");
        cmd->add_option("--round-tol", round_tol, "0: 23 theta^4/32");
    }
};

fiso::SieveConfig make_sieve_config(const SieveFlags& f) {
    fiso::SieveConfig cfg;
    cfg.theta = f.theta;
    cfg.t = f.t;
    cfg.m_tilde = f.m_tilde;
    cfg.paper_defaults = f.paper_defaults;
    cfg.delta_wt2 = cfg.delta_wt4 = cfg.delta_proj = cfg.delta_coeff = f.delta;
    cfg.eps_wt2 = f.eps_wt2;
    cfg.eps_wt4 = f.eps_wt4;
    cfg.eps_proj = f.eps_proj;
    cfg.eps_coeff = f.eps_coeff;
    cfg.rounding_tolerance = f.round_tol;
    return cfg;
}

int run(int argc, char** argv) {
    CLI::App app{"tolerant isomorphism testing for Boolean functions on finite Abelian groups"};
    app.require_subcommand(1);

    std::string out_path;

    // ---- dft ----
    auto* dft_cmd = app.add_subcommand("dft", "exact Fourier coefficients of a function file");
    std::string dft_in;
    dft_cmd->add_option("input", dft_in)->required();
    dft_cmd->add_option("--out", out_path);

    // ---- sieve ----
    auto* sieve_cmd = app.add_subcommand("sieve", "run the implicit sieve against a function file");
    std::string sieve_in;
    SieveFlags sf;
    std::uint64_t seed = 1;
    std::uint64_t sparse_s = 0;
    sieve_cmd->add_option("input", sieve_in)->required();
    sieve_cmd->add_option("--theta", sf.theta);
    sieve_cmd->add_option("--t", sf.t);
    sieve_cmd->add_option("--m-tilde", sf.m_tilde);
    sf.add_stage_options(sieve_cmd);
    sieve_cmd->add_option("--seed", seed);
    sieve_cmd->add_option("--sparse", sparse_s, "sparsity bound; selects the sparse sieve");
    sieve_cmd->add_flag("--paper-defaults", sf.paper_defaults);
    sieve_cmd->add_option("--out", out_path);

    // ---- test-iso ----
    auto* iso_cmd = app.add_subcommand("test-iso", "tolerant isomorphism test of f against g");
    std::string iso_f, iso_g;
    double epsilon = 0.05, tau = 0.4, s_bound = 0.0, theta_flag = 0.0;
    bool verify = false;
    SieveFlags isf;
    iso_cmd->add_option("f", iso_f)->required();
    iso_cmd->add_option("g", iso_g)->required();
    iso_cmd->add_option("--epsilon", epsilon);
    iso_cmd->add_option("--tau", tau);
    iso_cmd->add_option("--s", s_bound, "norm bound; default exact ||g_hat||_1");
    iso_cmd->add_option("--theta", theta_flag, "override the derived theta");
    iso_cmd->add_option("--t", isf.t);
    iso_cmd->add_option("--m-tilde", isf.m_tilde);
    isf.add_stage_options(iso_cmd);
    iso_cmd->add_option("--seed", seed);
    iso_cmd->add_option("--sparse", sparse_s, "sparsity bound; selects the sparse pipeline");
    iso_cmd->add_flag("--paper-defaults", isf.paper_defaults);
    iso_cmd->add_flag("--verify", verify, "add exact-distance ground truth to the report");
    iso_cmd->add_option("--out", out_path);

    // ---- gen ----
    auto* gen_cmd = app.add_subcommand("gen", "synthesize a function file");
    std::string kind, group_str, gen_in;
    std::vector<std::string> constraint_strs;
    double fraction = 0.1;
    gen_cmd->add_option("--kind", kind)->required();
    gen_cmd->add_option("--group", group_str);
    gen_cmd->add_option("--input", gen_in, "source file for automorphic-image / far-perturbation");
    gen_cmd->add_option("--constraint", constraint_strs, "subgroup constraint r1,r2,...=b");
    gen_cmd->add_option("--fraction", fraction);
    gen_cmd->add_option("--seed", seed);
    gen_cmd->add_option("--out", out_path)->required();

    // ---- bench ----
    auto* bench_cmd = app.add_subcommand("bench", "query-ledger bookkeeping over a scenario grid");
    std::string scenario_path;
    bench_cmd->add_option("scenario", scenario_path)->required();
    bench_cmd->add_option("--seed", seed);
    bench_cmd->add_option("--out", out_path);

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "exact ground truth for a pair of files");
    std::string ver_f, ver_g;
    verify_cmd->add_option("f", ver_f)->required();
    verify_cmd->add_option("g", ver_g)->required();
    verify_cmd->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand(dft_cmd)) {
        const auto f = fiso::load_function(dft_in);
        const auto table = fiso::dft(f);
        json rep;
        rep["spectral_norm"] = fiso::spectral_norm(table);
        rep["sparsity"] = fiso::sparsity(table);
        rep["support"] = fiso::support(table);
        json coeffs = json::array();
        for (const auto& c : table.coeffs) coeffs.push_back({c.real(), c.imag()});
        rep["coefficients"] = std::move(coeffs);
        emit(rep, out_path);
        return 0;
    }

    if (app.got_subcommand(sieve_cmd)) {
        const auto f = fiso::load_function(sieve_in);
        fiso::QueryOracle oracle(f);
        fiso::Rng rng(seed);
        fiso::Rng rng_m = rng.split(7);
        const std::uint64_t m = sf.m_tilde ? sf.m_tilde : 16;
        std::vector<fiso::GroupElement> M;
        for (std::uint64_t i = 0; i < m; ++i) M.push_back(f.group.sample_uniform(rng_m));
        auto cfg = make_sieve_config(sf);
        cfg.m_tilde = m;
        fiso::Rng rng_s = rng.split(8);
        const auto out = sparse_s ? fiso::sparse_implicit_sieve(oracle, M, sparse_s, cfg, rng_s)
                                  : fiso::implicit_sieve(oracle, M, cfg, rng_s);
        emit(sieve_report(out, seed), out_path);
        return 0;
    }

    if (app.got_subcommand(iso_cmd)) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto f = fiso::load_function(iso_f);
        const auto g = fiso::load_function(iso_g);
        if (!(f.group == g.group)) throw fiso::ConfigError("f and g live on different groups");
        const auto ghat = fiso::dft(g);
        fiso::TesterConfig cfg;
        cfg.epsilon = epsilon;
        cfg.tau = tau;
        cfg.theta_override = theta_flag;
        cfg.m_tilde = isf.m_tilde;
        cfg.sieve = make_sieve_config(isf);
        cfg.s = s_bound > 0 ? s_bound
                            : (sparse_s ? static_cast<double>(sparse_s)
                                        : std::max(1.0, fiso::spectral_norm(ghat)));
        fiso::QueryOracle oracle(f);
        fiso::Rng rng(seed);
        const auto verdict = sparse_s
                                 ? fiso::test_isomorphism_sparse(oracle, g, sparse_s, cfg, rng)
                                 : fiso::test_isomorphism(oracle, g, cfg, rng);
        json rep;
        rep["decision"] = decision_name(verdict.decision);
        rep["best_correlation"] = verdict.best_correlation;
        rep["theta"] = verdict.theta;
        rep["m_tilde"] = verdict.m_tilde;
        rep["seed"] = seed;
        rep["norm_warning"] = verdict.norm_warning;
        rep["total_queries"] = oracle.queries();
        rep["ledger"] = fiso::ledger_to_json(verdict.ledger);
        if (verdict.witness) {
            json images = json::array();
            for (const auto& im : verdict.witness->generator_images()) images.push_back(im);
            rep["witness_generator_images"] = std::move(images);
        }
        if (verify) {
            const auto truth = fiso::exact_automorphism_distance(f, g);
            rep["exact_distance"] = truth.distance;
            rep["promise_side"] =
                truth.distance <= epsilon ? "close" : (truth.distance >= epsilon + tau ? "far" : "gap");
        }
        rep["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        emit(rep, out_path);
        return 0;
    }

    if (app.got_subcommand(gen_cmd)) {
        fiso::Rng rng(seed);
        if (kind == "constant") {
            const auto g = fiso::group_from_string(group_str);
            fiso::BooleanFunction f{g, std::vector<std::int8_t>(g.order(), 1)};
            fiso::save_json(out_path, fiso::function_to_json(f));
            return 0;
        }
        if (kind == "subgroup-indicator") {
            const auto g = fiso::group_from_string(group_str);
            std::vector<fiso::Constraint> cons;
            for (const auto& s : constraint_strs) cons.push_back(parse_constraint(g, s));
            const auto members = fiso::subgroup_members(g, cons);
            const auto f = fiso::indicator_function(
                g, std::set<std::uint64_t>(members.begin(), members.end()));
            fiso::save_json(out_path, fiso::function_to_json(f));
            return 0;
        }
        if (kind == "random-boolean") {
            const auto g = fiso::group_from_string(group_str);
            fiso::BooleanFunction f{g, std::vector<std::int8_t>(g.order())};
            for (auto& v : f.values) v = rng.below(2) ? 1 : -1;
            fiso::save_json(out_path, fiso::function_to_json(f));
            return 0;
        }
        if (kind == "automorphic-image") {
            if (gen_in.empty()) throw fiso::ConfigError("automorphic-image needs --input");
            const auto f = fiso::load_function(gen_in);
            const auto auts = fiso::enumerate_automorphisms(f.group);
            const auto& a = auts[rng.below(auts.size())];
            fiso::save_json(out_path, fiso::function_to_json(fiso::apply(a, f)));
            json sidecar;
            json images = json::array();
            for (const auto& im : a.generator_images()) images.push_back(im);
            sidecar["generator_images"] = std::move(images);
            sidecar["seed"] = seed;
            fiso::save_json(out_path + ".aut.json", sidecar);
            return 0;
        }
        if (kind == "far-perturbation") {
            if (gen_in.empty()) throw fiso::ConfigError("far-perturbation needs --input");
            auto f = fiso::load_function(gen_in);
            const std::uint64_t n = f.group.order();
            const std::uint64_t flips =
                static_cast<std::uint64_t>(std::llround(fraction * static_cast<double>(n)));
            if (flips > n) throw fiso::ConfigError("fraction too large");
            // Fisher-Yates prefix for an exact flip count
            std::vector<std::uint64_t> idx(n);
            for (std::uint64_t i = 0; i < n; ++i) idx[i] = i;
            for (std::uint64_t i = 0; i < flips; ++i)
                std::swap(idx[i], idx[i + rng.below(n - i)]);
            for (std::uint64_t i = 0; i < flips; ++i) f.values[idx[i]] *= -1;
            fiso::save_json(out_path, fiso::function_to_json(f));
            return 0;
        }
        throw fiso::ConfigError("unknown gen kind: " + kind);
    }

    if (app.got_subcommand(bench_cmd)) {
        const json scenario = fiso::load_json(scenario_path);
        std::ostringstream csv;
        csv << "group,theta,t,m_tilde,delta,sparse,wt2_n,wt4_n,proj_n,coeff_n,planned_total,"
               "decision\n";
        for (const auto& run : scenario.value("runs", json::array())) {
            const auto g = fiso::group_from_string(run.at("group").get<std::string>());
            fiso::SieveConfig cfg;
            cfg.theta = run.at("theta").get<double>();
            cfg.t = run.value("t", 1u);
            cfg.m_tilde = run.value("m_tilde", 16u);
            cfg.paper_defaults = run.value("paper_defaults", false);
            const double delta = run.value("delta", 0.01);
            cfg.delta_wt2 = cfg.delta_wt4 = cfg.delta_proj = cfg.delta_coeff = delta;
            const std::uint64_t sp = run.value("sparse", 0u);
            const std::uint64_t buckets =
                run.value("buckets", std::min<std::uint64_t>(g.order(), 1024));
            const std::uint64_t survivors = run.value("survivors", 4u);
            const auto led = fiso::planned_ledger(cfg, g.lcm(), buckets, survivors, survivors,
                                                  sp != 0, sp);
            csv << run.at("group").get<std::string>() << "," << cfg.theta << "," << cfg.t << ","
                << cfg.m_tilde << "," << delta << "," << sp << ","
                << led.wt2_samples_per_bucket << "," << led.wt4_samples_per_bucket << ","
                << led.proj_samples_per_point << "," << led.coeff_samples_per_bucket << ","
                << led.total() << ",-\n";
        }
        if (out_path.empty())
            std::cout << csv.str();
        else {
            std::ofstream f(out_path);
            if (!f) throw fiso::ConfigError("cannot open for writing: " + out_path);
            f << csv.str();
        }
        return 0;
    }

    if (app.got_subcommand(verify_cmd)) {
        const auto f = fiso::load_function(ver_f);
        const auto g = fiso::load_function(ver_g);
        if (!(f.group == g.group)) throw fiso::ConfigError("f and g live on different groups");
        const auto truth = fiso::exact_automorphism_distance(f, g);
        json rep;
        rep["exact_distance"] = truth.distance;
        rep["hamming_distance"] = fiso::hamming_distance(f, g);
        rep["correlation"] = fiso::correlation(f, g);
        rep["f_spectral_norm"] = fiso::spectral_norm(fiso::dft(f));
        rep["g_spectral_norm"] = fiso::spectral_norm(fiso::dft(g));
        json images = json::array();
        for (const auto& im : truth.witness.generator_images()) images.push_back(im);
        rep["witness_generator_images"] = std::move(images);
        emit(rep, out_path);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const fiso::GroupTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const fiso::SearchCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

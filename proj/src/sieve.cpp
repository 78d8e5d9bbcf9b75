#include "fiso/sieve.hpp"

#include <cmath>
#include <numbers>

namespace fiso {

namespace {

std::uint64_t count_from_log(double eps, double ln_4_over_delta) {
    const double n = std::ceil(4.0 * ln_4_over_delta / (eps * eps));
    if (!(n >= 1.0)) return 1;
    if (n > 9.0e18) throw ConfigError("sample count overflows the ledger");
    return static_cast<std::uint64_t>(n);
}

std::uint32_t derive_paper_t(const SieveConfig& cfg, std::uint64_t L, std::uint64_t m_tilde) {
    // t >= log_L(100^4 m~^4 / theta^exp)
    const double num = 4.0 * std::log(100.0) + 4.0 * std::log(static_cast<double>(m_tilde)) +
                       cfg.paper_t_exponent * std::log(1.0 / cfg.theta);
    const double t = std::ceil(num / std::log(static_cast<double>(L)));
    if (t > 4096.0) throw ConfigError("paper-mode t exceeds the bucket-label budget");
    return static_cast<std::uint32_t>(std::max(1.0, t));
}

struct StageBudgets {
    std::uint64_t n_wt2, n_wt4, n_proj, n_coeff;
    double ln4d_wt2, ln4d_wt4, ln4d_proj, ln4d_coeff;
};

double ln_4_over(double delta) { return std::log(4.0) - std::log(delta); }

}  // namespace

void SieveConfig::validate() const {
    if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("theta must be in (0, 1]");
    if (paper_t_exponent < 1) throw ConfigError("paper t exponent must be >= 1");
    for (double d : {delta_wt2, delta_wt4, delta_proj, delta_coeff})
        if (!(d > 0.0 && d < 1.0)) throw ConfigError("stage deltas must be in (0, 1)");
}

double SieveConfig::resolved_eps_wt2() const { return eps_wt2 > 0 ? eps_wt2 : theta * theta / 4.0; }
double SieveConfig::resolved_eps_wt4() const {
    return eps_wt4 > 0 ? eps_wt4 : std::pow(theta, 4) / 8.0;
}
double SieveConfig::resolved_eps_proj() const { return eps_proj > 0 ? eps_proj : theta / 2.0; }
double SieveConfig::resolved_eps_coeff() const {
    return eps_coeff > 0 ? eps_coeff : std::pow(theta, 4) / 32.0;
}
double SieveConfig::resolved_wt2_keep() const {
    return wt2_keep > 0 ? wt2_keep : 3.0 * theta * theta / 4.0;
}
double SieveConfig::resolved_wt4_keep() const {
    return wt4_keep > 0 ? wt4_keep : 3.0 * std::pow(theta, 4) / 4.0;
}
double SieveConfig::resolved_rounding_tolerance() const {
    return rounding_tolerance > 0 ? rounding_tolerance : 23.0 * std::pow(theta, 4) / 32.0;
}

std::optional<RoundedRoot> round_to_root(std::complex<double> z, std::uint64_t L) {
    if (z == std::complex<double>(0.0, 0.0)) return std::nullopt;
    const double angle = std::arg(z);  // (-pi, pi]
    const double turns = angle / (2.0 * std::numbers::pi);
    double frac = turns - std::floor(turns);  // [0, 1)
    const double scaled = frac * static_cast<double>(L);
    std::uint64_t lo = static_cast<std::uint64_t>(std::floor(scaled)) % L;
    std::uint64_t hi = (lo + 1) % L;
    const auto dist = [&](std::uint64_t k) {
        return std::abs(z - RootOfUnity{k, L}.value());
    };
    const double dlo = dist(lo), dhi = dist(hi);
    std::uint64_t best;
    if (std::abs(dlo - dhi) < 1e-15)
        best = std::min(lo, hi);
    else
        best = dlo < dhi ? lo : hi;
    return RoundedRoot{RootOfUnity{best, L}, dist(best)};
}

namespace {

struct SurvivingBucket {
    std::vector<std::uint64_t> label;
    Coset coset;
    double wt2_estimate;
};

std::vector<std::uint64_t> true_dominators(const QueryOracle& oracle,
                                           const CosetStructure& cs,
                                           const std::vector<SurvivingBucket>& survivors) {
    const FourierTable table = dft(oracle.target());
    std::vector<std::uint64_t> out;
    out.reserve(survivors.size());
    for (const auto& s : survivors) {
        double best = -1.0;
        std::uint64_t best_idx = 0;
        for (std::uint64_t i = 0; i < cs.group().order(); ++i) {
            if (cs.bucket_of_index(i) != s.label) continue;
            const double m = std::abs(table.coeffs[i]);
            if (m > best) {
                best = m;
                best_idx = i;
            }
        }
        out.push_back(best_idx);
    }
    return out;
}

SieveOutput run_sieve(QueryOracle& oracle, const std::vector<GroupElement>& M,
                      const SieveConfig& cfg, Rng& rng, bool sparse, std::uint64_t s) {
    cfg.validate();
    const GroupSpec& g = oracle.group();
    for (const auto& x : M) g.require_element(x);
    const std::uint64_t m_tilde = cfg.m_tilde ? cfg.m_tilde : M.size();
    if (m_tilde != M.size()) throw ConfigError("m_tilde does not match |M|");
    if (m_tilde < 1) throw ConfigError("need at least one labeled point");
    const std::uint64_t L = g.lcm();
    const double theta = cfg.theta;

    std::uint32_t t = cfg.t;
    if (t == 0) {
        if (sparse)
            t = static_cast<std::uint32_t>(std::max(
                1.0, std::ceil(std::log(100.0 * static_cast<double>(s * s)) /
                               std::log(static_cast<double>(L)))));
        else if (cfg.paper_defaults)
            t = derive_paper_t(cfg, L, m_tilde);
        else
            throw ConfigError("desk mode requires an explicit t");
    }

    SieveOutput out;
    out.group = g;
    out.points = M;

    Rng rng_struct = rng.split(1);
    Rng rng_wt2 = rng.split(2);
    Rng rng_wt4 = rng.split(3);
    Rng rng_ys = rng.split(4);
    Rng rng_proj = rng.split(5);
    Rng rng_coeff = rng.split(6);

    const CosetStructure cs = random_coset_structure(g, t, rng_struct);
    const auto buckets = cs.nonempty_buckets();

    // stage deltas
    double delta_wt2 = cfg.delta_wt2;
    double delta_wt4 = cfg.delta_wt4;
    if (cfg.paper_defaults && !sparse) {
        const double ln4d = std::log(4.0) + std::log(100.0) +
                            static_cast<double>(t) * std::log(static_cast<double>(L));
        // represented through explicit sample overrides below
        delta_wt2 = delta_wt4 = -1.0;  // sentinel, see budgets
        (void)ln4d;
    }
    if (cfg.paper_defaults && sparse) delta_wt2 = 1.0 / (100.0 * static_cast<double>(s * s));

    const auto wt2_samples = [&]() -> std::uint64_t {
        if (cfg.paper_defaults && !sparse) {
            const double ln4d = std::log(4.0) + std::log(100.0) +
                                static_cast<double>(t) * std::log(static_cast<double>(L));
            return count_from_log(cfg.resolved_eps_wt2(), ln4d);
        }
        return sample_count(cfg.resolved_eps_wt2(), delta_wt2);
    }();

    // ---- wt2 stage ----
    std::vector<SurvivingBucket> stage1;
    const double keep2 = sparse ? theta * theta / 2.0 : cfg.resolved_wt2_keep();
    {
        const std::uint64_t before = oracle.queries();
        std::uint64_t bucket_id = 0;
        for (const auto& [label, members] : buckets) {
            Coset coset{g.element_at(members.front()), cs.subgroup(), cs.subgroup_annihilator()};
            EstimatorConfig ec;
            ec.epsilon = cfg.resolved_eps_wt2();
            ec.delta = 0.5;  // placeholder, overridden by explicit samples
            ec.samples = wt2_samples;
            Rng r = rng_wt2.split(bucket_id++);
            const RealEstimate est = estimate_wt2(oracle, coset, ec, r);
            const bool keep = sparse ? est.value > keep2 : est.value >= keep2;
            if (keep) stage1.push_back({label, std::move(coset), est.value});
        }
        out.ledger.wt2_samples_per_bucket = wt2_samples;
        out.ledger.wt2_queries = oracle.queries() - before;
    }

    // ---- wt4 stage ----
    std::vector<SurvivingBucket> survivors;
    if (sparse) {
        survivors = std::move(stage1);
    } else {
        const double keep4 = cfg.resolved_wt4_keep();
        const std::uint64_t before = oracle.queries();
        std::uint64_t bucket_id = 0;
        for (auto& b : stage1) {
            double eps4;
            std::uint64_t n4;
            if (cfg.paper_defaults) {
                eps4 = (std::pow(theta, 4) / 8.0) * b.wt2_estimate;
                const double ln4d = std::log(4.0) + std::log(100.0) +
                                    static_cast<double>(t) * std::log(static_cast<double>(L));
                n4 = count_from_log(eps4, ln4d);
            } else {
                eps4 = cfg.resolved_eps_wt4();
                n4 = sample_count(eps4, delta_wt4);
            }
            EstimatorConfig ec;
            ec.epsilon = eps4;
            ec.delta = 0.5;
            ec.samples = n4;
            Rng r = rng_wt4.split(bucket_id++);
            const RealEstimate est = estimate_wt4(oracle, b.coset, ec, r);
            if (out.ledger.wt4_samples_per_bucket == 0) out.ledger.wt4_samples_per_bucket = n4;
            if (est.value >= keep4) survivors.push_back(std::move(b));
        }
        out.ledger.wt4_queries = oracle.queries() - before;
    }

    const std::size_t nsurv = survivors.size();
    if (static_cast<double>(nsurv) > 16.0 / std::pow(theta, 4))
        throw Error("survivor count exceeds the Parseval bound 16/theta^4");
    out.survivors = nsurv;
    for (const auto& s2 : survivors) out.bucket_labels.push_back(s2.label);

    // ---- fresh points ----
    std::vector<GroupElement> ys;
    ys.reserve(m_tilde);
    for (std::uint64_t i = 0; i < m_tilde; ++i) ys.push_back(g.sample_uniform(rng_ys));

    // ---- per-bucket coefficient magnitude (squared) ----
    std::vector<double> mag2(nsurv, 1.0);
    if (!sparse && nsurv > 0) {
        const std::uint64_t before = oracle.queries();
        std::uint64_t nc;
        if (cfg.paper_defaults) {
            const double ln4d =
                std::log(4.0) + std::log(100.0 * static_cast<double>(nsurv));
            nc = count_from_log(cfg.resolved_eps_coeff(), ln4d);
        } else {
            nc = sample_count(cfg.resolved_eps_coeff(), cfg.delta_coeff);
        }
        for (std::size_t j = 0; j < nsurv; ++j) {
            EstimatorConfig ec;
            ec.epsilon = cfg.resolved_eps_coeff();
            ec.delta = 0.5;
            ec.samples = nc;
            Rng r = rng_coeff.split(j);
            const RealEstimate est = estimate_wt2(oracle, survivors[j].coset, ec, r);
            // survivors are dominated by one heavy coefficient, so the bucket
            // mass approximates |f_hat(alpha(C))|^2; clamp to the theta/2
            // floor so a low estimate cannot blow up the ratio
            mag2[j] = std::max(est.value, theta * theta / 4.0);
        }
        out.ledger.coeff_samples_per_bucket = nc;
        out.ledger.coeff_queries = oracle.queries() - before;
    }

    // ---- projection pairs and Q ----
    out.q.assign(m_tilde, std::vector<QEntry>(nsurv));
    out.raw.assign(m_tilde, std::vector<std::complex<double>>(nsurv));
    if (nsurv > 0) {
        const std::uint64_t before = oracle.queries();
        std::uint64_t np;
        if (cfg.paper_defaults) {
            const double ln4d = std::log(4.0) + std::log(100.0 * static_cast<double>(m_tilde) *
                                                         static_cast<double>(nsurv));
            np = count_from_log(cfg.resolved_eps_proj(), ln4d);
        } else {
            np = sample_count(cfg.resolved_eps_proj(), cfg.delta_proj);
        }
        const double tol = cfg.resolved_rounding_tolerance();
        for (std::uint64_t i = 0; i < m_tilde; ++i) {
            const GroupElement shifted = element_sub(g, ys[i], M[i]);
            for (std::size_t j = 0; j < nsurv; ++j) {
                EstimatorConfig ec;
                ec.epsilon = cfg.resolved_eps_proj();
                ec.delta = 0.5;
                ec.samples = np;
                Rng r1 = rng_proj.split(2 * (i * nsurv + j));
                Rng r2 = rng_proj.split(2 * (i * nsurv + j) + 1);
                const auto p1 = estimate_projection(oracle, survivors[j].coset, ys[i], ec, r1);
                const auto p2 = estimate_projection(oracle, survivors[j].coset, shifted, ec, r2);
                const std::complex<double> prod = p1.value * std::conj(p2.value);
                std::complex<double> entry;
                if (sparse) {
                    const double m = std::abs(prod);
                    if (m < 1e-12) {
                        out.raw[i][j] = prod;
                        out.q[i][j] = QEntry{RootOfUnity{0, L}, 0.0, true};
                        continue;
                    }
                    entry = prod / m;
                } else {
                    entry = prod / mag2[j];
                }
                out.raw[i][j] = entry;
                const auto rounded = round_to_root(entry, L);
                if (!rounded) {
                    out.q[i][j] = QEntry{RootOfUnity{0, L}, 0.0, true};
                } else {
                    out.q[i][j] =
                        QEntry{rounded->root, rounded->displacement, rounded->displacement > tol};
                }
            }
        }
        out.ledger.proj_samples_per_point = np;
        out.ledger.proj_queries = oracle.queries() - before;
    }

    // ---- label column ----
    {
        const std::uint64_t before = oracle.queries();
        out.f_column.reserve(m_tilde);
        for (const auto& x : M) out.f_column.push_back(static_cast<std::int8_t>(oracle.query(x)));
        out.ledger.label_queries = oracle.queries() - before;
    }

    if (cfg.collect_truth) out.debug_truth = true_dominators(oracle, cs, survivors);
    return out;
}

}  // namespace

SieveOutput implicit_sieve(QueryOracle& oracle, const std::vector<GroupElement>& M,
                           const SieveConfig& cfg, Rng& rng) {
    return run_sieve(oracle, M, cfg, rng, /*sparse=*/false, 0);
}

SieveOutput sparse_implicit_sieve(QueryOracle& oracle, const std::vector<GroupElement>& M,
                                  std::uint64_t s, SieveConfig cfg, Rng& rng) {
    if (s < 1) throw ConfigError("sparsity bound must be >= 1");
    return run_sieve(oracle, M, cfg, rng, /*sparse=*/true, s);
}

std::vector<PrefixBucket> gl_prefix_search(QueryOracle& oracle, const GlConfig& cfg, Rng& rng,
                                           QueryLedger* ledger, std::size_t* max_worklist) {
    if (!(cfg.eta > 0.0 && cfg.eta <= 1.0)) throw ConfigError("eta must be in (0, 1]");
    const GroupSpec& g = oracle.group();
    const std::size_t n = g.rank();
    std::uint64_t max_q = 0;
    for (std::size_t i = 0; i < n; ++i) max_q = std::max(max_q, g.modulus(i));
    double delta = cfg.delta;
    if (delta <= 0.0)
        delta = cfg.eta * cfg.eta / (400.0 * static_cast<double>(n) * static_cast<double>(max_q));
    EstimatorConfig ec;
    ec.epsilon = cfg.eta * cfg.eta / 4.0;
    ec.delta = delta;
    ec.samples = cfg.samples;

    const double keep = cfg.eta * cfg.eta / 2.0;
    std::vector<PrefixBucket> worklist{{std::vector<std::uint64_t>{}, g.identity(), 1.0}};
    if (max_worklist) *max_worklist = worklist.size();
    std::uint64_t stream = 0;
    for (std::size_t level = 0; level < n; ++level) {
        // H_level = {x : x_j = 0 for j <= level}; its buckets are the
        // prefix classes
        std::vector<Constraint> constraints;
        for (std::size_t j = 0; j <= level; ++j) {
            GroupElement e = g.identity();
            e[j] = 1;
            constraints.push_back({e, 0});
        }
        const auto H = subgroup_members(g, constraints);
        const auto Hperp = annihilator(g, H);
        std::vector<PrefixBucket> next;
        for (const auto& parent : worklist) {
            for (std::uint64_t c = 0; c < g.modulus(level); ++c) {
                PrefixBucket child;
                child.prefix = parent.prefix;
                child.prefix.push_back(c);
                child.representative = g.identity();
                for (std::size_t j = 0; j < child.prefix.size(); ++j)
                    child.representative[j] = child.prefix[j];
                Coset coset{child.representative, H, Hperp};
                Rng r = rng.split(stream++);
                const std::uint64_t before = oracle.queries();
                const RealEstimate est = estimate_wt2(oracle, coset, ec, r);
                if (ledger) {
                    ledger->wt2_samples_per_bucket = est.samples;
                    ledger->wt2_queries += oracle.queries() - before;
                }
                child.wt2 = est.value;
                if (est.value > keep) next.push_back(std::move(child));
            }
        }
        worklist = std::move(next);
        if (max_worklist) *max_worklist = std::max(*max_worklist, worklist.size());
    }
    return worklist;
}

QueryLedger planned_ledger(const SieveConfig& cfg, std::uint64_t L, std::uint64_t buckets,
                           std::uint64_t wt2_survivors, std::uint64_t final_survivors,
                           bool sparse, std::uint64_t s) {
    cfg.validate();
    QueryLedger led;
    const std::uint64_t m_tilde = cfg.m_tilde ? cfg.m_tilde : 1;
    std::uint32_t t = cfg.t;
    if (t == 0 && cfg.paper_defaults && !sparse) t = derive_paper_t(cfg, L, m_tilde);
    if (t == 0 && sparse)
        t = static_cast<std::uint32_t>(std::max(
            1.0, std::ceil(std::log(100.0 * static_cast<double>(s * s)) /
                           std::log(static_cast<double>(L)))));
    if (t == 0) throw ConfigError("planned_ledger needs a resolvable t");

    if (cfg.paper_defaults && !sparse) {
        const double ln4d = std::log(4.0) + std::log(100.0) +
                            static_cast<double>(t) * std::log(static_cast<double>(L));
        led.wt2_samples_per_bucket = count_from_log(cfg.resolved_eps_wt2(), ln4d);
        const double eps4 = (std::pow(cfg.theta, 4) / 8.0) * cfg.resolved_wt2_keep();
        led.wt4_samples_per_bucket = count_from_log(eps4, ln4d);
    } else if (cfg.paper_defaults && sparse) {
        led.wt2_samples_per_bucket =
            sample_count(cfg.resolved_eps_wt2(), 1.0 / (100.0 * static_cast<double>(s * s)));
    } else {
        led.wt2_samples_per_bucket = sample_count(cfg.resolved_eps_wt2(), cfg.delta_wt2);
        if (!sparse)
            led.wt4_samples_per_bucket = sample_count(cfg.resolved_eps_wt4(), cfg.delta_wt4);
    }
    led.wt2_queries = 2 * led.wt2_samples_per_bucket * buckets;
    led.wt4_queries = sparse ? 0 : 4 * led.wt4_samples_per_bucket * wt2_survivors;

    if (final_survivors > 0) {
        if (cfg.paper_defaults) {
            led.proj_samples_per_point = count_from_log(
                cfg.resolved_eps_proj(),
                std::log(4.0) + std::log(100.0 * static_cast<double>(m_tilde) *
                                         static_cast<double>(final_survivors)));
            if (!sparse)
                led.coeff_samples_per_bucket = count_from_log(
                    cfg.resolved_eps_coeff(),
                    std::log(4.0) + std::log(100.0 * static_cast<double>(final_survivors)));
        } else {
            led.proj_samples_per_point = sample_count(cfg.resolved_eps_proj(), cfg.delta_proj);
            if (!sparse)
                led.coeff_samples_per_bucket =
                    sample_count(cfg.resolved_eps_coeff(), cfg.delta_coeff);
        }
        led.proj_queries = 2 * m_tilde * final_survivors * led.proj_samples_per_point;
        led.coeff_queries = sparse ? 0 : 2 * final_survivors * led.coeff_samples_per_bucket;
    }
    led.label_queries = m_tilde;
    return led;
}

}  // namespace fiso

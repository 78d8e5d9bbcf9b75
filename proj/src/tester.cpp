#include "fiso/tester.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace fiso {

void TesterConfig::validate() const {
    if (!(epsilon > 0.0 && epsilon <= 0.5)) throw ConfigError("epsilon must be in (0, 1/2]");
    if (!(tau > 0.0 && tau <= 0.5)) throw ConfigError("tau must be in (0, 1/2]");
    if (epsilon + tau > 1.0) throw ConfigError("epsilon + tau must be <= 1");
    if (!(s >= 1.0)) throw ConfigError("norm bound s must be >= 1");
    if (m_tilde_constant <= 0.0) throw ConfigError("m_tilde constant must be positive");
}

double TesterConfig::resolved_theta(std::uint64_t L) const {
    if (theta_override > 0.0) return theta_override;
    double theta = tau / (12.0 * s);
    if (theta_l_factor) theta *= 10.0 * std::numbers::pi / static_cast<double>(L);
    return theta;
}

std::uint64_t TesterConfig::resolved_m_tilde() const {
    if (m_tilde) return m_tilde;
    const double ratio = s / tau;
    const double m = std::ceil(m_tilde_constant * ratio * ratio * std::max(1.0, std::log(ratio)));
    return static_cast<std::uint64_t>(std::max(1.0, m));
}

std::optional<SparseSurrogate> reconstruct_surrogate(const SieveOutput& out,
                                                     std::uint64_t span_cap) {
    const GroupSpec& g = out.group;
    const std::uint64_t L = g.lcm();
    const std::size_t m = out.points.size();
    const std::size_t n = out.survivors;

    SparseSurrogate surrogate;
    surrogate.group = g;
    if (n == 0) return surrogate;

    for (const auto& row : out.q)
        for (const auto& e : row)
            if (e.indeterminate) return std::nullopt;

    // lambda * col_c + sum_k lambdas[k] * col_basis[k] = 0 iff the exponent
    // sum vanishes mod L in every row
    const auto vanish = [&](std::size_t c, const std::vector<std::size_t>& basis,
                            std::uint64_t lambda, const std::vector<std::uint64_t>& lambdas) {
        for (std::size_t i = 0; i < m; ++i) {
            // accumulate in __uint128_t-free form: reduce per term
            std::uint64_t acc = (lambda % L) * (out.q[i][c].root.exponent % L) % L;
            for (std::size_t k = 0; k < basis.size(); ++k)
                acc = (acc + (lambdas[k] % L) * (out.q[i][basis[k]].root.exponent % L)) % L;
            if (acc != 0) return false;
        }
        return true;
    };

    const auto span = minimal_spanning_set_generic(L, n, vanish, span_cap);
    if (!span) return std::nullopt;
    if (span->basis.size() > g.rank()) return std::nullopt;

    // relabel: k-th spanning column becomes the k-th canonical generator
    std::vector<GroupElement> labels(n);
    for (std::size_t k = 0; k < span->basis.size(); ++k) {
        GroupElement e = g.identity();
        e[k] = 1;
        labels[span->basis[k]] = std::move(e);
    }
    for (const auto& [col, wit] : span->dependencies) {
        // lambda * S_col = -sum lambdas[k] * S_basis[k], lambda a unit in Z_L
        GroupElement acc = g.identity();
        for (std::size_t k = 0; k < span->basis.size(); ++k)
            acc = element_combine(g, acc, labels[span->basis[k]], 1,
                                  static_cast<std::int64_t>(wit.lambdas[k] % L));
        const std::uint64_t inv = inverse_mod(wit.lambda % L, L);
        labels[col] = element_scale(g, acc, -static_cast<std::int64_t>(inv));
    }

    std::map<std::uint64_t, std::size_t> seen;
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t idx = g.index_of(labels[j]);
        if (!seen.emplace(idx, j).second) return std::nullopt;
    }

    surrogate.support = std::move(labels);
    surrogate.coefficients.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            acc += static_cast<double>(out.f_column[i]) * out.q[i][j].root.conj().value();
        surrogate.coefficients[j] = acc / static_cast<double>(m);
    }
    return surrogate;
}

SweepResult correlation_sweep(const SparseSurrogate& surrogate, const FourierTable& g_table,
                              const std::vector<Automorphism>& auts) {
    if (!(surrogate.group == g_table.group)) throw ShapeError("correlation_sweep: group mismatch");
    SweepResult res;
    res.correlations.reserve(auts.size());
    for (std::size_t a = 0; a < auts.size(); ++a) {
        // corr(f, g o A) = sum_r f_hat(r) conj(g_hat(dd(A^-1)(r))), since the
        // spectrum of g o A is r -> g_hat(dd(A^-1)(r))
        const Automorphism dd = dual_double(invert(auts[a]));
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < surrogate.support.size(); ++j) {
            const std::uint64_t target = dd.apply_index(surrogate.group.index_of(surrogate.support[j]));
            acc += surrogate.coefficients[j] * std::conj(g_table.coeffs[target]);
        }
        const double c = acc.real();
        res.correlations.push_back(c);
        if (a == 0 || c > res.best) {
            res.best = c;
            res.argmax = a;
        }
    }
    if (auts.empty()) res.best = 0.0;
    return res;
}

namespace {

Verdict run_tester(QueryOracle& oracle, const BooleanFunction& g, const TesterConfig& cfg,
                   Rng& rng, bool sparse, std::uint64_t s_count) {
    cfg.validate();
    if (!(oracle.group() == g.group)) throw ShapeError("tester: group mismatch");
    const GroupSpec& G = g.group;

    Verdict v;
    v.theta = cfg.resolved_theta(G.lcm());
    v.m_tilde = cfg.resolved_m_tilde();

    const FourierTable ghat = dft(g);
    if (sparse) {
        if (sparsity(ghat) > s_count) v.norm_warning = true;
    } else if (spectral_norm(ghat) > cfg.s + 1e-9) {
        v.norm_warning = true;
    }

    Rng rng_m = rng.split(101);
    Rng rng_sieve = rng.split(102);
    std::vector<GroupElement> M;
    M.reserve(v.m_tilde);
    for (std::uint64_t i = 0; i < v.m_tilde; ++i) M.push_back(G.sample_uniform(rng_m));

    SieveConfig sc = cfg.sieve;
    sc.theta = v.theta;
    sc.m_tilde = v.m_tilde;
    const SieveOutput out = sparse
                                ? sparse_implicit_sieve(oracle, M, s_count, sc, rng_sieve)
                                : implicit_sieve(oracle, M, sc, rng_sieve);
    v.ledger = out.ledger;

    auto surrogate = reconstruct_surrogate(out, cfg.span_cap);
    if (!surrogate) return v;  // Fail
    v.surrogate = surrogate;

    const auto auts = enumerate_automorphisms(G, cfg.aut_group_cap, cfg.aut_enumeration_cap);
    const std::uint64_t before = oracle.queries();
    const SweepResult sweep = correlation_sweep(*surrogate, ghat, auts);
    if (oracle.queries() != before) throw Error("tester: sweep touched the oracle");

    v.best_correlation = sweep.best;
    const double accept_line =
        1.0 - 2.0 * cfg.epsilon - (sparse ? cfg.tau / 4.0 : cfg.tau / 2.0);
    const double reject_line =
        1.0 - 2.0 * cfg.epsilon - (sparse ? 7.0 * cfg.tau / 4.0 : 3.0 * cfg.tau / 2.0);
    if (!auts.empty() && sweep.best >= accept_line) {
        v.decision = Decision::Accept;
        v.witness = auts[sweep.argmax];
    } else if (auts.empty() || sweep.best <= reject_line) {
        v.decision = Decision::Reject;
    } else {
        v.decision = Decision::Fail;
    }
    return v;
}

}  // namespace

Verdict test_isomorphism(QueryOracle& oracle, const BooleanFunction& g, const TesterConfig& cfg,
                         Rng& rng) {
    return run_tester(oracle, g, cfg, rng, /*sparse=*/false, 0);
}

Verdict test_isomorphism_sparse(QueryOracle& oracle, const BooleanFunction& g, std::uint64_t s,
                                const TesterConfig& cfg, Rng& rng) {
    if (s < 1) throw ConfigError("sparsity bound must be >= 1");
    return run_tester(oracle, g, cfg, rng, /*sparse=*/true, s);
}

}  // namespace fiso

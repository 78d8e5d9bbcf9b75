#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "fiso/estimators.hpp"

namespace fiso {

// Knobs for the implicit sieve. Desk mode (paper_defaults == false) uses the
// explicit eps_*/delta_* fields; paper mode derives every tolerance from
// theta, m_tilde and L by the published formulas and is primarily useful for
// query-ledger bookkeeping, since the prescribed t makes L^t astronomically
// large for realistic theta.
struct SieveConfig {
    double theta = 0.25;
    std::uint32_t t = 0;         // 0: derive (paper formula / sparse default)
    std::uint64_t m_tilde = 0;   // 0: taken from |M|
    bool paper_defaults = false;
    int paper_t_exponent = 64;   // theta exponent inside the t formula

    double eps_wt2 = 0.0;        // 0: theta^2/4
    double delta_wt2 = 0.01;
    double eps_wt4 = 0.0;        // 0: theta^4/8 (desk); paper scales by ~wt2
    double delta_wt4 = 0.01;
    double eps_proj = 0.0;       // 0: theta/2
    double delta_proj = 0.01;
    double eps_coeff = 0.0;      // 0: theta^4/32
    double delta_coeff = 0.01;

    double wt2_keep = 0.0;       // 0: 3 theta^2 / 4
    double wt4_keep = 0.0;       // 0: 3 theta^4 / 4
    double rounding_tolerance = 0.0;  // 0: 23 theta^4 / 32

    bool collect_truth = false;  // record true dominating characters

    void validate() const;
    double resolved_eps_wt2() const;
    double resolved_eps_wt4() const;
    double resolved_eps_proj() const;
    double resolved_eps_coeff() const;
    double resolved_wt2_keep() const;
    double resolved_wt4_keep() const;
    double resolved_rounding_tolerance() const;
};

// Exact per-stage accounting of oracle evaluations.
struct QueryLedger {
    std::uint64_t wt2_samples_per_bucket = 0;
    std::uint64_t wt2_queries = 0;
    std::uint64_t wt4_samples_per_bucket = 0;
    std::uint64_t wt4_queries = 0;
    std::uint64_t proj_samples_per_point = 0;
    std::uint64_t proj_queries = 0;
    std::uint64_t coeff_samples_per_bucket = 0;
    std::uint64_t coeff_queries = 0;
    std::uint64_t label_queries = 0;  // the f(x_i) column

    std::uint64_t total() const {
        return wt2_queries + wt4_queries + proj_queries + coeff_queries + label_queries;
    }
};

struct QEntry {
    RootOfUnity root;
    double displacement = 0.0;
    bool indeterminate = false;
};

struct SieveOutput {
    GroupSpec group;
    std::vector<GroupElement> points;                      // M
    std::vector<std::int8_t> f_column;                     // f(x_i)
    std::size_t survivors = 0;                             // N
    std::vector<std::vector<QEntry>> q;                    // m_tilde x N
    std::vector<std::vector<std::complex<double>>> raw;    // pre-rounding
    std::vector<std::vector<std::uint64_t>> bucket_labels; // per survivor
    QueryLedger ledger;
    // True dominating character index per survivor (oracle mode only).
    std::vector<std::uint64_t> debug_truth;
};

// Algorithm: random shifted coset structure of dimension t; wt2 filter; wt4
// filter; fresh y_1..y_m; projection pairs; per-bucket coefficient magnitude;
// Q entries rounded to exact L-th roots.
SieveOutput implicit_sieve(QueryOracle& oracle, const std::vector<GroupElement>& M,
                           const SieveConfig& cfg, Rng& rng);

// Sparse specialization: t defaults to ceil(log_L(100 s^2)), the wt4 stage is
// skipped, the wt2 keep test is strict > theta^2/2, and Q entries are pure
// phase normalizations.
SieveOutput sparse_implicit_sieve(QueryOracle& oracle, const std::vector<GroupElement>& M,
                                  std::uint64_t s, SieveConfig cfg, Rng& rng);

struct PrefixBucket {
    std::vector<std::uint64_t> prefix;  // pinned leading coordinates
    GroupElement representative;        // prefix padded with zeros
    double wt2;
};

struct GlConfig {
    double eta = 0.25;
    double delta = 0.0;  // 0: eta^2 / (400 n max_q), per the union bound
    std::optional<std::uint64_t> samples;
};

// Prefix bucket splitting: survivors at the final level each pin a single
// character. Returns the surviving singleton buckets with their estimates.
std::vector<PrefixBucket> gl_prefix_search(QueryOracle& oracle, const GlConfig& cfg, Rng& rng,
                                           QueryLedger* ledger = nullptr,
                                           std::size_t* max_worklist = nullptr);

// Nearest of the L roots by angular distance, ties toward the smaller
// exponent. nullopt for z == 0.
struct RoundedRoot {
    RootOfUnity root;
    double displacement;
};
std::optional<RoundedRoot> round_to_root(std::complex<double> z, std::uint64_t L);

// Deterministic bookkeeping of the per-stage sample counts a sieve run will
// use, given the survivor counts. Paper mode substitutes the published
// confidence formulas (wt4 error uses the 3 theta^2/4 keep floor).
QueryLedger planned_ledger(const SieveConfig& cfg, std::uint64_t L, std::uint64_t buckets,
                           std::uint64_t wt2_survivors, std::uint64_t final_survivors,
                           bool sparse = false, std::uint64_t s = 0);

}  // namespace fiso

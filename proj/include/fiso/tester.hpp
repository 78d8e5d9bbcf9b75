#pragma once

#include <optional>
#include <vector>

#include "fiso/automorphism.hpp"
#include "fiso/sieve.hpp"

namespace fiso {

struct TesterConfig {
    double epsilon = 0.05;
    double tau = 0.4;
    double s = 1.0;              // spectral-norm bound (sparsity for the sparse path)
    double theta_override = 0.0; // 0: tau / (12 s)
    bool theta_l_factor = false; // multiply theta by 10 pi / L
    std::uint64_t m_tilde = 0;   // 0: ceil(c (s/tau)^2 ln(s/tau)), floor 1
    double m_tilde_constant = 8.0;
    std::uint64_t span_cap = 100000000;
    std::uint64_t aut_group_cap = 64;
    std::uint64_t aut_enumeration_cap = 2000000;
    SieveConfig sieve;           // theta / m_tilde fields are overwritten

    void validate() const;
    double resolved_theta(std::uint64_t L) const;
    std::uint64_t resolved_m_tilde() const;
};

// The sieve output reinterpreted as a sparse function: support characters
// (after relabeling onto canonical generators) with complex coefficients.
struct SparseSurrogate {
    GroupSpec group;
    std::vector<GroupElement> support;
    std::vector<std::complex<double>> coefficients;
};

enum class Decision { Accept, Reject, Fail };

struct Verdict {
    Decision decision = Decision::Fail;
    double best_correlation = 0.0;
    std::optional<Automorphism> witness;  // present on Accept
    QueryLedger ledger;
    double theta = 0.0;
    std::uint64_t m_tilde = 0;
    bool norm_warning = false;  // g exceeded the declared bound s
    std::optional<SparseSurrogate> surrogate;
};

// Columns of Q treated as evaluation tables of unknown characters: find the
// smallest spanning subset (dependencies checked by exact exponent sums mod
// L), relabel its members onto canonical generators, derive every dependent
// column from its witness, and average the labeled f column against the
// conjugated Q columns for the coefficients. nullopt is the Fail outcome
// (no spanning set within cap, indeterminate entries, rank overflow, or a
// relabeling collision).
std::optional<SparseSurrogate> reconstruct_surrogate(const SieveOutput& out,
                                                     std::uint64_t span_cap = 100000000);

struct SweepResult {
    std::vector<double> correlations;  // one per automorphism
    std::size_t argmax = 0;
    double best = 0.0;
};

// corr(A) = Re sum_j r_j conj(g_hat(dd(A)(S_j))): the spectral inner product
// of the permuted surrogate with g_hat. Touches no oracle.
SweepResult correlation_sweep(const SparseSurrogate& surrogate, const FourierTable& g_table,
                              const std::vector<Automorphism>& auts);

// Accept if some automorphism clears 1 - 2 eps - tau/2, Reject if all fall
// below 1 - 2 eps - 3 tau/2, Fail otherwise.
Verdict test_isomorphism(QueryOracle& oracle, const BooleanFunction& g, const TesterConfig& cfg,
                         Rng& rng);

// Sparse variant: sparse sieve, thresholds tau/4 and 7 tau/4.
Verdict test_isomorphism_sparse(QueryOracle& oracle, const BooleanFunction& g, std::uint64_t s,
                                const TesterConfig& cfg, Rng& rng);

}  // namespace fiso

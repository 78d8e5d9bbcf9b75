#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "fiso/group.hpp"

namespace fiso {

// A coset r+H in the character-index domain together with the annihilator
// H^perp used for sampling-based projections. Members are element indices.
struct Coset {
    GroupElement rep;
    std::vector<std::uint64_t> subgroup;     // H
    std::vector<std::uint64_t> annihilator;  // H^perp
};

struct Constraint {
    GroupElement r;
    std::uint64_t b;  // value in Z_L
};

// V_{b,r_1..r_k} = {x : r_j * x = b_j} by exhaustive scan. May be empty for
// nonzero b.
std::vector<std::uint64_t> subgroup_members(const GroupSpec& g,
                                            const std::vector<Constraint>& constraints);

// H^perp = {x : x * y = 0 for all y in H}. Verifies H is a subgroup.
std::vector<std::uint64_t> annihilator(const GroupSpec& g,
                                       const std::vector<std::uint64_t>& subgroup);

bool is_subgroup(const GroupSpec& g, const std::vector<std::uint64_t>& members);

Coset make_coset(const GroupSpec& g, GroupElement rep, std::vector<std::uint64_t> subgroup);

// Random beta_1..beta_t plus a random nonzero shift u in Z_L^t. Bucket labels
// are stored shifted: label_i(alpha) = (alpha * beta_i + u_i) mod L.
class CosetStructure {
  public:
    CosetStructure(GroupSpec g, std::vector<GroupElement> betas, std::vector<std::uint64_t> shift);

    const GroupSpec& group() const { return group_; }
    std::size_t dimension() const { return betas_.size(); }
    const std::vector<GroupElement>& betas() const { return betas_; }
    const std::vector<std::uint64_t>& shift() const { return shift_; }
    const std::vector<std::uint64_t>& subgroup() const { return subgroup_; }
    const std::vector<std::uint64_t>& subgroup_annihilator() const { return annihilator_; }

    std::vector<std::uint64_t> bucket_of(const GroupElement& alpha) const;
    std::vector<std::uint64_t> bucket_of_index(std::uint64_t alpha_index) const;

    // Representation (rep, H) of the bucket with the given label, or nullopt
    // when no element carries that label.
    std::optional<Coset> bucket_coset_representation(const std::vector<std::uint64_t>& label) const;

    // All nonempty buckets: label -> member element indices.
    std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>> nonempty_buckets() const;

  private:
    GroupSpec group_;
    std::vector<GroupElement> betas_;
    std::vector<std::uint64_t> shift_;
    std::vector<std::uint64_t> subgroup_;
    std::vector<std::uint64_t> annihilator_;
};

CosetStructure random_coset_structure(const GroupSpec& g, std::uint32_t t, Rng& rng);

// Witness of pseudo-dependence: coefficients lambda_1..lambda_k in Z_L with
// lambda_{unit_index} a unit and sum lambda_i r_i = 0.
struct DependencyWitness {
    std::vector<std::uint64_t> lambdas;
    std::size_t unit_index;
};

struct IndependenceResult {
    bool independent;
    std::optional<DependencyWitness> witness;
};

// Exhaustive search over Z_L^k; throws SearchCapExceeded when k*L^k > cap.
IndependenceResult is_pseudo_independent(const GroupSpec& g, const std::vector<GroupElement>& elems,
                                         std::uint64_t cap = 100000000);

// Expression of a dependent column in terms of a spanning set:
// lambda * r + sum_i lambda_i * basis_i = 0 with lambda a unit.
struct SpanWitness {
    std::uint64_t lambda;
    std::vector<std::uint64_t> lambdas;
};

struct SpanningSet {
    std::vector<std::size_t> basis;                       // indices into cols
    std::map<std::size_t, SpanWitness> dependencies;      // for cols not in basis
};

// Smallest pseudo-independent subset of cols such that every other column has
// a SpanWitness against it; subsets searched in increasing size. Returns
// nullopt ("Fail") when no subset works within the cap.
//
// The predicate form lets callers test dependencies on objects that stand in
// for unknown group elements (e.g. character-evaluation columns): vanish(c,
// basis, lambda, lambdas) must decide whether lambda*cols[c] + sum lambdas[i]
// * cols[basis[i]] vanishes.
using VanishTest = std::function<bool(std::size_t candidate, const std::vector<std::size_t>& basis,
                                      std::uint64_t lambda,
                                      const std::vector<std::uint64_t>& lambdas)>;

std::optional<SpanningSet> minimal_spanning_set_generic(std::uint64_t L, std::size_t ncols,
                                                        const VanishTest& vanish,
                                                        std::uint64_t cap);

std::optional<SpanningSet> minimal_spanning_set(const GroupSpec& g,
                                                const std::vector<GroupElement>& cols,
                                                std::uint64_t cap = 100000000);

}  // namespace fiso

#include "fiso/cosets.hpp"

#include <algorithm>
#include <unordered_set>

namespace fiso {

std::vector<std::uint64_t> subgroup_members(const GroupSpec& g,
                                            const std::vector<Constraint>& constraints) {
    for (const auto& c : constraints) g.require_element(c.r);
    std::vector<std::uint64_t> members;
    for (std::uint64_t i = 0; i < g.order(); ++i) {
        const GroupElement x = g.element_at(i);
        bool ok = true;
        for (const auto& c : constraints) {
            if (pseudo_inner(g, c.r, x) != c.b % g.lcm()) {
                ok = false;
                break;
            }
        }
        if (ok) members.push_back(i);
    }
    return members;
}

bool is_subgroup(const GroupSpec& g, const std::vector<std::uint64_t>& members) {
    if (members.empty()) return false;
    std::unordered_set<std::uint64_t> set(members.begin(), members.end());
    if (!set.count(0)) return false;
    for (std::uint64_t a : members)
        for (std::uint64_t b : members)
            if (!set.count(sub_index(g, a, b))) return false;
    return true;
}

std::vector<std::uint64_t> annihilator(const GroupSpec& g,
                                       const std::vector<std::uint64_t>& subgroup) {
    if (!is_subgroup(g, subgroup)) throw NotASubgroup("annihilator: input is not a subgroup");
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (std::uint64_t y : subgroup) {
            if (pair_index(g, x, y) != 0) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(x);
    }
    return out;
}

Coset make_coset(const GroupSpec& g, GroupElement rep, std::vector<std::uint64_t> subgroup) {
    g.require_element(rep);
    auto ann = annihilator(g, subgroup);
    return Coset{std::move(rep), std::move(subgroup), std::move(ann)};
}

CosetStructure::CosetStructure(GroupSpec g, std::vector<GroupElement> betas,
                               std::vector<std::uint64_t> shift)
    : group_(std::move(g)), betas_(std::move(betas)), shift_(std::move(shift)) {
    if (betas_.empty()) throw ConfigError("coset structure needs t >= 1");
    if (shift_.size() != betas_.size()) throw ShapeError("shift length must equal t");
    bool allzero = true;
    for (std::uint64_t u : shift_)
        if (u % group_.lcm() != 0) allzero = false;
    if (allzero) throw ConfigError("random shift must be nonzero");
    std::vector<Constraint> cs;
    for (const auto& b : betas_) cs.push_back({b, 0});
    subgroup_ = subgroup_members(group_, cs);
    annihilator_ = annihilator(group_, subgroup_);
}

std::vector<std::uint64_t> CosetStructure::bucket_of(const GroupElement& alpha) const {
    group_.require_element(alpha);
    std::vector<std::uint64_t> label(betas_.size());
    for (std::size_t i = 0; i < betas_.size(); ++i)
        label[i] = (pseudo_inner(group_, alpha, betas_[i]) + shift_[i]) % group_.lcm();
    return label;
}

std::vector<std::uint64_t> CosetStructure::bucket_of_index(std::uint64_t alpha_index) const {
    return bucket_of(group_.element_at(alpha_index));
}

std::optional<Coset> CosetStructure::bucket_coset_representation(
    const std::vector<std::uint64_t>& label) const {
    for (std::uint64_t i = 0; i < group_.order(); ++i) {
        if (bucket_of_index(i) == label)
            return Coset{group_.element_at(i), subgroup_, annihilator_};
    }
    return std::nullopt;
}

std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>> CosetStructure::nonempty_buckets()
    const {
    std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>> buckets;
    for (std::uint64_t i = 0; i < group_.order(); ++i) buckets[bucket_of_index(i)].push_back(i);
    return buckets;
}

CosetStructure random_coset_structure(const GroupSpec& g, std::uint32_t t, Rng& rng) {
    if (t < 1) throw ConfigError("coset structure dimension t must be >= 1");
    std::vector<GroupElement> betas;
    betas.reserve(t);
    for (std::uint32_t i = 0; i < t; ++i) betas.push_back(g.sample_uniform(rng));
    const std::uint64_t L = g.lcm();
    std::vector<std::uint64_t> shift(t);
    for (;;) {
        bool allzero = true;
        for (auto& u : shift) {
            u = rng.below(L);
            if (u != 0) allzero = false;
        }
        if (!allzero) break;
    }
    return CosetStructure(g, std::move(betas), std::move(shift));
}

IndependenceResult is_pseudo_independent(const GroupSpec& g, const std::vector<GroupElement>& elems,
                                         std::uint64_t cap) {
    if (elems.empty()) throw ShapeError("is_pseudo_independent: empty input");
    for (const auto& e : elems) g.require_element(e);
    const std::uint64_t L = g.lcm();
    const std::size_t k = elems.size();
    double space = static_cast<double>(k);
    for (std::size_t i = 0; i < k; ++i) space *= static_cast<double>(L);
    if (space > static_cast<double>(cap))
        throw SearchCapExceeded("is_pseudo_independent: search space exceeds cap");

    std::vector<std::uint64_t> lambdas(k, 0);
    for (;;) {
        // advance odometer
        std::size_t pos = 0;
        while (pos < k && ++lambdas[pos] == L) lambdas[pos++] = 0;
        if (pos == k) break;  // wrapped: all-zero again, search done

        std::size_t unit_index = k;
        for (std::size_t i = 0; i < k; ++i) {
            if (lambdas[i] != 0 && is_unit_mod(lambdas[i], L)) {
                unit_index = i;
                break;
            }
        }
        if (unit_index == k) continue;
        GroupElement acc = g.identity();
        for (std::size_t i = 0; i < k; ++i)
            acc = element_add(g, acc, element_scale(g, elems[i], static_cast<std::int64_t>(lambdas[i])));
        if (acc == g.identity())
            return {false, DependencyWitness{lambdas, unit_index}};
    }
    return {true, std::nullopt};
}

namespace {

// Enumerate combinations of {0..n-1} of the given size in lexicographic order.
bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
    const std::size_t k = comb.size();
    std::size_t i = k;
    while (i-- > 0) {
        if (comb[i] + (k - i) < n) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

std::optional<SpanningSet> minimal_spanning_set_generic(std::uint64_t L, std::size_t ncols,
                                                        const VanishTest& vanish,
                                                        std::uint64_t cap) {
    if (ncols == 0) throw ShapeError("minimal_spanning_set: no columns");
    std::vector<std::uint64_t> units;
    for (std::uint64_t v = 1; v < L; ++v)
        if (is_unit_mod(v, L)) units.push_back(v);
    if (L == 1) units.push_back(0);

    std::uint64_t work = 0;
    for (std::size_t size = 0; size <= ncols; ++size) {
        std::vector<std::size_t> comb(size);
        for (std::size_t i = 0; i < size; ++i) comb[i] = i;
        for (;;) {
            SpanningSet result;
            result.basis = comb;
            bool all_spanned = true;
            for (std::size_t c = 0; c < ncols && all_spanned; ++c) {
                if (std::find(comb.begin(), comb.end(), c) != comb.end()) continue;
                bool found = false;
                std::vector<std::uint64_t> lambdas(size, 0);
                for (std::uint64_t lambda : units) {
                    std::fill(lambdas.begin(), lambdas.end(), 0);
                    for (;;) {
                        if (++work > cap)
                            throw SearchCapExceeded("minimal_spanning_set: cap exceeded");
                        if (vanish(c, comb, lambda, lambdas)) {
                            result.dependencies[c] = SpanWitness{lambda, lambdas};
                            found = true;
                            break;
                        }
                        std::size_t pos = 0;
                        while (pos < size && ++lambdas[pos] == L) lambdas[pos++] = 0;
                        if (pos == size) break;
                    }
                    if (found) break;
                }
                if (!found) all_spanned = false;
            }
            if (all_spanned) return result;
            if (size == 0 || !next_combination(comb, ncols)) break;
        }
    }
    return std::nullopt;
}

std::optional<SpanningSet> minimal_spanning_set(const GroupSpec& g,
                                                const std::vector<GroupElement>& cols,
                                                std::uint64_t cap) {
    if (cols.empty()) throw ShapeError("minimal_spanning_set: no columns");
    for (const auto& e : cols) g.require_element(e);
    auto vanish = [&](std::size_t c, const std::vector<std::size_t>& basis, std::uint64_t lambda,
                      const std::vector<std::uint64_t>& lambdas) {
        GroupElement acc = element_scale(g, cols[c], static_cast<std::int64_t>(lambda));
        for (std::size_t i = 0; i < basis.size(); ++i)
            acc = element_add(g, acc,
                              element_scale(g, cols[basis[i]], static_cast<std::int64_t>(lambdas[i])));
        return acc == g.identity();
    };
    return minimal_spanning_set_generic(g.lcm(), cols.size(), vanish, cap);
}

}  // namespace fiso

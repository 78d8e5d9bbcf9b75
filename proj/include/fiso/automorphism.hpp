#pragma once

#include <optional>
#include <vector>

#include "fiso/fourier.hpp"
#include "fiso/group.hpp"

namespace fiso {

// A bijective endomorphism of G, stored as generator images with the full
// index permutation cached.
class Automorphism {
  public:
    static std::optional<Automorphism> from_generator_images(const GroupSpec& g,
                                                             std::vector<GroupElement> images);
    static Automorphism identity(const GroupSpec& g);

    const GroupSpec& group() const { return group_; }
    const std::vector<GroupElement>& generator_images() const { return images_; }

    std::uint64_t apply_index(std::uint64_t i) const { return map_[i]; }
    GroupElement operator()(const GroupElement& x) const {
        return group_.element_at(map_[group_.index_of(x)]);
    }

    bool operator==(const Automorphism& o) const { return map_ == o.map_; }

  private:
    Automorphism(GroupSpec g, std::vector<GroupElement> images, std::vector<std::uint64_t> map)
        : group_(std::move(g)), images_(std::move(images)), map_(std::move(map)) {}
    GroupSpec group_;
    std::vector<GroupElement> images_;
    std::vector<std::uint64_t> map_;
};

// Complete Aut(G) by generator-image brute force with an order prefilter.
// Throws GroupTooLarge when |G| > group_cap or the search would enumerate
// more than enumeration_cap candidate maps.
std::vector<Automorphism> enumerate_automorphisms(const GroupSpec& g, std::uint64_t group_cap = 64,
                                                  std::uint64_t enumeration_cap = 2000000);

// Double dual: the element map satisfying chi_{dd(r)}(x) = chi_r(A(x)).
Automorphism dual_double(const Automorphism& a);

// compose(a, b) maps x to a(b(x)).
Automorphism compose(const Automorphism& a, const Automorphism& b);
Automorphism invert(const Automorphism& a);

// f o A, i.e. x -> f(A(x)).
BooleanFunction apply(const Automorphism& a, const BooleanFunction& f);

struct AutomorphismDistance {
    double distance;
    Automorphism witness;
};

// min over Aut(G) of the fractional Hamming distance delta(f, g o A).
AutomorphismDistance exact_automorphism_distance(const BooleanFunction& f,
                                                 const BooleanFunction& g,
                                                 std::uint64_t group_cap = 64);

}  // namespace fiso

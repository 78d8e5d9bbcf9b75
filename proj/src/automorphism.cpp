#include "fiso/automorphism.hpp"

#include <algorithm>

namespace fiso {

std::optional<Automorphism> Automorphism::from_generator_images(const GroupSpec& g,
                                                                std::vector<GroupElement> images) {
    if (images.size() != g.rank()) throw ShapeError("need one image per canonical generator");
    for (std::size_t i = 0; i < images.size(); ++i) {
        g.require_element(images[i]);
        // well-defined extension requires q_i * image = 0
        if (g.modulus(i) % element_order(g, images[i]) != 0) return std::nullopt;
    }
    const std::uint64_t n = g.order();
    std::vector<std::uint64_t> map(n);
    std::vector<bool> hit(n, false);
    std::vector<std::uint64_t> image_idx(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) image_idx[i] = g.index_of(images[i]);
    for (std::uint64_t x = 0; x < n; ++x) {
        GroupElement coords = g.element_at(x);
        std::uint64_t y = 0;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            std::uint64_t term = image_idx[i];
            // y += coords[i] * images[i], computed by repeated doubling is
            // overkill at desk scale; coordinates are small
            for (std::uint64_t k = 0; k < coords[i]; ++k) y = add_index(g, y, term);
        }
        if (hit[y]) return std::nullopt;
        hit[y] = true;
        map[x] = y;
    }
    return Automorphism(g, std::move(images), std::move(map));
}

Automorphism Automorphism::identity(const GroupSpec& g) {
    std::vector<GroupElement> images;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        GroupElement e = g.identity();
        e[i] = 1;
        images.push_back(e);
    }
    auto a = from_generator_images(g, std::move(images));
    return *a;
}

std::vector<Automorphism> enumerate_automorphisms(const GroupSpec& g, std::uint64_t group_cap,
                                                  std::uint64_t enumeration_cap) {
    if (g.order() > group_cap) throw GroupTooLarge("group order exceeds automorphism cap");
    // candidate images of e_i: elements of order exactly p_i^{m_i}
    std::vector<std::vector<std::uint64_t>> candidates(g.rank());
    for (std::uint64_t x = 0; x < g.order(); ++x) {
        const std::uint64_t ord = element_order(g, g.element_at(x));
        for (std::size_t i = 0; i < g.rank(); ++i)
            if (ord == g.modulus(i)) candidates[i].push_back(x);
    }
    double total = 1.0;
    for (const auto& c : candidates) total *= static_cast<double>(c.size());
    if (total > static_cast<double>(enumeration_cap))
        throw GroupTooLarge("generator-image search space exceeds cap");

    std::vector<Automorphism> out;
    std::vector<std::size_t> pick(g.rank(), 0);
    for (;;) {
        std::vector<GroupElement> images;
        images.reserve(g.rank());
        for (std::size_t i = 0; i < g.rank(); ++i)
            images.push_back(g.element_at(candidates[i][pick[i]]));
        if (auto a = Automorphism::from_generator_images(g, std::move(images))) out.push_back(*a);
        std::size_t pos = 0;
        while (pos < g.rank() && ++pick[pos] == candidates[pos].size()) pick[pos++] = 0;
        if (pos == g.rank()) break;
    }
    return out;
}

Automorphism dual_double(const Automorphism& a) {
    const GroupSpec& g = a.group();
    const std::uint64_t L = g.lcm();
    // dd(r) coordinates are pinned by pairing against canonical generators:
    // (L/q_j) * dd(r)_j = r * A(e_j)  (mod L)
    std::vector<GroupElement> images;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        GroupElement r = g.identity();
        r[i] = 1;
        GroupElement s(g.rank());
        for (std::size_t j = 0; j < g.rank(); ++j) {
            GroupElement ej = g.identity();
            ej[j] = 1;
            const std::uint64_t w = pseudo_inner(g, r, a(ej));
            const std::uint64_t weight = L / g.modulus(j);
            if (w % weight != 0) throw Error("dual_double: pairing value not divisible");
            s[j] = (w / weight) % g.modulus(j);
        }
        images.push_back(std::move(s));
    }
    auto dd = Automorphism::from_generator_images(g, std::move(images));
    if (!dd) throw Error("dual_double: image is not an automorphism");
    return *dd;
}

Automorphism compose(const Automorphism& a, const Automorphism& b) {
    if (!(a.group() == b.group())) throw ShapeError("compose: group mismatch");
    const GroupSpec& g = a.group();
    std::vector<GroupElement> images;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        GroupElement e = g.identity();
        e[i] = 1;
        images.push_back(a(b(e)));
    }
    auto c = Automorphism::from_generator_images(g, std::move(images));
    if (!c) throw Error("compose: result not an automorphism");
    return *c;
}

Automorphism invert(const Automorphism& a) {
    const GroupSpec& g = a.group();
    std::vector<std::uint64_t> inv(g.order());
    for (std::uint64_t x = 0; x < g.order(); ++x) inv[a.apply_index(x)] = x;
    std::vector<GroupElement> images;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        GroupElement e = g.identity();
        e[i] = 1;
        images.push_back(g.element_at(inv[g.index_of(e)]));
    }
    auto b = Automorphism::from_generator_images(g, std::move(images));
    if (!b) throw Error("invert: result not an automorphism");
    return *b;
}

BooleanFunction apply(const Automorphism& a, const BooleanFunction& f) {
    if (!(a.group() == f.group)) throw ShapeError("apply: group mismatch");
    BooleanFunction out{f.group, std::vector<std::int8_t>(f.values.size())};
    for (std::uint64_t x = 0; x < f.group.order(); ++x) out.values[x] = f.values[a.apply_index(x)];
    return out;
}

AutomorphismDistance exact_automorphism_distance(const BooleanFunction& f,
                                                 const BooleanFunction& g,
                                                 std::uint64_t group_cap) {
    if (!(f.group == g.group)) throw ShapeError("distance: group mismatch");
    auto auts = enumerate_automorphisms(f.group, group_cap);
    double best = 2.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < auts.size(); ++i) {
        const double d = hamming_distance(f, apply(auts[i], g));
        if (d < best) {
            best = d;
            best_i = i;
        }
    }
    return {best, auts[best_i]};
}

}  // namespace fiso

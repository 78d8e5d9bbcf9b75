#include "fiso/group.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace fiso {

namespace {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

}  // namespace

std::complex<double> RootOfUnity::value() const {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(exponent) / static_cast<double>(order);
    return {std::cos(angle), std::sin(angle)};
}

GroupSpec GroupSpec::build(const std::vector<std::pair<std::uint64_t, std::uint32_t>>& moduli) {
    if (moduli.empty()) throw InvalidGroup("group needs at least one cyclic factor");
    GroupSpec g;
    for (const auto& [p, m] : moduli) {
        if (!is_prime(p)) throw InvalidGroup("modulus base " + std::to_string(p) + " is not prime");
        if (m < 1) throw InvalidGroup("modulus exponent must be >= 1");
        g.moduli_.push_back({p, m, ipow(p, m)});
    }
    g.order_ = 1;
    g.lcm_ = 1;
    for (const auto& mod : g.moduli_) {
        g.order_ *= mod.value;
        g.lcm_ = std::lcm(g.lcm_, mod.value);
    }
    g.strides_.assign(g.moduli_.size(), 1);
    for (std::size_t i = g.moduli_.size(); i-- > 1;)
        g.strides_[i - 1] = g.strides_[i] * g.moduli_[i].value;
    g.weights_.reserve(g.moduli_.size());
    for (const auto& mod : g.moduli_) g.weights_.push_back(g.lcm_ / mod.value);
    return g;
}

GroupElement GroupSpec::element_at(std::uint64_t index) const {
    if (index >= order_) throw IndexError("element index out of range");
    GroupElement e(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
        e[i] = index / strides_[i];
        index %= strides_[i];
    }
    return e;
}

std::uint64_t GroupSpec::index_of(const GroupElement& e) const {
    require_element(e);
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < rank(); ++i) index += e[i] * strides_[i];
    return index;
}

GroupElement GroupSpec::sample_uniform(Rng& rng) const {
    GroupElement e(rank());
    for (std::size_t i = 0; i < rank(); ++i) e[i] = rng.below(moduli_[i].value);
    return e;
}

bool GroupSpec::valid_element(const GroupElement& e) const {
    if (e.size() != rank()) return false;
    for (std::size_t i = 0; i < rank(); ++i)
        if (e[i] >= moduli_[i].value) return false;
    return true;
}

void GroupSpec::require_element(const GroupElement& e) const {
    if (!valid_element(e)) throw ShapeError("element does not match group shape");
}

std::uint64_t pseudo_inner(const GroupSpec& g, const GroupElement& r, const GroupElement& x) {
    g.require_element(r);
    g.require_element(x);
    std::uint64_t acc = 0;
    const std::uint64_t L = g.lcm();
    for (std::size_t i = 0; i < g.rank(); ++i) {
        acc = (acc + ((g.pairing_weight(i) * (r[i] % L)) % L) * (x[i] % L)) % L;
    }
    return acc;
}

RootOfUnity character_eval(const GroupSpec& g, const GroupElement& r, const GroupElement& x) {
    return {pseudo_inner(g, r, x), g.lcm()};
}

GroupElement element_combine(const GroupSpec& g, const GroupElement& a, const GroupElement& b,
                             std::int64_t sa, std::int64_t sb) {
    g.require_element(a);
    g.require_element(b);
    GroupElement out(g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i) {
        const std::int64_t q = static_cast<std::int64_t>(g.modulus(i));
        std::int64_t v = (sa % q) * static_cast<std::int64_t>(a[i]) +
                         (sb % q) * static_cast<std::int64_t>(b[i]);
        v %= q;
        if (v < 0) v += q;
        out[i] = static_cast<std::uint64_t>(v);
    }
    return out;
}

GroupElement element_add(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
    return element_combine(g, a, b, 1, 1);
}

GroupElement element_sub(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
    return element_combine(g, a, b, 1, -1);
}

GroupElement element_scale(const GroupSpec& g, const GroupElement& a, std::int64_t s) {
    return element_combine(g, a, g.identity(), s, 0);
}

std::uint64_t add_index(const GroupSpec& g, std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        const std::uint64_t s = g.stride(i);
        const std::uint64_t q = g.modulus(i);
        const std::uint64_t da = a / s, db = b / s;
        a -= da * s;
        b -= db * s;
        out += ((da + db) % q) * s;
    }
    return out;
}

std::uint64_t sub_index(const GroupSpec& g, std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        const std::uint64_t s = g.stride(i);
        const std::uint64_t q = g.modulus(i);
        const std::uint64_t da = a / s, db = b / s;
        a -= da * s;
        b -= db * s;
        out += ((da + q - db) % q) * s;
    }
    return out;
}

std::uint64_t pair_index(const GroupSpec& g, std::uint64_t r, std::uint64_t x) {
    std::uint64_t acc = 0;
    const std::uint64_t L = g.lcm();
    for (std::size_t i = 0; i < g.rank(); ++i) {
        const std::uint64_t s = g.stride(i);
        const std::uint64_t dr = r / s, dx = x / s;
        r -= dr * s;
        x -= dx * s;
        acc = (acc + ((g.pairing_weight(i) * dr) % L) * dx) % L;
    }
    return acc;
}

std::uint64_t element_order(const GroupSpec& g, const GroupElement& a) {
    g.require_element(a);
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        const std::uint64_t q = g.modulus(i);
        const std::uint64_t coord_order = q / gcd_u64(a[i], q);
        ord = std::lcm(ord, coord_order == 0 ? 1 : coord_order);
    }
    return ord;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

bool is_unit_mod(std::uint64_t v, std::uint64_t L) { return std::gcd(v % L, L) == 1; }

std::uint64_t inverse_mod(std::uint64_t v, std::uint64_t L) {
    v %= L;
    for (std::uint64_t c = 1; c < L; ++c)
        if ((v * c) % L == 1) return c;
    if (L == 1) return 0;
    throw Error("inverse_mod: value is not a unit");
}

}  // namespace fiso

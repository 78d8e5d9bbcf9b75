#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "fiso/errors.hpp"
#include "fiso/rng.hpp"

namespace fiso {

// Element of G = Z_{p1^m1} x ... x Z_{pn^mn}, one reduced residue per factor.
using GroupElement = std::vector<std::uint64_t>;

struct Modulus {
    std::uint64_t prime;
    std::uint32_t exponent;
    std::uint64_t value;  // prime^exponent
};

// Exact L-th root of unity omega_L^exponent. Multiplication is exponent
// addition mod L; conjugation is negation. Complex values are formed only at
// the boundary where Fourier coefficients are assembled.
struct RootOfUnity {
    std::uint64_t exponent = 0;
    std::uint64_t order = 1;

    std::complex<double> value() const;
    RootOfUnity conj() const { return {(order - exponent % order) % order, order}; }
    RootOfUnity operator*(const RootOfUnity& o) const {
        return {(exponent + o.exponent) % order, order};
    }
    bool operator==(const RootOfUnity& o) const = default;
};

// The group Z_{p1^m1} x ... x Z_{pn^mn} with its mixed-radix element
// indexing (most significant factor first) and the pairing weights L/p_i^m_i
// used by the pseudo-inner product.
class GroupSpec {
  public:
    static GroupSpec build(const std::vector<std::pair<std::uint64_t, std::uint32_t>>& moduli);

    std::size_t rank() const { return moduli_.size(); }
    std::uint64_t order() const { return order_; }
    std::uint64_t lcm() const { return lcm_; }
    const std::vector<Modulus>& moduli() const { return moduli_; }
    std::uint64_t modulus(std::size_t i) const { return moduli_[i].value; }
    std::uint64_t pairing_weight(std::size_t i) const { return weights_[i]; }
    std::uint64_t stride(std::size_t i) const { return strides_[i]; }

    GroupElement identity() const { return GroupElement(rank(), 0); }

    // Mixed-radix bijection {0..order-1} <-> element tuples, first factor
    // most significant.
    GroupElement element_at(std::uint64_t index) const;
    std::uint64_t index_of(const GroupElement& e) const;

    GroupElement sample_uniform(Rng& rng) const;

    bool valid_element(const GroupElement& e) const;
    void require_element(const GroupElement& e) const;

    bool operator==(const GroupSpec& o) const {
        return order_ == o.order_ && lcm_ == o.lcm_ && strides_ == o.strides_;
    }

  private:
    std::vector<Modulus> moduli_;
    std::vector<std::uint64_t> strides_;
    std::vector<std::uint64_t> weights_;
    std::uint64_t order_ = 1;
    std::uint64_t lcm_ = 1;
};

// (sum_i (L/p_i^m_i) r_i x_i) mod L. Bilinear and symmetric.
std::uint64_t pseudo_inner(const GroupSpec& g, const GroupElement& r, const GroupElement& x);

// chi_r(x) as an exact root of unity with exponent pseudo_inner(r, x).
RootOfUnity character_eval(const GroupSpec& g, const GroupElement& r, const GroupElement& x);

// Coordinate-wise (sa*a_i + sb*b_i) mod p_i^m_i. Scalars may be negative.
GroupElement element_combine(const GroupSpec& g, const GroupElement& a, const GroupElement& b,
                             std::int64_t sa, std::int64_t sb);

GroupElement element_add(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
GroupElement element_sub(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
GroupElement element_scale(const GroupSpec& g, const GroupElement& a, std::int64_t s);

// Index-space arithmetic used in sampling-heavy inner loops.
std::uint64_t add_index(const GroupSpec& g, std::uint64_t a, std::uint64_t b);
std::uint64_t sub_index(const GroupSpec& g, std::uint64_t a, std::uint64_t b);
std::uint64_t pair_index(const GroupSpec& g, std::uint64_t r, std::uint64_t x);

// Multiplicative order of an element (smallest k >= 1 with k*a = 0).
std::uint64_t element_order(const GroupSpec& g, const GroupElement& a);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
bool is_unit_mod(std::uint64_t v, std::uint64_t L);
std::uint64_t inverse_mod(std::uint64_t v, std::uint64_t L);

}  // namespace fiso

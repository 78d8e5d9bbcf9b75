#include "fiso/fourier.hpp"

#include <algorithm>

namespace fiso {

void BooleanFunction::validate() const {
    if (values.size() != group.order()) throw ShapeError("truth table length must equal |G|");
    for (auto v : values)
        if (v != 1 && v != -1) throw ShapeError("truth table entries must be +/-1");
}

FourierTable dft(const GroupSpec& g, const std::vector<std::complex<double>>& values) {
    if (values.size() != g.order()) throw ShapeError("value count must equal |G|");
    const std::uint64_t n = g.order();
    const std::uint64_t L = g.lcm();
    // cache the L roots once
    std::vector<std::complex<double>> roots(L);
    for (std::uint64_t k = 0; k < L; ++k) roots[k] = RootOfUnity{k, L}.value();
    FourierTable t{g, std::vector<std::complex<double>>(n)};
    for (std::uint64_t r = 0; r < n; ++r) {
        std::complex<double> acc = 0.0;
        for (std::uint64_t x = 0; x < n; ++x)
            acc += values[x] * std::conj(roots[pair_index(g, r, x)]);
        t.coeffs[r] = acc / static_cast<double>(n);
    }
    return t;
}

FourierTable dft(const BooleanFunction& f) {
    f.validate();
    std::vector<std::complex<double>> vals(f.values.begin(), f.values.end());
    return dft(f.group, vals);
}

std::vector<std::complex<double>> idft(const FourierTable& t) {
    const GroupSpec& g = t.group;
    const std::uint64_t n = g.order();
    const std::uint64_t L = g.lcm();
    if (t.coeffs.size() != n) throw ShapeError("coefficient count must equal |G|");
    std::vector<std::complex<double>> roots(L);
    for (std::uint64_t k = 0; k < L; ++k) roots[k] = RootOfUnity{k, L}.value();
    std::vector<std::complex<double>> out(n);
    for (std::uint64_t x = 0; x < n; ++x) {
        std::complex<double> acc = 0.0;
        for (std::uint64_t r = 0; r < n; ++r) acc += t.coeffs[r] * roots[pair_index(g, r, x)];
        out[x] = acc;
    }
    return out;
}

double spectral_norm(const FourierTable& t) {
    double s = 0.0;
    for (const auto& c : t.coeffs) s += std::abs(c);
    return s;
}

std::size_t sparsity(const FourierTable& t, double tol) {
    std::size_t n = 0;
    for (const auto& c : t.coeffs)
        if (std::abs(c) > tol) ++n;
    return n;
}

std::vector<std::uint64_t> support(const FourierTable& t, double tol) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t r = 0; r < t.coeffs.size(); ++r)
        if (std::abs(t.coeffs[r]) > tol) out.push_back(r);
    return out;
}

std::vector<BucketWeights> exact_bucket_weights(
    const FourierTable& t, const std::vector<std::vector<std::uint64_t>>& partition) {
    std::vector<bool> seen(t.coeffs.size(), false);
    std::vector<BucketWeights> out;
    out.reserve(partition.size());
    for (const auto& bucket : partition) {
        BucketWeights w{0.0, 0.0};
        for (std::uint64_t r : bucket) {
            if (r >= t.coeffs.size() || seen[r])
                throw PartitionError("bucket map does not partition G");
            seen[r] = true;
            const double m2 = std::norm(t.coeffs[r]);
            w.wt2 += m2;
            w.wt4 += m2 * m2;
        }
        out.push_back(w);
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw PartitionError("partition does not cover G");
    return out;
}

std::complex<double> exact_projection(const FourierTable& t, const Coset& coset,
                                      const GroupElement& x) {
    const GroupSpec& g = t.group;
    const std::uint64_t rep = g.index_of(coset.rep);
    std::complex<double> acc = 0.0;
    for (std::uint64_t h : coset.subgroup) {
        const std::uint64_t gamma = add_index(g, rep, h);
        acc += t.coeffs[gamma] * RootOfUnity{pair_index(g, gamma, g.index_of(x)), g.lcm()}.value();
    }
    return acc;
}

std::complex<double> exact_projection_shift(const BooleanFunction& f, const Coset& coset,
                                            const GroupElement& x) {
    const GroupSpec& g = f.group;
    if (coset.annihilator.empty()) throw ShapeError("coset has empty annihilator");
    const std::uint64_t xi = g.index_of(x);
    const std::uint64_t rep = g.index_of(coset.rep);
    std::complex<double> acc = 0.0;
    for (std::uint64_t z : coset.annihilator) {
        acc += static_cast<double>(f(sub_index(g, xi, z))) *
               RootOfUnity{pair_index(g, rep, z), g.lcm()}.value();
    }
    return acc / static_cast<double>(coset.annihilator.size());
}

double correlation(const BooleanFunction& f, const BooleanFunction& g) {
    if (!(f.group == g.group)) throw ShapeError("correlation: group mismatch");
    double acc = 0.0;
    for (std::uint64_t x = 0; x < f.group.order(); ++x)
        acc += static_cast<double>(f(x)) * static_cast<double>(g(x));
    return acc / static_cast<double>(f.group.order());
}

double correlation_spectral(const FourierTable& fh, const FourierTable& gh) {
    if (!(fh.group == gh.group)) throw ShapeError("correlation: group mismatch");
    std::complex<double> acc = 0.0;
    for (std::uint64_t r = 0; r < fh.coeffs.size(); ++r)
        acc += fh.coeffs[r] * std::conj(gh.coeffs[r]);
    return acc.real();
}

double hamming_distance(const BooleanFunction& f, const BooleanFunction& g) {
    if (!(f.group == g.group)) throw ShapeError("hamming_distance: group mismatch");
    std::uint64_t diff = 0;
    for (std::uint64_t x = 0; x < f.group.order(); ++x)
        if (f(x) != g(x)) ++diff;
    return static_cast<double>(diff) / static_cast<double>(f.group.order());
}

BooleanFunction indicator_function(const GroupSpec& g, const std::set<std::uint64_t>& subset) {
    BooleanFunction f{g, std::vector<std::int8_t>(g.order(), 1)};
    for (std::uint64_t i : subset) {
        if (i >= g.order()) throw IndexError("indicator subset element out of range");
        f.values[i] = -1;
    }
    return f;
}

}  // namespace fiso

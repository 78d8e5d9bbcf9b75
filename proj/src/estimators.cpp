#include "fiso/estimators.hpp"

#include <cmath>

namespace fiso {

void EstimatorConfig::validate() const {
    if (!(epsilon > 0.0 && epsilon <= 2.0)) throw ConfigError("epsilon must be in (0, 2]");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must be in (0, 1)");
    if (samples && *samples < 1) throw ConfigError("sample override must be >= 1");
}

std::uint64_t sample_count(double epsilon, double delta) {
    if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0))
        throw ConfigError("sample_count: invalid (epsilon, delta)");
    return static_cast<std::uint64_t>(std::ceil(4.0 * std::log(4.0 / delta) / (epsilon * epsilon)));
}

std::uint64_t EstimatorConfig::resolve_samples() const {
    validate();
    return samples ? *samples : sample_count(epsilon, delta);
}

namespace {

std::vector<std::complex<double>> root_table(const GroupSpec& g) {
    std::vector<std::complex<double>> roots(g.lcm());
    for (std::uint64_t k = 0; k < g.lcm(); ++k) roots[k] = RootOfUnity{k, g.lcm()}.value();
    return roots;
}

}  // namespace

RealEstimate estimate_wt2(QueryOracle& oracle, const Coset& coset, const EstimatorConfig& cfg,
                          Rng& rng) {
    const GroupSpec& g = oracle.group();
    if (coset.annihilator.empty()) throw ShapeError("estimate_wt2: empty annihilator");
    const std::uint64_t N = cfg.resolve_samples();
    const std::uint64_t rep = g.index_of(coset.rep);
    const auto roots = root_table(g);
    std::complex<double> acc = 0.0;
    for (std::uint64_t k = 0; k < N; ++k) {
        const std::uint64_t x = rng.below(g.order());
        const std::uint64_t z = coset.annihilator[rng.below(coset.annihilator.size())];
        const double prod = static_cast<double>(oracle.query(x)) *
                            static_cast<double>(oracle.query(add_index(g, x, z)));
        acc += prod * roots[pair_index(g, rep, z)];
    }
    acc /= static_cast<double>(N);
    return {acc.real(), acc.imag(), N};
}

RealEstimate estimate_wt4(QueryOracle& oracle, const Coset& coset, const EstimatorConfig& cfg,
                          Rng& rng) {
    const GroupSpec& g = oracle.group();
    if (coset.annihilator.empty()) throw ShapeError("estimate_wt4: empty annihilator");
    const std::uint64_t N = cfg.resolve_samples();
    const std::uint64_t rep = g.index_of(coset.rep);
    const auto roots = root_table(g);
    const std::uint64_t L = g.lcm();
    std::complex<double> acc = 0.0;
    for (std::uint64_t k = 0; k < N; ++k) {
        const std::uint64_t x = rng.below(g.order());
        const std::uint64_t z1 = rng.below(g.order());
        const std::uint64_t y1 = rng.below(g.order());
        const std::uint64_t z = coset.annihilator[rng.below(coset.annihilator.size())];
        const std::uint64_t y = coset.annihilator[rng.below(coset.annihilator.size())];
        const double prod = static_cast<double>(oracle.query(z1)) *
                            static_cast<double>(oracle.query(sub_index(g, sub_index(g, x, z1), z))) *
                            static_cast<double>(oracle.query(y1)) *
                            static_cast<double>(oracle.query(sub_index(g, sub_index(g, x, y1), y)));
        const std::uint64_t zy = sub_index(g, z, y);
        acc += prod * roots[pair_index(g, rep, zy) % L];
    }
    acc /= static_cast<double>(N);
    return {acc.real(), acc.imag(), N};
}

ComplexEstimate estimate_projection(QueryOracle& oracle, const Coset& coset, const GroupElement& x,
                                    const EstimatorConfig& cfg, Rng& rng) {
    const GroupSpec& g = oracle.group();
    if (coset.annihilator.empty()) throw ShapeError("estimate_projection: empty annihilator");
    const std::uint64_t xi = g.index_of(x);
    if (coset.annihilator.size() == 1) {
        // H = G: the projection is f itself
        return {std::complex<double>(static_cast<double>(oracle.query(xi)), 0.0), 1};
    }
    const std::uint64_t N = cfg.resolve_samples();
    const std::uint64_t rep = g.index_of(coset.rep);
    const auto roots = root_table(g);
    std::complex<double> acc = 0.0;
    for (std::uint64_t k = 0; k < N; ++k) {
        const std::uint64_t z = coset.annihilator[rng.below(coset.annihilator.size())];
        acc += static_cast<double>(oracle.query(sub_index(g, xi, z))) *
               roots[pair_index(g, rep, z)];
    }
    return {acc / static_cast<double>(N), N};
}

ComplexEstimate estimate_coefficient(QueryOracle& oracle, const GroupElement& r,
                                     const EstimatorConfig& cfg, Rng& rng) {
    const GroupSpec& g = oracle.group();
    const std::uint64_t ri = g.index_of(r);
    const std::uint64_t N = cfg.resolve_samples();
    const auto roots = root_table(g);
    std::complex<double> acc = 0.0;
    for (std::uint64_t k = 0; k < N; ++k) {
        const std::uint64_t x = rng.below(g.order());
        acc += static_cast<double>(oracle.query(x)) * std::conj(roots[pair_index(g, ri, x)]);
    }
    return {acc / static_cast<double>(N), N};
}

}  // namespace fiso

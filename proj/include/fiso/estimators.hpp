#pragma once

#include <complex>
#include <optional>
#include <unordered_map>

#include "fiso/cosets.hpp"
#include "fiso/fourier.hpp"
#include "fiso/rng.hpp"

namespace fiso {

// Counting, seed-deterministic query boundary over a truth table. In replay
// mode repeated queries to the same point are answered from a memo and
// counted once.
class QueryOracle {
  public:
    explicit QueryOracle(BooleanFunction f, bool replay = false)
        : f_(std::move(f)), replay_(replay) {
        f_.validate();
    }

    int query(std::uint64_t index) {
        if (index >= f_.group.order()) throw IndexError("query index out of range");
        if (replay_) {
            auto [it, fresh] = memo_.try_emplace(index, f_(index));
            if (fresh) ++count_;
            return it->second;
        }
        ++count_;
        return f_(index);
    }
    int query(const GroupElement& x) { return query(f_.group.index_of(x)); }

    std::uint64_t queries() const { return count_; }
    bool replay() const { return replay_; }
    const GroupSpec& group() const { return f_.group; }

    // Desk-scale ground truth for verification layers; never used by the
    // sampling paths.
    const BooleanFunction& target() const { return f_; }

  private:
    BooleanFunction f_;
    bool replay_;
    std::uint64_t count_ = 0;
    std::unordered_map<std::uint64_t, std::int8_t> memo_;
};

struct EstimatorConfig {
    double epsilon = 0.1;
    double delta = 0.05;
    std::optional<std::uint64_t> samples;  // explicit override

    void validate() const;
    std::uint64_t resolve_samples() const;
};

// N = ceil(4 ln(4/delta) / epsilon^2); the one Hoeffding budget shared by
// every estimator below.
std::uint64_t sample_count(double epsilon, double delta);

struct RealEstimate {
    double value;
    double imag_residue;  // diagnostic; converges to 0
    std::uint64_t samples;
};

struct ComplexEstimate {
    std::complex<double> value;
    std::uint64_t samples;
};

// Average of f(x) f(x+z) chi_r(z), x uniform in G, z uniform in H^perp.
// Consumes 2N queries.
RealEstimate estimate_wt2(QueryOracle& oracle, const Coset& coset, const EstimatorConfig& cfg,
                          Rng& rng);

// Average of the five-point product f(z1) f(x-z1-z) f(y1) f(x-y1-y) chi_r(z-y)
// with x,z1,y1 uniform in G and z,y uniform in H^perp. Consumes 4N queries.
RealEstimate estimate_wt4(QueryOracle& oracle, const Coset& coset, const EstimatorConfig& cfg,
                          Rng& rng);

// Average of f(x-z) chi_r(z) over N uniform z in H^perp; exact with a single
// query when H^perp is trivial.
ComplexEstimate estimate_projection(QueryOracle& oracle, const Coset& coset, const GroupElement& x,
                                    const EstimatorConfig& cfg, Rng& rng);

// Average of f(x) conj(chi_r(x)) over N uniform x.
ComplexEstimate estimate_coefficient(QueryOracle& oracle, const GroupElement& r,
                                     const EstimatorConfig& cfg, Rng& rng);

}  // namespace fiso

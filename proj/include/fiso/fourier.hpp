#pragma once

#include <complex>
#include <set>
#include <vector>

#include "fiso/cosets.hpp"
#include "fiso/group.hpp"

namespace fiso {

// A +/-1 valued function on G, values in mixed-radix enumeration order.
struct BooleanFunction {
    GroupSpec group;
    std::vector<std::int8_t> values;

    int operator()(std::uint64_t index) const { return values[index]; }
    void validate() const;
};

// Exact complex Fourier coefficients, coeffs[index_of(r)] = f_hat(chi_r).
struct FourierTable {
    GroupSpec group;
    std::vector<std::complex<double>> coeffs;
};

// Reference O(|G|^2) transform; this layer is the trusted oracle.
FourierTable dft(const BooleanFunction& f);
FourierTable dft(const GroupSpec& g, const std::vector<std::complex<double>>& values);

std::vector<std::complex<double>> idft(const FourierTable& t);

double spectral_norm(const FourierTable& t);
std::size_t sparsity(const FourierTable& t, double tol = 1e-9);
std::vector<std::uint64_t> support(const FourierTable& t, double tol = 1e-9);

struct BucketWeights {
    double wt2;
    double wt4;
};

// Per-bucket sums of squared / fourth-power coefficient magnitudes. The
// partition (element-index classes) must cover G exactly once.
std::vector<BucketWeights> exact_bucket_weights(const FourierTable& t,
                                                const std::vector<std::vector<std::uint64_t>>& partition);

// P_{r+H} f(x) via the coefficient sum over the coset.
std::complex<double> exact_projection(const FourierTable& t, const Coset& coset,
                                      const GroupElement& x);
// Same value via the exact average of f(x-z) chi_r(z) over z in H^perp.
std::complex<double> exact_projection_shift(const BooleanFunction& f, const Coset& coset,
                                            const GroupElement& x);

double correlation(const BooleanFunction& f, const BooleanFunction& g);
double correlation_spectral(const FourierTable& fh, const FourierTable& gh);
double hamming_distance(const BooleanFunction& f, const BooleanFunction& g);

// -1 on the subset, +1 elsewhere.
BooleanFunction indicator_function(const GroupSpec& g, const std::set<std::uint64_t>& subset);

}  // namespace fiso

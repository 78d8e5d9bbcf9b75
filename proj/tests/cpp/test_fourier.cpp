#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fiso/fourier.hpp"
#include "fiso/rng.hpp"

using namespace fiso;

namespace {

BooleanFunction random_boolean(const GroupSpec& g, Rng& rng) {
    BooleanFunction f{g, std::vector<std::int8_t>(g.order())};
    for (auto& v : f.values) v = rng.below(2) ? 1 : -1;
    return f;
}

}  // namespace

TEST_CASE("dft of constants and characters") {
    const auto g = GroupSpec::build({{2, 2}});
    const BooleanFunction one{g, {1, 1, 1, 1}};
    const auto t = dft(one);
    CHECK(std::abs(t.coeffs[0] - 1.0) < 1e-12);
    for (int r = 1; r < 4; ++r) CHECK(std::abs(t.coeffs[r]) < 1e-12);
    CHECK(spectral_norm(t) == doctest::Approx(1.0));
    CHECK(sparsity(t) == 1);

    // a realized character transforms to a delta
    std::vector<std::complex<double>> chi(g.order());
    for (std::uint64_t x = 0; x < g.order(); ++x)
        chi[x] = RootOfUnity{pair_index(g, 3, x), g.lcm()}.value();
    const auto tc = dft(g, chi);
    CHECK(std::abs(tc.coeffs[3] - 1.0) < 1e-9);
    CHECK(sparsity(tc) == 1);
}

TEST_CASE("subgroup indicator is supported on the annihilator") {
    const auto g = GroupSpec::build({{2, 2}, {2, 1}});
    const std::vector<Constraint> cons{{{1, 0}, 0}};  // x with x_1*2 = 0 mod 8... pairing x1
    const auto H = subgroup_members(g, cons);
    const auto f = indicator_function(g, std::set<std::uint64_t>(H.begin(), H.end()));
    const auto t = dft(f);
    const auto Hp = annihilator(g, H);
    for (std::uint64_t r : support(t))
        CHECK(std::binary_search(Hp.begin(), Hp.end(), r));
}

TEST_CASE("Parseval and inversion on random functions") {
    Rng rng(9);
    for (const auto& g : {GroupSpec::build({{2, 1}, {2, 2}, {3, 1}}),
                          GroupSpec::build({{3, 2}}), GroupSpec::build({{2, 1}, {2, 1}, {2, 1}})}) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto f = random_boolean(g, rng);
            const auto t = dft(f);
            double parseval = 0.0;
            for (const auto& c : t.coeffs) parseval += std::norm(c);
            CHECK(std::abs(parseval - 1.0) < 1e-9);
            CHECK(spectral_norm(t) >= 1.0 - 1e-9);

            const auto back = idft(t);
            for (std::uint64_t x = 0; x < g.order(); ++x) {
                CHECK(std::abs(back[x].real() - f(x)) < 1e-9);
                CHECK(std::abs(back[x].imag()) < 1e-9);
            }

            // conjugate symmetry for real-valued f
            for (std::uint64_t r = 0; r < g.order(); ++r) {
                const std::uint64_t neg = sub_index(g, 0, r);
                CHECK(std::abs(t.coeffs[neg] - std::conj(t.coeffs[r])) < 1e-9);
            }
        }
    }
}

TEST_CASE("bucket weights") {
    const auto g = GroupSpec::build({{2, 2}});
    Rng rng(13);
    const auto f = random_boolean(g, rng);
    const auto t = dft(f);

    const std::vector<std::vector<std::uint64_t>> whole{{0, 1, 2, 3}};
    CHECK(exact_bucket_weights(t, whole)[0].wt2 == doctest::Approx(1.0));

    const BooleanFunction one{g, {1, 1, 1, 1}};
    const auto w = exact_bucket_weights(dft(one), {{0, 2}, {1, 3}});
    CHECK(w[0].wt2 == doctest::Approx(1.0));
    CHECK(w[0].wt4 == doctest::Approx(1.0));
    CHECK(w[1].wt2 == doctest::Approx(0.0));

    CHECK_THROWS_AS(exact_bucket_weights(t, {{0, 1}}), PartitionError);
    CHECK_THROWS_AS(exact_bucket_weights(t, {{0, 1, 2, 3}, {3}}), PartitionError);

    // planted 2-sparse function split across two buckets
    const auto z4 = GroupSpec::build({{2, 2}});
    const auto ind = indicator_function(z4, {0, 2});  // -1 on {0,2}: support {0,2}? via dft
    const auto ti = dft(ind);
    const auto ws = exact_bucket_weights(ti, {{0, 1}, {2, 3}});
    CHECK(ws[0].wt2 + ws[1].wt2 == doctest::Approx(1.0));
}

TEST_CASE("projection dual formulas agree") {
    Rng rng(21);
    const auto g = GroupSpec::build({{2, 1}, {2, 2}});
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_boolean(g, rng);
        const auto t = dft(f);
        std::vector<Constraint> cons{{g.sample_uniform(rng), 0}};
        const auto H = subgroup_members(g, cons);
        const auto coset = make_coset(g, g.sample_uniform(rng), H);
        for (std::uint64_t x = 0; x < g.order(); ++x) {
            const auto a = exact_projection(t, coset, g.element_at(x));
            const auto b = exact_projection_shift(f, coset, g.element_at(x));
            CHECK(std::abs(a - b) < 1e-9);
        }
    }

    // full projection (H = G) returns f itself
    const auto f = random_boolean(g, rng);
    std::vector<std::uint64_t> all(g.order());
    for (std::uint64_t i = 0; i < g.order(); ++i) all[i] = i;
    const auto coset = make_coset(g, g.identity(), all);
    for (std::uint64_t x = 0; x < g.order(); ++x)
        CHECK(std::abs(exact_projection(dft(f), coset, g.element_at(x)) -
                       std::complex<double>(f(x), 0.0)) < 1e-9);
}

TEST_CASE("correlation and distance") {
    const auto g = GroupSpec::build({{3, 1}, {3, 1}});
    Rng rng(31);
    const auto f = random_boolean(g, rng);
    BooleanFunction neg = f;
    for (auto& v : neg.values) v = -v;

    CHECK(correlation(f, f) == doctest::Approx(1.0));
    CHECK(hamming_distance(f, f) == doctest::Approx(0.0));
    CHECK(correlation(f, neg) == doctest::Approx(-1.0));
    CHECK(hamming_distance(f, neg) == doctest::Approx(1.0));

    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_boolean(g, rng);
        const auto b = random_boolean(g, rng);
        CHECK(std::abs(correlation(a, b) - correlation_spectral(dft(a), dft(b))) < 1e-9);
        CHECK(correlation(a, b) == doctest::Approx(1.0 - 2.0 * hamming_distance(a, b)));
    }
}

TEST_CASE("indicator function") {
    const auto g = GroupSpec::build({{2, 2}});
    const auto empty = indicator_function(g, {});
    for (std::uint64_t x = 0; x < 4; ++x) CHECK(empty(x) == 1);
    const auto full = indicator_function(g, {0, 1, 2, 3});
    for (std::uint64_t x = 0; x < 4; ++x) CHECK(full(x) == -1);

    // indicator of V_{0,r} has support inside its annihilator
    const auto H = subgroup_members(g, {{{2}, 0}});  // {0, 2}
    const auto f = indicator_function(g, std::set<std::uint64_t>(H.begin(), H.end()));
    const auto Hp = annihilator(g, H);
    for (std::uint64_t r : support(dft(f)))
        CHECK(std::binary_search(Hp.begin(), Hp.end(), r));
}

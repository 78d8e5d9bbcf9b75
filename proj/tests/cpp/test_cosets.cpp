#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "fiso/cosets.hpp"

using namespace fiso;

TEST_CASE("subgroup members from constraints") {
    const auto z4 = GroupSpec::build({{2, 2}});
    CHECK(subgroup_members(z4, {}) == std::vector<std::uint64_t>{0, 1, 2, 3});
    CHECK(subgroup_members(z4, {{{1}, 0}}) == std::vector<std::uint64_t>{0});

    const auto z2z2 = GroupSpec::build({{2, 1}, {2, 1}});
    // L = 2; x with (1,0)*x = 1 means x_1 = 1
    CHECK(subgroup_members(z2z2, {{{1, 0}, 1}}) ==
          std::vector<std::uint64_t>{z2z2.index_of({1, 0}), z2z2.index_of({1, 1})});
}

TEST_CASE("annihilator basics") {
    const auto z4 = GroupSpec::build({{2, 2}});
    const std::vector<std::uint64_t> trivial{0};
    CHECK(annihilator(z4, trivial) == std::vector<std::uint64_t>{0, 1, 2, 3});
    CHECK(annihilator(z4, {0, 1, 2, 3}) == std::vector<std::uint64_t>{0});
    CHECK(annihilator(z4, {0, 2}) == std::vector<std::uint64_t>{0, 2});
    CHECK_THROWS_AS(annihilator(z4, {0, 1}), NotASubgroup);
    CHECK_THROWS_AS(annihilator(z4, {1, 2}), NotASubgroup);
}

TEST_CASE("annihilator laws over random constraint subgroups") {
    Rng rng(11);
    for (const auto& g : {GroupSpec::build({{2, 2}, {3, 1}, {3, 1}}),   // 36
                          GroupSpec::build({{2, 1}, {2, 2}, {2, 1}}),   // 16
                          GroupSpec::build({{5, 1}, {7, 1}})}) {        // 35
        for (int trial = 0; trial < 12; ++trial) {
            std::vector<Constraint> cons;
            const int k = 1 + static_cast<int>(rng.below(3));
            for (int j = 0; j < k; ++j) cons.push_back({g.sample_uniform(rng), 0});
            const auto H = subgroup_members(g, cons);
            const auto Hp = annihilator(g, H);
            CHECK(H.size() * Hp.size() == g.order());
            CHECK(annihilator(g, Hp) == H);

            // character-sum dichotomy: sum over beta in H of w^(beta*z)
            for (std::uint64_t z = 0; z < g.order(); ++z) {
                std::complex<double> acc = 0.0;
                for (std::uint64_t b : H) acc += RootOfUnity{pair_index(g, b, z), g.lcm()}.value();
                const bool in_perp = std::binary_search(Hp.begin(), Hp.end(), z);
                if (in_perp)
                    CHECK(std::abs(acc - std::complex<double>(double(H.size()), 0.0)) < 1e-9);
                else
                    CHECK(std::abs(acc) < 1e-9);
            }
        }
    }
}

TEST_CASE("coset structure labels and buckets") {
    const auto g = GroupSpec::build({{2, 1}, {2, 2}});  // Z_2 x Z_4
    Rng rng(3);
    const auto cs = random_coset_structure(g, 2, rng);

    // determinism
    Rng rng2(3);
    const auto cs2 = random_coset_structure(g, 2, rng2);
    CHECK(cs.betas() == cs2.betas());
    CHECK(cs.shift() == cs2.shift());

    // identity lands on the shift
    CHECK(cs.bucket_of(g.identity()) == cs.shift());

    // nonempty labels partition G into cosets of H
    const auto H = cs.subgroup();
    std::set<std::uint64_t> seen;
    for (const auto& [label, members] : cs.nonempty_buckets()) {
        CHECK(members.size() == H.size());
        for (std::uint64_t m : members) {
            CHECK(!seen.count(m));
            seen.insert(m);
            // member - representative lies in H
            const auto rep = cs.bucket_coset_representation(label);
            REQUIRE(rep.has_value());
            const std::uint64_t diff = sub_index(g, m, g.index_of(rep->rep));
            CHECK(std::binary_search(H.begin(), H.end(), diff));
        }
    }
    CHECK(seen.size() == g.order());

    CHECK_FALSE(cs.bucket_coset_representation(std::vector<std::uint64_t>{99, 99}).has_value());
}

TEST_CASE("random shift is never zero") {
    const auto g = GroupSpec::build({{3, 1}});
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const auto cs = random_coset_structure(g, 1, rng);
        bool allzero = true;
        for (auto u : cs.shift())
            if (u != 0) allzero = false;
        CHECK_FALSE(allzero);
    }
}

TEST_CASE("bucket membership probability matches 1/L^t") {
    const auto g = GroupSpec::build({{2, 2}});  // L = 4, t = 1
    const GroupElement alpha{1};
    const std::vector<std::uint64_t> target{2};
    Rng rng(17);
    int hits = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        const auto cs = random_coset_structure(g, 1, rng);
        if (cs.bucket_of(alpha) == target) ++hits;
    }
    const double p = 1.0 / 4.0;
    const double sigma = std::sqrt(trials * p * (1 - p));
    CHECK(std::abs(hits - trials * p) < 5.0 * sigma);
}

TEST_CASE("pseudo independence") {
    const auto z4 = GroupSpec::build({{2, 2}});
    // {2, 3} is dependent: 1*2 + 2*3 = 8 = 0 mod 4 with unit coefficient 1
    const auto dep = is_pseudo_independent(z4, {{{2}}, {{3}}});
    CHECK_FALSE(dep.independent);
    REQUIRE(dep.witness.has_value());
    GroupElement acc = z4.identity();
    const std::vector<GroupElement> elems{{2}, {3}};
    for (std::size_t i = 0; i < 2; ++i)
        acc = element_add(z4, acc,
                          element_scale(z4, elems[i],
                                        static_cast<std::int64_t>(dep.witness->lambdas[i])));
    CHECK(acc == z4.identity());
    CHECK(is_unit_mod(dep.witness->lambdas[dep.witness->unit_index], 4));

    // {2} alone is independent (no unit lambda kills it)
    CHECK(is_pseudo_independent(z4, {{{2}}}).independent);
    // {3} alone is dependent on itself only trivially; 3 is a unit multiple of 1
    CHECK_FALSE(is_pseudo_independent(z4, {{{1}}, {{3}}}).independent);

    const auto z2z2 = GroupSpec::build({{2, 1}, {2, 1}});
    CHECK(is_pseudo_independent(z2z2, {{1, 0}, {0, 1}}).independent);

    CHECK_THROWS_AS(is_pseudo_independent(z4, {}), ShapeError);
    CHECK_THROWS_AS(is_pseudo_independent(z4, {{{1}}, {{2}}, {{3}}}, 10), SearchCapExceeded);
}

TEST_CASE("minimal spanning set") {
    const auto z4 = GroupSpec::build({{2, 2}});
    {
        const auto r = minimal_spanning_set(z4, {{1}});
        REQUIRE(r.has_value());
        CHECK(r->basis == std::vector<std::size_t>{0});
        CHECK(r->dependencies.empty());
    }
    {
        // {1, 3}: basis {1}, 3 expressed through it
        const auto r = minimal_spanning_set(z4, {{1}, {3}});
        REQUIRE(r.has_value());
        CHECK(r->basis == std::vector<std::size_t>{0});
        REQUIRE(r->dependencies.count(1));
        const auto& w = r->dependencies.at(1);
        CHECK((w.lambda * 3 + w.lambdas[0] * 1) % 4 == 0);
        CHECK(is_unit_mod(w.lambda, 4));
    }
    {
        const auto z2z2 = GroupSpec::build({{2, 1}, {2, 1}});
        const auto r = minimal_spanning_set(z2z2, {{1, 0}, {0, 1}, {1, 1}});
        REQUIRE(r.has_value());
        CHECK(r->basis.size() == 2);
        CHECK(r->dependencies.size() == 1);
        CHECK(r->dependencies.begin()->second.lambda == 1);
    }
}

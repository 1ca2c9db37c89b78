#include <doctest.h>

#include <functional>
#include <random>

#include "monodec/errors.hpp"
#include "monodec/format.hpp"
#include "monodec/mojofm.hpp"
#include "partition_walk.hpp"

using namespace monodec;
using monodec::test::decomposition_of_shape;
using monodec::test::for_each_shape;
using monodec::test::max_mno_by_walk;

namespace {

Decomposition make(std::vector<std::set<EntityId>> clusters) {
    return monodec::test::partition_of(std::move(clusters));
}

Decomposition random_partition(std::mt19937_64& rng, std::size_t n) {
    return monodec::test::random_partition_of(rng, n);
}

} // namespace

TEST_CASE("align: equal universes unchanged") {
    const Decomposition a = make({{1, 2}, {3}});
    for (auto strategy : {AlignStrategy::BiggestCluster, AlignStrategy::DropUncommon}) {
        const auto [xa, xb] = align_universes(a, a, strategy);
        CHECK(xa == a);
        CHECK(xb == a);
    }
}

TEST_CASE("align: biggest cluster adopts missing entities") {
    Decomposition a;
    a.clusters["small"] = {1};
    a.clusters["big"] = {2, 3};
    const Decomposition b = make({{1, 2, 3, 7}});
    const auto [xa, xb] = align_universes(a, b, AlignStrategy::BiggestCluster);
    CHECK(xa.clusters.at("big") == std::set<EntityId>{2, 3, 7});
    CHECK(xa.clusters.at("small") == std::set<EntityId>{1});
    CHECK(xb == b);
    CHECK(xa.universe() == xb.universe());
}

TEST_CASE("align: biggest-cluster size ties break on the smaller name") {
    Decomposition a;
    a.clusters["beta"] = {1, 2};
    a.clusters["alpha"] = {3, 4};
    const Decomposition b = make({{1, 2, 3, 4, 9}});
    const auto [xa, xb] = align_universes(a, b, AlignStrategy::BiggestCluster);
    CHECK(xa.clusters.at("alpha").contains(9));
}

TEST_CASE("align: drop uncommon") {
    const Decomposition a = make({{1, 2}, {3}});
    const Decomposition b = make({{1}, {4}});
    const auto [xa, xb] = align_universes(a, b, AlignStrategy::DropUncommon);
    CHECK(xa == make({{1}}));
    CHECK(xb == make({{1}}));

    const Decomposition c = make({{8}});
    CHECK_THROWS_AS(align_universes(a, c, AlignStrategy::DropUncommon), DomainError);
}

TEST_CASE("align output is always a partition over equal universes") {
    std::mt19937_64 rng(606);
    for (int round = 0; round < 200; ++round) {
        const Decomposition a = random_partition(rng, 2 + rng() % 6);
        const Decomposition b = random_partition(rng, 2 + rng() % 6);
        for (auto strategy :
             {AlignStrategy::BiggestCluster, AlignStrategy::DropUncommon}) {
            std::pair<Decomposition, Decomposition> aligned;
            try {
                aligned = align_universes(a, b, strategy);
            } catch (const DomainError&) {
                continue;  // empty intersection under DropUncommon
            }
            const auto universe = aligned.first.universe();
            CHECK(universe == aligned.second.universe());
            CHECK_NOTHROW(check_partition(aligned.first, universe));
            CHECK_NOTHROW(check_partition(aligned.second, universe));
        }
    }
}

TEST_CASE("mojo distance basics") {
    const Decomposition b = make({{1, 2}, {3}});
    CHECK(mojo_distance(b, b) == 0);
    // One join turns singletons into b.
    CHECK(mojo_distance(make({{1}, {2}, {3}}), b) == 1);
    // One move: 1 leaves {1,3} for {2}.
    CHECK(mojo_distance(make({{1, 3}, {2}}), b) == 1);
    CHECK_THROWS_AS(mojo_distance(make({{1}}), b), DomainError);
}

TEST_CASE("brute force agrees on the basics") {
    const Decomposition b = make({{1, 2}, {3}});
    CHECK(brute_force_mno(b, b) == 0);
    CHECK(brute_force_mno(make({{1}, {2}, {3}}), b) == 1);
    CHECK(brute_force_mno(make({{1, 3}, {2}}), b) == 1);
    CHECK_THROWS_AS(brute_force_mno(make({{1, 2, 3, 4, 5, 6, 7, 8, 9}}),
                                    make({{1, 2, 3, 4, 5, 6, 7, 8, 9}})),
                    DomainError);
}

TEST_CASE("matching equals brute force on random pairs") {
    std::mt19937_64 rng(512);
    for (int round = 0; round < 400; ++round) {
        const std::size_t n = 2 + rng() % 5;  // up to 6 entities
        const Decomposition a = random_partition(rng, n);
        const Decomposition b = random_partition(rng, n);
        CHECK(mojo_distance(a, b) == brute_force_mno(a, b));
    }
}

TEST_CASE("mojo distance is zero only at equality, bounded above") {
    std::mt19937_64 rng(640);
    for (int round = 0; round < 300; ++round) {
        const std::size_t n = 2 + rng() % 6;
        const Decomposition a = random_partition(rng, n);
        const Decomposition b = random_partition(rng, n);
        const long long d = mojo_distance(a, b);
        auto as_sets = [](const Decomposition& dec) {
            std::set<std::set<EntityId>> s;
            for (const auto& [name, members] : dec.clusters) {
                s.insert(members);
            }
            return s;
        };
        CHECK((d == 0) == (as_sets(a) == as_sets(b)));
        CHECK(d <= static_cast<long long>(n) - 1 +
                       static_cast<long long>(a.clusters.size()) - 1);
    }
}

TEST_CASE("max mojo distance by enumeration") {
    CHECK(max_mojo_distance(make({{1}, {2}, {3}})).value == 2);
    CHECK(max_mojo_distance(make({{1, 2, 3}})).value == 2);
    // The 2+1 shape: every partition of 3 elements reaches it within one op.
    CHECK(max_mojo_distance(make({{1, 2}, {3}})).value == 1);
    CHECK_THROWS_AS(max_mojo_distance(make({{1}})), DomainError);
}

TEST_CASE("enumerated max matches an independent walk") {
    std::mt19937_64 rng(256);
    for (int round = 0; round < 40; ++round) {
        const Decomposition b = random_partition(rng, 2 + rng() % 6);
        CHECK(max_mojo_distance_enumerated(b) == max_mno_by_walk(b));
    }
}

TEST_CASE("constructed max equals enumeration across whole shapes") {
    // Every integer-partition shape up to 8 entities.
    for (long long n = 2; n <= 8; ++n) {
        for_each_shape(n, [](const std::vector<long long>& shape) {
            CHECK(max_mojo_distance_constructed(shape) ==
                  max_mojo_distance_enumerated(decomposition_of_shape(shape)));
        });
    }
}

TEST_CASE("dispatch: small universes enumerate, large ones construct") {
    const Decomposition small = make({{1, 2}, {3, 4}});
    CHECK(max_mojo_distance(small).method == MaxMnoMethod::Enumeration);

    Decomposition big;
    for (EntityId e = 1; e <= 13; ++e) {
        big.clusters["c" + std::to_string((e - 1) % 4)].insert(e);
    }
    const auto result = max_mojo_distance(big);
    CHECK(result.method == MaxMnoMethod::Construction);
    CHECK(result.value > 0);
    CHECK(std::string(to_string(result.method)) == "construction");
}

TEST_CASE("mojofm: identity, worst case, bounds") {
    const Decomposition b = make({{1}, {2}, {3}});
    const MojoResult self = mojofm(b, b);
    CHECK(self.mno == 0);
    CHECK(self.mojo_fm == doctest::Approx(100.0));
    CHECK(percent2(self.mojo_fm) == "100.00");

    // Single cluster is most distant from singletons (2 ops, the max).
    const MojoResult worst = mojofm(make({{1, 2, 3}}), b);
    CHECK(worst.mno == worst.max_mno);
    CHECK(worst.mojo_fm == doctest::Approx(0.0));

    std::mt19937_64 rng(700);
    for (int round = 0; round < 100; ++round) {
        const std::size_t n = 2 + rng() % 6;
        const MojoResult r = mojofm(random_partition(rng, n), random_partition(rng, n));
        CHECK(r.mojo_fm >= 0.0);
        CHECK(r.mojo_fm <= 100.0);
        CHECK((r.mojo_fm == 100.0) == (r.mno == 0));
    }
}

TEST_CASE("mojofm requires aligned universes") {
    CHECK_THROWS_AS(mojofm(make({{1, 2}}), make({{1, 3}})), DomainError);
}

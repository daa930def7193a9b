#include "vrc/persistence.hpp"

#include "vrc/datasets.hpp"
#include "vrc/errors.hpp"
#include "vrc/tree_gradients.hpp"
#include "test_helpers.hpp"
#include "doctest.h"

#include <algorithm>

using namespace vrc;
using namespace vrc::testing;

namespace {

std::vector<Rational> death_values(const std::vector<BarInterval>& bars) {
    std::vector<Rational> out;
    for (const auto& b : bars)
        if (b.death) out.push_back(*b.death);
    std::sort(out.begin(), out.end());
    return out;
}

bool same_barcode(const Barcode& a, const Barcode& b) {
    auto key = [](const Barcode& bc) {
        std::vector<std::tuple<int, std::string, std::string, bool>> k;
        for (const auto& [deg, bars] : bc.intervals)
            for (const auto& bar : bars)
                k.push_back({deg, bar.birth.str(), bar.death ? bar.death->str() : "inf", false});
        for (const auto& [deg, bars] : bc.zero_length)
            for (const auto& bar : bars)
                k.push_back({deg, bar.birth.str(), bar.death ? bar.death->str() : "inf", true});
        std::sort(k.begin(), k.end());
        return k;
    };
    return key(a) == key(b);
}

} // namespace

TEST_CASE("unit star barcode") {
    auto X = tree_metric(unit_star_tree());
    auto K = vietoris_rips(X, X.max_distance());
    Filtration F(K, VertexOrder::identity(4));
    auto res = persistent_homology(F, 2);
    // degree 0: three intervals [0,1) and one essential [0, inf)
    REQUIRE(res.barcode.intervals.count(0));
    const auto& deg0 = res.barcode.intervals.at(0);
    CHECK(deg0.size() == 4);
    int essential = 0;
    for (const auto& bar : deg0) {
        CHECK(bar.birth == Rational(0));
        if (!bar.death) ++essential;
        else CHECK(*bar.death == Rational(1));
    }
    CHECK(essential == 1);
    // degrees 1 and 2: no positive-length intervals
    CHECK(res.barcode.intervals.count(1) == 0);
    CHECK(res.barcode.intervals.count(2) == 0);
    // zero persistence pairs exist internally at diameter 2
    CHECK(res.barcode.zero_length.at(1).size() == 3);
    CHECK(res.barcode.zero_length.at(2).size() == 1);
    // stats partition
    CHECK(res.stats.columns == 15);
    CHECK(res.stats.critical == 1);
}

TEST_CASE("degree-0 barcode matches the union-find oracle") {
    for (uint64_t seed = 1; seed <= 8; ++seed) {
        int n = 4 + static_cast<int>(seed % 7);
        auto X = random_metric(n, seed * 71);
        auto K = vietoris_rips(X, X.max_distance(), 1); // degree 0 needs the 1-skeleton
        Filtration F(K, VertexOrder::identity(n));
        auto res = persistent_homology(F, 0);
        auto deaths = death_values(res.barcode.intervals.at(0));
        auto expect = h0_death_oracle(X);
        std::sort(expect.begin(), expect.end());
        CHECK(deaths == expect);
    }
}

TEST_CASE("reverse-compatible order: zero additions above degree zero") {
    for (uint64_t seed = 1; seed <= 8; ++seed) {
        int n = 4 + static_cast<int>(seed % 6);
        auto t = random_tree(n, seed * 31);
        auto X = tree_metric(t);
        auto K = vietoris_rips(X, X.max_distance());
        auto order = compatible_order(t, 0);
        // reversed input order with reverse-colexicographic comparison: the
        // engine order a Ripser run would use on reverse-sorted points
        Filtration F(K, order.reversed(), LexMode::RevColex);
        auto res = persistent_homology(F, n);
        for (const auto& [deg, adds] : res.stats.additions_by_degree)
            if (deg >= 1) CHECK(adds == 0);
        // no positive-length intervals above degree 0
        for (const auto& [deg, bars] : res.barcode.intervals)
            if (deg >= 1) CHECK(bars.empty());
    }
}

TEST_CASE("counterexample graph: empty degree-1 barcode, non-apparent columns at 15") {
    auto X = counterexample_space();
    auto K = vietoris_rips(X, X.max_distance());
    Filtration F(K, VertexOrder::identity(5));
    auto res = persistent_homology(F, 2);
    CHECK(res.barcode.intervals.count(1) == 0);
    // the two diameter-15 simplices stay outside the apparent pairs matching
    auto matching = apparent_pairs(F);
    CHECK_FALSE(matching.covers(Simplex{1, 4}));
    CHECK_FALSE(matching.covers(Simplex{1, 3, 4}));
    bool some_addition = res.stats.additions >= 1;
    CHECK((some_addition || !matching.covers(Simplex{1, 4})));
}

TEST_CASE("barcode is independent of the vertex order") {
    for (uint64_t seed = 1; seed <= 3; ++seed) {
        int n = 5;
        auto X = random_metric(n, seed * 83);
        auto K = vietoris_rips(X, X.max_distance());
        Filtration base(K, VertexOrder::identity(n));
        auto expect = persistent_homology(base, n).barcode;
        Rng rng(seed);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<int> perm(static_cast<size_t>(n));
            std::iota(perm.begin(), perm.end(), 0);
            for (int i = n - 1; i > 0; --i)
                std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(rng.uniform_int(0, i))]);
            Filtration F(K, VertexOrder::from_permutation(perm));
            CHECK(same_barcode(persistent_homology(F, n).barcode, expect));
        }
    }
}

TEST_CASE("apparent shortcut changes the work, not the barcode") {
    for (uint64_t seed = 1; seed <= 4; ++seed) {
        int n = 5 + static_cast<int>(seed % 2);
        auto X = random_metric(n, seed * 97);
        auto K = vietoris_rips(X, X.max_distance());
        Filtration F(K, VertexOrder::identity(n));
        auto with = persistent_homology(F, n, true);
        auto without = persistent_homology(F, n, false);
        CHECK(same_barcode(with.barcode, without.barcode));
        CHECK(without.stats.apparent_skipped == 0);
        CHECK(with.stats.apparent_skipped > 0);
        CHECK(with.stats.additions <= without.stats.additions);
    }
    // and on a tree with a compatible order
    auto t = random_tree(7, 1234);
    auto X = tree_metric(t);
    auto K = vietoris_rips(X, X.max_distance());
    Filtration F(K, compatible_order(t, 0));
    CHECK(same_barcode(persistent_homology(F, 7, true).barcode,
                       persistent_homology(F, 7, false).barcode));
}

TEST_CASE("homology oracle") {
    auto X = tree_metric(unit_star_tree());
    auto full = vietoris_rips(X, X.max_distance());
    CHECK(homology_oracle(full) == std::vector<long long>{1});
    // boundary of a triangle: 3 vertices, 3 edges, no 2-simplex
    auto Y = load_metric("1\n1 1", MatrixFormat::LowerTriangular);
    auto ring = vietoris_rips(Y, Rational(1), 1);
    CHECK(homology_oracle(ring) == std::vector<long long>{1, 1});
    // VR_t of a tree metric: components of the subforest, nothing above
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        auto t = random_tree(6, seed * 11);
        auto TX = tree_metric(t);
        for (const Rational& level : TX.levels().values) {
            auto K = vietoris_rips(TX, level);
            long long components = t.n;
            for (const auto& e : t.edges)
                if (e.length <= level) --components;
            auto betti = homology_oracle(K);
            REQUIRE(!betti.empty());
            CHECK(betti[0] == components);
            for (size_t k = 1; k < betti.size(); ++k) CHECK(betti[k] == 0);
        }
    }
    CHECK_THROWS_AS((void)homology_oracle(full, 3), Error);
}

TEST_CASE("h1 surjectivity") {
    // trees: no degree-1 intervals at all
    auto t = random_tree(6, 5);
    auto X = tree_metric(t);
    auto K = vietoris_rips(X, X.max_distance(), 2);
    Filtration F(K, VertexOrder::identity(6));
    auto res = persistent_homology(F, 1);
    CHECK(h1_surjectivity_check(res.barcode, geodesic_defect(X).nu).ok);

    // the 4-cycle: H1 born at 1, dies at 2; nu = 1/2 so 2*nu = 1 suffices
    auto C = cycle4_space();
    auto KC = vietoris_rips(C, C.max_distance());
    Filtration FC(KC, VertexOrder::identity(4));
    auto resC = persistent_homology(FC, 1);
    REQUIRE(resC.barcode.intervals.count(1) == 1);
    CHECK(resC.barcode.intervals.at(1).size() == 1);
    CHECK(resC.barcode.intervals.at(1)[0].birth == Rational(1));
    CHECK(*resC.barcode.intervals.at(1)[0].death == Rational(2));
    Rational nuC = geodesic_defect(C).nu;
    CHECK(nuC == Rational(1, 2));
    CHECK(h1_surjectivity_check(resC.barcode, nuC).ok);

    // fabricated barcode with a birth above the bound
    Barcode fake;
    fake.intervals[1].push_back({Rational(2) * nuC + Rational(1), std::nullopt});
    auto bad = h1_surjectivity_check(fake, nuC);
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->birth == Rational(2));
}

TEST_CASE("stats partition accounts for every column") {
    for (uint64_t seed = 1; seed <= 4; ++seed) {
        auto X = random_metric(6, seed * 131);
        auto K = vietoris_rips(X, X.max_distance());
        Filtration F(K, VertexOrder::identity(6));
        auto res = persistent_homology(F, 6);
        CHECK(res.stats.columns == static_cast<long long>(K.size()));
        CHECK(res.stats.apparent_skipped + res.stats.critical <= res.stats.columns);
        CHECK(res.stats.critical == 1); // connected full complex: one essential class
    }
}

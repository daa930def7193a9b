#include "vrc/complex.hpp"

#include "vrc/datasets.hpp"
#include "vrc/errors.hpp"
#include "vrc/filtration.hpp"
#include "test_helpers.hpp"
#include "doctest.h"

#include <algorithm>

using namespace vrc;
using namespace vrc::testing;

TEST_CASE("rips complex of the unit star at t=2 is the full complex") {
    auto X = tree_metric(unit_star_tree());
    auto K = vietoris_rips(X, Rational(2));
    CHECK(K.size() == 15);
    CHECK(K.is_closed());
    CHECK(K.contains(Simplex{0, 1, 2, 3}));
}

TEST_CASE("rips complex at t=0 is the vertex set") {
    auto X = tree_metric(generic_tree());
    auto K = vietoris_rips(X, Rational(0));
    CHECK(K.size() == 4);
    for (const Simplex& s : K.simplices()) CHECK(s.dim() == 0);
}

TEST_CASE("rips complex respects the threshold") {
    auto X = tree_metric(generic_tree()); // distances 1,2,3,4,5,6
    auto K = vietoris_rips(X, Rational(5));
    CHECK(K.contains(Simplex{0, 3}));        // d(a,d)=5
    CHECK_FALSE(K.contains(Simplex{2, 3}));  // d(c,d)=6
}

TEST_CASE("monotonicity and the clique property on random metrics") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        auto X = random_metric(5 + static_cast<int>(seed % 3), seed * 13);
        const auto& levels = X.levels().values;
        for (size_t m = 1; m < levels.size(); ++m) {
            auto small = vietoris_rips(X, levels[m - 1]);
            auto large = vietoris_rips(X, levels[m]);
            for (const Simplex& s : small.simplices()) CHECK(large.contains(s));
        }
        auto full = vietoris_rips(X, X.max_distance());
        CHECK(full.size() == (1u << X.size()) - 1);
        // diameter equals the maximum edge diameter
        for (const Simplex& s : full.simplices()) {
            Rational edge_max(0);
            const auto& v = s.vertices();
            for (size_t i = 0; i < v.size(); ++i)
                for (size_t j = i + 1; j < v.size(); ++j)
                    edge_max = max(edge_max, full.diameter(Simplex{v[i], v[j]}));
            CHECK(full.diameter(s) == edge_max);
        }
    }
}

TEST_CASE("dimension cap and budget guard") {
    auto X = tree_metric(unit_star_tree());
    auto capped = vietoris_rips(X, Rational(2), 1);
    for (const Simplex& s : capped.simplices()) CHECK(s.dim() <= 1);
    CHECK(capped.size() == 10); // 4 vertices + 6 edges
    CHECK_THROWS_AS((void)vietoris_rips(X, Rational(2), std::nullopt, 10), Error);
}

TEST_CASE("diameter of simplices") {
    auto X = tree_metric(generic_tree());
    SimplicialComplex K(X);
    CHECK(K.diameter(Simplex{0}) == Rational(0));
    CHECK(K.diameter(Simplex{0, 2, 3}) == Rational(6)); // {a,c,d}, d(c,d)=6
    auto star = tree_metric(unit_star_tree());
    SimplicialComplex S(star);
    CHECK(S.diameter(Simplex{0, 1, 2}) == Rational(2));
}

TEST_CASE("facets and cofacets") {
    auto X = tree_metric(unit_star_tree());
    auto K = vietoris_rips(X, Rational(2));
    auto fs = Simplex{0, 1, 2}.facets();
    CHECK(fs.size() == 3);
    CHECK(std::count(fs.begin(), fs.end(), Simplex{0, 1}) == 1);
    CHECK(std::count(fs.begin(), fs.end(), Simplex{0, 2}) == 1);
    CHECK(std::count(fs.begin(), fs.end(), Simplex{1, 2}) == 1);

    auto cofs = K.cofacets(Simplex{0, 2}); // {a,c}
    CHECK(cofs.size() == 2);
    CHECK(std::count(cofs.begin(), cofs.end(), Simplex{0, 1, 2}) == 1);
    CHECK(std::count(cofs.begin(), cofs.end(), Simplex{0, 2, 3}) == 1);

    CHECK(K.cofacets(Simplex{0, 1, 2, 3}).empty());
}

TEST_CASE("subforest") {
    auto t = generic_tree();
    auto X = tree_metric(t);
    auto T3 = subforest(t, X, Rational(3));
    CHECK(T3.size() == 6); // 4 vertices + edges ab, bc
    CHECK(T3.contains(Simplex{0, 1}));
    CHECK(T3.contains(Simplex{1, 2}));
    CHECK_FALSE(T3.contains(Simplex{1, 3}));
    CHECK(subforest(t, X, Rational(4)).size() == 7);
    CHECK(subforest(t, X, Rational(0)).size() == 4);
}

TEST_CASE("diam-lex order on the unit star") {
    auto X = tree_metric(unit_star_tree());
    auto K = vietoris_rips(X, Rational(2));
    Filtration F(K, VertexOrder::identity(4));
    // {a,c} < {a,d}: same diameter and dimension, lexicographic
    CHECK(F.compare(Simplex{0, 2}, Simplex{0, 3}) < 0);
    // diameter dominates: {b,c} (diam 1) < {a,c} (diam 2)
    CHECK(F.compare(Simplex{1, 2}, Simplex{0, 2}) < 0);
    // dimension at equal diameter: {a,c} < {a,b,c}
    CHECK(F.compare(Simplex{0, 2}, Simplex{0, 1, 2}) < 0);
    CHECK(F.compare(Simplex{0, 2}, Simplex{0, 2}) == 0);
}

TEST_CASE("diam-lex order is a strict total order") {
    for (uint64_t seed = 3; seed <= 5; ++seed) {
        auto X = random_metric(6, seed * 31);
        auto K = vietoris_rips(X, X.max_distance(), 3);
        Filtration F(K, VertexOrder::identity(6));
        Rng rng(seed);
        auto simplices = K.sorted_simplices();
        int top = static_cast<int>(simplices.size()) - 1;
        for (int trial = 0; trial < 200; ++trial) {
            const auto& a = simplices[static_cast<size_t>(rng.uniform_int(0, top))];
            const auto& b = simplices[static_cast<size_t>(rng.uniform_int(0, top))];
            const auto& c = simplices[static_cast<size_t>(rng.uniform_int(0, top))];
            // antisymmetry
            CHECK(F.compare(a, b) == -F.compare(b, a));
            if (a == b) CHECK(F.compare(a, b) == 0);
            // transitivity
            if (F.compare(a, b) < 0 && F.compare(b, c) < 0) CHECK(F.compare(a, c) < 0);
        }
        // positions are consistent with diameters
        for (int i = 1; i < F.size(); ++i)
            CHECK(F.diameter_at(i - 1) <= F.diameter_at(i));
    }
}

TEST_CASE("complex dump format") {
    auto X = tree_metric(unit_star_tree());
    auto K = vietoris_rips(X, Rational(1));
    Filtration F(K, VertexOrder::identity(4));
    CHECK(dump_complex(F) ==
          "a : 0\nb : 0\nc : 0\nd : 0\na b : 1\nb c : 1\nb d : 1\n");
}

#include <doctest.h>

#include <random>

#include "minsim/errors.hpp"
#include "minsim/io.hpp"
#include "minsim/itemsets.hpp"

using namespace minsim;

namespace {

UniversePtr small_universe(int n) {
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i) {
        labels.push_back("e" + std::to_string(i));
    }
    return Universe::from_labels(labels);
}

}  // namespace

TEST_CASE("shingle enumerates distinct p-grams") {
    auto s = shingle("abcd", 3);
    CHECK(s.universe()->labels() == std::vector<std::string>{"abc", "bcd"});
    CHECK(s.size() == 2);

    auto rep = shingle("aaaa", 3);
    CHECK(rep.universe()->labels() == std::vector<std::string>{"aaa"});

    CHECK_THROWS_AS(shingle("ab", 3), EmptyInputError);
}

TEST_CASE("shingle normalization lowercases and collapses whitespace") {
    CHECK(normalize_text("A  B\t\nC") == "a b c");
    auto a = shingle_labels("Hello  World", 5);
    auto b = shingle_labels("hello world", 5);
    CHECK(a == b);
}

TEST_CASE("jaccard on small sets") {
    auto u = small_universe(3);
    ItemSet a(u, {1, 2});
    ItemSet b(u, {2, 3});
    CHECK(jaccard(a, b) == Rational(1, 3));

    auto u2 = small_universe(9);
    ItemSet c(u2, {5, 9});
    CHECK(jaccard(c, c) == Rational(1));

    ItemSet d(u, {1});
    ItemSet e(u, {2});
    CHECK(jaccard(d, e) == Rational(0));

    ItemSet empty1(u, {});
    ItemSet empty2(u, {});
    CHECK_THROWS_AS(jaccard(empty1, empty2), UndefinedSimilarityError);

    auto other = small_universe(3);
    CHECK_THROWS_AS(jaccard(a, ItemSet(other, {1})), UniverseMismatchError);
}

TEST_CASE("representation matrix fills by membership") {
    auto u = small_universe(3);
    ItemSet a(u, {1, 2});
    ItemSet b(u, {2, 3});
    auto m = build_representation_matrix(u, {a, b}, identity_permutation(3));
    CHECK(m.cell(1, 1));
    CHECK(m.cell(2, 1));
    CHECK_FALSE(m.cell(3, 1));
    CHECK_FALSE(m.cell(1, 2));
    CHECK(m.cell(2, 2));
    CHECK(m.cell(3, 2));

    // empty set gives an all-zero column
    ItemSet empty(u, {});
    auto m2 = build_representation_matrix(u, {a, empty}, identity_permutation(3));
    CHECK(m2.member_rows(2).empty());

    // sigma swapping rows 1 and 3 permutes rows accordingly
    auto m3 = build_representation_matrix(u, {a, b}, {3, 2, 1});
    CHECK(m3.row_element(1) == 3);
    CHECK_FALSE(m3.cell(1, 1));
    CHECK(m3.cell(3, 1));
}

TEST_CASE("matrix similarity is the row-count ratio") {
    auto u = small_universe(3);
    ItemSet a(u, {1, 2});
    ItemSet b(u, {2, 3});
    auto m = build_representation_matrix(u, {a, b}, identity_permutation(3));
    CHECK(matrix_similarity(m, 1, 2) == Rational(1, 3));

    auto same = build_representation_matrix(u, {a, a}, identity_permutation(3));
    CHECK(matrix_similarity(same, 1, 2) == Rational(1));

    auto rum = build_rum_matrix(a, b, identity_permutation(4));
    CHECK(matrix_similarity(rum, 1, 2) == Rational(1, 2));

    ItemSet empty(u, {});
    auto zeros = build_representation_matrix(u, {empty, empty}, identity_permutation(3));
    CHECK_THROWS_AS(matrix_similarity(zeros, 1, 2), UndefinedSimilarityError);
}

TEST_CASE("RUM matrix duplicates intersection rows, ones by element identity") {
    auto u = small_universe(3);
    ItemSet a(u, {1, 2});
    ItemSet b(u, {2, 3});
    auto m = build_rum_matrix(a, b, identity_permutation(4));
    REQUIRE(m.n_rows() == 4);
    // listing (1,2,2,3)
    CHECK(m.row_element(1) == 1);
    CHECK(m.row_element(2) == 2);
    CHECK(m.row_element(3) == 2);
    CHECK(m.row_element(4) == 3);
    // columns (1,1,1,0) and (0,1,1,1)
    CHECK(m.member_rows(1) == std::vector<int>{1, 2, 3});
    CHECK(m.member_rows(2) == std::vector<int>{2, 3, 4});

    CHECK(matrix_similarity(build_rum_matrix(a, a, identity_permutation(4)), 1, 2) ==
          Rational(1));
    ItemSet c(u, {3});
    CHECK(matrix_similarity(build_rum_matrix(ItemSet(u, {1}), c, identity_permutation(2)), 1,
                            2) == Rational(0));

    ItemSet empty(u, {});
    CHECK_THROWS_AS(build_rum_matrix(empty, empty, {}), EmptyInputError);
}

TEST_CASE("simM conversions") {
    CHECK(sim_to_simM(Rational(0)) == Rational(0));
    CHECK(sim_to_simM(Rational(1)) == Rational(1));
    CHECK(sim_to_simM(Rational(1, 3)) == Rational(1, 2));
    CHECK(simM_to_sim(Rational(1, 2)) == Rational(1, 3));
    // mutual inverses on a dense grid
    for (int i = 0; i <= 200; ++i) {
        Rational s(i, 200);
        CHECK(simM_to_sim(sim_to_simM(s)) == s);
        CHECK(sim_to_simM(simM_to_sim(s)) == s);
    }
}

TEST_CASE("random sets: matrix similarities match the set formulas exactly") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        int n = std::uniform_int_distribution<int>(2, 12)(rng);
        auto u = small_universe(n);
        std::vector<int> av;
        std::vector<int> bv;
        for (int i = 1; i <= n; ++i) {
            if (rng() % 2) av.push_back(i);
            if (rng() % 2) bv.push_back(i);
        }
        ItemSet a(u, av);
        ItemSet b(u, bv);
        if (a.size() + b.size() == 0) {
            continue;
        }
        Rational sim = jaccard(a, b);

        auto ru = build_representation_matrix(u, {a, b}, identity_permutation(n));
        CHECK(matrix_similarity(ru, 1, 2) == sim);

        int rows = a.size() + b.size();
        std::vector<int> sigma = identity_permutation(rows);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        auto rum = build_rum_matrix(a, b, sigma);
        CHECK(matrix_similarity(rum, 1, 2) == sim_to_simM(sim));

        // invariance under row permutation of the RU matrix
        std::vector<int> rowperm = identity_permutation(n);
        std::shuffle(rowperm.begin(), rowperm.end(), rng);
        auto permuted = build_representation_matrix(u, {a, b}, rowperm);
        CHECK(matrix_similarity(permuted, 1, 2) == sim);

        CHECK(jaccard(a, b) == jaccard(b, a));
        if (jaccard(a, b) == Rational(1)) {
            CHECK(a.members() == b.members());
        }
    }
}

TEST_CASE("item set JSON round trip") {
    auto u = Universe::from_labels({"abc", "bcd", "cde"});
    ItemSet a(u, {1, 3});
    auto j = itemset_to_json(a);
    ItemSet back = itemset_from_json(j);
    CHECK(back.members() == a.members());
    CHECK(back.universe()->labels() == a.universe()->labels());
}

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "goursat/sigtype.hpp"

using namespace goursat;

namespace {

STWord st(const std::string& s) { return parse_st_word(s); }

STWord delta_str(const std::string& w) { return delta_of_word(parse_kr_word(w)); }

std::vector<KRWord> all_words(int length) {
    std::vector<KRWord> out{KRWord{}};
    for (int l = 0; l < length; ++l) {
        std::vector<KRWord> next;
        for (const KRWord& w : out) {
            for (int choice = 0; choice < 3; ++choice) {
                KRWord v = w;
                v.steps.push_back(choice == 2 ? KRStep::S() : KRStep::R(choice));
                next.push_back(std::move(v));
            }
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace

TEST_CASE("word validity") {
    CHECK(is_valid_sigtype(st("")));
    CHECK(is_valid_sigtype(st("a0")));
    CHECK(is_valid_sigtype(st("a0.a1.a1")));
    CHECK(is_valid_sigtype(st("a0.a1.a2.a3")));
    CHECK_FALSE(is_valid_sigtype(st("a1")));
    CHECK_FALSE(is_valid_sigtype(st("a0.a2")));
    CHECK_FALSE(is_valid_sigtype(st("a0.a1.a3")));
    CHECK_FALSE(is_valid_sigtype(STWord{0, -1}));
}

TEST_CASE("word enumeration") {
    CHECK(jacquard_enum(0) == std::vector<STWord>{{}});
    CHECK(jacquard_enum(1) == std::vector<STWord>{{0}});
    CHECK(jacquard_enum(2) == std::vector<STWord>{st("a0.a0"), st("a0.a1")});
    CHECK(jacquard_enum(3) ==
          std::vector<STWord>{st("a0.a0.a0"), st("a0.a0.a1"), st("a0.a1.a0"),
                              st("a0.a1.a1"), st("a0.a1.a2")});
    for (int n = 0; n <= 9; ++n) {
        const auto& words = jacquard_enum(n);
        CHECK(Integer(words.size()) == jacquard_count(n));
        for (const STWord& w : words) CHECK(is_valid_sigtype(w));
        std::set<STWord> dedup(words.begin(), words.end());
        CHECK(dedup.size() == words.size());
    }
}

TEST_CASE("word counts") {
    std::vector<long long> expected{1,   1,    2,    5,     13,    34,   89,
                                    233, 610,  1597, 4181,  10946, 28657};
    for (int n = 0; n <= 12; ++n) CHECK(jacquard_count(n) == Integer(expected[n]));
    for (int n = 2; n <= 12; ++n)
        CHECK(jacquard_count(n) == 3 * jacquard_count(n - 1) - jacquard_count(n - 2));
}

TEST_CASE("word of a construction") {
    CHECK(delta_str("") == st(""));
    CHECK(delta_str("R0") == st("a0"));
    CHECK(delta_str("S") == st("a0"));
    CHECK(delta_str("R1/2") == st("a0"));
    CHECK(delta_str("R0.S") == st("a0.a1"));
    CHECK(delta_str("R0.S.R0") == st("a0.a1.a2"));
    CHECK(delta_str("R0.S.R1") == st("a0.a1.a0"));
    CHECK(delta_str("R0.S.S.R0") == st("a0.a1.a1.a2"));
    CHECK(delta_str("R0.S.S.R1") == st("a0.a1.a1.a0"));
    CHECK(delta_str("R0.R0.S.R0.R1.R0") == st("a0.a0.a1.a2.a0.a0"));
    CHECK(delta_str("R0.R0.S.R0.R0.R1.R1.R0") == st("a0.a0.a1.a2.a3.a0.a0.a0"));
    for (const auto& entry : catalog(6)) {
        STWord d = delta_of_word(entry.word);
        if (entry.name == "R6a") CHECK(d == st("a0.a0.a0"));
        if (entry.name == "R6b") CHECK(d == st("a0.a0.a1"));
        if (entry.name == "R6c") CHECK(d == st("a0.a1.a2"));
        if (entry.name == "R6d") CHECK(d == st("a0.a1.a0"));
        if (entry.name == "R6e") CHECK(d == st("a0.a1.a1"));
    }
}

TEST_CASE("dual growth entries") {
    CHECK(beta(2, st("a0.a1.a0")) == 1);
    CHECK(beta(3, st("a0.a1.a0")) == 2);
    CHECK(beta(4, st("a0.a1.a0")) == 3);
    CHECK(beta(5, st("a0.a1.a0")) == 4);
    CHECK(beta(6, st("a0.a1.a0")) == 6);
    CHECK(beta(6, st("a0.a1.a2")) == 7);
    CHECK(beta(7, st("a0.a1.a1.a0")) == 9);
    CHECK_THROWS_AS(beta(1, st("a0")), std::domain_error);
    CHECK_THROWS_AS(beta(6, st("a0")), std::domain_error);
    CHECK_THROWS_AS(beta(4, st("a1")), std::domain_error);
}

TEST_CASE("growth from word and back") {
    using V = std::vector<int>;
    std::vector<std::pair<std::string, V>> pairs{
        {"", {2, 3}},
        {"a0", {2, 3, 4}},
        {"a0.a0", {2, 3, 4, 5}},
        {"a0.a1", {2, 3, 4, 4, 5}},
        {"a0.a0.a0", {2, 3, 4, 5, 6}},
        {"a0.a0.a1", {2, 3, 4, 4, 5, 5, 6}},
        {"a0.a1.a0", {2, 3, 4, 5, 5, 6}},
        {"a0.a1.a2", {2, 3, 4, 5, 5, 5, 6}},
        {"a0.a1.a1", {2, 3, 4, 4, 5, 5, 5, 6}},
    };
    for (const auto& [word, growth] : pairs) {
        CHECK(growth_from_sigtype(st(word)) == growth);
        CHECK(sigtype_from_growth(growth) == st(word));
    }
    CHECK(growth_from_sigtype(st("a0.a1.a2"), 6) == V({2, 3, 4, 5, 5, 5, 6}));
    CHECK_THROWS_AS(growth_from_sigtype(st("a0.a1"), 6), std::domain_error);
    CHECK_THROWS_AS(sigtype_from_growth(V{2, 3, 4, 4, 4, 5}), NoMatch);
    CHECK_THROWS_AS(sigtype_from_growth(V{2, 3, 5}), NoMatch);
    CHECK_THROWS_AS(sigtype_from_growth(V{2, 3, 4, 4}), NoMatch);
    CHECK_THROWS_AS(sigtype_from_growth(V{3, 4}), NoMatch);
    try {
        sigtype_from_growth(V{2, 3, 4, 4, 4, 5});
        FAIL("expected NoMatch");
    } catch (const NoMatch& e) {
        CHECK(e.growth == V({2, 3, 4, 4, 4, 5}));
    }
}

TEST_CASE("growth map is invertible on all words") {
    for (int n = 0; n <= 7; ++n) {
        for (const STWord& w : jacquard_enum(n)) {
            CHECK(sigtype_from_growth(growth_from_sigtype(w)) == w);
        }
    }
}

TEST_CASE("construction words reach every word") {
    for (int length = 0; length <= 6; ++length) {
        std::set<STWord> seen;
        for (const KRWord& w : all_words(length)) seen.insert(delta_of_word(w));
        const auto& expect = jacquard_enum(length);
        CHECK(seen == std::set<STWord>(expect.begin(), expect.end()));
    }
}

TEST_CASE("realizing a word") {
    for (int n = 0; n <= 6; ++n) {
        for (const STWord& w : jacquard_enum(n)) {
            CHECK(delta_of_word(word_with_sigtype(w)) == w);
        }
    }
    CHECK(print_canonical(word_with_sigtype(st("a0.a1.a0"))) == "R0.S.R1");
    CHECK(print_canonical(word_with_sigtype(st("a0.a1.a2"))) == "R0.S.R0");
    CHECK_THROWS_AS(word_with_sigtype(st("a0.a2")), std::domain_error);
}

TEST_CASE("word at a point of the chart") {
    KRWord w = parse_kr_word("R0.S");
    QPoint zero(5, Rational(0));
    CHECK(delta_at_point(w, zero) == st("a0.a1"));
    QPoint p = zero;
    p[4] = 1;
    CHECK(delta_at_point(w, p) == st("a0.a0"));

    KRWord v = parse_kr_word("R0.S.S.R0");
    QPoint z7(7, Rational(0));
    CHECK(delta_at_point(v, z7) == st("a0.a1.a1.a2"));
    QPoint q = z7;
    q[6] = 1;
    CHECK(delta_at_point(v, q) == st("a0.a1.a1.a0"));
    q = z7;
    q[5] = 1;
    CHECK(delta_at_point(v, q) == st("a0.a1.a0.a0"));
    CHECK_THROWS_AS(delta_at_point(v, zero), std::domain_error);

    // A constant cancelling against the coordinate revives the chain.
    KRWord u = parse_kr_word("R0.S.R1");
    QPoint r(6, Rational(0));
    CHECK(delta_at_point(u, r) == st("a0.a1.a0"));
    r[5] = -1;
    CHECK(delta_at_point(u, r) == st("a0.a1.a2"));
    r[4] = 2;
    CHECK(delta_at_point(u, r) == st("a0.a0.a0"));
}

TEST_CASE("growth at a point matches the word there") {
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<int> coord(0, 4);
    for (const KRWord& w : all_words(4)) {
        KRSystem sys = build(w);
        for (int rep = 0; rep < 3; ++rep) {
            QPoint q(sys.dim, Rational(0));
            for (auto& c : q) {
                int pick = coord(rng);
                if (pick == 3) c = 1;
                if (pick == 4) c = -1;
            }
            STWord d = delta_at_point(w, q);
            CHECK(growth_vector(sys.f1, sys.f2, q) == growth_from_sigtype(d));
        }
    }
}

TEST_CASE("singular loci in the chart") {
    KRWord w = parse_kr_word("R0.S");
    CHECK(sji_locus(w, 0, 0) == std::vector<int>{5});
    CHECK(sji_membership(w, 0, 0, QPoint(5, Rational(0))));
    QPoint p(5, Rational(0));
    p[4] = 1;
    CHECK_FALSE(sji_membership(w, 0, 0, p));
    CHECK_THROWS_AS(sji_locus(w, 1, 0), std::domain_error);
    CHECK_THROWS_AS(sji_locus(w, 0, 1), std::domain_error);

    KRWord v = parse_kr_word("R0.S.S.R0");
    CHECK_FALSE(sji_locus(v, 0, 0).has_value());
    CHECK(sji_locus(v, 1, 0) == std::vector<int>{6});
    CHECK(sji_locus(v, 1, 1) == std::vector<int>({6, 7}));
    CHECK(sji_locus(v, 2, 0) == std::vector<int>{5});
    CHECK_FALSE(sji_locus(v, 2, 1).has_value());
    CHECK_FALSE(sji_locus(v, 2, 2).has_value());

    KRWord plain = parse_kr_word("R0.R0.R0.R0");
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= i; ++j) CHECK_FALSE(sji_locus(plain, i, j).has_value());

    // Off-center component: the locus misses the center but not the chart.
    KRWord u = parse_kr_word("R0.S.R1");
    CHECK_FALSE(sji_locus(u, 1, 1).has_value());
    QPoint r(6, Rational(0));
    r[5] = -1;
    CHECK(sji_membership(u, 1, 1, r));
    CHECK_FALSE(sji_membership(u, 1, 1, QPoint(6, Rational(0))));
}

TEST_CASE("center membership agrees with the locus description") {
    for (const KRWord& w : all_words(4)) {
        int n = w.dim();
        QPoint zero(n, Rational(0));
        for (int i = 0; i <= n - 5; ++i) {
            for (int j = 0; j <= i; ++j) {
                auto locus = sji_locus(w, i, j);
                CHECK(sji_membership(w, i, j, zero) == locus.has_value());
            }
        }
    }
}

TEST_CASE("at most one depth per base level") {
    for (const KRWord& w : all_words(5)) {
        int n = w.dim();
        for (int base = 0; base <= n - 5; ++base) {
            int hits = 0;
            for (int j = 0; base + j <= n - 5; ++j)
                if (sji_locus(w, base + j, j).has_value()) ++hits;
            CHECK(hits <= 1);
        }
    }
}

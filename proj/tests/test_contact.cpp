#include <catch2/catch_amalgamated.hpp>

#include "goursat/contact.hpp"

using namespace goursat;

namespace {

RatFn v(int i) { return RatFn::var(3, i); }

RatFn k(const Rational& q) { return RatFn::constant(3, q); }

ContactMap3 identity_map() {
    return solve_first_order(v(1), v(2), v(3));
}

ContactMap3 scaling(const Rational& a, const Rational& b) {
    return solve_first_order(k(a) * v(1), k(a * b) * v(2), k(b) * v(3));
}

ContactMap3 shear(const Rational& s) {
    return solve_first_order(v(1), v(2) + k(s / 2) * v(1) * v(1),
                             v(3) + k(s) * v(1));
}

ContactMap3 legendre() {
    return solve_first_order(v(3), v(2) - v(1) * v(3), k(-1) * v(1));
}

RatVF rescaled_second_generator(const ProlongedContact& prefix,
                                const KRWord& full) {
    int n = full.dim();
    RatFn scale = RatFn::one(n) / prefix.mu[6].extend_arity(n);
    PolyVF k2 = build(full).f2;
    RatVF g(n);
    for (int i = 0; i < n; ++i) g.comp[i] = scale * RatFn(k2.comp[i]);
    return g;
}

}  // namespace

TEST_CASE("first order certificates") {
    ContactMap3 id = identity_map();
    CHECK(id.nu3 == RatFn::one(3));
    CHECK(id.lambda3 == RatFn::zero(3));
    CHECK(id.eta3 == RatFn::zero(3));
    CHECK(id.mu3 == RatFn::one(3));

    ContactMap3 sc = scaling(2, 3);
    CHECK(sc.nu3 == k(3));
    CHECK(sc.lambda3 == RatFn::zero(3));
    CHECK(sc.eta3 == RatFn::zero(3));
    CHECK(sc.mu3 == k(2));

    ContactMap3 sh = shear(Rational(5, 2));
    CHECK(sh.nu3 == RatFn::one(3));
    CHECK(sh.eta3 == k(Rational(5, 2)));
    CHECK(sh.mu3 == RatFn::one(3));

    ContactMap3 leg = legendre();
    CHECK(leg.nu3 == RatFn::zero(3));
    CHECK(leg.lambda3 == RatFn::one(3));
    CHECK(leg.eta3 == k(-1));
    CHECK(leg.mu3 == RatFn::zero(3));

    CHECK_THROWS_AS(solve_first_order(v(1) + k(1), v(2), v(3)), PhiNotZero);
    CHECK_THROWS_AS(solve_first_order(v(1) / v(2), v(2), v(3)), PhiNotZero);
    CHECK_THROWS_AS(solve_first_order(v(1), v(2) + v(1) * v(1), v(3)), NotContact);
    CHECK_THROWS_AS(solve_first_order(v(1), v(1), v(3)), NotContact);
    CHECK_THROWS_AS(
        solve_first_order(RatFn::zero(3), RatFn::zero(3), v(3)), NotDiffeo);
}

TEST_CASE("contact maps from text") {
    ContactMap3 leg = parse_contact_map("x3; x2 - x1*x3; -x1");
    CHECK(leg.lambda3 == RatFn::one(3));
    CHECK(leg.eta3 == k(-1));
    CHECK_THROWS_AS(parse_contact_map("x1; x2"), std::domain_error);
    CHECK_THROWS_AS(parse_contact_map("x1; x2; x3; x1"), std::domain_error);
}

TEST_CASE("lifting the identity") {
    ProlongedContact pc = prolong(identity_map(), parse_kr_word("R0.R0.S"));
    CHECK(pc.dim == 6);
    CHECK(print_canonical(pc.target) == "R0.R0.S");
    for (int i = 0; i < 6; ++i) CHECK(pc.phi[i] == RatFn::var(6, i + 1));
    CHECK(pc.mu[4] == RatFn::one(6));
    CHECK(pc.nu[5] == RatFn::one(6));
    CHECK(pc.mu[6] == RatFn::one(6));
    CHECK(pc.eta[5] == RatFn::zero(6));
    CHECK(verify_prolongation(pc));
}

TEST_CASE("lifting scalings and shears") {
    ProlongedContact sc = prolong(scaling(2, 3), parse_kr_word("R0.R0.S"));
    CHECK(print_canonical(sc.target) == "R0.R0.S");
    CHECK(sc.phi[3] == k(Rational(3, 2)).extend_arity(6) * RatFn::var(6, 4));
    CHECK(sc.phi[4] == k(Rational(3, 4)).extend_arity(6) * RatFn::var(6, 5));
    CHECK(sc.phi[5] == k(Rational(8, 3)).extend_arity(6) * RatFn::var(6, 6));
    CHECK(sc.mu[6] == k(Rational(3, 4)).extend_arity(6));
    CHECK(verify_prolongation(sc));

    ProlongedContact sh = prolong(shear(-1), parse_kr_word("R0.R1.S.R1/2"));
    REQUIRE(sh.target.steps.size() == 4);
    CHECK(sh.target.steps[0].c == Rational(-1));
    CHECK(sh.target.steps[2].singular);
    CHECK(verify_prolongation(sh));

    ProlongedContact leg = prolong(legendre(), parse_kr_word("R1"));
    CHECK(leg.target.steps[0].c == Rational(-1));
    CHECK(verify_prolongation(leg));

    CHECK_THROWS_AS(prolong(legendre(), parse_kr_word("R0.R0")),
                    std::domain_error);
    CHECK_THROWS_AS(prolong(identity_map(), parse_kr_word("S.R0")),
                    std::domain_error);
}

TEST_CASE("verification rejects corrupted lifts") {
    ProlongedContact pc = prolong(shear(1), parse_kr_word("R0.R1.S"));
    REQUIRE(verify_prolongation(pc));

    ProlongedContact wrong_constant = pc;
    wrong_constant.target.steps[1] = KRStep::R(Rational(7));
    CHECK_FALSE(verify_prolongation(wrong_constant));

    ProlongedContact wrong_multiplier = pc;
    wrong_multiplier.eta[5] = wrong_multiplier.eta[5] + RatFn::one(6);
    CHECK_FALSE(verify_prolongation(wrong_multiplier));
}

TEST_CASE("degrees along the nine-dimensional word") {
    KRWord full = parse_kr_word("R0.R0.S.R0.R1.R0");
    ProlongedContact prefix = prolong(identity_map(), full.prefix(3));
    RatVF g = rescaled_second_generator(prefix, full);

    CHECK(degree_of(RatFn::var(9, 5), g) == 1);
    CHECK(degree_of(RatFn::var(9, 6), g) == 2);
    CHECK(degree_of(RatFn::var(9, 1), g) == 3);
    CHECK(degree_of(RatFn::var(9, 4), g) == 4);
    CHECK(degree_of(RatFn::var(9, 3), g) == 7);
    CHECK(degree_of(RatFn::var(9, 2), g) == 10);
    CHECK(degree_of(RatFn::one(9), g) == 0);
    CHECK(degree_of(RatFn::zero(9), g, 4) == -1);
}

TEST_CASE("degrees along the eleven-dimensional word") {
    KRWord full = parse_kr_word("R0.R0.S.R0.R0.R1.R1.R0");
    ProlongedContact prefix = prolong(identity_map(), full.prefix(3));
    RatVF g = rescaled_second_generator(prefix, full);

    CHECK(degree_of(RatFn::var(11, 5), g) == 1);
    CHECK(degree_of(RatFn::var(11, 6), g) == 3);
    CHECK(degree_of(RatFn::var(11, 1), g) == 4);
    CHECK(degree_of(RatFn::var(11, 4), g) == 5);
    CHECK(degree_of(RatFn::var(11, 3), g) == 9);
    CHECK(degree_of(RatFn::var(11, 2), g) == 13);
}

TEST_CASE("nine-dimensional obstruction vanishes on certified maps") {
    CHECK(check_r9(identity_map()) == 0);
    CHECK(check_r9(scaling(2, 3)) == 0);
    CHECK(check_r9(scaling(-1, 2)) == 0);
    CHECK(check_r9(scaling(Rational(1, 2), Rational(1, 2))) == 0);
    CHECK(check_r9(shear(1)) == 0);
    CHECK(check_r9(shear(-1)) == 0);
    CHECK(check_r9(shear(3)) == 0);
}

TEST_CASE("eleven-dimensional constants") {
    for (const Rational& c11 :
         {Rational(0), Rational(1), Rational(3, 2), Rational(-2)}) {
        R11Report rep = check_r11(identity_map(), c11);
        CHECK(rep.ctilde9 == 1);
        CHECK(rep.ctilde10 == 1);
        CHECK(rep.ctilde11 == c11);
        CHECK(rep.mu0 == 1);
        CHECK(rep.nu0 == 1);
        CHECK(rep.alpha0 == 1);
    }

    R11Report sc = check_r11(scaling(2, 3), Rational(1));
    CHECK(sc.mu0 == 2);
    CHECK(sc.nu0 == Rational(3, 2));
    CHECK(sc.alpha0 == Rational(4, 3));
    CHECK(sc.ctilde9 == Rational(512, 81));
    CHECK(sc.ctilde10 == Rational(2048, 243));

    for (const ContactMap3& base :
         {identity_map(), scaling(2, 3), shear(-1), scaling(-1, Rational(1, 2))}) {
        R11Report rep = check_r11(base, Rational(3, 2));
        Rational front = rep.mu0 * rep.mu0 / rep.nu0;
        CHECK(rep.ctilde9 == front * rep.alpha0 * rep.alpha0 * rep.alpha0);
        CHECK(rep.ctilde10 ==
              front * rep.alpha0 * rep.alpha0 * rep.alpha0 * rep.alpha0);
    }
}

TEST_CASE("the two routes to the induced constants agree") {
    KRWord full = parse_kr_word("R0.R0.S.R0.R0.R1.R1.R3/2");
    for (const ContactMap3& base : {identity_map(), scaling(2, 3), shear(-1)}) {
        R11Report rep = check_r11(base, Rational(3, 2));
        ProlongedContact pc = prolong(base, full);
        CHECK(pc.target.steps[5].c == rep.ctilde9);
        CHECK(pc.target.steps[6].c == rep.ctilde10);
        CHECK(pc.target.steps[7].c == rep.ctilde11);
        CHECK(verify_prolongation(pc));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qac/scalars.hpp"

using namespace qac;

TEST_CASE("rational construction canonicalizes") {
    CHECK(make_rat(2, 4) == make_rat(1, 2));
    CHECK(make_rat(-2, -4) == make_rat(1, 2));
    CHECK(make_rat(3, -6) == make_rat(-1, 2));
    CHECK(rat_str(make_rat(2, 4)) == "1/2");
    CHECK(rat_str(make_rat(5, 1)) == "5");
    CHECK_THROWS_AS(make_rat(1, 0), DivisionByZero);
}

TEST_CASE("rational parsing") {
    CHECK(parse_rat("3/4") == make_rat(3, 4));
    CHECK(parse_rat("-7") == make_rat(-7, 1));
    CHECK(parse_rat("6/8") == make_rat(3, 4));
    CHECK_THROWS_AS(parse_rat(""), ParseError);
    CHECK_THROWS_AS(parse_rat("x/y"), ParseError);
    CHECK_THROWS_AS(parse_rat("1/0"), DivisionByZero);
}

TEST_CASE("rational integer powers") {
    CHECK(rat_pow_int(make_rat(1, 2), -2) == Rat(4));
    CHECK(rat_pow_int(make_rat(1, 2), 3) == make_rat(1, 8));
    CHECK(rat_pow_int(make_rat(-2, 3), 2) == make_rat(4, 9));
    CHECK(rat_pow_int(Rat(0), 5) == 0);
    CHECK(rat_pow_int(make_rat(7, 5), 0) == 1);
    CHECK_THROWS_AS(rat_pow_int(Rat(0), -1), DivisionByZero);
}

TEST_CASE("scalar_arith exact examples") {
    Scalar half{make_rat(1, 2)};
    Scalar threequarters{make_rat(3, 4)};
    CHECK(scalar_arith(half, threequarters, ArithOp::Mul).rat() == make_rat(3, 8));
    CHECK(scalar_arith(half, Scalar{Rat(-2)}, ArithOp::PowInt).rat() == Rat(4));
    CHECK_THROWS_AS(scalar_arith(half, Scalar{Rat(0)}, ArithOp::Div), DivisionByZero);
    Scalar f{Real(1, 128)};
    CHECK_THROWS_AS(scalar_arith(half, f, ArithOp::Add), BackendMismatch);
}

TEST_CASE("field axioms on random rationals") {
    std::mt19937_64 rng(12345);
    auto pick = [&rng]() {
        long p = static_cast<long>(rng() % 19) - 9;
        long r = static_cast<long>(rng() % 9) + 1;
        return make_rat(p, r);
    };
    for (int i = 0; i < 200; ++i) {
        Rat a = pick(), b = pick(), c = pick();
        CHECK(Rat((a + b) + c) == Rat(a + (b + c)));
        CHECK(Rat((a * b) * c) == Rat(a * (b * c)));
        CHECK(Rat(a * (b + c)) == Rat(a * b + a * c));
        CHECK(Rat(a + b) == Rat(b + a));
        if (a != 0)
            CHECK(Rat(a * (1 / a)) == 1);
    }
}

TEST_CASE("q_power exponent law over [-50,50]") {
    QContext ctx = QContext::defaults(Mode::Exact);
    for (long e1 = -50; e1 <= 50; e1 += 7) {
        for (long e2 = -50; e2 <= 50; ++e2) {
            CHECK(Rat(ctx.q_pow(e1) * ctx.q_pow(e2)) == ctx.q_pow(e1 + e2));
        }
    }
    CHECK(q_power(ctx, 3).rat() == make_rat(1, 8));
    CHECK(q_power(ctx, -1).rat() == Rat(2));
    CHECK(q_power(ctx, binom2(3)).rat() == make_rat(1, 8));
    QContext nctx = QContext::defaults(Mode::Numeric);
    CHECK(q_power(nctx, 3).real().to_double() == doctest::Approx(0.125));
}

TEST_CASE("Real arithmetic carries max precision") {
    Real a(make_rat(1, 3), 128);
    Real b(make_rat(1, 7), 320);
    CHECK((a + b).precision() == 320);
    CHECK((a * b).precision() == 320);
    CHECK((-a).precision() == 128);
    CHECK(Real::pow_int(a, -2).to_double() == doctest::Approx(9.0));
    CHECK_THROWS_AS(a / Real(0, 64), DivisionByZero);
    CHECK_THROWS_AS(Real::pow_int(Real(0, 64), -1), DivisionByZero);
}

TEST_CASE("Real string round trip") {
    Real x = Real::from_string("1e-30", 256);
    CHECK(x.sign() > 0);
    CHECK(x < Real(make_rat(1, 1000000), 256));
    Real y(make_rat(-5, 4), 128);
    CHECK(y.str(6).substr(0, 4) == "-1.2");
    CHECK_THROWS_AS(Real::from_string("zzz", 128), ParseError);
}

TEST_CASE("compare in exact mode") {
    QContext ctx = QContext::defaults(Mode::Exact);
    auto r = compare(Scalar{make_rat(3, 6)}, Scalar{make_rat(1, 2)}, ctx);
    CHECK(r.status == CompareStatus::Equal);
    auto u = compare(Scalar{make_rat(1, 2)}, Scalar{make_rat(1, 3)}, ctx);
    CHECK(u.status == CompareStatus::Unequal);
    CHECK(u.deviation.rat() == make_rat(1, 6));
}

TEST_CASE("compare in numeric mode uses relative tolerance with floor 1") {
    QContext ctx = QContext::defaults(Mode::Numeric);
    Real one(1, 256);
    Real bumped = one + Real::from_string("1e-60", 256);
    auto w = compare(Scalar{one}, Scalar{bumped}, ctx);
    CHECK(w.status == CompareStatus::WithinTolerance);
    Real big(1000000, 256);
    Real bigbump = big + Real::from_string("1e-26", 256);
    // Absolute gap 1e-26 exceeds 1e-30 but is far inside 1e-30 * 1e6.
    CHECK(compare(Scalar{big}, Scalar{bigbump}, ctx).status == CompareStatus::WithinTolerance);
    Real off = one + Real::from_string("1e-20", 256);
    CHECK(compare(Scalar{one}, Scalar{off}, ctx).status == CompareStatus::Unequal);
    CHECK_THROWS_AS(compare(Scalar{one}, Scalar{make_rat(1, 1)}, ctx), BackendMismatch);
}

TEST_CASE("compare is symmetric and reflexive") {
    QContext ctx = QContext::defaults(Mode::Exact);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 50; ++i) {
        Rat a = make_rat(static_cast<long>(rng() % 17) - 8, static_cast<long>(rng() % 9) + 1);
        Rat b = make_rat(static_cast<long>(rng() % 17) - 8, static_cast<long>(rng() % 9) + 1);
        CHECK(compare(Scalar{a}, Scalar{a}, ctx).status == CompareStatus::Equal);
        CHECK(compare(Scalar{a}, Scalar{b}, ctx).status == compare(Scalar{b}, Scalar{a}, ctx).status);
    }
}

TEST_CASE("context validation") {
    CHECK_THROWS_AS(QContext(make_rat(3, 2), Mode::Exact, 256, 8, "1e-30", 1000), ConfigError);
    CHECK_THROWS_AS(QContext(Rat(0), Mode::Exact, 256, 8, "1e-30", 1000), ConfigError);
    CHECK_THROWS_AS(QContext(Rat(1), Mode::Exact, 256, 8, "1e-30", 1000), ConfigError);
    CHECK_THROWS_AS(QContext(make_rat(1, 2), Mode::Exact, 32, 8, "1e-30", 1000), ConfigError);
    CHECK_THROWS_AS(QContext(make_rat(1, 2), Mode::Exact, 256, 0, "1e-30", 1000), ConfigError);
    CHECK_THROWS_AS(QContext(make_rat(1, 2), Mode::Exact, 256, 8, "-1e-30", 1000), ConfigError);
    CHECK_THROWS_AS(QContext(make_rat(1, 2), Mode::Exact, 256, 8, "1e-30", 0), ConfigError);
}

TEST_CASE("inverse-base context flips q and restricts to finite objects") {
    QContext ctx = QContext::defaults(Mode::Exact);
    QContext inv = ctx.inverse_base();
    CHECK(inv.q() == Rat(2));
    CHECK(inv.finite_only());
    CHECK(inv.q_pow(-2) == make_rat(1, 4));
    CHECK_FALSE(ctx.finite_only());
}

TEST_CASE("tail threshold equals tolerance scaled by 2^-16") {
    QContext ctx = QContext::defaults(Mode::Numeric);
    Real expected = ctx.tolerance() * Real::pow_int(Real(2, 256), -16);
    CHECK(ctx.tail_threshold() == expected);
    CHECK(ctx.tail_threshold().to_double() == doctest::Approx(1e-30 / 65536.0));
}

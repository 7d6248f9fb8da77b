#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>
#include <vector>

#include "qac/errors.hpp"
#include "qac/polynomials.hpp"
#include "qac/qkernel.hpp"

using namespace qac;

namespace {

const QContext kExact = QContext::defaults(Mode::Exact);
const QContext kNumeric = QContext::defaults(Mode::Numeric);

ParamPoint exact_point(const Rat& x, const Rat& y, const Rat& a) {
    ParamPoint p;
    p.set("x", Scalar(x));
    p.set("y", Scalar(y));
    p.set("a", Scalar(a));
    return p;
}

ParamPoint real_point(const Rat& x, const Rat& y, const Rat& a, mpfr_prec_t prec) {
    ParamPoint p;
    p.set("x", Scalar(Real(x, prec)));
    p.set("y", Scalar(Real(y, prec)));
    p.set("a", Scalar(Real(a, prec)));
    return p;
}

Real abs_diff(const Real& a, const Real& b) { return (a - b).abs(); }

} // namespace

TEST_CASE("parameter points store, report, and complain") {
    ParamPoint p = exact_point(Rat(1), make_rat(1, 2), Rat(2));
    CHECK(p.has("x"));
    CHECK(!p.has("t"));
    CHECK(p.rat("y") == make_rat(1, 2));
    CHECK_THROWS_AS(p.get("t"), MissingParameter);
    p.set("t", Scalar(Real(make_rat(1, 3), 128)));
    CHECK_THROWS_AS(p.rat("t"), BackendMismatch);
    const auto entries = p.entries();
    REQUIRE(entries.size() == 4);
    CHECK(entries[0].first == "a"); // name-sorted
    CHECK(entries[3].first == "y");
}

TEST_CASE("bivariate polynomial arithmetic and evaluation") {
    const BiPoly x = BiPoly::monomial(Rat(1), 1, 0);
    const BiPoly y = BiPoly::monomial(Rat(1), 0, 1);
    const BiPoly f = x * x - y.scaled(Rat(3));
    CHECK(f.coefficient(2, 0) == 1);
    CHECK(f.coefficient(0, 1) == -3);
    CHECK(f.coefficient(1, 1) == 0);
    CHECK(f.degree() == 2);
    CHECK(f.eval(Rat(2), Rat(1)) == 1);
    CHECK(BiPoly().degree() == -1);
    CHECK((f - f).is_zero());
    CHECK(f * BiPoly() == BiPoly());

    // substitution x -> 2x, y -> y/3
    const BiPoly g = f.scale_powers(Rat(2), make_rat(1, 3));
    CHECK(g.coefficient(2, 0) == 4);
    CHECK(g.coefficient(0, 1) == -1);

    BiPoly h;
    h.set_coefficient(1, 2, make_rat(5, 7));
    h.set_coefficient(1, 2, Rat(0));
    CHECK(h.is_zero());
}

TEST_CASE("Cauchy products expand and evaluate consistently") {
    CHECK(cauchy_poly(0, kExact) == BiPoly::constant(Rat(1)));

    // n = 2: x^2 - (1+q)xy + q y^2 at q = 1/2
    const BiPoly p2 = cauchy_poly(2, kExact);
    CHECK(p2.coefficient(2, 0) == 1);
    CHECK(p2.coefficient(1, 1) == make_rat(-3, 2));
    CHECK(p2.coefficient(0, 2) == make_rat(1, 2));

    CHECK(cauchy_eval(2, Rat(2), Rat(1), kExact) == make_rat(3, 2));

    for (long n = 0; n <= 9; ++n) {
        const BiPoly pn = cauchy_poly(n, kExact);
        CHECK(pn.eval(make_rat(3, 4), make_rat(2, 5)) ==
              cauchy_eval(n, make_rat(3, 4), make_rat(2, 5), kExact));
    }

    // numeric backend agrees with exact to full precision
    const Scalar xe(make_rat(5, 7)), ye(make_rat(2, 3));
    const Scalar xr(Real(make_rat(5, 7), 256)), yr(Real(make_rat(2, 3), 256));
    const Rat exact = cauchy_eval(5, xe, ye, kExact).rat();
    const Real numeric = cauchy_eval(5, xr, yr, kNumeric).real();
    CHECK(abs_diff(numeric, Real(exact, 256)) < Real::from_string("1e-70", 64));
}

TEST_CASE("reference sum: low orders match hand expansion") {
    CHECK(ascu_sum(0, Rat(7), Rat(5), Rat(3), kExact) == 1);
    // n = 1: x - y - a
    CHECK(ascu_sum(1, Rat(1), make_rat(1, 2), Rat(1), kExact) == make_rat(-1, 2));
    // n = 2 at x = y = a = 1, q = 1/2: only the k = 2 term survives
    CHECK(ascu_sum(2, Rat(1), Rat(1), Rat(1), kExact) == make_rat(1, 2));
    CHECK(ascu_sum(2, Rat(1), make_rat(1, 2), make_rat(1, 3), kExact) == make_rat(13, 72));

    // direct expansion for n = 3 at generic rationals
    const Rat x = make_rat(3, 4), y = make_rat(2, 5), a = make_rat(5, 6), q = make_rat(1, 2);
    const Rat p1 = x - y, p2 = p1 * (x - q * y), p3 = p2 * (x - q * q * y);
    const Rat b31 = (1 - q * q * q) / (1 - q); // [3 1] = [3 2]
    const Rat expect = p3 - b31 * a * p2 + b31 * q * a * a * p1 - q * q * q * a * a * a;
    CHECK(ascu_sum(3, x, y, a, kExact) == expect);
}

TEST_CASE("reference sum is symmetric in the last two arguments") {
    const Rat x = make_rat(3, 4), y = make_rat(2, 5), a = make_rat(5, 7);
    for (long n = 0; n <= 12; ++n)
        CHECK(ascu_sum(n, x, y, a, kExact) == ascu_sum(n, x, a, y, kExact));
}

TEST_CASE("reference sum: scalar interface and backends") {
    const ParamPoint pe = exact_point(Rat(1), make_rat(1, 2), make_rat(1, 3));
    const Scalar ve = ascu_sum(2, pe, kExact);
    REQUIRE(ve.exact());
    CHECK(ve.rat() == make_rat(13, 72));

    const ParamPoint pr = real_point(Rat(1), make_rat(1, 2), make_rat(1, 3), 256);
    const Scalar vr = ascu_sum(2, pr, kNumeric);
    REQUIRE(!vr.exact());
    CHECK(abs_diff(vr.real(), Real(make_rat(13, 72), 256)) < Real::from_string("1e-70", 64));
}

TEST_CASE("terminating-series route agrees with the reference sum") {
    const std::vector<std::array<Rat, 3>> pts = {
        {Rat(1), make_rat(1, 2), Rat(1)},
        {make_rat(3, 4), make_rat(2, 5), make_rat(5, 7)},
        {make_rat(-2, 3), make_rat(1, 5), make_rat(7, 4)},
        {make_rat(9, 8), make_rat(-3, 7), make_rat(1, 6)},
    };
    for (const QContext& ctx :
         {kExact, QContext(make_rat(1, 3), Mode::Exact, 256, 8, "1e-30", 20000)}) {
        for (const auto& [x, y, a] : pts) {
            for (long n = 0; n <= 10; ++n) {
                const Scalar v = ascu_phi(n, exact_point(x, y, a), ctx);
                REQUIRE(v.exact());
                CHECK(v.rat() == ascu_sum(n, x, y, a, ctx));
            }
        }
    }
}

TEST_CASE("terminating-series route, numeric backend") {
    const Rat x = make_rat(3, 4), y = make_rat(2, 5), a = make_rat(5, 7);
    for (long n = 0; n <= 10; ++n) {
        const Scalar v = ascu_phi(n, real_point(x, y, a, 256), kNumeric);
        REQUIRE(!v.exact());
        const Real ref(ascu_sum(n, x, y, a, kExact), 256);
        CHECK(abs_diff(v.real(), ref) < Real::from_string("1e-40", 64));
    }
}

TEST_CASE("terminating-series route refuses its excluded parameters") {
    CHECK_THROWS_AS(ascu_phi(2, exact_point(Rat(0), Rat(1), Rat(1)), kExact),
                    ParameterConstraint);
    CHECK_THROWS_AS(ascu_phi(2, exact_point(Rat(1), Rat(1), Rat(0)), kExact),
                    ParameterConstraint);
    // y = 0 is fine
    CHECK(ascu_phi(2, exact_point(Rat(1), Rat(0), Rat(1)), kExact).rat() ==
          ascu_sum(2, Rat(1), Rat(0), Rat(1), kExact));
}

TEST_CASE("operator routes agree with the reference sum") {
    std::mt19937_64 rng(20260823);
    auto draw = [&rng]() {
        const long num = static_cast<long>(rng() % 17) - 8;
        const long den = 1 + static_cast<long>(rng() % 9);
        return make_rat(num == 0 ? 1 : num, den);
    };
    for (const Rat& q : {make_rat(1, 2), make_rat(2, 5)}) {
        const QContext ctx(q, Mode::Exact, 256, 8, "1e-30", 20000);
        for (int trial = 0; trial < 4; ++trial) {
            const Rat x = draw(), y = draw(), a = draw();
            for (long n = 0; n <= 8; ++n) {
                const Rat ref = ascu_sum(n, x, y, a, ctx);
                const ParamPoint p = exact_point(x, y, a);
                CHECK(ascu_operator(n, p, OperatorRoute::HomogeneousShift, ctx).rat() == ref);
                CHECK(ascu_operator(n, p, OperatorRoute::ParameterAugmentation, ctx).rat() ==
                      ref);
            }
        }
    }
}

TEST_CASE("operator routes: constraints") {
    // the augmentation route divides by x
    CHECK_THROWS_AS(
        ascu_operator(2, exact_point(Rat(0), Rat(1), Rat(1)),
                      OperatorRoute::ParameterAugmentation, kExact),
        ParameterConstraint);
    // the shift route has no such restriction
    CHECK(ascu_operator(2, exact_point(Rat(0), Rat(1), Rat(1)),
                        OperatorRoute::HomogeneousShift, kExact)
              .rat() == ascu_sum(2, Rat(0), Rat(1), Rat(1), kExact));
    // float parameters are not supported on the operator routes
    CHECK_THROWS_AS(ascu_operator(2, real_point(Rat(1), Rat(1), Rat(1), 128),
                                  OperatorRoute::HomogeneousShift, kNumeric),
                    BackendMismatch);
}

TEST_CASE("one-variable specialization") {
    // u_1 = x - 1 - a
    CHECK(ascu_u(1, make_rat(1, 3), make_rat(1, 5), kExact) == make_rat(1, 3) - 1 - make_rat(1, 5));
    for (long n = 0; n <= 10; ++n)
        CHECK(ascu_u(n, make_rat(5, 4), make_rat(2, 7), kExact) ==
              ascu_sum(n, make_rat(5, 4), Rat(1), make_rat(2, 7), kExact));
    // homogeneity: U_n(2x, 2, 2a) = 2^n u_n(x; a)
    const Rat x(3), a = make_rat(1, 5);
    CHECK(ascu_sum(2, 2 * x, Rat(2), 2 * a, kExact) == 4 * ascu_u(2, x, a, kExact));
    // scalar interface, numeric backend
    const Scalar v = ascu_u(3, Scalar(Real(make_rat(5, 4), 256)),
                            Scalar(Real(make_rat(2, 7), 256)), kNumeric);
    CHECK(abs_diff(v.real(), Real(ascu_u(3, make_rat(5, 4), make_rat(2, 7), kExact), 256)) <
          Real::from_string("1e-70", 64));
}

TEST_CASE("first Rogers-Szego sum") {
    CHECK(rs_g(0, make_rat(2, 3), kExact) == 1);
    CHECK(rs_g(1, make_rat(2, 3), kExact) == 1 + make_rat(2, 3));
    for (long n = 0; n <= 10; ++n) CHECK(rs_g(n, Rat(0), kExact) == 1);

    // g_2(a|q) = 1 + (1+q)/q * a + a^2; at q = 1/2, a = 1 this is 5
    CHECK(rs_g(2, Rat(1), kExact) == 5);
    // specialization of the three-parameter family at x = 0:
    // U_n(0, 1, a) = (-1)^n q^binom(n,2) g_n(a|q)
    for (long n = 0; n <= 10; ++n) {
        Rat lhs = ascu_sum(n, Rat(0), Rat(1), make_rat(3, 7), kExact);
        Rat rhs = kExact.q_pow(binom2(n)) * rs_g(n, make_rat(3, 7), kExact);
        if (n & 1) rhs = -rhs;
        CHECK(lhs == rhs);
    }
    CHECK(ascu_sum(2, Rat(0), Rat(1), Rat(1), kExact) == make_rat(5, 2));

    const Scalar v = rs_g(4, Scalar(Real(make_rat(3, 7), 256)), kNumeric);
    CHECK(abs_diff(v.real(), Real(rs_g(4, make_rat(3, 7), kExact), 256)) <
          Real::from_string("1e-70", 64));
}

TEST_CASE("second Rogers-Szego sum") {
    CHECK(rs_h(0, make_rat(1, 2), make_rat(1, 3), kExact) == 1);
    // h_1 = 1 + (x - y)
    CHECK(rs_h(1, make_rat(1, 2), make_rat(1, 3), kExact) ==
          1 + make_rat(1, 2) - make_rat(1, 3));

    // inverse-base bridge to the three-parameter family:
    // U_n(x, y, a; q) = (-1)^n q^binom(n,2) a^n h_n(y/a, x/a | 1/q)
    const QContext inv = kExact.inverse_base();
    const Rat x = make_rat(3, 4), y = make_rat(2, 5), a = make_rat(5, 7);
    for (long n = 0; n <= 12; ++n) {
        Rat rhs = kExact.q_pow(binom2(n)) * rat_pow_int(a, n) * rs_h(n, y / a, x / a, inv);
        if (n & 1) rhs = -rhs;
        CHECK(ascu_sum(n, x, y, a, kExact) == rhs);
    }

    const Scalar v = rs_h(5, Scalar(Real(make_rat(1, 2), 256)), Scalar(Real(make_rat(1, 3), 256)),
                          kNumeric);
    CHECK(abs_diff(v.real(), Real(rs_h(5, make_rat(1, 2), make_rat(1, 3), kExact), 256)) <
          Real::from_string("1e-70", 64));
}

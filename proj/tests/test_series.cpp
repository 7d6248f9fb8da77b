#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "qac/errors.hpp"
#include "qac/series.hpp"

using namespace qac;

namespace {

const QContext kExact = QContext::defaults(Mode::Exact);
const std::vector<std::string> kT = {"t"};
const std::vector<std::string> kTS = {"t", "s"};

TruncatedSeries one_minus(const Rat& c, int order) {
    TruncatedSeries f = TruncatedSeries::constant(Rat(1), kT, order);
    f.set_coefficient({1}, -c);
    return f;
}

// Random series over (t, s) with small rational coefficients.
TruncatedSeries random_series(std::mt19937_64& rng, int order, bool unit_constant) {
    TruncatedSeries f(kTS, order);
    for (int i = 0; i <= order; ++i) {
        for (int j = 0; i + j <= order; ++j) {
            const long num = static_cast<long>(rng() % 19) - 9;
            const long den = 1 + static_cast<long>(rng() % 7);
            f.set_coefficient({i, j}, make_rat(num, den));
        }
    }
    if (unit_constant) f.set_coefficient({0, 0}, Rat(1));
    return f;
}

bool series_equal(const TruncatedSeries& a, const TruncatedSeries& b) {
    return series_arith(a, b, SeriesOp::Sub).is_zero();
}

} // namespace

TEST_CASE("construction and coefficient access") {
    TruncatedSeries f(kTS, 4);
    CHECK(f.is_zero());
    CHECK(f.coefficient({0, 0}) == Rat(0));
    f.set_coefficient({2, 1}, Rat(5, 3));
    CHECK(f.coefficient({2, 1}) == Rat(5, 3));
    f.set_coefficient({2, 1}, Rat(0)); // zero coefficients are not stored
    CHECK(f.is_zero());
    CHECK_THROWS_AS(f.coefficient({3, 2}), OutOfOrder);
    CHECK_THROWS_AS(f.set_coefficient({5, 0}, Rat(1)), OutOfOrder);
    CHECK_THROWS_AS(f.coefficient({1}), OutOfOrder);
    CHECK_THROWS_AS(TruncatedSeries({"x"}, 3), UnknownVariable);
    CHECK_THROWS_AS(TruncatedSeries({"t", "t"}, 3), ConfigError);
    // Declared variables are normalized to the canonical t, s, v order.
    const TruncatedSeries g({"s", "t"}, 2);
    CHECK(g.variables() == kTS);
}

TEST_CASE("printing is order-sorted and canonical") {
    TruncatedSeries f(kT, 3);
    f.set_coefficient({0}, Rat(1));
    f.set_coefficient({2}, Rat(-3, 4));
    CHECK(f.str() == "(0): 1\n(2): -3/4\n");
}

TEST_CASE("addition and multiplication basics") {
    const TruncatedSeries one_plus = series_arith(
        TruncatedSeries::constant(Rat(2), kT, 5), one_minus(Rat(1), 5), SeriesOp::Sub);
    // (1+t)(1-t) = 1 - t^2
    const TruncatedSeries prod = series_arith(one_plus, one_minus(Rat(1), 5), SeriesOp::Mul);
    CHECK(prod.coefficient({0}) == Rat(1));
    CHECK(prod.coefficient({1}) == Rat(0));
    CHECK(prod.coefficient({2}) == Rat(-1));
    CHECK(prod.coefficient({3}) == Rat(0));
    // f + 0 = f
    const TruncatedSeries zero(kT, 5);
    CHECK(series_equal(series_arith(prod, zero, SeriesOp::Add), prod));
    // truncation at the smaller order when orders differ
    const TruncatedSeries wide = TruncatedSeries::monomial(Rat(1), "t", 7, kT, 9);
    const TruncatedSeries clipped = series_arith(wide, TruncatedSeries::constant(Rat(1), kT, 5),
                                                 SeriesOp::Mul);
    CHECK(clipped.order() == 5);
    CHECK(clipped.is_zero());
}

TEST_CASE("variable sets merge by embedding") {
    const TruncatedSeries ft = TruncatedSeries::monomial(Rat(2), "t", 1, kT, 6);
    const TruncatedSeries gs = TruncatedSeries::monomial(Rat(3), "s", 2, {"s"}, 6);
    const TruncatedSeries prod = series_arith(ft, gs, SeriesOp::Mul);
    CHECK(prod.variables() == kTS);
    CHECK(prod.coefficient({1, 2}) == Rat(6));
}

TEST_CASE("ring laws on random series") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 12; ++trial) {
        const TruncatedSeries a = random_series(rng, 8, false);
        const TruncatedSeries b = random_series(rng, 8, false);
        const TruncatedSeries c = random_series(rng, 8, false);
        CHECK(series_equal(series_arith(a, b, SeriesOp::Add), series_arith(b, a, SeriesOp::Add)));
        CHECK(series_equal(series_arith(a, b, SeriesOp::Mul), series_arith(b, a, SeriesOp::Mul)));
        CHECK(series_equal(
            series_arith(series_arith(a, b, SeriesOp::Add), c, SeriesOp::Add),
            series_arith(a, series_arith(b, c, SeriesOp::Add), SeriesOp::Add)));
        CHECK(series_equal(
            series_arith(series_arith(a, b, SeriesOp::Mul), c, SeriesOp::Mul),
            series_arith(a, series_arith(b, c, SeriesOp::Mul), SeriesOp::Mul)));
        CHECK(series_equal(
            series_arith(a, series_arith(b, c, SeriesOp::Add), SeriesOp::Mul),
            series_arith(series_arith(a, b, SeriesOp::Mul), series_arith(a, c, SeriesOp::Mul),
                         SeriesOp::Add)));
    }
}

TEST_CASE("inversion") {
    const QContext ctx = kExact; // q = 1/2
    // 1/(1-t) is the geometric series.
    const TruncatedSeries geo = series_inverse(one_minus(Rat(1), 8));
    for (int n = 0; n <= 8; ++n) CHECK(geo.coefficient({n}) == Rat(1));
    // 1/1 = 1
    const TruncatedSeries one = TruncatedSeries::constant(Rat(1), kT, 8);
    CHECK(series_equal(series_inverse(one), one));
    // 1/((1-t)(1-qt)) has coefficients sum_{j<=n} q^j = (2^{n+1}-1)/2^n.
    TruncatedSeries f = TruncatedSeries::constant(Rat(1), kT, 8);
    f.set_coefficient({1}, -(Rat(1) + ctx.q()));
    f.set_coefficient({2}, ctx.q());
    const TruncatedSeries g = series_inverse(f);
    for (int n = 0; n <= 8; ++n)
        CHECK(g.coefficient({n}) == Rat((1L << (n + 1)) - 1) / Rat(1L << n));
    // f * f^-1 = 1 for random unit series.
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 6; ++trial) {
        const TruncatedSeries r = random_series(rng, 8, true);
        CHECK(series_equal(series_arith(r, series_inverse(r), SeriesOp::Mul),
                           TruncatedSeries::constant(Rat(1), kTS, 8)));
    }
    CHECK_THROWS_AS(series_inverse(TruncatedSeries(kT, 4)), NonUnit);
    CHECK_THROWS_AS(series_inverse(TruncatedSeries::monomial(Rat(1), "t", 1, kT, 4)), NonUnit);
}

TEST_CASE("factor expansions") {
    const QContext ctx3 = kExact.with_order(3);
    // 1/(t;q)_inf at q = 1/2: 1, 2, 8/3, 64/21.
    const TruncatedSeries den =
        euler_expand({FactorKind::DenominatorPoch, Rat(1), "t", 0}, ctx3);
    CHECK(den.coefficient({0}) == Rat(1));
    CHECK(den.coefficient({1}) == Rat(2));
    CHECK(den.coefficient({2}) == Rat(8, 3));
    CHECK(den.coefficient({3}) == Rat(64, 21));
    // (0;q)_inf = 1.
    const TruncatedSeries trivial =
        euler_expand({FactorKind::NumeratorPoch, Rat(0), "t", 0}, ctx3);
    CHECK(series_equal(trivial, TruncatedSeries::constant(Rat(1), kT, 3)));
    // (t;q)_2 = (1-t)(1-t/2) = 1 - (3/2)t + (1/2)t^2.
    const TruncatedSeries fin = euler_expand({FactorKind::FinitePoch, Rat(1), "t", 2}, ctx3);
    CHECK(fin.coefficient({0}) == Rat(1));
    CHECK(fin.coefficient({1}) == Rat(-3, 2));
    CHECK(fin.coefficient({2}) == Rat(1, 2));
    CHECK(fin.coefficient({3}) == Rat(0));
    // Monomial factor; a power beyond the order truncates to zero.
    const TruncatedSeries mono = euler_expand({FactorKind::Polynomial, Rat(5, 7), "s", 2}, ctx3);
    CHECK(mono.coefficient({2}) == Rat(5, 7));
    CHECK(euler_expand({FactorKind::Polynomial, Rat(1), "t", 9}, ctx3).is_zero());
    // Exact-mode-only construction; no infinite expansion at 1/q.
    CHECK_THROWS_AS(euler_expand({FactorKind::NumeratorPoch, Rat(1), "t", 0},
                                 QContext::defaults(Mode::Numeric)),
                    ExactModeUnsupported);
    CHECK_THROWS_AS(euler_expand({FactorKind::DenominatorPoch, Rat(1), "t", 0},
                                 kExact.inverse_base()),
                    ExactModeUnsupported);
    CHECK(euler_expand({FactorKind::FinitePoch, Rat(1, 3), "t", 2}, kExact.inverse_base())
              .coefficient({1}) == -Rat(1, 3) * Rat(3)); // (1/3)(1 + q') with q' = 2
}

TEST_CASE("the two infinite expansions are mutually inverse") {
    const QContext ctx10 = kExact.with_order(10);
    for (const Rat& c : {Rat(1), Rat(2, 3), Rat(-3, 5)}) {
        const TruncatedSeries num = euler_expand({FactorKind::NumeratorPoch, c, "t", 0}, ctx10);
        const TruncatedSeries den =
            euler_expand({FactorKind::DenominatorPoch, c, "t", 0}, ctx10);
        CHECK(series_equal(series_inverse(num), den));
        const TruncatedSeries prod = series_arith(num, den, SeriesOp::Mul);
        CHECK(series_equal(prod, TruncatedSeries::constant(Rat(1), kT, 10)));
    }
}

TEST_CASE("expansions match raw numeric products") {
    // Evaluate the order-10 expansion at t0 = 2^-20 and compare against the
    // directly multiplied product, truncated once |c q^K| < 2^-300, at 256
    // bits.  The series truncation tail is ~|c t0|^11, far below 1e-50.
    const Rat t0 = Rat(1, 1 << 20);
    const Real bound = Real::from_string("1e-50", 256);
    for (const Rat& qv : {Rat(1, 2), Rat(2, 5)}) {
        const QContext ctx(qv, Mode::Exact, 256, 10, "1e-30", 20000);
        for (const Rat& c : {Rat(1), Rat(2, 3), Rat(-3, 5)}) {
            Real raw(Rat(1), 256);
            Rat cq = c * t0;
            Rat cqk = c;
            while (true) {
                raw *= Real(Rat(1), 256) - Real(cq, 256);
                cq *= qv;
                cqk *= qv;
                if (abs(cqk.get_num()) * mpz_class(1) * (mpz_class(1) << 300) <
                    abs(cqk.get_den()))
                    break;
            }
            const TruncatedSeries num = euler_expand({FactorKind::NumeratorPoch, c, "t", 0}, ctx);
            const Real snum = Real(series_eval(num, {t0}), 256);
            CHECK((snum - raw).abs() < bound);
            const TruncatedSeries den =
                euler_expand({FactorKind::DenominatorPoch, c, "t", 0}, ctx);
            const Real sden = Real(series_eval(den, {t0}), 256);
            CHECK((sden - Real(Rat(1), 256) / raw).abs() < bound);
        }
    }
}

TEST_CASE("variable scaling") {
    TruncatedSeries f(kT, 4);
    for (int n = 0; n <= 4; ++n) f.set_coefficient({n}, Rat(n + 1));
    const TruncatedSeries scaled = scale_variable(f, "t", kExact.q());
    for (int n = 0; n <= 4; ++n)
        CHECK(scaled.coefficient({n}) == Rat(n + 1) * kExact.q_pow(n));
    CHECK(series_equal(scale_variable(f, "t", Rat(1)), f));
    const TruncatedSeries up = scale_variable(f, "t", Rat(1) / kExact.q());
    CHECK(up.coefficient({2}) == Rat(3) * 4);
    CHECK_THROWS_AS(scale_variable(f, "s", Rat(2)), UnknownVariable);
}

TEST_CASE("assembled products") {
    const QContext ctx = kExact.with_order(6);
    // (t;q)_inf * 1/(t;q)_inf telescopes to 1.
    const TruncatedSeries tele = assemble_product({{FactorKind::NumeratorPoch, Rat(1), "t", 0},
                                                   {FactorKind::DenominatorPoch, Rat(1), "t", 0}},
                                                  ctx);
    CHECK(series_equal(tele, TruncatedSeries::constant(Rat(1), kT, 6)));
    // Empty product.
    CHECK(assemble_product({}, ctx).coefficient(std::vector<int>{}) == Rat(1));
    // Vanishing numerator parameters leave the denominator expansion.
    const TruncatedSeries degen = assemble_product({{FactorKind::NumeratorPoch, Rat(0), "t", 0},
                                                    {FactorKind::NumeratorPoch, Rat(0), "t", 0},
                                                    {FactorKind::DenominatorPoch, Rat(1), "t", 0}},
                                                   ctx);
    CHECK(series_equal(degen,
                       euler_expand({FactorKind::DenominatorPoch, Rat(1), "t", 0}, ctx)));
    // [t^2] (at,yt;q)_inf/(xt;q)_inf at a=1/3, y=1/2, x=1, q=1/2.
    const TruncatedSeries gf = assemble_product({{FactorKind::NumeratorPoch, Rat(1, 3), "t", 0},
                                                 {FactorKind::NumeratorPoch, Rat(1, 2), "t", 0},
                                                 {FactorKind::DenominatorPoch, Rat(1), "t", 0}},
                                                ctx);
    CHECK(gf.coefficient({2}) == Rat(13, 27));
}

TEST_CASE("series evaluation at a point") {
    TruncatedSeries f(kTS, 4);
    f.set_coefficient({0, 0}, Rat(1));
    f.set_coefficient({1, 0}, Rat(2));
    f.set_coefficient({1, 2}, Rat(-3));
    // 1 + 2t - 3ts^2 at t=1/2, s=1/3.
    CHECK(series_eval(f, {Rat(1, 2), Rat(1, 3)}) == Rat(1) + Rat(1) - Rat(1, 6));
    CHECK_THROWS_AS(series_eval(f, {Rat(1, 2)}), OutOfOrder);
}

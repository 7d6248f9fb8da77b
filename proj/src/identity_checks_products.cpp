// Numeric checks of the product expansions: products of two or three family
// members (with free or fixed indices) and the corresponding expansions for
// the self-reciprocal sums.  Left-hand sides are the defining single or
// shell sums in exact rational arithmetic; right-hand sides combine infinite
// Pochhammer products with basic hypergeometric series, including nested
// sums whose inner stopping threshold is tightened by the outer coefficient.

#include "identity_support.hpp"
#include "qac/identities.hpp"
#include "qac/qkernel.hpp"

namespace qac::detail {

namespace {

long grid_long(const ParamPoint& p, const char* name) {
    return p.rat(name).get_num().get_si();
}

}  // namespace

void add_product_checks(std::vector<IdentityCheck>& out) {
    // --- PROD-3: product of three family members, two free indices --------
    {
        IdentityCheck c;
        c.id = "PROD-3";
        c.title = "Product of three family members as a single expansion";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("a"), nonzero_constraint("u"),
                         nonzero_constraint("z"), below_one("x*q/a"),
                         below_one("a*u*t"), below_one("a*z*s"),
                         below_one("x*a*b*c*v*w*t*s/u/z/q")};
        c.draw = [](long index, std::mt19937_64& rng, const QContext& ctx) {
            ParamPoint p = draw_template({{"x", 3, 4},
                                          {"y", 2, 5},
                                          {"a", 4, 5},
                                          {"u", 5, 7},
                                          {"v", 3, 8},
                                          {"b", 2, 7},
                                          {"z", 2, 3},
                                          {"w", 3, 10},
                                          {"c", 4, 9}},
                                         rng, ctx);
            const int mag2 = 16 + 2 * static_cast<int>(index % 2);
            set_scaled(p, "t", 4, 7, mag2, rng, ctx);
            set_scaled(p, "s", 3, 5, mag2, rng, ctx);
            return p;
        };
        c.lhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            AscuTable first(p.rat("x"), p.rat("y"), p.rat("a"), ctx);
            AscuTable second(p.rat("u"), p.rat("v"), p.rat("b"), ctx);
            AscuTable third(p.rat("z"), p.rat("w"), p.rat("c"), ctx);
            const Rat t = p.rat("t"), s = p.rat("s");
            const Rat value = sum_shells2(
                [&](long n, long m) {
                    Rat term = ctx.q_pow(-binom2(n + m)) * first.u(n + m) *
                               second.u(n) * third.u(m) * rat_pow_int(t, n) /
                               first.qfac(n) * rat_pow_int(s, m) / first.qfac(m);
                    if ((n + m) % 2 != 0) term = -term;
                    return term;
                },
                ctx);
            return lift_exact(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            const Rat u = p.rat("u"), v = p.rat("v"), b = p.rat("b");
            const Rat z = p.rat("z"), w = p.rat("w"), cc = p.rat("c");
            const Rat t = p.rat("t"), s = p.rat("s"), q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real value =
                pochinf_ratio({y * q / a, a * b * t, a * v * t, a * cc * s,
                               a * w * s},
                              {x * q / a, a * u * t, a * z * s}, ctx, wp) *
                phi_rat({y / x, q / (a * b * t), q / (a * v * t),
                         q / (a * cc * s), q / (a * w * s)},
                        {y * q / a, q / (a * u * t), q / (a * z * s)},
                        x * a * b * cc * v * w * t * s / (u * z * q), ctx, wp);
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- PROD-2: product of two family members, one fixed index -----------
    {
        IdentityCheck c;
        c.id = "PROD-2";
        c.title = "Product of two family members with one fixed index";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("a"), nonzero_constraint("u"),
                         below_one("x*q/a"), below_one("a*u*t")};
        c.draw = [](long, std::mt19937_64& rng, const QContext& ctx) {
            ParamPoint p = draw_template({{"x", 3, 4},
                                          {"y", 2, 5},
                                          {"a", 4, 5},
                                          {"u", 5, 7},
                                          {"v", 3, 8},
                                          {"b", 2, 7}},
                                         rng, ctx);
            set_scaled(p, "t", 4, 7, 17, rng, ctx);
            return p;
        };
        c.grid = grid_range(0, 3);
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long m = g[0];
            AscuTable first(p.rat("x"), p.rat("y"), p.rat("a"), ctx);
            AscuTable second(p.rat("u"), p.rat("v"), p.rat("b"), ctx);
            const Rat t = p.rat("t");
            const Rat value = sum_single(
                [&](long n) {
                    Rat term = ctx.q_pow(-binom2(n + m)) * first.u(n + m) *
                               second.u(n) * rat_pow_int(t, n) / first.qfac(n);
                    if ((n + m) % 2 != 0) term = -term;
                    return term;
                },
                ctx);
            return lift_exact(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long m = g[0];
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            const Rat u = p.rat("u"), v = p.rat("v"), b = p.rat("b");
            const Rat t = p.rat("t"), q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real value =
                pochinf_ratio({y * q / a, a * b * t, a * v * t},
                              {x * q / a, a * u * t}, ctx, wp) *
                lift(rat_pow_int(a, m), wp) *
                phi_rat({y / x, q / (a * b * t), q / (a * v * t)},
                        {y * q / a, q / (a * u * t)},
                        x * b * v * t / (u * ctx.q_pow(m)), ctx, wp);
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- PROD-T3: products with a common raised index, three variables ----
    {
        IdentityCheck c;
        c.id = "PROD-T3";
        c.title = "Three-variable expansion for products with a common raised index";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("a"), nonzero_constraint("b"),
                         nonzero_constraint("u"), below_one("x*q/a"),
                         below_one("u*q/b")};
        c.draw = [](long index, std::mt19937_64& rng, const QContext& ctx) {
            ParamPoint p = draw_template({{"x", 3, 4},
                                          {"y", 2, 5},
                                          {"a", 4, 5},
                                          {"u", 5, 7},
                                          {"v", 3, 8},
                                          {"b", 3, 7}},
                                         rng, ctx);
            const int mag2 = 16 + static_cast<int>(index % 2);
            set_scaled(p, "t", 4, 7, mag2, rng, ctx);
            set_scaled(p, "s", 3, 5, mag2, rng, ctx);
            set_scaled(p, "z", 5, 6, mag2, rng, ctx);
            return p;
        };
        c.lhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            AscuTable first(p.rat("x"), p.rat("y"), p.rat("a"), ctx);
            AscuTable second(p.rat("u"), p.rat("v"), p.rat("b"), ctx);
            const Rat t = p.rat("t"), s = p.rat("s"), z = p.rat("z");
            const Rat value = sum_shells3(
                [&](long n, long m, long k) {
                    Rat term = ctx.q_pow(-binom2(k) - (n + m) * k) *
                               first.u(n + k) * second.u(m + k) *
                               rat_pow_int(t, n) / first.qfac(n) *
                               rat_pow_int(s, m) / first.qfac(m) *
                               rat_pow_int(z, k) / first.qfac(k);
                    if (k % 2 != 0) term = -term;
                    return term;
                },
                ctx);
            return lift_exact(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            const Rat u = p.rat("u"), v = p.rat("v"), b = p.rat("b");
            const Rat t = p.rat("t"), s = p.rat("s"), z = p.rat("z");
            const Rat q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real threshold = ctx.tail_threshold().rounded_to(wp);
            Real outer(Rat(0), wp);
            int below = 0;
            bool done = false;
            for (long k = 0; k < ctx.max_terms(); ++k) {
                Rat coef = ctx.q_pow(-binom2(k)) * qpoch(y / x, k, ctx) *
                           qpoch(q / (a * t), k, ctx) *
                           qpoch(q / (a * b * z), k, ctx) /
                           (qpoch(q, k, ctx) * qpoch(y * q / a, k, ctx)) *
                           rat_pow_int(x * a * b * t * z / q, k);
                if (k % 2 != 0) coef = -coef;
                const Real coef_real = lift(coef, wp);
                const Real inner = inner_threshold(coef_real, ctx, wp);
                const Real term =
                    coef_real *
                    phi_rat({v / u, q / (b * s), ctx.q_pow(k + 1) / (a * b * z)},
                            {v * q / b}, a * b * u * s * z / ctx.q_pow(k + 1),
                            ctx, wp, &inner);
                outer += term;
                if (term.abs().cmp(threshold) < 0) {
                    if (++below >= 3) {
                        done = true;
                        break;
                    }
                } else {
                    below = 0;
                }
            }
            if (!done) throw GuardExceeded("outer expansion did not settle");
            const Real value =
                pochinf_ratio({y * q / a, v * q / b, b * s, a * t, a * b * z},
                              {x * q / a, u * q / b}, ctx, wp) *
                outer;
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- PROD-1K: products with two fixed indices, one free index ---------
    {
        IdentityCheck c;
        c.id = "PROD-1K";
        c.title = "Single-variable expansion for products with two fixed indices";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("a"), nonzero_constraint("b"),
                         nonzero_constraint("u"), below_one("x*q/a"),
                         below_one("v*q/b")};
        c.draw = [](long, std::mt19937_64& rng, const QContext& ctx) {
            ParamPoint p = draw_template({{"x", 3, 4},
                                          {"y", 2, 5},
                                          {"a", 4, 5},
                                          {"u", 5, 7},
                                          {"v", 3, 8},
                                          {"b", 2, 7}},
                                         rng, ctx);
            set_scaled(p, "z", 5, 6, 22, rng, ctx);
            return p;
        };
        c.grid = grid_rect(2, 2);
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long n = g[0], m = g[1];
            AscuTable first(p.rat("x"), p.rat("y"), p.rat("a"), ctx);
            AscuTable second(p.rat("u"), p.rat("v"), p.rat("b"), ctx);
            const Rat z = p.rat("z");
            const Rat value = sum_single(
                [&](long k) {
                    Rat term = ctx.q_pow(-binom2(n + k) - binom2(m) - m * k) *
                               first.u(n + k) * second.u(m + k) *
                               rat_pow_int(z, k) / first.qfac(k);
                    if ((m + n + k) % 2 != 0) term = -term;
                    return term;
                },
                ctx);
            return lift_exact(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long n = g[0], m = g[1];
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            const Rat u = p.rat("u"), v = p.rat("v"), b = p.rat("b");
            const Rat z = p.rat("z"), q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real threshold = ctx.tail_threshold().rounded_to(wp);
            Real outer(Rat(0), wp);
            int below = 0;
            bool done = false;
            for (long k = 0; k < ctx.max_terms(); ++k) {
                const Rat coef = qpoch(y / x, k, ctx) *
                                 qpoch(q / (a * b * z), k, ctx) /
                                 (qpoch(q, k, ctx) * qpoch(y * q / a, k, ctx)) *
                                 rat_pow_int(x * b * z / ctx.q_pow(n), k);
                const Real coef_real = lift(coef, wp);
                const Real inner = inner_threshold(coef_real, ctx, wp);
                const Real term =
                    coef_real * phi_rat({v / u, ctx.q_pow(k + 1) / (a * b * z)},
                                        {v * q / b},
                                        a * u * z / ctx.q_pow(m + k), ctx, wp,
                                        &inner);
                outer += term;
                if (term.abs().cmp(threshold) < 0) {
                    if (++below >= 3) {
                        done = true;
                        break;
                    }
                } else {
                    below = 0;
                }
            }
            if (!done) throw GuardExceeded("outer expansion did not settle");
            const Real value =
                pochinf_ratio({y * q / a, v * q / b, a * b * z},
                              {x * q / a, u * q / b}, ctx, wp) *
                lift(rat_pow_int(a, n) * rat_pow_int(b, m), wp) * outer;
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- PROD-RS: product of three self-reciprocal sums -------------------
    {
        IdentityCheck c;
        c.id = "PROD-RS";
        c.title = "Product of three self-reciprocal sums as a single expansion";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("a"),
                         below_one("a*a*a*b*c*t*t*s*s/q/q/q")};
        c.draw = [](long index, std::mt19937_64& rng, const QContext& ctx) {
            ParamPoint p = draw_template({{"a", 2, 3}, {"b", 2, 5}, {"c", 3, 7}},
                                         rng, ctx);
            const int mag2 = 8 + static_cast<int>(index % 2);
            set_scaled(p, "t", 6, 7, mag2, rng, ctx);
            set_scaled(p, "s", 4, 5, mag2, rng, ctx);
            return p;
        };
        c.lhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            GTable ga(p.rat("a"), ctx);
            GTable gb(p.rat("b"), ctx);
            GTable gc(p.rat("c"), ctx);
            const Rat t = p.rat("t"), s = p.rat("s");
            const Rat value = sum_shells2(
                [&](long n, long m) {
                    Rat term = ctx.q_pow(binom2(n) + binom2(m)) * ga.g(n + m) *
                               gb.g(n) * gc.g(m) * rat_pow_int(t, n) /
                               ga.qfac(n) * rat_pow_int(s, m) / ga.qfac(m);
                    if ((n + m) % 2 != 0) term = -term;
                    return term;
                },
                ctx);
            return lift_exact(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const Rat a = p.rat("a"), b = p.rat("b"), cc = p.rat("c");
            const Rat t = p.rat("t"), s = p.rat("s"), q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real value =
                pochinf_ratio({q / a, a * t, a * b * t, a * s, a * cc * s}, {},
                              ctx, wp) *
                phi_rat({q / (a * t), q / (a * b * t), q / (a * s),
                         q / (a * cc * s)},
                        {q / a},
                        rat_pow_int(a, 3) * b * cc * t * t * s * s /
                            ctx.q_pow(3),
                        ctx, wp);
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- CAO-RED: self-reciprocal product with one fixed index ------------
    {
        IdentityCheck c;
        c.id = "CAO-RED";
        c.title = "Reduction of a self-reciprocal product with one fixed index";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("a"), nonzero_constraint("b"),
                         nonzero_constraint("t"), below_one("b*t"),
                         below_one("a*b*t*t/q")};
        c.draw = template_draw({{"a", 2, 3}, {"b", 2, 5}, {"t", 2, 7}});
        c.grid = grid_range(0, 3);
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long m = g[0];
            GTable ga(p.rat("a"), ctx);
            GTable gb(p.rat("b"), ctx);
            const Rat t = p.rat("t");
            const Rat value = sum_single(
                [&](long n) {
                    Rat term = ctx.q_pow(binom2(n)) * ga.g(n + m) * gb.g(n) *
                               rat_pow_int(t, n) / ga.qfac(n);
                    if (n % 2 != 0) term = -term;
                    return term;
                },
                ctx);
            return lift_exact(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long m = g[0];
            const Rat a = p.rat("a"), b = p.rat("b"), t = p.rat("t");
            const Rat q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Rat mid = qpoch(q / t, m, ctx) /
                            (rat_pow_int(b * t / q, m) *
                             qpoch(q * q / (a * b * t * t), m, ctx));
            const Real value =
                pochinf_ratio({a * b * t, a * t, b * t, t},
                              {a * b * t * t / q}, ctx, wp) *
                lift(mid, wp) *
                phi_rat({ctx.q_pow(-m), q / (a * b * t)}, {t * ctx.q_pow(-m)},
                        b * t, ctx, wp);
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- GN-T3: three-variable self-reciprocal expansion, terminating -----
    {
        IdentityCheck c;
        c.id = "GN-T3";
        c.title = "Three-variable self-reciprocal expansion at a terminating parameter";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("a"), nonzero_constraint("b"),
                         nonzero_constraint("s"), below_one("a*b*z"),
                         below_one("a*b*s*z/q/q/q")};
        c.draw = [](long index, std::mt19937_64& rng, const QContext& ctx) {
            ParamPoint p = draw_template({{"b", 2, 5}}, rng, ctx);
            set_scaled(p, "t", 3, 4, 13, rng, ctx);
            set_scaled(p, "z", 5, 6, 16, rng, ctx);
            set_scaled(p, "s", 4, 5, 8, rng, ctx);
            const long r = index % 3;
            p.set("a", Scalar(ctx.q_pow(r + 1) / p.rat("t")));
            p.set("r", Scalar(Rat(r)));
            return p;
        };
        c.lhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            GTable ga(p.rat("a"), ctx);
            GTable gb(p.rat("b"), ctx);
            const Rat t = p.rat("t"), s = p.rat("s"), z = p.rat("z");
            const Rat value = sum_shells3(
                [&](long n, long m, long k) {
                    Rat term = ctx.q_pow(binom2(n) + binom2(m) + binom2(k)) *
                               ga.g(n + k) * gb.g(m + k) * rat_pow_int(t, n) /
                               ga.qfac(n) * rat_pow_int(s, m) / ga.qfac(m) *
                               rat_pow_int(z, k) / ga.qfac(k);
                    if ((n + m + k) % 2 != 0) term = -term;
                    return term;
                },
                ctx);
            return lift_exact(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const long r = grid_long(p, "r");
            const Rat a = p.rat("a"), b = p.rat("b");
            const Rat t = p.rat("t"), s = p.rat("s"), z = p.rat("z");
            const Rat q = ctx.q();
            const long wp = rhs_precision(ctx);
            Real outer(Rat(0), wp);
            for (long k = 0; k <= r; ++k) {
                const Rat coef = qpoch(q / (a * t), k, ctx) *
                                 qpoch(q / (a * b * z), k, ctx) /
                                 (qpoch(q, k, ctx) * qpoch(q / a, k, ctx)) *
                                 rat_pow_int(a * b * t * z / q, k);
                outer += lift(coef, wp) *
                         phi_rat({q / (b * s), ctx.q_pow(k + 1) / (a * b * z)},
                                 {q / b}, a * b * s * z / ctx.q_pow(k + 1), ctx,
                                 wp);
            }
            const Real value =
                pochinf_ratio({q / a, q / b, b * s, a * t, a * b * z}, {}, ctx,
                              wp) *
                outer;
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- GN-GAUSS: closed summation of the same three-variable sum --------
    {
        IdentityCheck c;
        c.id = "GN-GAUSS";
        c.title = "Closed summation of the three-variable self-reciprocal expansion";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("a"), nonzero_constraint("b"),
                         nonzero_constraint("s"), below_one("a*b*z"),
                         below_one("a*t*z/s")};
        c.draw = [](long index, std::mt19937_64& rng, const QContext& ctx) {
            ParamPoint p = draw_template({{"b", 2, 5}}, rng, ctx);
            set_scaled(p, "t", 3, 4, 13, rng, ctx);
            set_scaled(p, "z", 5, 6, 16, rng, ctx);
            set_scaled(p, "s", 4, 5, 8, rng, ctx);
            const long r = index % 3;
            p.set("a", Scalar(ctx.q_pow(r + 1) / p.rat("t")));
            p.set("r", Scalar(Rat(r)));
            return p;
        };
        c.lhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            GTable ga(p.rat("a"), ctx);
            GTable gb(p.rat("b"), ctx);
            const Rat t = p.rat("t"), s = p.rat("s"), z = p.rat("z");
            const Rat value = sum_shells3(
                [&](long n, long m, long k) {
                    Rat term = ctx.q_pow(binom2(n) + binom2(m) + binom2(k)) *
                               ga.g(n + k) * gb.g(m + k) * rat_pow_int(t, n) /
                               ga.qfac(n) * rat_pow_int(s, m) / ga.qfac(m) *
                               rat_pow_int(z, k) / ga.qfac(k);
                    if ((n + m + k) % 2 != 0) term = -term;
                    return term;
                },
                ctx);
            return lift_exact(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const long r = grid_long(p, "r");
            const Rat a = p.rat("a"), b = p.rat("b");
            const Rat t = p.rat("t"), s = p.rat("s"), z = p.rat("z");
            const Rat q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real value =
                pochinf_ratio({q / a, s, a * t, a * z, b * s, a * b * z},
                              {a * b * s * z / q}, ctx, wp) *
                phi_rat({ctx.q_pow(-r), q / (a * z), q / (a * b * z)},
                        {q / a, q * q / (a * b * s * z)}, a * t * z / s, ctx,
                        wp);
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- GN-1K: self-reciprocal products with two fixed indices -----------
    {
        IdentityCheck c;
        c.id = "GN-1K";
        c.title = "Single-variable self-reciprocal expansion with two fixed indices";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("a"), nonzero_constraint("b"),
                         below_one("b*z/q/q/q")};
        c.draw = [](long, std::mt19937_64& rng, const QContext& ctx) {
            ParamPoint p = draw_template({{"a", 2, 3}, {"b", 3, 5}}, rng, ctx);
            set_scaled(p, "z", 5, 6, 16, rng, ctx);
            return p;
        };
        c.grid = grid_rect(3, 2);
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long n = g[0], m = g[1];
            GTable ga(p.rat("a"), ctx);
            GTable gb(p.rat("b"), ctx);
            const Rat z = p.rat("z");
            const Rat value = sum_single(
                [&](long k) {
                    Rat term = ctx.q_pow(binom2(k)) * ga.g(n + k) * gb.g(m + k) *
                               rat_pow_int(z, k) / ga.qfac(k);
                    if (k % 2 != 0) term = -term;
                    return term;
                },
                ctx);
            return lift_exact(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long n = g[0], m = g[1];
            const Rat a = p.rat("a"), b = p.rat("b"), z = p.rat("z");
            const Rat q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real threshold = ctx.tail_threshold().rounded_to(wp);
            Real outer(Rat(0), wp);
            int below = 0;
            bool done = false;
            for (long k = 0; k < ctx.max_terms(); ++k) {
                Rat coef = ctx.q_pow(binom2(k)) *
                           qpoch(q / (a * b * z), k, ctx) /
                           (qpoch(q, k, ctx) * qpoch(q / a, k, ctx)) *
                           rat_pow_int(b * z / ctx.q_pow(n), k);
                if (k % 2 != 0) coef = -coef;
                const Real coef_real = lift(coef, wp);
                const Real inner = inner_threshold(coef_real, ctx, wp);
                const Real term =
                    coef_real * phi_rat({ctx.q_pow(k + 1) / (a * b * z)},
                                        {q / b}, a * z / ctx.q_pow(m + k), ctx,
                                        wp, &inner);
                outer += term;
                if (term.abs().cmp(threshold) < 0) {
                    if (++below >= 3) {
                        done = true;
                        break;
                    }
                } else {
                    below = 0;
                }
            }
            if (!done) throw GuardExceeded("outer expansion did not settle");
            const Real value =
                pochinf_ratio({q / a, q / b, a * b * z}, {}, ctx, wp) *
                lift(rat_pow_int(a, n) * rat_pow_int(b, m), wp) * outer;
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }
}

}  // namespace qac::detail

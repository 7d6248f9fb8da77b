// Numeric checks of the bilinear kernels and multi-variable expansion
// formulas.  Left-hand sides are the defining series, summed exactly in
// rational arithmetic under the tail-threshold stopping rule and lifted for
// comparison; right-hand sides are products of infinite Pochhammer symbols
// and basic hypergeometric series at doubled working precision.

#include "identity_support.hpp"
#include "qac/identities.hpp"
#include "qac/qkernel.hpp"

namespace qac::detail {

void add_kernel_checks(std::vector<IdentityCheck>& out) {
    // --- MEHLER-TERM: bilinear kernel, terminating parameter ratio --------
    {
        IdentityCheck c;
        c.id = "MEHLER-TERM";
        c.title = "Bilinear kernel with terminating second-parameter ratio";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("u"), below_one("x*b*t*v/u"),
                         below_one("a*t*v")};
        c.draw = [](long index, std::mt19937_64& rng, const QContext& ctx) {
            ParamPoint p = draw_template({{"x", 3, 4},
                                          {"y", 2, 5},
                                          {"a", 1, 3},
                                          {"u", 5, 7},
                                          {"b", 2, 7},
                                          {"t", 1, 9}},
                                         rng, ctx);
            const long r = index % 4;
            p.set("v", Scalar(p.rat("u") * ctx.q_pow(-r)));
            p.set("r", Scalar(Rat(r)));
            return p;
        };
        c.lhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            AscuTable first(p.rat("x"), p.rat("y"), p.rat("a"), ctx);
            AscuTable second(p.rat("u"), p.rat("v"), p.rat("b"), ctx);
            const Rat t = p.rat("t");
            const Rat value = sum_single(
                [&](long n) {
                    Rat term = ctx.q_pow(-binom2(n)) * first.u(n) * second.u(n) *
                               rat_pow_int(t, n) / first.qfac(n);
                    if (n % 2 != 0) term = -term;
                    return term;
                },
                ctx);
            return lift_exact(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            const Rat u = p.rat("u"), v = p.rat("v"), b = p.rat("b");
            const Rat t = p.rat("t"), q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real value =
                pochinf_ratio({a * b * t, y * b * t, a * v * t},
                              {x * b * t, a * u * t}, ctx, wp) *
                phi_rat({y / x, v / u, q / (a * b * t)},
                        {q / (x * b * t), q / (a * u * t)}, q, ctx, wp);
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- MEHLER-u: one-variable bilinear kernel, terminating ratio --------
    {
        IdentityCheck c;
        c.id = "MEHLER-u";
        c.title = "Bilinear kernel of the one-variable family";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("x"), nonzero_constraint("y"),
                         nonzero_constraint("t"), below_one("a*t"), below_one("b*t")};
        c.draw = [](long index, std::mt19937_64& rng, const QContext& ctx) {
            ParamPoint p = draw_template({{"x", 2, 3}, {"y", 3, 5}, {"b", 1, 4},
                                          {"t", 1, 8}},
                                         rng, ctx);
            const long r = index % 4;
            p.set("a", Scalar(p.rat("x") * ctx.q_pow(-r)));
            p.set("r", Scalar(Rat(r)));
            return p;
        };
        c.lhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            // u_n at parameter a equals the family with the unit entry in the
            // final slot; the large terminating parameter sits second.
            AscuTable first(p.rat("x"), p.rat("a"), Rat(1), ctx);
            AscuTable second(p.rat("y"), p.rat("b"), Rat(1), ctx);
            const Rat t = p.rat("t");
            const Rat value = sum_single(
                [&](long n) {
                    Rat term = ctx.q_pow(-binom2(n)) * first.u(n) * second.u(n) *
                               rat_pow_int(t, n) / first.qfac(n);
                    return term;
                },
                ctx);
            return lift_exact(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            const Rat b = p.rat("b"), t = p.rat("t"), q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real value =
                pochinf_ratio({-t, -a * t, -b * t}, {-x * t, -y * t}, ctx, wp) *
                phi_rat({a / x, b / y, -q / t}, {-q / (x * t), -q / (y * t)}, q,
                        ctx, wp);
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- MEHLER-NT: bilinear kernel, nonterminating form ------------------
    {
        IdentityCheck c;
        c.id = "MEHLER-NT";
        c.title = "Bilinear kernel in nonterminating form";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("a"), nonzero_constraint("u"),
                         below_one("a*u*t"), below_one("x*q/a"),
                         below_one("x*b*v*t/u")};
        c.draw = [](long index, std::mt19937_64& rng, const QContext& ctx) {
            ParamPoint p = draw_template({{"x", 3, 4},
                                          {"y", 2, 5},
                                          {"a", 4, 5},
                                          {"u", 5, 7},
                                          {"v", 3, 8},
                                          {"b", 2, 7}},
                                         rng, ctx);
            const int mag2 = 14 + 4 * static_cast<int>(index % 3);
            set_scaled(p, "t", 5, 7, mag2, rng, ctx);
            return p;
        };
        c.lhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            AscuTable first(p.rat("x"), p.rat("y"), p.rat("a"), ctx);
            AscuTable second(p.rat("u"), p.rat("v"), p.rat("b"), ctx);
            const Rat t = p.rat("t");
            const Rat value = sum_single(
                [&](long n) {
                    Rat term = ctx.q_pow(-binom2(n)) * first.u(n) * second.u(n) *
                               rat_pow_int(t, n) / first.qfac(n);
                    if (n % 2 != 0) term = -term;
                    return term;
                },
                ctx);
            return lift_exact(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            const Rat u = p.rat("u"), v = p.rat("v"), b = p.rat("b");
            const Rat t = p.rat("t"), q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real value =
                pochinf_ratio({y * q / a, a * b * t, a * v * t},
                              {x * q / a, a * u * t}, ctx, wp) *
                phi_rat({y / x, q / (a * b * t), q / (a * v * t)},
                        {y * q / a, q / (a * u * t)}, x * b * v * t / u, ctx, wp);
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- TRANS-32: transformation between the two kernel representations --
    {
        IdentityCheck c;
        c.id = "TRANS-32";
        c.title = "Transformation between two series forms of the bilinear kernel";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("a"), nonzero_constraint("u"),
                         below_one("x*b*t*v/u"), below_one("x*q/a")};
        c.draw = [](long index, std::mt19937_64& rng, const QContext& ctx) {
            ParamPoint p = draw_template({{"x", 3, 4},
                                          {"y", 2, 5},
                                          {"a", 4, 5},
                                          {"b", 2, 7},
                                          {"u", 5, 7},
                                          {"t", 1, 9}},
                                         rng, ctx);
            const long r = index % 4;
            p.set("v", Scalar(p.rat("u") * ctx.q_pow(-r)));
            p.set("r", Scalar(Rat(r)));
            return p;
        };
        c.lhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            const Rat u = p.rat("u"), v = p.rat("v"), b = p.rat("b");
            const Rat t = p.rat("t"), q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real value =
                phi_rat({y / x, q / (a * b * t), q / (a * v * t)},
                        {y * q / a, q / (a * u * t)}, x * b * v * t / u, ctx, wp);
            return at_context_precision(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            const Rat u = p.rat("u"), v = p.rat("v"), b = p.rat("b");
            const Rat t = p.rat("t"), q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real value =
                pochinf_ratio({y * b * t, x * q / a}, {x * b * t, y * q / a}, ctx,
                              wp) *
                phi_rat({y / x, v / u, q / (a * b * t)},
                        {q / (x * b * t), q / (a * u * t)}, q, ctx, wp);
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- ROGERS-2: two-variable formula with inverse-power weights --------
    {
        IdentityCheck c;
        c.id = "ROGERS-2";
        c.title = "Two-variable expansion with inverse-power weights";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("a"), nonzero_constraint("t"),
                         below_one("x*q/a"), below_one("a*t"), below_one("a*s")};
        c.draw = [](long index, std::mt19937_64& rng, const QContext& ctx) {
            ParamPoint p = draw_template({{"x", 3, 4}, {"y", 2, 5}, {"a", 4, 5}},
                                         rng, ctx);
            const int mag2 = 15 + 2 * static_cast<int>(index % 3);
            set_scaled(p, "t", 4, 7, mag2, rng, ctx);
            set_scaled(p, "s", 3, 5, mag2, rng, ctx);
            return p;
        };
        c.lhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            AscuTable tab(p.rat("x"), p.rat("y"), p.rat("a"), ctx);
            const Rat t = p.rat("t"), s = p.rat("s");
            const Rat value = sum_shells2(
                [&](long n, long m) {
                    Rat term = ctx.q_pow(-binom2(n) - n * m) * tab.u(n + m) *
                               rat_pow_int(t, n) / tab.qfac(n) *
                               rat_pow_int(s, m) / tab.qfac(m);
                    if (n % 2 != 0) term = -term;
                    return term;
                },
                ctx);
            return lift_exact(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            const Rat t = p.rat("t"), s = p.rat("s"), q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real value =
                pochinf_ratio({a * s}, {a * t}, ctx, wp) *
                phi_rat({y / x, s / t}, {q / (a * t)}, x * q / a, ctx, wp);
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- TRIPLE: three-variable expansion formula -------------------------
    {
        IdentityCheck c;
        c.id = "TRIPLE";
        c.title = "Three-variable expansion of the family";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("a"), nonzero_constraint("v"),
                         below_one("x*q/a"), below_one("a*v"),
                         below_one("x*s*t/v")};
        c.draw = [](long index, std::mt19937_64& rng, const QContext& ctx) {
            ParamPoint p = draw_template({{"x", 3, 4}, {"y", 2, 5}, {"a", 4, 5}},
                                         rng, ctx);
            const int mag2 = 16 + 2 * static_cast<int>(index % 2);
            set_scaled(p, "t", 4, 7, mag2, rng, ctx);
            set_scaled(p, "s", 3, 5, mag2, rng, ctx);
            set_scaled(p, "v", 5, 6, mag2, rng, ctx);
            return p;
        };
        c.lhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            AscuTable tab(p.rat("x"), p.rat("y"), p.rat("a"), ctx);
            const Rat t = p.rat("t"), s = p.rat("s"), v = p.rat("v");
            const Rat value = sum_shells3(
                [&](long n, long m, long k) {
                    Rat term = ctx.q_pow(-binom2(k) - (m + n) * k - m * n) *
                               tab.u(n + m + k) * rat_pow_int(t, n) / tab.qfac(n) *
                               rat_pow_int(s, m) / tab.qfac(m) *
                               rat_pow_int(v, k) / tab.qfac(k);
                    if (k % 2 != 0) term = -term;
                    return term;
                },
                ctx);
            return lift_exact(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            const Rat t = p.rat("t"), s = p.rat("s"), v = p.rat("v"), q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real value =
                pochinf_ratio({y * q / a, a * s, a * t}, {x * q / a, a * v}, ctx,
                              wp) *
                phi_rat({y / x, q / (a * s), q / (a * t)},
                        {y * q / a, q / (a * v)}, x * s * t / v, ctx, wp);
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- ROGERS-3: two-variable formula with bilinear exponent weights ----
    {
        IdentityCheck c;
        c.id = "ROGERS-3";
        c.title = "Two-variable expansion with bilinear exponent weights";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {nonzero_constraint("a"), below_one("x*q/a"),
                         below_one("a*x*s*t/q")};
        c.draw = [](long index, std::mt19937_64& rng, const QContext& ctx) {
            ParamPoint p = draw_template({{"x", 3, 4}, {"y", 2, 5}, {"a", 4, 5}},
                                         rng, ctx);
            const int mag2 = 13 + 2 * static_cast<int>(index % 2);
            set_scaled(p, "t", 4, 7, mag2, rng, ctx);
            set_scaled(p, "s", 3, 5, mag2, rng, ctx);
            return p;
        };
        c.lhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            AscuTable tab(p.rat("x"), p.rat("y"), p.rat("a"), ctx);
            const Rat t = p.rat("t"), s = p.rat("s");
            const Rat value = sum_shells2(
                [&](long n, long m) {
                    Rat term = ctx.q_pow(-m * n) * tab.u(n + m) *
                               rat_pow_int(t, n) / tab.qfac(n) *
                               rat_pow_int(s, m) / tab.qfac(m);
                    return term;
                },
                ctx);
            return lift_exact(value, ctx);
        };
        c.rhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            const Rat t = p.rat("t"), s = p.rat("s"), q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real value =
                pochinf_ratio({y * q / a, a * s, a * t}, {x * q / a}, ctx, wp) *
                phi_rat({y / x, q / (a * s), q / (a * t)}, {y * q / a},
                        a * x * s * t / q, ctx, wp);
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }
}

}  // namespace qac::detail

// Numeric checks of the operator lemmas on infinite-product operands: the
// iterated difference quotient of a Pochhammer ratio, the two operator
// exponentials applied to product ratios, and the ladder expansion acting on
// a power.  Left-hand sides go through the operator engines; right-hand
// sides are the closed forms, evaluated at doubled working precision.

#include "identity_support.hpp"
#include "qac/identities.hpp"
#include "qac/operators.hpp"
#include "qac/qkernel.hpp"

namespace qac::detail {

namespace {

// f(sigma) = prod (sigma n;q)_inf over nums / prod (sigma d;q)_inf over dens,
// evaluated in the numeric backend at the precision of the input point.
FunctionHandle poch_ratio_handle(std::vector<Rat> nums, std::vector<Rat> dens,
                                 const QContext& ctx) {
    FunctionHandle h;
    h.eval = [nums = std::move(nums), dens = std::move(dens), ctx](const Scalar& s) {
        const Real& sigma = s.real();
        const mpfr_prec_t prec = sigma.precision();
        Real out(Rat(1), prec);
        for (const Rat& c : nums)
            out = out * qpoch_inf(sigma * Real(c, prec), ctx, prec);
        for (const Rat& c : dens)
            out = out / qpoch_inf(sigma * Real(c, prec), ctx, prec);
        return Scalar(out);
    };
    h.singular = [](const Scalar&) { return false; };
    return h;
}

FunctionHandle power_handle(long n) {
    FunctionHandle h;
    h.eval = [n](const Scalar& s) { return Scalar(Real::pow_int(s.real(), n)); };
    h.singular = [](const Scalar&) { return false; };
    return h;
}

}  // namespace

void add_operator_checks(std::vector<IdentityCheck>& out) {
    // --- LEM-DQN: iterated difference quotient of a product ratio ---------
    {
        IdentityCheck c;
        c.id = "LEM-DQN";
        c.title = "Iterated difference quotient of a Pochhammer ratio";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {below_one("c*t"), below_one("c*v")};
        c.draw = template_draw({{"c", 2, 3}, {"t", 3, 8}, {"v", 1, 5}});
        c.grid = grid_range(0, 5);
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const FunctionHandle f =
                poch_ratio_handle({p.rat("t")}, {p.rat("v")}, ctx);
            const Scalar point(Real(p.rat("c"), ctx.precision_bits()));
            return dq_iterated_point(f, g[0], point, ctx);
        };
        c.rhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long n = g[0];
            const Rat cc = p.rat("c"), t = p.rat("t"), v = p.rat("v");
            const long wp = rhs_precision(ctx);
            const Real value =
                lift(rat_pow_int(v, n) * qpoch(t / v, n, ctx), wp) *
                pochinf_ratio({cc * t * ctx.q_pow(n)}, {cc * v}, ctx, wp);
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- LEM-T-RATIO: difference-quotient exponential on a product ratio --
    {
        IdentityCheck c;
        c.id = "LEM-T-RATIO";
        c.title = "Difference-quotient exponential on a two-product ratio";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {below_one("b*v"), below_one("b*s"),
                         below_one("c*v")};
        c.draw = template_draw(
            {{"c", 2, 3}, {"t", 3, 8}, {"v", 1, 5}, {"s", 2, 7}, {"b", 1, 3}});
        c.lhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const FunctionHandle f =
                poch_ratio_handle({p.rat("s"), p.rat("t")}, {p.rat("v")}, ctx);
            const Scalar b(Real(p.rat("b"), ctx.precision_bits()));
            const Scalar point(Real(p.rat("c"), ctx.precision_bits()));
            return t_operator_func(b, f, point, ctx);
        };
        c.rhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const Rat cc = p.rat("c"), t = p.rat("t"), v = p.rat("v");
            const Rat s = p.rat("s"), b = p.rat("b");
            const long wp = rhs_precision(ctx);
            const Real threshold = ctx.tail_threshold().rounded_to(wp);
            Real total(Rat(0), wp);
            Rat coef_abs(1);  // q^binom(k,2) (cv;q)_k (bs)^k / ((q;q)_k (cs;q)_k (ct;q)_k)
            int below = 0;
            bool done = false;
            for (long k = 0; k < ctx.max_terms(); ++k) {
                if (k > 0) {
                    coef_abs *= ctx.q_pow(k - 1) *
                                (Rat(1) - cc * v * ctx.q_pow(k - 1)) * b * s /
                                ((Rat(1) - ctx.q_pow(k)) *
                                 (Rat(1) - cc * s * ctx.q_pow(k - 1)) *
                                 (Rat(1) - cc * t * ctx.q_pow(k - 1)));
                }
                Rat coef = coef_abs;
                if (k % 2 != 0) coef = -coef;
                const Real term =
                    lift(coef, wp) * phi_rat({t / v, Rat(0)},
                                             {cc * t * ctx.q_pow(k)}, b * v, ctx, wp);
                total += term;
                if (term.abs().cmp(threshold) < 0) {
                    if (++below >= 3) {
                        done = true;
                        break;
                    }
                } else {
                    below = 0;
                }
            }
            if (!done) throw GuardExceeded("closed form did not settle");
            const Real value =
                pochinf_ratio({cc * s, cc * t}, {cc * v}, ctx, wp) * total;
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- E-RATIO1: theta exponential on a one-product ratio ---------------
    {
        IdentityCheck c;
        c.id = "E-RATIO1";
        c.title = "Theta exponential on a one-product ratio";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {below_one("B*q/c"), below_one("c*v")};
        c.draw = template_draw(
            {{"A", 2, 5}, {"B", 3, 7}, {"c", 3, 5}, {"t", 3, 8}, {"v", 1, 5}});
        c.lhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const FunctionHandle f =
                poch_ratio_handle({p.rat("t")}, {p.rat("v")}, ctx);
            const Scalar A(Real(p.rat("A"), ctx.precision_bits()));
            const Scalar B(Real(p.rat("B"), ctx.precision_bits()));
            const Scalar point(Real(p.rat("c"), ctx.precision_bits()));
            return e_cauchy_operator_func(A, B, f, point, ctx);
        };
        c.rhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const Rat A = p.rat("A"), B = p.rat("B"), cc = p.rat("c");
            const Rat t = p.rat("t"), v = p.rat("v");
            const long wp = rhs_precision(ctx);
            const Real value =
                pochinf_ratio({cc * t}, {cc * v}, ctx, wp) *
                phi_rat({A, t / v}, {ctx.q() / (cc * v)}, B * ctx.q() / cc, ctx, wp);
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- E-RATIO2: theta exponential on a two-product ratio ---------------
    {
        IdentityCheck c;
        c.id = "E-RATIO2";
        c.title = "Theta exponential on a two-product ratio";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {below_one("B*q/c"), below_one("B*s*t/v"),
                         below_one("c*v")};
        c.draw = template_draw({{"A", 2, 5},
                                {"B", 3, 7},
                                {"c", 3, 5},
                                {"t", 3, 8},
                                {"v", 1, 5},
                                {"s", 2, 7}});
        c.lhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const FunctionHandle f =
                poch_ratio_handle({p.rat("s"), p.rat("t")}, {p.rat("v")}, ctx);
            const Scalar A(Real(p.rat("A"), ctx.precision_bits()));
            const Scalar B(Real(p.rat("B"), ctx.precision_bits()));
            const Scalar point(Real(p.rat("c"), ctx.precision_bits()));
            return e_cauchy_operator_func(A, B, f, point, ctx);
        };
        c.rhs_value = [](const std::vector<long>&, const ParamPoint& p,
                         const QContext& ctx) {
            const Rat A = p.rat("A"), B = p.rat("B"), cc = p.rat("c");
            const Rat t = p.rat("t"), v = p.rat("v"), s = p.rat("s");
            const Rat q = ctx.q();
            const long wp = rhs_precision(ctx);
            const Real value =
                pochinf_ratio({A * B * q / cc, cc * s, cc * t},
                              {B * q / cc, cc * v}, ctx, wp) *
                phi_rat({A, q / (cc * s), q / (cc * t)},
                        {A * B * q / cc, q / (cc * v)}, B * s * t / v, ctx, wp);
            return at_context_precision(value, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- E-EXPANSION: ladder route of the theta exponential on powers -----
    {
        IdentityCheck c;
        c.id = "E-EXPANSION";
        c.title = "Ladder expansion of the theta exponential on a power";
        c.kind = CheckKind::NumericPoint;
        c.constraints = {below_one("B*q/c")};
        c.draw = template_draw({{"A", 2, 5}, {"B", 3, 7}, {"c", 3, 5}});
        c.grid = grid_range(0, 4);
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const Scalar A(Real(p.rat("A"), ctx.precision_bits()));
            const Scalar B(Real(p.rat("B"), ctx.precision_bits()));
            const Scalar point(Real(p.rat("c"), ctx.precision_bits()));
            return e_cauchy_operator_func(A, B, power_handle(g[0]), point, ctx);
        };
        c.rhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long n = g[0];
            const Rat A = p.rat("A"), B = p.rat("B"), cc = p.rat("c");
            Rat total(0);
            for (long k = 0; k <= n; ++k) {
                Rat term = qbinom(n, k, ctx) * qpoch(A, k, ctx) *
                           rat_pow_int(B * ctx.q(), k) *
                           ctx.q_pow(binom2(k) - n * k) * rat_pow_int(cc, n - k);
                if (k % 2 != 0) term = -term;
                total += term;
            }
            return Scalar(lift(total, ctx.precision_bits()));
        };
        out.push_back(std::move(c));
    }
}

}  // namespace qac::detail

// Formal (coefficient-wise) checks: generating functions of the polynomial
// families and the operator routes that produce them.  Left-hand sides are
// built from the family values or operator images term by term; right-hand
// sides are assembled from Euler-factor expansions.  Both sides are exact
// truncated series and must agree coefficient for coefficient.

#include "identity_support.hpp"
#include "qac/identities.hpp"
#include "qac/operators.hpp"
#include "qac/polynomials.hpp"
#include "qac/qkernel.hpp"
#include "qac/series.hpp"

namespace qac::detail {

namespace {

SeriesFactorSpec num_poch(const Rat& c, const std::string& var) {
    return {FactorKind::NumeratorPoch, c, var, 0};
}

SeriesFactorSpec den_poch(const Rat& c, const std::string& var) {
    return {FactorKind::DenominatorPoch, c, var, 0};
}

TruncatedSeries finite_poch(const Rat& c, const std::string& var, long k,
                            const QContext& ctx) {
    return euler_expand({FactorKind::FinitePoch, c, var, k}, ctx);
}

const std::vector<TemplateEntry> kFormalTemplate = {
    {"x", 3, 4}, {"y", 2, 5}, {"a", 4, 5}};

// Σ_n family(n)/(q;q)_n t^n up to the truncation order.
TruncatedSeries weighted_sum_series(const QContext& ctx,
                                    const std::function<Rat(long)>& family) {
    const int order = ctx.truncation_order();
    TruncatedSeries out({"t"}, order);
    Rat qfac(1);
    for (int n = 0; n <= order; ++n) {
        if (n > 0) qfac *= Rat(1) - ctx.q_pow(n);
        out.set_coefficient({n}, family(n) / qfac);
    }
    return out;
}

}  // namespace

void add_formal_checks(std::vector<IdentityCheck>& out) {
    // --- GF-U: generating function of the three-parameter family ----------
    {
        IdentityCheck c;
        c.id = "GF-U";
        c.title = "Generating function of the three-parameter family";
        c.kind = CheckKind::Formal;
        c.draw = template_draw(kFormalTemplate);
        c.lhs_series = [](const std::vector<long>&, const ParamPoint& p,
                          const QContext& ctx) {
            AscuTable tab(p.rat("x"), p.rat("y"), p.rat("a"), ctx);
            return weighted_sum_series(ctx, [&](long n) { return tab.u(n); });
        };
        c.rhs_series = [](const std::vector<long>&, const ParamPoint& p,
                          const QContext& ctx) {
            return assemble_product({num_poch(p.rat("y"), "t"), num_poch(p.rat("a"), "t"),
                                     den_poch(p.rat("x"), "t")},
                                    ctx);
        };
        out.push_back(std::move(c));
    }

    // --- GF-P: generating function of the Cauchy products -----------------
    {
        IdentityCheck c;
        c.id = "GF-P";
        c.title = "Generating function of the Cauchy products";
        c.kind = CheckKind::Formal;
        c.draw = template_draw(kFormalTemplate);
        c.lhs_series = [](const std::vector<long>&, const ParamPoint& p,
                          const QContext& ctx) {
            return weighted_sum_series(ctx, [&](long n) {
                return cauchy_eval(n, p.rat("x"), p.rat("y"), ctx);
            });
        };
        c.rhs_series = [](const std::vector<long>&, const ParamPoint& p,
                          const QContext& ctx) {
            return assemble_product(
                {num_poch(p.rat("y"), "t"), den_poch(p.rat("x"), "t")}, ctx);
        };
        out.push_back(std::move(c));
    }

    // --- GF-H: generating function of the bivariate Rogers-Szego sums -----
    {
        IdentityCheck c;
        c.id = "GF-H";
        c.title = "Generating function of the bivariate Rogers-Szego sums";
        c.kind = CheckKind::Formal;
        c.draw = template_draw(kFormalTemplate);
        c.lhs_series = [](const std::vector<long>&, const ParamPoint& p,
                          const QContext& ctx) {
            return weighted_sum_series(ctx, [&](long n) {
                return rs_h(n, p.rat("x"), p.rat("y"), ctx);
            });
        };
        c.rhs_series = [](const std::vector<long>&, const ParamPoint& p,
                          const QContext& ctx) {
            return assemble_product({num_poch(p.rat("y"), "t"), den_poch(Rat(1), "t"),
                                     den_poch(p.rat("x"), "t")},
                                    ctx);
        };
        out.push_back(std::move(c));
    }

    // --- DXY-GF: lowering operator applied to the Cauchy GF ---------------
    {
        IdentityCheck c;
        c.id = "DXY-GF";
        c.title = "Lowering operator acting on the Cauchy generating function";
        c.kind = CheckKind::Formal;
        c.draw = template_draw(kFormalTemplate);
        c.lhs_series = [](const std::vector<long>&, const ParamPoint& p,
                          const QContext& ctx) {
            return weighted_sum_series(ctx, [&](long n) {
                return dxy(cauchy_poly(n, ctx), ctx).eval(p.rat("x"), p.rat("y"));
            });
        };
        c.rhs_series = [](const std::vector<long>&, const ParamPoint& p,
                          const QContext& ctx) {
            const TruncatedSeries gf = assemble_product(
                {num_poch(p.rat("y"), "t"), den_poch(p.rat("x"), "t")}, ctx);
            const TruncatedSeries t = TruncatedSeries::monomial(
                Rat(1), "t", 1, {"t"}, ctx.truncation_order());
            return series_arith(t, gf, SeriesOp::Mul);
        };
        out.push_back(std::move(c));
    }

    // --- F-GF: operator exponential producing the GF of the family --------
    {
        IdentityCheck c;
        c.id = "F-GF";
        c.title = "Operator exponential producing the family generating function";
        c.kind = CheckKind::Formal;
        c.draw = template_draw(kFormalTemplate);
        c.lhs_series = [](const std::vector<long>&, const ParamPoint& p,
                          const QContext& ctx) {
            const Rat a = p.rat("a");
            return weighted_sum_series(ctx, [&](long n) {
                return f_operator(a, cauchy_poly(n, ctx), ctx).eval(p.rat("x"),
                                                                    p.rat("y"));
            });
        };
        c.rhs_series = [](const std::vector<long>&, const ParamPoint& p,
                          const QContext& ctx) {
            return assemble_product({num_poch(p.rat("y"), "t"), num_poch(p.rat("a"), "t"),
                                     den_poch(p.rat("x"), "t")},
                                    ctx);
        };
        out.push_back(std::move(c));
    }

    // --- ROGERS-1: two-variable expansion of the diagonal GF --------------
    {
        IdentityCheck c;
        c.id = "ROGERS-1";
        c.title = "Rogers-type expansion of the diagonal generating function";
        c.kind = CheckKind::Formal;
        c.constraints = {nonzero_constraint("x")};
        c.draw = template_draw(kFormalTemplate);
        c.lhs_series = [](const std::vector<long>&, const ParamPoint& p,
                          const QContext& ctx) {
            const int order = ctx.truncation_order();
            AscuTable tab(p.rat("x"), p.rat("y"), p.rat("a"), ctx);
            TruncatedSeries out({"t", "s"}, order);
            for (int n = 0; n <= order; ++n) {
                for (int m = 0; n + m <= order; ++m) {
                    out.set_coefficient(
                        {n, m}, tab.u(n + m) / (tab.qfac(n) * tab.qfac(m)));
                }
            }
            return out;
        };
        c.rhs_series = [](const std::vector<long>&, const ParamPoint& p,
                          const QContext& ctx) {
            const int order = ctx.truncation_order();
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            const TruncatedSeries prefactor = assemble_product(
                {num_poch(a, "s"), num_poch(y, "s"), den_poch(x, "s")}, ctx);
            TruncatedSeries acc({"t", "s"}, order);
            Rat qfk(1), apow(1), qc2(1);
            for (int k = 0; k <= order; ++k) {
                if (k > 0) {
                    qfk *= Rat(1) - ctx.q_pow(k);
                    apow *= a;
                    qc2 *= ctx.q_pow(k - 1);
                }
                const Rat outer = (k % 2 == 0 ? Rat(1) : Rat(-1)) * qc2 * apow / qfk;
                Rat qfj(1), xpow(1);
                for (int j = 0; j + k <= order; ++j) {
                    if (j > 0) {
                        qfj *= Rat(1) - ctx.q_pow(j);
                        xpow *= x;
                    }
                    const Rat coeff =
                        outer * qpoch(y / x, j, ctx) * xpow / qfj;
                    TruncatedSeries shape = series_arith(
                        finite_poch(x, "s", k, ctx),
                        series_inverse(series_arith(
                            series_arith(finite_poch(a, "s", k, ctx),
                                         finite_poch(y, "s", k, ctx), SeriesOp::Mul),
                            finite_poch(y * ctx.q_pow(k), "s", j, ctx),
                            SeriesOp::Mul)),
                        SeriesOp::Mul);
                    shape = series_scale(shape, coeff);
                    const TruncatedSeries tpow = TruncatedSeries::monomial(
                        Rat(1), "t", k + j, {"t"}, order);
                    acc = series_arith(acc, series_arith(tpow, shape, SeriesOp::Mul),
                                       SeriesOp::Add);
                }
            }
            return series_arith(prefactor, acc, SeriesOp::Mul);
        };
        out.push_back(std::move(c));
    }

    // --- MIXED-F: operator exponential on a Cauchy product with shifted
    //     Euler factors, formal in the Euler variable for each fixed degree -
    {
        IdentityCheck c;
        c.id = "MIXED-F";
        c.title = "Operator exponential on a Cauchy product with shifted Euler factors";
        c.kind = CheckKind::Formal;
        c.constraints = {nonzero_constraint("x")};
        c.draw = template_draw(kFormalTemplate);
        c.grid = grid_range(0, 4);
        c.lhs_series = [](const std::vector<long>& g, const ParamPoint& p,
                          const QContext& ctx) {
            const long n = g[0];
            const int order = ctx.truncation_order();
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            const BiPoly pn = cauchy_poly(n, ctx);
            std::vector<Rat> qfac = {Rat(1)};
            for (int j = 1; j <= order; ++j)
                qfac.push_back(qfac.back() * (Rat(1) - ctx.q_pow(j)));
            TruncatedSeries out({"s"}, order);
            for (int j = 0; j <= order; ++j) {
                // Coefficient of s^j in (y q^n s;q)_inf / (x s;q)_inf as a
                // polynomial in (x, y), multiplied by the Cauchy product.
                BiPoly mj;
                for (int i = 0; i <= j; ++i) {
                    const int l = j - i;
                    Rat coeff = ctx.q_pow(binom2(i) + n * i) / (qfac[i] * qfac[l]);
                    if (i % 2 != 0) coeff = -coeff;
                    mj = mj + BiPoly::monomial(coeff, l, i);
                }
                out.set_coefficient({j},
                                    f_operator(a, pn * mj, ctx).eval(x, y));
            }
            return out;
        };
        c.rhs_series = [](const std::vector<long>& g, const ParamPoint& p,
                          const QContext& ctx) {
            const long n = g[0];
            const int order = ctx.truncation_order();
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            const TruncatedSeries prefactor = assemble_product(
                {num_poch(y * ctx.q_pow(n), "s"), num_poch(a, "s"), den_poch(x, "s")},
                ctx);
            TruncatedSeries acc({"s"}, order);
            for (long k = 0; k <= n; ++k) {
                Rat coeff = qbinom(n, k, ctx) * ctx.q_pow(binom2(k)) *
                            rat_pow_int(x, n - k) * rat_pow_int(a, k) *
                            qpoch(y / x, n - k, ctx);
                if (k % 2 != 0) coeff = -coeff;
                const TruncatedSeries shape = series_arith(
                    finite_poch(x, "s", k, ctx),
                    series_inverse(finite_poch(a, "s", k, ctx)), SeriesOp::Mul);
                acc = series_arith(acc, series_scale(shape, coeff), SeriesOp::Add);
            }
            return series_arith(prefactor, acc, SeriesOp::Mul);
        };
        out.push_back(std::move(c));
    }
}

}  // namespace qac::detail

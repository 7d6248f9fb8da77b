// Exact finite checks: symmetry and specialization relations between the
// polynomial families, operator representations at fixed degree, and the
// linearization of the family at shifted arguments.  Every comparison is an
// exact rational equality.

#include "identity_support.hpp"
#include "qac/identities.hpp"
#include "qac/operators.hpp"
#include "qac/polynomials.hpp"
#include "qac/qkernel.hpp"

namespace qac::detail {

namespace {

const std::vector<TemplateEntry> kFamilyTemplate = {
    {"x", 3, 4}, {"y", 2, 5}, {"a", 5, 7}};

}  // namespace

void add_exact_checks(std::vector<IdentityCheck>& out) {
    // --- SYM-U: the family is symmetric in its last two parameters --------
    {
        IdentityCheck c;
        c.id = "SYM-U";
        c.title = "Symmetry of the family in its last two parameters";
        c.kind = CheckKind::ExactFinite;
        c.draw = template_draw(kFamilyTemplate);
        c.grid = grid_range(0, 12);
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            return Scalar(ascu_sum(g[0], p.rat("x"), p.rat("y"), p.rat("a"), ctx));
        };
        c.rhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            return Scalar(ascu_sum(g[0], p.rat("x"), p.rat("a"), p.rat("y"), ctx));
        };
        out.push_back(std::move(c));
    }

    // --- REL-u: reduction to the classical one-variable family ------------
    {
        IdentityCheck c;
        c.id = "REL-u";
        c.title = "Homogeneous reduction to the one-variable family";
        c.kind = CheckKind::ExactFinite;
        c.constraints = {nonzero_constraint("y")};
        c.draw = template_draw(kFamilyTemplate);
        c.grid = grid_range(0, 12);
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            return Scalar(ascu_sum(g[0], p.rat("x"), p.rat("y"), p.rat("a"), ctx));
        };
        c.rhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const Rat y = p.rat("y");
            return Scalar(rat_pow_int(y, g[0]) *
                          ascu_u(g[0], p.rat("x") / y, p.rat("a") / y, ctx));
        };
        out.push_back(std::move(c));
    }

    // --- REL-h: expression through the Rogers-Szego sum at inverse base ---
    {
        IdentityCheck c;
        c.id = "REL-h";
        c.title = "Expression through the bivariate Rogers-Szego sum at inverse base";
        c.kind = CheckKind::ExactFinite;
        c.constraints = {nonzero_constraint("a")};
        c.draw = template_draw(kFamilyTemplate);
        c.grid = grid_range(0, 12);
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            return Scalar(ascu_sum(g[0], p.rat("x"), p.rat("y"), p.rat("a"), ctx));
        };
        c.rhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long n = g[0];
            const Rat a = p.rat("a");
            Rat value = ctx.q_pow(binom2(n)) * rat_pow_int(a, n) *
                        rs_h(n, p.rat("y") / a, p.rat("x") / a, ctx.inverse_base());
            if (n % 2 != 0) value = -value;
            return Scalar(value);
        };
        out.push_back(std::move(c));
    }

    // --- REL-g: specialization at x = 0 to the one-variable sum -----------
    {
        IdentityCheck c;
        c.id = "REL-g";
        c.title = "Specialization at the origin to the self-reciprocal sum";
        c.kind = CheckKind::ExactFinite;
        c.draw = template_draw({{"a", 3, 7}});
        c.grid = grid_range(0, 12);
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            return Scalar(ascu_sum(g[0], Rat(0), Rat(1), p.rat("a"), ctx));
        };
        c.rhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long n = g[0];
            Rat value = ctx.q_pow(binom2(n)) * rs_g(n, p.rat("a"), ctx);
            if (n % 2 != 0) value = -value;
            return Scalar(value);
        };
        out.push_back(std::move(c));
    }

    // --- LEM-TBDQ: exponential of the difference quotient on powers -------
    {
        IdentityCheck c;
        c.id = "LEM-TBDQ";
        c.title = "Difference-quotient exponential acting on a power";
        c.kind = CheckKind::ExactFinite;
        c.draw = template_draw({{"b", 1, 3}, {"c", 5, 4}});
        c.grid = grid_range(0, 8);
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const UniPoly image =
                t_operator(Scalar(p.rat("b")), UniPoly::monomial(Rat(1), g[0]), ctx);
            return Scalar(image.eval(p.rat("c")));
        };
        c.rhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long n = g[0];
            const Rat b = p.rat("b"), cc = p.rat("c");
            Rat total(0);
            for (long k = 0; k <= n; ++k) {
                total += qbinom(n, k, ctx) * rat_pow_int(b, k) * rat_pow_int(cc, n - k);
            }
            return Scalar(total);
        };
        out.push_back(std::move(c));
    }

    // --- E-POLY: two-parameter theta exponential on powers ----------------
    {
        IdentityCheck c;
        c.id = "E-POLY";
        c.title = "Two-parameter theta exponential acting on a power";
        c.kind = CheckKind::ExactFinite;
        c.draw = template_draw({{"A", 2, 5}, {"B", 3, 7}, {"c", 3, 5}});
        c.grid = grid_range(0, 8);
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const UniPoly image =
                e_cauchy_operator(Scalar(p.rat("A")), Scalar(p.rat("B")),
                                  UniPoly::monomial(Rat(1), g[0]), ctx);
            return Scalar(image.eval(p.rat("c")));
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
            return Scalar(total);
        };
        out.push_back(std::move(c));
    }

    // --- OPREP-F: lowering-operator exponential reproduces the family -----
    {
        IdentityCheck c;
        c.id = "OPREP-F";
        c.title = "Lowering-operator exponential reproduces the family";
        c.kind = CheckKind::ExactFinite;
        c.draw = template_draw(kFamilyTemplate);
        c.grid = grid_range(0, 8);
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const BiPoly image = f_operator(p.rat("a"), cauchy_poly(g[0], ctx), ctx);
            return Scalar(image.eval(p.rat("x"), p.rat("y")));
        };
        c.rhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            return Scalar(ascu_sum(g[0], p.rat("x"), p.rat("y"), p.rat("a"), ctx));
        };
        out.push_back(std::move(c));
    }

    // --- OPREP-E: theta-exponential representation of the family ----------
    {
        IdentityCheck c;
        c.id = "OPREP-E";
        c.title = "Theta-exponential representation of the family";
        c.kind = CheckKind::ExactFinite;
        c.constraints = {nonzero_constraint("x")};
        c.draw = template_draw(kFamilyTemplate);
        c.grid = grid_range(0, 8);
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long n = g[0];
            const Rat x = p.rat("x");
            Rat lead = ctx.q_pow(binom2(n));
            if (n % 2 != 0) lead = -lead;
            const UniPoly image =
                e_cauchy_operator(Scalar(p.rat("y") / x), Scalar(x),
                                  UniPoly::monomial(lead, n), ctx);
            return Scalar(image.eval(p.rat("a")));
        };
        c.rhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            return Scalar(ascu_sum(g[0], p.rat("x"), p.rat("y"), p.rat("a"), ctx));
        };
        out.push_back(std::move(c));
    }

    // --- DXY-LADDER: iterated lowering of the Cauchy products -------------
    {
        IdentityCheck c;
        c.id = "DXY-LADDER";
        c.title = "Iterated lowering of the Cauchy products";
        c.kind = CheckKind::ExactFinite;
        c.draw = template_draw({{"x", 3, 4}, {"y", 2, 5}});
        c.grid.clear();
        for (long n = 0; n <= 8; ++n)
            for (long k = 0; k <= n + 1; ++k) c.grid.push_back({n, k});
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            BiPoly f = cauchy_poly(g[0], ctx);
            for (long i = 0; i < g[1]; ++i) f = dxy(f, ctx);
            return Scalar(f.eval(p.rat("x"), p.rat("y")));
        };
        c.rhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long n = g[0], k = g[1];
            if (k > n) return Scalar(Rat(0));
            Rat ratio(1);
            for (long j = n - k + 1; j <= n; ++j)
                ratio *= Rat(1) - ctx.q_pow(j);
            return Scalar(ratio * cauchy_eval(n - k, p.rat("x"), p.rat("y"), ctx));
        };
        out.push_back(std::move(c));
    }

    // --- LINEARIZE: family at raised degree as a shifted convolution ------
    {
        IdentityCheck c;
        c.id = "LINEARIZE";
        c.title = "Raised-degree member as a shifted convolution";
        c.kind = CheckKind::ExactFinite;
        c.draw = template_draw(kFamilyTemplate);
        c.grid = grid_pairs_sum(10);
        c.lhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            return Scalar(
                ascu_sum(g[0] + g[1], p.rat("x"), p.rat("y"), p.rat("a"), ctx));
        };
        c.rhs_value = [](const std::vector<long>& g, const ParamPoint& p,
                         const QContext& ctx) {
            const long n = g[0], m = g[1];
            const Rat x = p.rat("x"), y = p.rat("y"), a = p.rat("a");
            Rat total(0);
            for (long k = 0; k <= n; ++k) {
                Rat term = qbinom(n, k, ctx) * ctx.q_pow(binom2(k)) *
                           rat_pow_int(a * ctx.q_pow(m), k) *
                           cauchy_eval(n - k, x, y, ctx) *
                           ascu_sum(m, x, y * ctx.q_pow(n - k), a, ctx);
                if (k % 2 != 0) term = -term;
                total += term;
            }
            return Scalar(total);
        };
        out.push_back(std::move(c));
    }
}

}  // namespace qac::detail

#pragma once

// Shared machinery for the identity catalog translation units: point
// templates and jittered sampling, exact value caches for the polynomial
// families, stopping rules for the exact left-hand sums, and thin real
// wrappers used by the right-hand closed forms.  Internal to the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qac/errors.hpp"
#include "qac/identities.hpp"
#include "qac/polynomials.hpp"
#include "qac/qkernel.hpp"
#include "qac/scalars.hpp"

namespace qac::detail {

// ---------------------------------------------------------------------------
// Point templates
// ---------------------------------------------------------------------------
//
// Each check freezes a template: a list of named base values num/den together
// with a magnitude exponent mag2.  A drawn value is
//
//     jitter * (num/den) * q^ceil(mag2 * ln 2 / ln(1/q))
//
// so the value's order of magnitude (roughly 2^-mag2 times the base) is
// preserved across q, keeping every sampled point inside the same validated
// convergence window.  Jitters are small rational factors near 1.

struct TemplateEntry {
    const char* name;
    long num;
    long den;
    int mag2 = 0;
};

// q^e with e = ceil(mag2 * ln2 / ln(1/q) - eps); identity for mag2 == 0.
Rat q_scale(int mag2, const QContext& ctx);

// One of nine rational factors in [8/9, 9/8].
Rat jitter(std::mt19937_64& rng);

// Jittered instantiation of a template as a ParamPoint.
ParamPoint draw_template(const std::vector<TemplateEntry>& entries,
                         std::mt19937_64& rng, const QContext& ctx);

// Adds one jittered magnitude-scaled value (base num/den at 2^-mag2) to an
// already-drawn point; used for entries whose magnitude depends on the
// sample index.
void set_scaled(ParamPoint& p, const char* name, long num, long den, int mag2,
                std::mt19937_64& rng, const QContext& ctx);

// Draw function that instantiates a fixed template (no index dependence).
std::function<ParamPoint(long, std::mt19937_64&, const QContext&)>
template_draw(std::vector<TemplateEntry> entries);

// Constraint requiring a named exact parameter to be nonzero.
Constraint nonzero_constraint(const std::string& name);

// Constraint |expr| < 1 where expr is a '*'/'/' chain of parameter names;
// the name "q" denotes the base.  Division by a zero parameter rejects the
// point (pair with nonzero_constraint on that name).
Constraint below_one(const std::string& expr);

// Grid builders: single index lo..hi, pairs with bounded sum, and the full
// rectangle [0,hi1] x [0,hi2].
std::vector<std::vector<long>> grid_range(long lo, long hi);
std::vector<std::vector<long>> grid_pairs_sum(long max_sum);
std::vector<std::vector<long>> grid_rect(long hi1, long hi2);

// ---------------------------------------------------------------------------
// Exact value caches
// ---------------------------------------------------------------------------

// Values of the three-parameter family at a fixed rational point, computed
// once per index from the defining sum, together with the factorials
// (q;q)_n.  Grows on demand.
class AscuTable {
public:
    AscuTable(Rat x, Rat y, Rat a, const QContext& ctx);

    // Values are returned by copy: the backing vectors grow on demand, so a
    // reference could be invalidated by a later lookup inside the same
    // arithmetic expression.
    Rat u(long n);     // U_n at the stored point
    Rat qfac(long n);  // (q;q)_n

private:
    void extend(long n);

    Rat x_, y_, a_, q_;
    std::vector<Rat> cauchy_;  // prod_{j<n} (x - q^j y)
    std::vector<Rat> apow_;    // a^n
    std::vector<Rat> qfac_;    // (q;q)_n
    std::vector<Rat> u_;
};

// Values g_n(a) of the self-reciprocal family at a fixed rational a, with the
// same on-demand growth.
class GTable {
public:
    GTable(Rat a, const QContext& ctx);

    Rat g(long n);
    Rat qfac(long n);

private:
    Rat a_, q_;
    std::vector<Rat> qfac_;
    std::vector<Rat> g_;
};

// ---------------------------------------------------------------------------
// Exact series summation with magnitude-based stopping
// ---------------------------------------------------------------------------
//
// Left-hand sides are summed term by term in exact rational arithmetic; only
// the stopping rule looks at floating magnitudes.  A single sum stops after
// three consecutive terms below the context tail threshold; a shell sum over
// n + m (+ k) = N stops after two consecutive shells whose largest term is
// below it.  Terms beyond 1e8 in magnitude signal divergence.

double rat_mag(const Rat& value);

Rat sum_single(const std::function<Rat(long)>& term, const QContext& ctx);
Rat sum_shells2(const std::function<Rat(long, long)>& term, const QContext& ctx);
Rat sum_shells3(const std::function<Rat(long, long, long)>& term, const QContext& ctx);

// ---------------------------------------------------------------------------
// Real-valued right-hand side helpers
// ---------------------------------------------------------------------------

// Working precision for numeric right-hand sides.
long rhs_precision(const QContext& ctx);

Real lift(const Rat& value, long prec);
std::vector<Real> lift(const std::vector<Rat>& values, long prec);

// prod (n;q)_inf over nums divided by prod (d;q)_inf over dens.
Real pochinf_ratio(const std::vector<Rat>& nums, const std::vector<Rat>& dens,
                   const QContext& ctx, long prec);

// Basic hypergeometric series with rational data, evaluated at `prec` bits.
// `threshold` (optional, absolute) is forwarded to the series engine so outer
// coefficients can tighten the inner stopping rule.
Real phi_rat(const std::vector<Rat>& nums, const std::vector<Rat>& dens, const Rat& z,
             const QContext& ctx, long prec, const Real* threshold = nullptr);

// min(1, tail_threshold / max(|coef|, tiny)) at `prec` bits: the absolute
// stopping threshold for an inner series scaled by an outer coefficient.
Real inner_threshold(const Real& coef, const QContext& ctx, long prec);

// Rounds a working-precision value back to the context precision for the
// final comparison.
Scalar at_context_precision(const Real& value, const QContext& ctx);

// Lifts an exactly computed left-hand value into the numeric backend at the
// context precision.
Scalar lift_exact(const Rat& value, const QContext& ctx);

}  // namespace qac::detail

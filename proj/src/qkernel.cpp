#include "qac/qkernel.hpp"

#include <string>

#include "qac/errors.hpp"

namespace qac {

namespace {

// 2^e as a Real.
Real two_pow(long e, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
    return r;
}

// Smallest m in [0, kTerminationProbe] with a == q^-m, or -1.
long match_neg_qpow(const Rat& a, const QContext& ctx) {
    Rat target(1);
    for (long m = 0; m <= kTerminationProbe; ++m) {
        if (a == target) return m;
        target /= ctx.q();
    }
    return -1;
}

// Numeric counterpart: matches within a relative 2^-(prec/2), i.e. tests
// |a q^m - 1| against the tolerance so the huge q^-m never appears.
long match_neg_qpow(const Real& a, const QContext& ctx, mpfr_prec_t prec) {
    const Real q = ctx.q_real(prec);
    const Real one(1L, prec);
    const Real tol = two_pow(-static_cast<long>(prec / 2), prec);
    Real aqm = a.rounded_to(prec);
    for (long m = 0; m <= kTerminationProbe; ++m) {
        if ((aqm - one).abs() <= tol) return m;
        aqm *= q;
    }
    return -1;
}

} // namespace

// ---------------------------------------------------------------------------
// q-shifted factorials
// ---------------------------------------------------------------------------

Rat qpoch(const Rat& a, long n, const QContext& ctx) {
    Rat prod(1);
    if (n >= 0) {
        Rat aq = a; // a q^k
        for (long k = 0; k < n; ++k) {
            prod *= Rat(1) - aq;
            aq *= ctx.q();
        }
        return prod;
    }
    Rat aq = a;
    for (long k = 1; k <= -n; ++k) {
        aq /= ctx.q(); // a q^-k
        const Rat factor = Rat(1) - aq;
        if (factor == 0)
            throw PoleAtNegativeIndex("vanishing factor in (a;q)_" + std::to_string(n));
        prod *= factor;
    }
    return Rat(1) / prod;
}

Real qpoch(const Real& a, long n, const QContext& ctx) {
    const mpfr_prec_t prec = a.precision();
    const Real q = ctx.q_real(prec);
    const Real one(1L, prec);
    Real prod = one;
    if (n >= 0) {
        Real aq = a;
        for (long k = 0; k < n; ++k) {
            prod *= one - aq;
            aq *= q;
        }
        return prod;
    }
    Real aq = a;
    for (long k = 1; k <= -n; ++k) {
        aq /= q;
        const Real factor = one - aq;
        if (factor.is_zero())
            throw PoleAtNegativeIndex("vanishing factor in (a;q)_" + std::to_string(n));
        prod *= factor;
    }
    return one / prod;
}

Scalar qpoch(const Scalar& a, long n, const QContext& ctx) {
    if (a.exact()) return Scalar(qpoch(a.rat(), n, ctx));
    return Scalar(qpoch(a.real(), n, ctx));
}

Rat qpoch_multi(const std::vector<Rat>& params, long n, const QContext& ctx) {
    Rat prod(1);
    for (const Rat& a : params) prod *= qpoch(a, n, ctx);
    return prod;
}

Scalar qpoch_multi(const std::vector<Scalar>& params, long n, const QContext& ctx) {
    Scalar prod{Rat(1)};
    for (const Scalar& a : params) prod = scalar_arith(prod, qpoch(a, n, ctx), ArithOp::Mul);
    return prod;
}

Real qpoch_inf(const Real& a, const QContext& ctx, mpfr_prec_t prec) {
    if (ctx.finite_only())
        throw ExactModeUnsupported("(a;q)_inf is undefined for a base outside (0,1)");
    if (prec == 0) prec = std::max(a.precision(), ctx.precision_bits());
    const Real q = ctx.q_real(prec);
    const Real one(1L, prec);
    const Real cutoff = two_pow(-static_cast<long>(prec), prec);
    Real prod = one;
    Real aq = a.rounded_to(prec);
    for (long k = 0; aq.abs() >= cutoff; ++k) {
        if (k >= ctx.max_terms())
            throw GuardExceeded("(a;q)_inf needed more than " + std::to_string(ctx.max_terms()) +
                                " factors");
        prod *= one - aq;
        if (prod.is_zero()) return prod;
        aq *= q;
    }
    return prod;
}

Scalar qpoch_inf(const Scalar& a, const QContext& ctx) {
    if (ctx.mode() == Mode::Exact)
        throw ExactModeUnsupported("(a;q)_inf has no exact rational value");
    const Real av = a.exact() ? Real(a.rat(), ctx.precision_bits()) : a.real();
    return Scalar(qpoch_inf(av, ctx));
}

Rat qbinom(long n, long k, const QContext& ctx) {
    if (n < 0 || k < 0 || k > n) return Rat(0);
    const Rat& q = ctx.q();
    return qpoch(q, n, ctx) / (qpoch(q, k, ctx) * qpoch(q, n - k, ctx));
}

Scalar qbinom_scalar(long n, long k, const QContext& ctx) {
    const Rat value = qbinom(n, k, ctx);
    if (ctx.mode() == Mode::Exact) return Scalar(value);
    return Scalar(Real(value, ctx.precision_bits()));
}

// ---------------------------------------------------------------------------
// Termination detection
// ---------------------------------------------------------------------------

TerminationInfo phi_termination(const std::vector<Rat>& nums, const QContext& ctx) {
    TerminationInfo info;
    for (const Rat& a : nums) {
        const long m = match_neg_qpow(a, ctx);
        if (m >= 0 && (!info.terminating || m < info.order)) info = {true, m};
    }
    return info;
}

TerminationInfo phi_termination(const std::vector<Real>& nums, const QContext& ctx,
                                mpfr_prec_t prec) {
    TerminationInfo info;
    for (const Real& a : nums) {
        const long m = match_neg_qpow(a, ctx, prec);
        if (m >= 0 && (!info.terminating || m < info.order)) info = {true, m};
    }
    return info;
}

TerminationInfo phi_termination(const PhiSpec& spec, const QContext& ctx) {
    TerminationInfo info;
    for (const Scalar& a : spec.numerator_params) {
        const long m = a.exact() ? match_neg_qpow(a.rat(), ctx)
                                 : match_neg_qpow(a.real(), ctx, a.real().precision());
        if (m >= 0 && (!info.terminating || m < info.order)) info = {true, m};
    }
    return info;
}

// ---------------------------------------------------------------------------
// Series evaluation
// ---------------------------------------------------------------------------

Rat phi_eval_exact(const std::vector<Rat>& nums, const std::vector<Rat>& dens, const Rat& z,
                   const QContext& ctx) {
    const TerminationInfo info = phi_termination(nums, ctx);
    if (!info.terminating)
        throw ExactModeUnsupported("nonterminating basic hypergeometric series requires "
                                   "numeric mode");
    // A denominator parameter q^-m is only tolerable when the series stops at
    // or before index m.
    for (const Rat& b : dens) {
        const long m = match_neg_qpow(b, ctx);
        if (m >= 0 && m < info.order)
            throw PoleInDenominator("denominator parameter q^-" + std::to_string(m) +
                                    " vanishes before the series terminates");
    }
    const long e = 1 + static_cast<long>(dens.size()) - static_cast<long>(nums.size());
    const Rat& q = ctx.q();
    Rat sum(1), term(1);
    Rat qj(1); // q^j
    for (long j = 0; j < info.order; ++j) {
        Rat numf(1);
        for (const Rat& a : nums) numf *= Rat(1) - a * qj;
        Rat denf = Rat(1) - qj * q; // 1 - q^(j+1)
        for (const Rat& b : dens) denf *= Rat(1) - b * qj;
        if (denf == 0)
            throw PoleInDenominator("vanishing denominator factor at series index " +
                                    std::to_string(j + 1));
        term *= numf / denf * z;
        if (e != 0) {
            term *= rat_pow_int(q, j * e);
            if (e & 1) term = -term;
        }
        sum += term;
        qj *= q;
    }
    return sum;
}

Real phi_eval_numeric(const std::vector<Real>& nums, const std::vector<Real>& dens, const Real& z,
                      const QContext& ctx, mpfr_prec_t prec, const Real* threshold) {
    if (prec == 0) prec = ctx.precision_bits();
    const Real q = ctx.q_real(prec);
    const Real one(1L, prec);
    const TerminationInfo info = phi_termination(nums, ctx, prec);
    for (const Real& b : dens) {
        const long m = match_neg_qpow(b, ctx, prec);
        if (m >= 0 && (!info.terminating || m < info.order))
            throw PoleInDenominator("denominator parameter q^-" + std::to_string(m) +
                                    " vanishes before the series terminates");
    }
    const long e = 1 + static_cast<long>(dens.size()) - static_cast<long>(nums.size());
    const Real qe = Real::pow_int(q, e);
    const Real thr =
        (threshold != nullptr) ? threshold->rounded_to(prec) : ctx.tail_threshold().rounded_to(prec);
    const Real zv = z.rounded_to(prec);

    Real sum = one, term = one;
    Real qj = one;      // q^j
    Real balp = one;    // q^(j*e)
    Real prev_mag = one;
    int below = 0, grow = 0;
    for (long j = 0;; ++j) {
        if (info.terminating && j >= info.order) break;
        if (!info.terminating && j >= ctx.max_terms())
            throw GuardExceeded("series did not settle within " + std::to_string(ctx.max_terms()) +
                                " terms");
        Real numf = one;
        for (const Real& a : nums) numf *= one - a * qj;
        Real denf = one - qj * q;
        for (const Real& b : dens) denf *= one - b * qj;
        if (denf.is_zero())
            throw PoleInDenominator("vanishing denominator factor at series index " +
                                    std::to_string(j + 1));
        term = term * numf / denf * zv;
        if (e != 0) {
            term *= balp;
            if (e & 1) term = -term;
        }
        if (!term.is_finite()) throw NonConvergent("series term overflowed");
        sum += term;
        qj *= q;
        balp *= qe;
        if (info.terminating) continue;
        const Real mag = term.abs();
        if (mag < thr) {
            grow = 0;
            if (++below >= 3) break;
        } else {
            below = 0;
            if (mag >= prev_mag) {
                if (++grow >= 32)
                    throw NonConvergent("term magnitudes nondecreasing over 32 consecutive terms");
            } else {
                grow = 0;
            }
        }
        prev_mag = mag;
    }
    return sum;
}

Scalar phi_eval(const PhiSpec& spec, const QContext& ctx) {
    if (ctx.mode() == Mode::Exact) {
        std::vector<Rat> nums, dens;
        nums.reserve(spec.numerator_params.size());
        dens.reserve(spec.denominator_params.size());
        for (const Scalar& a : spec.numerator_params) nums.push_back(a.rat());
        for (const Scalar& b : spec.denominator_params) dens.push_back(b.rat());
        return Scalar(phi_eval_exact(nums, dens, spec.argument.rat(), ctx));
    }
    const mpfr_prec_t prec = ctx.precision_bits();
    auto widen = [&](const Scalar& s) {
        return s.exact() ? Real(s.rat(), prec) : s.real().rounded_to(prec);
    };
    std::vector<Real> nums, dens;
    nums.reserve(spec.numerator_params.size());
    dens.reserve(spec.denominator_params.size());
    for (const Scalar& a : spec.numerator_params) nums.push_back(widen(a));
    for (const Scalar& b : spec.denominator_params) dens.push_back(widen(b));
    return Scalar(phi_eval_numeric(nums, dens, widen(spec.argument), ctx, prec));
}

} // namespace qac

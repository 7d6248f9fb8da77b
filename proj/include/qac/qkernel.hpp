#pragma once

#include <vector>

#include "qac/scalars.hpp"

namespace qac {

// Largest m probed when testing whether a parameter equals q^-m exactly
// (series termination detection).
inline constexpr long kTerminationProbe = 64;

// ---------------------------------------------------------------------------
// q-shifted factorials
// ---------------------------------------------------------------------------

// (a;q)_n for any integer n:
//   n >= 0: prod_{k<n} (1 - a q^k)
//   n <  0: 1 / prod_{k=1..-n} (1 - a q^-k)   (PoleAtNegativeIndex if a factor
//           vanishes)
Rat qpoch(const Rat& a, long n, const QContext& ctx);
Real qpoch(const Real& a, long n, const QContext& ctx);
Scalar qpoch(const Scalar& a, long n, const QContext& ctx);

// prod of qpoch over a parameter list.
Rat qpoch_multi(const std::vector<Rat>& params, long n, const QContext& ctx);
Scalar qpoch_multi(const std::vector<Scalar>& params, long n, const QContext& ctx);

// (a;q)_inf, numeric mode only: factors multiplied until |a q^k| drops below
// 2^-prec.  The optional prec overrides the context precision.
Real qpoch_inf(const Real& a, const QContext& ctx, mpfr_prec_t prec = 0);
Scalar qpoch_inf(const Scalar& a, const QContext& ctx);

// Gaussian binomial coefficient; 0 outside 0 <= k <= n so that freely indexed
// convolution sums vanish off-range instead of erroring.
Rat qbinom(long n, long k, const QContext& ctx);
Scalar qbinom_scalar(long n, long k, const QContext& ctx);

// ---------------------------------------------------------------------------
// Basic hypergeometric series r_phi_s
// ---------------------------------------------------------------------------

// Term n carries the balancing factor [(-1)^n q^binom(n,2)]^(1+s-r) alongside
// the Pochhammer quotient and z^n.
struct PhiSpec {
    std::vector<Scalar> numerator_params;
    std::vector<Scalar> denominator_params;
    Scalar argument;
};

struct TerminationInfo {
    bool terminating = false;
    long order = 0; // series has order+1 terms when terminating
};

// A series terminates iff some numerator parameter equals q^-m; the reported
// order is the smallest such m.  Numeric parameters are matched within a
// relative 2^-(prec/2).
TerminationInfo phi_termination(const PhiSpec& spec, const QContext& ctx);
TerminationInfo phi_termination(const std::vector<Rat>& nums, const QContext& ctx);
TerminationInfo phi_termination(const std::vector<Real>& nums, const QContext& ctx,
                                mpfr_prec_t prec);

// Mode-dispatching evaluation honoring the context backend.
Scalar phi_eval(const PhiSpec& spec, const QContext& ctx);

// Exact evaluation; requires termination (ExactModeUnsupported otherwise).
Rat phi_eval_exact(const std::vector<Rat>& nums, const std::vector<Rat>& dens, const Rat& z,
                   const QContext& ctx);

// Numeric evaluation.  Terminating series are summed in full; nonterminating
// ones until the term magnitude stays below the threshold (default: the
// context tail threshold) for 3 consecutive terms.  A term-ratio >= 1
// sustained over 32 terms raises NonConvergent; max_terms raises
// GuardExceeded; a vanishing denominator factor raises PoleInDenominator.
Real phi_eval_numeric(const std::vector<Real>& nums, const std::vector<Real>& dens, const Real& z,
                      const QContext& ctx, mpfr_prec_t prec = 0,
                      const Real* threshold = nullptr);

} // namespace qac

#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <variant>

#include "qac/errors.hpp"

namespace qac {

// Exact arbitrary-precision integers and rationals.  mpq_class keeps values
// canonical (positive denominator, gcd 1) through arithmetic; the helpers
// below canonicalize on construction from raw parts.
using Int = mpz_class;
using Rat = mpq_class;

// Build a canonical rational p/r.  Throws DivisionByZero for r == 0.
Rat make_rat(long p, long r);

// Parse "p", "p/r", or a plain integer string into a canonical rational.
Rat parse_rat(const std::string& text);

// base^e with e possibly negative; base must be nonzero for e < 0.
Rat rat_pow_int(const Rat& base, long e);

// "p/r" (or "p" when the denominator is 1).
std::string rat_str(const Rat& v);

// n*(n-1)/2, the exponent of the ubiquitous q^{binom(n,2)} factors.
inline long binom2(long n) { return n * (n - 1) / 2; }

// ---------------------------------------------------------------------------
// Arbitrary-precision binary float (MPFR), round-to-nearest throughout.
// Values are immutable in spirit: arithmetic returns new objects carrying
// max(precision of operands), and nothing mutates in place except the
// compound assignment operators.
// ---------------------------------------------------------------------------
class Real {
public:
    static constexpr mpfr_prec_t kMinPrec = 64;

    explicit Real(mpfr_prec_t prec = kMinPrec);
    Real(const Rat& value, mpfr_prec_t prec);
    Real(long value, mpfr_prec_t prec);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    // Parse a decimal string such as "1e-30".
    static Real from_string(const std::string& text, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    // Same value rounded to a different precision.
    Real rounded_to(mpfr_prec_t prec) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    Real abs() const;

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Decimal string with enough digits to identify the value at its
    // precision (or a fixed digit count when digits > 0).
    std::string str(int digits = 0) const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    Real operator-() const;
    Real& operator+=(const Real& b);
    Real& operator-=(const Real& b);
    Real& operator*=(const Real& b);
    Real& operator/=(const Real& b);

    static Real pow_int(const Real& base, long e);

    // Three-way compare; NaN operands are a logic error upstream.
    int cmp(const Real& b) const { return mpfr_cmp(v_, b.v_); }
    friend bool operator<(const Real& a, const Real& b) { return a.cmp(b) < 0; }
    friend bool operator<=(const Real& a, const Real& b) { return a.cmp(b) <= 0; }
    friend bool operator>(const Real& a, const Real& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const Real& a, const Real& b) { return a.cmp(b) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return a.cmp(b) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return a.cmp(b) != 0; }

    // Raw handle for kernel routines that drive MPFR directly.
    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

private:
    mpfr_t v_;
};

// ---------------------------------------------------------------------------
// Unified scalar: either an exact rational or an arbitrary-precision float.
// Mixed-backend arithmetic is refused (BackendMismatch) rather than silently
// promoted, so exactness can never leak away unnoticed.
// ---------------------------------------------------------------------------
class Scalar {
public:
    Scalar() : v_(Rat(0)) {}
    Scalar(Rat value) : v_(std::move(value)) {}
    Scalar(Real value) : v_(std::move(value)) {}

    bool exact() const { return std::holds_alternative<Rat>(v_); }
    const Rat& rat() const;
    const Real& real() const;

    std::string str() const;

private:
    std::variant<Rat, Real> v_;
};

enum class ArithOp { Add, Sub, Mul, Div, PowInt };

// Backend-respecting arithmetic; PowInt reads an integer exponent from b.
Scalar scalar_arith(const Scalar& a, const Scalar& b, ArithOp op);

// ---------------------------------------------------------------------------
// Evaluation context threaded through every computation.
// ---------------------------------------------------------------------------
enum class Mode { Exact, Numeric };

class QContext {
public:
    // Validates 0 < q < 1, tolerance > 0, order >= 1, precision >= 64,
    // max_terms >= 1; throws ConfigError otherwise.
    QContext(const Rat& q, Mode mode, mpfr_prec_t precision_bits, int truncation_order,
             const std::string& tolerance, long max_terms);

    // q = 1/2, order 8, 256 bits, tolerance 1e-30, max_terms 20000.
    static QContext defaults(Mode mode);

    const Rat& q() const { return q_; }
    Mode mode() const { return mode_; }
    mpfr_prec_t precision_bits() const { return prec_; }
    int truncation_order() const { return order_; }
    const Real& tolerance() const { return tol_; }
    long max_terms() const { return max_terms_; }

    // True on contexts created by inverse_base(): only finite objects
    // (finite Pochhammers, finite sums) may be evaluated, since q > 1 there.
    bool finite_only() const { return finite_only_; }

    // Context with base 1/q for the finite-sum relations that flip the base.
    // Infinite products/series are rejected under it.
    QContext inverse_base() const;

    // Exact q^e (e may be negative).
    Rat q_pow(long e) const { return rat_pow_int(q_, e); }
    // q as a float at the given precision (context precision when 0).
    Real q_real(mpfr_prec_t prec = 0) const;
    // Series-tail cutoff: tolerance * 2^-16.
    Real tail_threshold() const;

    QContext with_mode(Mode mode) const;
    QContext with_order(int order) const;
    QContext with_precision(mpfr_prec_t bits) const;

private:
    struct inverse_tag {};
    QContext(inverse_tag, const Rat& q, const QContext& src);

    Rat q_;
    Mode mode_;
    mpfr_prec_t prec_;
    int order_;
    Real tol_;
    long max_terms_;
    bool finite_only_ = false;
};

// q^e in the context's active backend.
Scalar q_power(const QContext& ctx, long e);

enum class CompareStatus { Equal, WithinTolerance, Unequal };

struct CompareResult {
    CompareStatus status;
    // Exact mode: |a-b| as a rational (in the Scalar).  Numeric mode: the
    // relative deviation |a-b| / max(1, |a|, |b|).
    Scalar deviation;
};

// Exact mode: Equal iff identical rationals.  Numeric mode: WithinTolerance
// iff |a-b| <= tolerance * max(1, |a|, |b|).  Mixed backends throw.
CompareResult compare(const Scalar& a, const Scalar& b, const QContext& ctx);

} // namespace qac

#include "qac/scalars.hpp"

#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

namespace qac {

Rat make_rat(long p, long r) {
    if (r == 0)
        throw DivisionByZero("rational with zero denominator");
    Rat v(p, r);
    v.canonicalize();
    return v;
}

Rat parse_rat(const std::string& text) {
    if (text.empty())
        throw ParseError("empty rational literal");
    Rat v;
    if (v.set_str(text, 10) != 0)
        throw ParseError("bad rational literal '" + text + "'");
    if (v.get_den() == 0)
        throw DivisionByZero("rational literal '" + text + "' has zero denominator");
    v.canonicalize();
    return v;
}

Rat rat_pow_int(const Rat& base, long e) {
    if (e == 0)
        return Rat(1);
    if (base == 0 && e < 0)
        throw DivisionByZero("negative power of zero");
    const unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), mag);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), mag);
    if (e < 0) {
        mpq_inv(r.get_mpq_t(), r.get_mpq_t());
    }
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& v) {
    return v.get_str();
}

// ---------------------------------------------------------------------------
// Real
// ---------------------------------------------------------------------------

namespace {
mpfr_prec_t clamp_prec(mpfr_prec_t prec) {
    return prec < Real::kMinPrec ? Real::kMinPrec : prec;
}
} // namespace

Real::Real(mpfr_prec_t prec) {
    mpfr_init2(v_, clamp_prec(prec));
    mpfr_set_zero(v_, 1);
}

Real::Real(const Rat& value, mpfr_prec_t prec) {
    mpfr_init2(v_, clamp_prec(prec));
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(long value, mpfr_prec_t prec) {
    mpfr_init2(v_, clamp_prec(prec));
    mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this != &other)
        mpfr_swap(v_, other.v_);
    return *this;
}

Real::~Real() {
    mpfr_clear(v_);
}

Real Real::from_string(const std::string& text, mpfr_prec_t prec) {
    Real r(clamp_prec(prec));
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0)
        throw ParseError("bad decimal literal '" + text + "'");
    return r;
}

Real Real::rounded_to(mpfr_prec_t prec) const {
    Real r(clamp_prec(prec));
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::abs() const {
    Real r(precision());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string Real::str(int digits) const {
    // Enough decimal digits to reproduce the binary value when unspecified.
    const int nd = digits > 0 ? digits : static_cast<int>(precision() * 0.3010299957) + 3;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", nd - 1, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

namespace {
using BinFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

Real binop(const Real& a, const Real& b, BinFn fn) {
    Real r(std::max(a.precision(), b.precision()));
    fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
} // namespace

Real operator+(const Real& a, const Real& b) { return binop(a, b, mpfr_add); }
Real operator-(const Real& a, const Real& b) { return binop(a, b, mpfr_sub); }
Real operator*(const Real& a, const Real& b) { return binop(a, b, mpfr_mul); }

Real operator/(const Real& a, const Real& b) {
    if (b.is_zero())
        throw DivisionByZero("float division by zero");
    return binop(a, b, mpfr_div);
}

Real Real::operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

Real& Real::operator+=(const Real& b) { return *this = *this + b; }
Real& Real::operator-=(const Real& b) { return *this = *this - b; }
Real& Real::operator*=(const Real& b) { return *this = *this * b; }
Real& Real::operator/=(const Real& b) { return *this = *this / b; }

Real Real::pow_int(const Real& base, long e) {
    if (base.is_zero() && e < 0)
        throw DivisionByZero("negative power of zero");
    Real r(base.precision());
    mpfr_pow_si(r.v_, base.v_, e, MPFR_RNDN);
    return r;
}

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

const Rat& Scalar::rat() const {
    if (!exact())
        throw BackendMismatch("expected exact rational, found float");
    return std::get<Rat>(v_);
}

const Real& Scalar::real() const {
    if (exact())
        throw BackendMismatch("expected float, found exact rational");
    return std::get<Real>(v_);
}

std::string Scalar::str() const {
    return exact() ? rat_str(rat()) : real().str();
}

namespace {
long integer_exponent(const Scalar& b) {
    if (b.exact()) {
        const Rat& r = b.rat();
        if (r.get_den() != 1 || !r.get_num().fits_slong_p())
            throw ParseError("pow_int exponent must be a small integer");
        return r.get_num().get_si();
    }
    const Real& x = b.real();
    const double d = x.to_double();
    const long e = static_cast<long>(d);
    if (static_cast<double>(e) != d)
        throw ParseError("pow_int exponent must be a small integer");
    return e;
}
} // namespace

Scalar scalar_arith(const Scalar& a, const Scalar& b, ArithOp op) {
    if (op == ArithOp::PowInt) {
        const long e = integer_exponent(b);
        if (a.exact())
            return Scalar(rat_pow_int(a.rat(), e));
        return Scalar(Real::pow_int(a.real(), e));
    }
    if (a.exact() != b.exact())
        throw BackendMismatch("mixed exact/float arithmetic");
    if (a.exact()) {
        const Rat& x = a.rat();
        const Rat& y = b.rat();
        switch (op) {
        case ArithOp::Add: return Scalar(Rat(x + y));
        case ArithOp::Sub: return Scalar(Rat(x - y));
        case ArithOp::Mul: return Scalar(Rat(x * y));
        case ArithOp::Div:
            if (y == 0)
                throw DivisionByZero("exact division by zero");
            return Scalar(Rat(x / y));
        default: break;
        }
    } else {
        const Real& x = a.real();
        const Real& y = b.real();
        switch (op) {
        case ArithOp::Add: return Scalar(x + y);
        case ArithOp::Sub: return Scalar(x - y);
        case ArithOp::Mul: return Scalar(x * y);
        case ArithOp::Div: return Scalar(x / y);
        default: break;
        }
    }
    throw Error("unreachable arithmetic case");
}

// ---------------------------------------------------------------------------
// QContext
// ---------------------------------------------------------------------------

QContext::QContext(const Rat& q, Mode mode, mpfr_prec_t precision_bits, int truncation_order,
                   const std::string& tolerance, long max_terms)
    : q_(q),
      mode_(mode),
      prec_(precision_bits),
      order_(truncation_order),
      tol_(Real::from_string(tolerance, precision_bits)),
      max_terms_(max_terms) {
    if (!(q_ > 0 && q_ < 1))
        throw ConfigError("q must lie in (0,1)");
    if (prec_ < Real::kMinPrec)
        throw ConfigError("precision must be at least 64 bits");
    if (order_ < 1)
        throw ConfigError("truncation order must be >= 1");
    if (!(tol_.sign() > 0))
        throw ConfigError("tolerance must be positive");
    if (max_terms_ < 1)
        throw ConfigError("max_terms must be >= 1");
}

QContext::QContext(inverse_tag, const Rat& q, const QContext& src)
    : q_(q),
      mode_(src.mode_),
      prec_(src.prec_),
      order_(src.order_),
      tol_(src.tol_),
      max_terms_(src.max_terms_),
      finite_only_(true) {}

QContext QContext::defaults(Mode mode) {
    return QContext(make_rat(1, 2), mode, 256, 8, "1e-30", 20000);
}

QContext QContext::inverse_base() const {
    Rat qi = 1 / q_;
    return QContext(inverse_tag{}, qi, *this);
}

Real QContext::q_real(mpfr_prec_t prec) const {
    return Real(q_, prec == 0 ? prec_ : prec);
}

Real QContext::tail_threshold() const {
    Real scale = Real::pow_int(Real(2, prec_), -16);
    return tol_ * scale;
}

QContext QContext::with_mode(Mode mode) const {
    QContext c = *this;
    c.mode_ = mode;
    return c;
}

QContext QContext::with_order(int order) const {
    if (order < 1)
        throw ConfigError("truncation order must be >= 1");
    QContext c = *this;
    c.order_ = order;
    return c;
}

QContext QContext::with_precision(mpfr_prec_t bits) const {
    if (bits < Real::kMinPrec)
        throw ConfigError("precision must be at least 64 bits");
    QContext c = *this;
    c.prec_ = bits;
    c.tol_ = c.tol_.rounded_to(bits);
    return c;
}

Scalar q_power(const QContext& ctx, long e) {
    Rat v = ctx.q_pow(e);
    if (ctx.mode() == Mode::Exact)
        return Scalar(std::move(v));
    return Scalar(Real(v, ctx.precision_bits()));
}

CompareResult compare(const Scalar& a, const Scalar& b, const QContext& ctx) {
    if (a.exact() != b.exact())
        throw BackendMismatch("comparing exact against float");
    if (a.exact()) {
        Rat d = a.rat() - b.rat();
        if (d == 0)
            return {CompareStatus::Equal, Scalar(Rat(0))};
        return {CompareStatus::Unequal, Scalar(Rat(::abs(d)))};
    }
    const Real& x = a.real();
    const Real& y = b.real();
    Real diff = (x - y).abs();
    Real floor1(1, ctx.precision_bits());
    Real scale = floor1;
    if (x.abs() > scale)
        scale = x.abs();
    if (y.abs() > scale)
        scale = y.abs();
    Real rel = diff / scale;
    if (diff.is_zero())
        return {CompareStatus::Equal, Scalar(rel)};
    if (diff <= ctx.tolerance() * scale)
        return {CompareStatus::WithinTolerance, Scalar(rel)};
    return {CompareStatus::Unequal, Scalar(rel)};
}

} // namespace qac

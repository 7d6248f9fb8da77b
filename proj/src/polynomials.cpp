#include "qac/polynomials.hpp"

#include <sstream>

#include "qac/errors.hpp"
#include "qac/operators.hpp"
#include "qac/qkernel.hpp"

namespace qac {

namespace {

// Lifts exact constants into the backend of the surrounding computation.
struct Lift {
    bool exact;
    mpfr_prec_t prec;

    explicit Lift(const QContext& ctx, bool exact_mode)
        : exact(exact_mode), prec(ctx.precision_bits()) {}

    Scalar of(const Rat& v) const { return exact ? Scalar(v) : Scalar(Real(v, prec)); }
    Scalar of(const Scalar& v) const {
        if (v.exact() && !exact) return Scalar(Real(v.rat(), prec));
        return v;
    }
};

Scalar s_add(const Scalar& a, const Scalar& b) { return scalar_arith(a, b, ArithOp::Add); }
Scalar s_mul(const Scalar& a, const Scalar& b) { return scalar_arith(a, b, ArithOp::Mul); }

bool scalar_is_zero(const Scalar& v) {
    return v.exact() ? v.rat() == 0 : v.real().is_zero();
}

} // namespace

// ---------------------------------------------------------------------------
// ParamPoint
// ---------------------------------------------------------------------------

void ParamPoint::set(const std::string& name, Scalar value) {
    values_.insert_or_assign(name, std::move(value));
}

bool ParamPoint::has(const std::string& name) const { return values_.count(name) != 0; }

const Scalar& ParamPoint::get(const std::string& name) const {
    const auto it = values_.find(name);
    if (it == values_.end()) throw MissingParameter("no value for parameter '" + name + "'");
    return it->second;
}

const Rat& ParamPoint::rat(const std::string& name) const { return get(name).rat(); }

std::vector<std::pair<std::string, Scalar>> ParamPoint::entries() const {
    return {values_.begin(), values_.end()};
}

// ---------------------------------------------------------------------------
// BiPoly
// ---------------------------------------------------------------------------

BiPoly BiPoly::constant(const Rat& value) { return monomial(value, 0, 0); }

BiPoly BiPoly::monomial(const Rat& coeff, int dx, int dy) {
    BiPoly f;
    if (coeff != 0) f.coeffs_[{dx, dy}] = coeff;
    return f;
}

Rat BiPoly::coefficient(int dx, int dy) const {
    const auto it = coeffs_.find({dx, dy});
    return it == coeffs_.end() ? Rat(0) : it->second;
}

void BiPoly::set_coefficient(int dx, int dy, const Rat& value) {
    if (value == 0)
        coeffs_.erase({dx, dy});
    else
        coeffs_[{dx, dy}] = value;
}

int BiPoly::degree() const {
    int deg = -1;
    for (const auto& [key, value] : coeffs_) deg = std::max(deg, key.first + key.second);
    return deg;
}

Rat BiPoly::eval(const Rat& x, const Rat& y) const {
    Rat acc(0);
    for (const auto& [key, value] : coeffs_)
        acc += value * rat_pow_int(x, key.first) * rat_pow_int(y, key.second);
    return acc;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly out = a;
    for (const auto& [key, value] : b.coeffs_)
        out.set_coefficient(key.first, key.second, out.coefficient(key.first, key.second) + value);
    return out;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
    BiPoly out = a;
    for (const auto& [key, value] : b.coeffs_)
        out.set_coefficient(key.first, key.second, out.coefficient(key.first, key.second) - value);
    return out;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    for (const auto& [ka, ca] : a.coeffs_)
        for (const auto& [kb, cb] : b.coeffs_) {
            const int dx = ka.first + kb.first, dy = ka.second + kb.second;
            out.set_coefficient(dx, dy, out.coefficient(dx, dy) + ca * cb);
        }
    return out;
}

BiPoly BiPoly::scaled(const Rat& factor) const {
    BiPoly out;
    if (factor == 0) return out;
    for (const auto& [key, value] : coeffs_) out.coeffs_[key] = value * factor;
    return out;
}

BiPoly BiPoly::scale_powers(const Rat& fx, const Rat& fy) const {
    BiPoly out;
    for (const auto& [key, value] : coeffs_)
        out.set_coefficient(key.first, key.second,
                            value * rat_pow_int(fx, key.first) * rat_pow_int(fy, key.second));
    return out;
}

std::string BiPoly::str() const {
    std::ostringstream out;
    for (const auto& [key, value] : coeffs_)
        out << "x^" << key.first << " y^" << key.second << ": " << rat_str(value) << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Cauchy products
// ---------------------------------------------------------------------------

BiPoly cauchy_poly(long n, const QContext& ctx) {
    if (n < 0) throw ConfigError("polynomial degree must be nonnegative");
    BiPoly out = BiPoly::constant(Rat(1));
    for (long j = 0; j < n; ++j) {
        BiPoly lin = BiPoly::monomial(Rat(1), 1, 0);
        lin.set_coefficient(0, 1, -ctx.q_pow(j));
        out = out * lin;
    }
    return out;
}

Rat cauchy_eval(long n, const Rat& x, const Rat& y, const QContext& ctx) {
    if (n < 0) throw ConfigError("polynomial degree must be nonnegative");
    Rat prod(1);
    Rat qy = y;
    for (long j = 0; j < n; ++j) {
        prod *= x - qy;
        qy *= ctx.q();
    }
    return prod;
}

Scalar cauchy_eval(long n, const Scalar& x, const Scalar& y, const QContext& ctx) {
    if (x.exact() && y.exact()) return Scalar(cauchy_eval(n, x.rat(), y.rat(), ctx));
    if (n < 0) throw ConfigError("polynomial degree must be nonnegative");
    const Lift lift(ctx, false);
    Scalar prod = lift.of(Rat(1));
    Scalar qy = lift.of(y);
    const Scalar xs = lift.of(x);
    const Scalar q = lift.of(ctx.q());
    for (long j = 0; j < n; ++j) {
        prod = s_mul(prod, scalar_arith(xs, qy, ArithOp::Sub));
        qy = s_mul(qy, q);
    }
    return prod;
}

// ---------------------------------------------------------------------------
// Three-parameter family
// ---------------------------------------------------------------------------

Rat ascu_sum(long n, const Rat& x, const Rat& y, const Rat& a, const QContext& ctx) {
    if (n < 0) throw ConfigError("polynomial degree must be nonnegative");
    // Caches: (q;q)_j and the Cauchy products P_j(x,y), both up to n.
    std::vector<Rat> qq(n + 1), P(n + 1);
    qq[0] = Rat(1);
    P[0] = Rat(1);
    Rat qj(1);
    for (long j = 1; j <= n; ++j) {
        P[j] = P[j - 1] * (x - qj * y);
        qj *= ctx.q();
        qq[j] = qq[j - 1] * (Rat(1) - qj);
    }
    Rat sum(0);
    Rat ak(1); // a^k
    for (long k = 0; k <= n; ++k) {
        Rat term = qq[n] / (qq[k] * qq[n - k]) * ctx.q_pow(binom2(k)) * ak * P[n - k];
        if (k & 1) term = -term;
        sum += term;
        ak *= a;
    }
    return sum;
}

Scalar ascu_sum(long n, const ParamPoint& p, const QContext& ctx) {
    const Scalar &x = p.get("x"), &y = p.get("y"), &a = p.get("a");
    if (x.exact() && y.exact() && a.exact())
        return Scalar(ascu_sum(n, x.rat(), y.rat(), a.rat(), ctx));
    if (n < 0) throw ConfigError("polynomial degree must be nonnegative");
    const Lift lift(ctx, false);
    Scalar sum = lift.of(Rat(0));
    Scalar ak = lift.of(Rat(1));
    for (long k = 0; k <= n; ++k) {
        Scalar term = lift.of(qbinom(n, k, ctx) * ctx.q_pow(binom2(k)));
        if (k & 1) term = s_mul(term, lift.of(Rat(-1)));
        term = s_mul(term, ak);
        term = s_mul(term, cauchy_eval(n - k, lift.of(x), lift.of(y), ctx));
        sum = s_add(sum, term);
        ak = s_mul(ak, lift.of(a));
    }
    return sum;
}

Scalar ascu_phi(long n, const ParamPoint& p, const QContext& ctx) {
    if (n < 0) throw ConfigError("polynomial degree must be nonnegative");
    const Scalar &x = p.get("x"), &y = p.get("y"), &a = p.get("a");
    if (scalar_is_zero(x) || scalar_is_zero(a))
        throw ParameterConstraint("the terminating-series route needs x != 0 and a != 0");
    if (x.exact() && y.exact() && a.exact()) {
        const Rat value = phi_eval_exact({ctx.q_pow(-n), y.rat() / x.rat()}, {Rat(0)},
                                         ctx.q() * x.rat() / a.rat(), ctx);
        return Scalar(rat_pow_int(-a.rat(), n) * ctx.q_pow(binom2(n)) * value);
    }
    const Lift lift(ctx, false);
    const Real xr = lift.of(x).real(), yr = lift.of(y).real(), ar = lift.of(a).real();
    const Real phi =
        phi_eval_numeric({Real(ctx.q_pow(-n), ctx.precision_bits()), yr / xr},
                         {Real(0L, ctx.precision_bits())}, ctx.q_real() * xr / ar, ctx);
    return Scalar(Real::pow_int(-ar, n) * Real(ctx.q_pow(binom2(n)), ctx.precision_bits()) * phi);
}

Scalar ascu_operator(long n, const ParamPoint& p, OperatorRoute route, const QContext& ctx) {
    if (n < 0) throw ConfigError("polynomial degree must be nonnegative");
    const Rat &x = p.rat("x"), &y = p.rat("y"), &a = p.rat("a");
    if (route == OperatorRoute::HomogeneousShift) {
        const BiPoly result = f_operator(a, cauchy_poly(n, ctx), ctx);
        return Scalar(result.eval(x, y));
    }
    if (x == 0)
        throw ParameterConstraint("the augmentation-operator route needs x != 0");
    const UniPoly seed = UniPoly::monomial(
        (n & 1 ? Rat(-1) : Rat(1)) * ctx.q_pow(binom2(n)), n);
    const UniPoly result = e_cauchy_operator(Scalar(y / x), Scalar(x), seed, ctx);
    return Scalar(result.eval(a));
}

Rat ascu_u(long n, const Rat& x, const Rat& a, const QContext& ctx) {
    return ascu_sum(n, x, Rat(1), a, ctx);
}

Scalar ascu_u(long n, const Scalar& x, const Scalar& a, const QContext& ctx) {
    ParamPoint p;
    p.set("x", x);
    p.set("y", (x.exact() && a.exact()) ? Scalar(Rat(1))
                                        : Scalar(Real(1L, ctx.precision_bits())));
    p.set("a", a);
    return ascu_sum(n, p, ctx);
}

// ---------------------------------------------------------------------------
// Rogers-Szego sums
// ---------------------------------------------------------------------------

Rat rs_g(long n, const Rat& a, const QContext& ctx) {
    if (n < 0) throw ConfigError("polynomial degree must be nonnegative");
    Rat sum(0);
    Rat ak(1);
    for (long k = 0; k <= n; ++k) {
        sum += qbinom(n, k, ctx) * ctx.q_pow(k * (k - n)) * ak;
        ak *= a;
    }
    return sum;
}

Scalar rs_g(long n, const Scalar& a, const QContext& ctx) {
    if (a.exact()) return Scalar(rs_g(n, a.rat(), ctx));
    if (n < 0) throw ConfigError("polynomial degree must be nonnegative");
    const Lift lift(ctx, false);
    Scalar sum = lift.of(Rat(0));
    Scalar ak = lift.of(Rat(1));
    for (long k = 0; k <= n; ++k) {
        sum = s_add(sum, s_mul(lift.of(qbinom(n, k, ctx) * ctx.q_pow(k * (k - n))), ak));
        ak = s_mul(ak, a);
    }
    return sum;
}

Rat rs_h(long n, const Rat& x, const Rat& y, const QContext& ctx) {
    if (n < 0) throw ConfigError("polynomial degree must be nonnegative");
    Rat sum(0);
    for (long k = 0; k <= n; ++k) sum += qbinom(n, k, ctx) * cauchy_eval(k, x, y, ctx);
    return sum;
}

Scalar rs_h(long n, const Scalar& x, const Scalar& y, const QContext& ctx) {
    if (x.exact() && y.exact()) return Scalar(rs_h(n, x.rat(), y.rat(), ctx));
    if (n < 0) throw ConfigError("polynomial degree must be nonnegative");
    const Lift lift(ctx, false);
    Scalar sum = lift.of(Rat(0));
    for (long k = 0; k <= n; ++k)
        sum = s_add(sum, s_mul(lift.of(qbinom(n, k, ctx)),
                               cauchy_eval(k, lift.of(x), lift.of(y), ctx)));
    return sum;
}

} // namespace qac

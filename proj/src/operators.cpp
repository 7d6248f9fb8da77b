#include "qac/operators.hpp"

#include <cmath>
#include <sstream>

#include "qac/errors.hpp"
#include "qac/qkernel.hpp"

namespace qac {

namespace {

Scalar s_sub(const Scalar& a, const Scalar& b) { return scalar_arith(a, b, ArithOp::Sub); }
Scalar s_mul(const Scalar& a, const Scalar& b) { return scalar_arith(a, b, ArithOp::Mul); }
Scalar s_div(const Scalar& a, const Scalar& b) { return scalar_arith(a, b, ArithOp::Div); }

bool scalar_is_zero(const Scalar& v) {
    return v.exact() ? v.rat() == 0 : v.real().is_zero();
}

void check_singular(const FunctionHandle& f, const Scalar& point) {
    if (f.singular && f.singular(point))
        throw SingularEvaluation("operand is singular at " + point.str());
}

// Extra working bits for the n-fold difference quotient: the alternating sum
// cancels down by roughly binom(n,2) log2(1/q) + n log2(1/|c|) bits.
mpfr_prec_t cancellation_bump(long n, const QContext& ctx, const Real& c) {
    const double lq = -std::log2(ctx.q().get_d());
    const double ac = std::fabs(c.to_double());
    const double lc = ac > 0 ? std::max(0.0, -std::log2(ac)) : 0.0;
    const double extra = static_cast<double>(binom2(n)) * lq + static_cast<double>(n) * lc;
    return static_cast<mpfr_prec_t>(std::ceil(extra)) + 64;
}

// Engine for the closed-form n-fold difference quotient at full working
// precision.
Real dq_iterated_real(const FunctionHandle& f, long n, const Real& c, const QContext& ctx,
                      mpfr_prec_t wp) {
    const Real q = ctx.q_real(wp);
    Real sum(0L, wp);
    Real arg = c.rounded_to(wp); // c q^k
    for (long k = 0; k <= n; ++k) {
        check_singular(f, Scalar(arg));
        const Scalar value = f.eval(Scalar(arg));
        Real coef(qbinom(n, k, ctx) * ctx.q_pow(binom2(n - k)), wp);
        if (k & 1) coef = -coef;
        sum += coef * value.real();
        arg *= q;
    }
    return sum / (Real::pow_int(c.rounded_to(wp), n) * Real(ctx.q_pow(binom2(n)), wp));
}

} // namespace

// ---------------------------------------------------------------------------
// UniPoly
// ---------------------------------------------------------------------------

UniPoly::UniPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UniPoly UniPoly::constant(const Rat& value) { return monomial(value, 0); }

UniPoly UniPoly::monomial(const Rat& coeff, long power) {
    UniPoly f;
    if (coeff != 0) {
        f.coeffs_.assign(power + 1, Rat(0));
        f.coeffs_[power] = coeff;
    }
    return f;
}

Rat UniPoly::coeff(long i) const {
    if (i < 0 || i >= static_cast<long>(coeffs_.size())) return Rat(0);
    return coeffs_[i];
}

void UniPoly::set_coeff(long i, const Rat& value) {
    if (i < 0) throw ConfigError("negative polynomial exponent");
    if (i >= static_cast<long>(coeffs_.size())) {
        if (value == 0) return;
        coeffs_.resize(i + 1, Rat(0));
    }
    coeffs_[i] = value;
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rat UniPoly::eval(const Rat& point) const {
    Rat acc(0);
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * point + coeffs_[i];
    return acc;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rat> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rat(0));
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = a.coeff(static_cast<long>(i)) + b.coeff(static_cast<long>(i));
    return UniPoly(std::move(out));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Rat> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rat(0));
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = a.coeff(static_cast<long>(i)) - b.coeff(static_cast<long>(i));
    return UniPoly(std::move(out));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rat> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPoly(std::move(out));
}

UniPoly UniPoly::scaled(const Rat& factor) const {
    if (factor == 0) return UniPoly();
    std::vector<Rat> out = coeffs_;
    for (Rat& c : out) c *= factor;
    return UniPoly(std::move(out));
}

UniPoly UniPoly::scale_variable(const Rat& factor) const {
    std::vector<Rat> out = coeffs_;
    Rat fk(1);
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] *= fk;
        fk *= factor;
    }
    return UniPoly(std::move(out));
}

std::string UniPoly::str() const {
    std::ostringstream out;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        out << '[' << i << "]: " << rat_str(coeffs_[i]) << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// First-order operators
// ---------------------------------------------------------------------------

UniPoly dq(const UniPoly& f, const QContext& ctx) {
    UniPoly out;
    for (long i = 0; i < f.degree(); ++i)
        out.set_coeff(i, f.coeff(i + 1) * (Rat(1) - ctx.q_pow(i + 1)));
    return out;
}

Scalar dq_func(const FunctionHandle& f, const Scalar& point, const QContext& ctx) {
    if (scalar_is_zero(point))
        throw EvaluationAtZero("difference quotient undefined at 0");
    const Scalar q = point.exact()
                         ? Scalar(Rat(ctx.q()))
                         : Scalar(ctx.q_real(point.real().precision()));
    const Scalar shifted = s_mul(point, q);
    check_singular(f, point);
    check_singular(f, shifted);
    return s_div(s_sub(f.eval(point), f.eval(shifted)), point);
}

Scalar dq_iterated_point(const FunctionHandle& f, long n, const Scalar& c, const QContext& ctx) {
    if (n < 0) throw ConfigError("operator power must be nonnegative");
    if (n == 0) {
        check_singular(f, c);
        return f.eval(c);
    }
    if (scalar_is_zero(c))
        throw EvaluationAtZero("difference quotient undefined at 0");
    if (c.exact()) {
        Rat sum(0);
        Rat arg = c.rat();
        for (long k = 0; k <= n; ++k) {
            check_singular(f, Scalar(arg));
            Rat coef = qbinom(n, k, ctx) * ctx.q_pow(binom2(n - k));
            if (k & 1) coef = -coef;
            sum += coef * f.eval(Scalar(arg)).rat();
            arg *= ctx.q();
        }
        return Scalar(sum / (rat_pow_int(c.rat(), n) * ctx.q_pow(binom2(n))));
    }
    const mpfr_prec_t wp = 2 * ctx.precision_bits() + cancellation_bump(n, ctx, c.real());
    return Scalar(dq_iterated_real(f, n, c.real(), ctx, wp).rounded_to(ctx.precision_bits()));
}

UniPoly eta_shift(const UniPoly& f, int direction, const QContext& ctx) {
    if (direction != 1 && direction != -1)
        throw ConfigError("shift direction must be +1 or -1");
    return f.scale_variable(ctx.q_pow(direction));
}

UniPoly theta(const UniPoly& f, const QContext& ctx) {
    return eta_shift(dq(f, ctx), -1, ctx);
}

bool q_leibniz_check(const UniPoly& f, const UniPoly& g, long n, const QContext& ctx) {
    if (n < 0) throw ConfigError("operator power must be nonnegative");
    UniPoly lhs = f * g;
    for (long i = 0; i < n; ++i) lhs = dq(lhs, ctx);
    std::vector<UniPoly> dqf{f};
    for (long i = 0; i < n; ++i) dqf.push_back(dq(dqf.back(), ctx));
    UniPoly rhs;
    for (long k = 0; k <= n; ++k) {
        // the second factor is differenced after the substitution a -> q^k a
        UniPoly shifted = g.scale_variable(ctx.q_pow(k));
        for (long i = 0; i < n - k; ++i) shifted = dq(shifted, ctx);
        rhs = rhs + (dqf[k] * shifted).scaled(qbinom(n, k, ctx) * ctx.q_pow(k * (k - n)));
    }
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Operator exponentials, polynomial routes
// ---------------------------------------------------------------------------

UniPoly t_operator(const Scalar& b, const UniPoly& f, const QContext& ctx) {
    const Rat& bb = b.rat();
    UniPoly acc = f, cur = f;
    Rat coef(1);
    for (long n = 1; !cur.is_zero(); ++n) {
        cur = dq(cur, ctx);
        if (cur.is_zero()) break;
        coef *= bb / (Rat(1) - ctx.q_pow(n));
        acc = acc + cur.scaled(coef);
    }
    return acc;
}

UniPoly e_theta_operator(const Scalar& b, const UniPoly& f, const QContext& ctx) {
    const Rat& bb = b.rat();
    UniPoly acc = f, cur = f;
    Rat coef(1);
    for (long n = 1; !cur.is_zero(); ++n) {
        cur = theta(cur, ctx);
        if (cur.is_zero()) break;
        // coefficient ratio of q^binom(n,2) b^n/(q;q)_n
        coef *= ctx.q_pow(n - 1) * bb / (Rat(1) - ctx.q_pow(n));
        acc = acc + cur.scaled(coef);
    }
    return acc;
}

UniPoly t_cauchy_operator(const Scalar& a, const Scalar& b, const UniPoly& f,
                          const QContext& ctx) {
    const Rat &aa = a.rat(), &bb = b.rat();
    UniPoly acc = f, cur = f;
    Rat coef(1);
    for (long n = 1; !cur.is_zero(); ++n) {
        cur = dq(cur, ctx);
        if (cur.is_zero()) break;
        coef *= (Rat(1) - aa * ctx.q_pow(n - 1)) * bb / (Rat(1) - ctx.q_pow(n));
        acc = acc + cur.scaled(coef);
    }
    return acc;
}

UniPoly e_cauchy_operator(const Scalar& a, const Scalar& b, const UniPoly& f,
                          const QContext& ctx) {
    const Rat &aa = a.rat(), &bb = b.rat();
    UniPoly acc = f, cur = f;
    Rat coef(1);
    for (long k = 1; !cur.is_zero(); ++k) {
        cur = theta(cur, ctx);
        if (cur.is_zero()) break;
        // coefficient ratio of (a;q)_k (-b)^k/(q;q)_k
        coef *= (Rat(1) - aa * ctx.q_pow(k - 1)) * -bb / (Rat(1) - ctx.q_pow(k));
        acc = acc + cur.scaled(coef);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Functional routes
// ---------------------------------------------------------------------------

Scalar t_operator_func(const Scalar& b, const FunctionHandle& f, const Scalar& c,
                       const QContext& ctx) {
    const mpfr_prec_t prec = ctx.precision_bits();
    const mpfr_prec_t wp = 2 * prec;
    const Real q = ctx.q_real(wp);
    const Real one(1L, wp);
    const Real thr = ctx.tail_threshold().rounded_to(wp);
    const Real bv = b.exact() ? Real(b.rat(), wp) : b.real().rounded_to(wp);
    const Real cv = c.exact() ? Real(c.rat(), wp) : c.real().rounded_to(wp);

    check_singular(f, Scalar(cv));
    Real sum = f.eval(Scalar(cv)).real().rounded_to(wp);
    Real bn = one;  // b^n
    Real qqn = one; // (q;q)_n
    Real qn = one;  // q^n
    Real prev_mag = sum.abs();
    int below = 0, grow = 0;
    for (long n = 1;; ++n) {
        if (n >= ctx.max_terms())
            throw GuardExceeded("operator series did not settle within " +
                                std::to_string(ctx.max_terms()) + " terms");
        bn *= bv;
        qn *= q;
        qqn *= one - qn;
        const mpfr_prec_t twp = wp + cancellation_bump(n, ctx, cv);
        const Real term = bn / qqn * dq_iterated_real(f, n, cv, ctx, twp).rounded_to(wp);
        if (!term.is_finite()) throw NonConvergent("operator series term overflowed");
        sum += term;
        const Real mag = term.abs();
        if (mag < thr) {
            grow = 0;
            if (++below >= 3) break;
        } else {
            below = 0;
            if (mag >= prev_mag) {
                if (++grow >= 32)
                    throw NonConvergent(
                        "operator series magnitudes nondecreasing over 32 consecutive terms");
            } else {
                grow = 0;
            }
        }
        prev_mag = mag;
    }
    return Scalar(sum.rounded_to(prec));
}

Scalar e_cauchy_operator_func(const Scalar& a, const Scalar& b, const FunctionHandle& f,
                              const Scalar& c, const QContext& ctx) {
    const mpfr_prec_t prec = ctx.precision_bits();
    const mpfr_prec_t wp = 2 * prec;
    const Real q = ctx.q_real(wp);
    const Real one(1L, wp);
    const Real thr = ctx.tail_threshold().rounded_to(wp);
    auto widen = [&](const Scalar& s) {
        return s.exact() ? Real(s.rat(), wp) : s.real().rounded_to(wp);
    };
    const Real av = widen(a), bv = widen(b), cv = widen(c);
    if (cv.is_zero()) throw EvaluationAtZero("operator ladder undefined at 0");
    const Real bqc = bv * q / cv;
    if (bqc.abs() >= one)
        throw ConvergenceDomain("the downward ladder requires |bq/c| < 1");
    const Real abqc = av * bqc;
    const Real prefactor = qpoch_inf(abqc, ctx, wp) / qpoch_inf(bqc, ctx, wp);

    // sum_k (a;q)_k q^binom(k,2) / ((q;q)_k (abq/c;q)_k) f(c q^-k) (-bq/c)^k
    Real coef = one;
    Real arg = cv; // c q^-k
    Real qk = one; // q^k
    check_singular(f, Scalar(arg));
    Real sum = f.eval(Scalar(arg)).real().rounded_to(wp);
    Real prev_mag = sum.abs();
    int below = 0, grow = 0;
    for (long k = 0;; ++k) {
        if (k >= ctx.max_terms())
            throw GuardExceeded("operator series did not settle within " +
                                std::to_string(ctx.max_terms()) + " terms");
        coef *= (one - av * qk) * qk / ((one - qk * q) * (one - abqc * qk)) * -bqc;
        qk *= q;
        arg /= q;
        check_singular(f, Scalar(arg));
        const Real term = coef * f.eval(Scalar(arg)).real();
        if (!term.is_finite()) throw NonConvergent("operator series term overflowed");
        sum += term;
        const Real mag = term.abs();
        if (mag < thr) {
            grow = 0;
            if (++below >= 3) break;
        } else {
            below = 0;
            if (mag >= prev_mag) {
                if (++grow >= 32)
                    throw NonConvergent(
                        "operator series magnitudes nondecreasing over 32 consecutive terms");
            } else {
                grow = 0;
            }
        }
        prev_mag = mag;
    }
    const Real result = prefactor * sum;
    if (!result.is_finite()) throw NonConvergent("operator series result overflowed");
    return Scalar(result.rounded_to(prec));
}

// ---------------------------------------------------------------------------
// Bivariate lowering operator
// ---------------------------------------------------------------------------

BiPoly dxy(const BiPoly& f, const QContext& ctx) {
    const Rat beta = Rat(1) / ctx.q(); // q^-1
    const BiPoly numerator = f.scale_powers(Rat(1), beta) - f.scale_powers(ctx.q(), Rat(1));
    if (numerator.is_zero()) return BiPoly();
    // Coefficients of x^d as polynomials in y.
    int max_dx = 0;
    for (const auto& [key, value] : numerator.terms()) max_dx = std::max(max_dx, key.first);
    std::vector<std::map<int, Rat>> cs(max_dx + 1);
    for (const auto& [key, value] : numerator.terms()) cs[key.first][key.second] = value;

    // Synthetic division by (x - beta*y), x as the main variable.
    auto shift_y = [&beta](const std::map<int, Rat>& p) {
        std::map<int, Rat> out;
        for (const auto& [dy, c] : p) {
            const Rat v = c * beta;
            if (v != 0) out[dy + 1] = v;
        }
        return out;
    };
    auto add_into = [](std::map<int, Rat>& dst, const std::map<int, Rat>& src) {
        for (const auto& [dy, c] : src) {
            dst[dy] += c;
            if (dst[dy] == 0) dst.erase(dy);
        }
    };
    std::vector<std::map<int, Rat>> u(std::max(max_dx, 1));
    if (max_dx >= 1) {
        u[max_dx - 1] = cs[max_dx];
        for (int d = max_dx - 1; d >= 1; --d) {
            u[d - 1] = cs[d];
            add_into(u[d - 1], shift_y(u[d]));
        }
    }
    std::map<int, Rat> remainder = cs[0];
    add_into(remainder, shift_y(u[0]));
    if (!remainder.empty())
        throw NotDivisible("operand lies outside the span of the Cauchy products");

    BiPoly out;
    for (int d = 0; d < max_dx; ++d)
        for (const auto& [dy, c] : u[d]) out.set_coefficient(d, dy, c);
    return out;
}

BiPoly f_operator(const Rat& a, const BiPoly& f, const QContext& ctx) {
    BiPoly acc = f, cur = f;
    Rat coef(1);
    for (long n = 1; !cur.is_zero(); ++n) {
        cur = dxy(cur, ctx);
        if (cur.is_zero()) break;
        // coefficient ratio of (-1)^n q^binom(n,2) a^n/(q;q)_n
        coef *= -a * ctx.q_pow(n - 1) / (Rat(1) - ctx.q_pow(n));
        acc = acc + cur.scaled(coef);
    }
    return acc;
}

} // namespace qac

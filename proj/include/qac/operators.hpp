#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qac/polynomials.hpp"
#include "qac/scalars.hpp"

namespace qac {

// ---------------------------------------------------------------------------
// Exact polynomials in the single operator variable (all other parameters
// pre-substituted).  Coefficient i belongs to variable^i.
// ---------------------------------------------------------------------------
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs);
    static UniPoly constant(const Rat& value);
    static UniPoly monomial(const Rat& coeff, long power);

    long degree() const { return static_cast<long>(coeffs_.size()) - 1; } // -1 when zero
    Rat coeff(long i) const;
    void set_coeff(long i, const Rat& value);
    bool is_zero() const { return coeffs_.empty(); }

    Rat eval(const Rat& point) const;

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

    UniPoly scaled(const Rat& factor) const;
    // Substitute variable -> factor * variable.
    UniPoly scale_variable(const Rat& factor) const;

    std::string str() const;

private:
    std::vector<Rat> coeffs_; // trailing zeros trimmed
};

// ---------------------------------------------------------------------------
// Point-evaluatable operand for the functional operator routes.
// ---------------------------------------------------------------------------
struct FunctionHandle {
    std::function<Scalar(const Scalar&)> eval;
    // Optional: points where evaluation is undefined (SingularEvaluation).
    std::function<bool(const Scalar&)> singular;
};

// ---------------------------------------------------------------------------
// First-order operators
// ---------------------------------------------------------------------------

// Difference quotient (f(a) - f(aq))/a; on monomials a^n -> (1-q^n)a^(n-1).
UniPoly dq(const UniPoly& f, const QContext& ctx);
Scalar dq_func(const FunctionHandle& f, const Scalar& point, const QContext& ctx);

// n-fold difference quotient at a point via the alternating closed-form sum
// (no nested differencing); numeric work precision is raised adaptively and
// the result rounded back to the context precision.
Scalar dq_iterated_point(const FunctionHandle& f, long n, const Scalar& c, const QContext& ctx);

// Shift a -> a q^(+-1).
UniPoly eta_shift(const UniPoly& f, int direction, const QContext& ctx);

// Difference quotient followed by the downward shift:
// a^n -> (1-q^n) q^(1-n) a^(n-1).
UniPoly theta(const UniPoly& f, const QContext& ctx);

// Product-rule expansion check for the n-fold difference quotient.
bool q_leibniz_check(const UniPoly& f, const UniPoly& g, long n, const QContext& ctx);

// ---------------------------------------------------------------------------
// Operator exponentials
// ---------------------------------------------------------------------------

// sum_n (b Dq)^n / (q;q)_n, polynomial route (terminates by degree).
UniPoly t_operator(const Scalar& b, const UniPoly& f, const QContext& ctx);
// Functional route at a point: terms summed under the tail/divergence guards.
Scalar t_operator_func(const Scalar& b, const FunctionHandle& f, const Scalar& c,
                       const QContext& ctx);

// sum_n q^binom(n,2) (b theta)^n / (q;q)_n on polynomials.
UniPoly e_theta_operator(const Scalar& b, const UniPoly& f, const QContext& ctx);

// Two-parameter versions:
//   sum_n ((a;q)_n/(q;q)_n) (b Dq)^n        (augmentation via Dq)
//   sum_k ((a;q)_k/(q;q)_k) (-b)^k theta^k  (augmentation via theta)
UniPoly t_cauchy_operator(const Scalar& a, const Scalar& b, const UniPoly& f,
                          const QContext& ctx);
UniPoly e_cauchy_operator(const Scalar& a, const Scalar& b, const UniPoly& f,
                          const QContext& ctx);
// Functional route for the theta-based operator, valid for |bq/c| < 1
// (ConvergenceDomain otherwise); evaluates f along the ladder c q^-k.
Scalar e_cauchy_operator_func(const Scalar& a, const Scalar& b, const FunctionHandle& f,
                              const Scalar& c, const QContext& ctx);

// ---------------------------------------------------------------------------
// Bivariate lowering operator and its exponential
// ---------------------------------------------------------------------------

// (f(x, y/q) - f(qx, y)) / (x - y/q); the quotient must be exact
// (NotDivisible otherwise).
BiPoly dxy(const BiPoly& f, const QContext& ctx);

// sum_n (-1)^n q^binom(n,2) (a Dxy)^n / (q;q)_n; terminates by degree.
BiPoly f_operator(const Rat& a, const BiPoly& f, const QContext& ctx);

} // namespace qac

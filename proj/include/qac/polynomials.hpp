#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qac/scalars.hpp"

namespace qac {

// ---------------------------------------------------------------------------
// Named parameter assignments (x, y, a, u, v, b, z, w, c, ... as needed).
// ---------------------------------------------------------------------------
class ParamPoint {
public:
    void set(const std::string& name, Scalar value);
    bool has(const std::string& name) const;
    // MissingParameter when absent.
    const Scalar& get(const std::string& name) const;
    // Exact value shortcut (BackendMismatch on a float entry).
    const Rat& rat(const std::string& name) const;

    // Name-sorted view for reports.
    std::vector<std::pair<std::string, Scalar>> entries() const;

private:
    std::map<std::string, Scalar> values_;
};

// ---------------------------------------------------------------------------
// Exact bivariate polynomials in (x, y).
// ---------------------------------------------------------------------------
class BiPoly {
public:
    using Key = std::pair<int, int>; // (degree in x, degree in y)

    BiPoly() = default;
    static BiPoly constant(const Rat& value);
    static BiPoly monomial(const Rat& coeff, int dx, int dy);

    const std::map<Key, Rat>& terms() const { return coeffs_; }
    Rat coefficient(int dx, int dy) const;
    void set_coefficient(int dx, int dy, const Rat& value);
    bool is_zero() const { return coeffs_.empty(); }
    // Total degree; -1 for the zero polynomial.
    int degree() const;

    Rat eval(const Rat& x, const Rat& y) const;

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.coeffs_ == b.coeffs_; }

    BiPoly scaled(const Rat& factor) const;
    // Substitute x -> fx*x, y -> fy*y.
    BiPoly scale_powers(const Rat& fx, const Rat& fy) const;

    // "x^i y^j: p/q" lines, degree-sorted, for debugging and goldens.
    std::string str() const;

private:
    std::map<Key, Rat> coeffs_;
};

// ---------------------------------------------------------------------------
// Polynomial families
// ---------------------------------------------------------------------------

// prod_{j<n} (x - q^j y), expanded or evaluated.
BiPoly cauchy_poly(long n, const QContext& ctx);
Rat cauchy_eval(long n, const Rat& x, const Rat& y, const QContext& ctx);
Scalar cauchy_eval(long n, const Scalar& x, const Scalar& y, const QContext& ctx);

// The three-parameter family via its finite sum -- the reference route every
// other evaluation is checked against.
Rat ascu_sum(long n, const Rat& x, const Rat& y, const Rat& a, const QContext& ctx);
Scalar ascu_sum(long n, const ParamPoint& p, const QContext& ctx);

// Same family through the terminating 2phi1; needs x != 0 and a != 0
// (ParameterConstraint otherwise).
Scalar ascu_phi(long n, const ParamPoint& p, const QContext& ctx);

// Same family through one of the two operator representations (exact
// parameters only).
enum class OperatorRoute {
    HomogeneousShift,      // series in the bivariate lowering operator
    ParameterAugmentation, // series in the theta-based augmentation operator
};
Scalar ascu_operator(long n, const ParamPoint& p, OperatorRoute route, const QContext& ctx);

// Classical one-variable family: u_n equals the three-parameter family at
// y = 1.
Rat ascu_u(long n, const Rat& x, const Rat& a, const QContext& ctx);
Scalar ascu_u(long n, const Scalar& x, const Scalar& a, const QContext& ctx);

// Rogers-Szego sums.
Rat rs_g(long n, const Rat& a, const QContext& ctx);
Scalar rs_g(long n, const Scalar& a, const QContext& ctx);
Rat rs_h(long n, const Rat& x, const Rat& y, const QContext& ctx);
Scalar rs_h(long n, const Scalar& x, const Scalar& y, const QContext& ctx);

} // namespace qac

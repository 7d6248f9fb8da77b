#pragma once

#include <array>
#include <string>
#include <vector>
#include <map>

#include "qac/scalars.hpp"

namespace qac {

// ---------------------------------------------------------------------------
// Exact multivariate formal power series in variables drawn from {t, s, v},
// truncated at a total-degree bound.  Values are immutable once built;
// operations return new series.
// ---------------------------------------------------------------------------
class TruncatedSeries {
public:
    // Exponent tuple in the canonical slot order t, s, v; inactive variables
    // stay at exponent 0.
    using Key = std::array<int, 3>;

    // Canonical slot of a variable name; UnknownVariable otherwise.
    static int variable_slot(const std::string& name);

    TruncatedSeries(std::vector<std::string> variables, int order);

    static TruncatedSeries constant(const Rat& value, std::vector<std::string> variables,
                                    int order);
    static TruncatedSeries monomial(const Rat& coeff, const std::string& variable, int power,
                                    std::vector<std::string> variables, int order);

    const std::vector<std::string>& variables() const { return vars_; }
    int order() const { return order_; }
    const std::map<Key, Rat>& terms() const { return coeffs_; }

    // Coefficient access/update with exponents listed in variables() order.
    // Total degree beyond the bound raises OutOfOrder; absent tuples read 0.
    const Rat coefficient(const std::vector<int>& exponents) const;
    void set_coefficient(const std::vector<int>& exponents, const Rat& value);

    // Internal-key access used by the arithmetic kernels.
    const Rat coefficient_key(const Key& key) const;
    void set_coefficient_key(const Key& key, const Rat& value);

    bool is_zero() const;

    // Sorted "(e_1,...,e_k): p/q" lines over the declared variables.
    std::string str() const;

private:
    std::vector<std::string> vars_;
    int order_;
    std::map<Key, Rat> coeffs_;

    Key key_from_exponents(const std::vector<int>& exponents) const;
};

enum class SeriesOp { Add, Sub, Mul };

// Pointwise/Cauchy arithmetic.  Variable sets are merged by embedding; the
// result is truncated at the smaller order.
TruncatedSeries series_arith(const TruncatedSeries& f, const TruncatedSeries& g, SeriesOp op);

// Every coefficient multiplied by a constant.
TruncatedSeries series_scale(const TruncatedSeries& f, const Rat& factor);

// Multiplicative inverse by graded recursion; NonUnit when the constant
// coefficient vanishes.
TruncatedSeries series_inverse(const TruncatedSeries& f);

// ---------------------------------------------------------------------------
// Pochhammer factors as series
// ---------------------------------------------------------------------------
enum class FactorKind {
    NumeratorPoch,   // (c x;q)_inf
    DenominatorPoch, // 1/(c x;q)_inf
    FinitePoch,      // (c x;q)_k
    Polynomial,      // the monomial c x^k
};

struct SeriesFactorSpec {
    FactorKind kind = FactorKind::Polynomial;
    Rat c = Rat(0);
    std::string variable = "t";
    long k = 0;
};

// Expansion of a single factor to the context truncation order:
//   NumeratorPoch   -> sum_n (-1)^n q^binom(n,2) c^n x^n / (q;q)_n
//   DenominatorPoch -> sum_n c^n x^n / (q;q)_n
//   FinitePoch      -> prod_{j<k} (1 - c q^j x)
//   Polynomial      -> c x^k (zero when k exceeds the order)
TruncatedSeries euler_expand(const SeriesFactorSpec& spec, const QContext& ctx);

// Substitute x -> factor * x for one variable.
TruncatedSeries scale_variable(const TruncatedSeries& f, const std::string& variable,
                               const Rat& factor);

// Free-function coefficient accessor (exponents in variables() order).
Rat coefficient(const TruncatedSeries& f, const std::vector<int>& exponents);

// Product over a list of factor expansions.
TruncatedSeries assemble_product(const std::vector<SeriesFactorSpec>& specs, const QContext& ctx);

// Truncated evaluation: sum of coeff * prod point_i^e_i with the point listed
// in variables() order.
Rat series_eval(const TruncatedSeries& f, const std::vector<Rat>& point);

} // namespace qac

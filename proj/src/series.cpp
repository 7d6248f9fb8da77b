#include "qac/series.hpp"

#include <algorithm>
#include <sstream>

#include "qac/errors.hpp"

namespace qac {

namespace {

int key_total(const TruncatedSeries::Key& k) { return k[0] + k[1] + k[2]; }

// Canonical variable list for a slot mask, in slot order.
std::vector<std::string> vars_for_slots(const std::array<bool, 3>& active) {
    static const char* kNames[3] = {"t", "s", "v"};
    std::vector<std::string> vars;
    for (int i = 0; i < 3; ++i)
        if (active[i]) vars.emplace_back(kNames[i]);
    return vars;
}

std::array<bool, 3> slot_mask(const std::vector<std::string>& vars) {
    std::array<bool, 3> active{false, false, false};
    for (const std::string& v : vars) active[TruncatedSeries::variable_slot(v)] = true;
    return active;
}

// All exponent tuples over the active slots with total degree <= order,
// sorted by total degree then lexicographically (the order the graded
// inversion recursion needs).
std::vector<TruncatedSeries::Key> enumerate_keys(const std::array<bool, 3>& active, int order) {
    std::vector<TruncatedSeries::Key> keys;
    for (int e0 = 0; e0 <= (active[0] ? order : 0); ++e0)
        for (int e1 = 0; e1 <= (active[1] ? order - e0 : 0); ++e1)
            for (int e2 = 0; e2 <= (active[2] ? order - e0 - e1 : 0); ++e2)
                keys.push_back({e0, e1, e2});
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        const int ta = key_total(a), tb = key_total(b);
        if (ta != tb) return ta < tb;
        return a < b;
    });
    return keys;
}

} // namespace

int TruncatedSeries::variable_slot(const std::string& name) {
    if (name == "t") return 0;
    if (name == "s") return 1;
    if (name == "v") return 2;
    throw UnknownVariable("no series variable named '" + name + "'");
}

TruncatedSeries::TruncatedSeries(std::vector<std::string> variables, int order) : order_(order) {
    if (order < 0) throw ConfigError("series order must be nonnegative");
    std::array<bool, 3> active{false, false, false};
    for (const std::string& v : variables) {
        const int slot = variable_slot(v);
        if (active[slot]) throw ConfigError("duplicate series variable '" + v + "'");
        active[slot] = true;
    }
    vars_ = vars_for_slots(active); // canonical t, s, v order
}

TruncatedSeries TruncatedSeries::constant(const Rat& value, std::vector<std::string> variables,
                                          int order) {
    TruncatedSeries f(std::move(variables), order);
    if (value != 0) f.coeffs_[{0, 0, 0}] = value;
    return f;
}

TruncatedSeries TruncatedSeries::monomial(const Rat& coeff, const std::string& variable,
                                          int power, std::vector<std::string> variables,
                                          int order) {
    TruncatedSeries f(std::move(variables), order);
    if (power < 0) throw ConfigError("negative exponent in series monomial");
    const int slot = variable_slot(variable);
    bool active = false;
    for (const std::string& v : f.vars_) active = active || (variable_slot(v) == slot);
    if (!active) throw UnknownVariable("monomial variable '" + variable + "' not declared");
    if (power <= order && coeff != 0) {
        Key key{0, 0, 0};
        key[slot] = power;
        f.coeffs_[key] = coeff;
    }
    return f;
}

TruncatedSeries::Key TruncatedSeries::key_from_exponents(const std::vector<int>& exponents) const {
    if (exponents.size() != vars_.size())
        throw OutOfOrder("exponent tuple arity does not match the variable list");
    Key key{0, 0, 0};
    for (size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] < 0) throw OutOfOrder("negative exponent");
        key[variable_slot(vars_[i])] = exponents[i];
    }
    if (key_total(key) > order_)
        throw OutOfOrder("total degree exceeds the truncation order");
    return key;
}

const Rat TruncatedSeries::coefficient(const std::vector<int>& exponents) const {
    return coefficient_key(key_from_exponents(exponents));
}

void TruncatedSeries::set_coefficient(const std::vector<int>& exponents, const Rat& value) {
    set_coefficient_key(key_from_exponents(exponents), value);
}

const Rat TruncatedSeries::coefficient_key(const Key& key) const {
    const auto it = coeffs_.find(key);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

void TruncatedSeries::set_coefficient_key(const Key& key, const Rat& value) {
    if (value == 0)
        coeffs_.erase(key);
    else
        coeffs_[key] = value;
}

bool TruncatedSeries::is_zero() const { return coeffs_.empty(); }

std::string TruncatedSeries::str() const {
    std::vector<Key> keys;
    keys.reserve(coeffs_.size());
    for (const auto& [key, value] : coeffs_) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        const int ta = key_total(a), tb = key_total(b);
        if (ta != tb) return ta < tb;
        return a < b;
    });
    std::ostringstream out;
    for (const Key& key : keys) {
        out << '(';
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (i) out << ',';
            out << key[variable_slot(vars_[i])];
        }
        out << "): " << rat_str(coeffs_.at(key)) << '\n';
    }
    return out.str();
}

TruncatedSeries series_arith(const TruncatedSeries& f, const TruncatedSeries& g, SeriesOp op) {
    std::array<bool, 3> active = slot_mask(f.variables());
    for (const std::string& v : g.variables()) active[TruncatedSeries::variable_slot(v)] = true;
    const int order = std::min(f.order(), g.order());
    TruncatedSeries out(vars_for_slots(active), order);
    if (op == SeriesOp::Mul) {
        for (const auto& [ka, ca] : f.terms()) {
            for (const auto& [kb, cb] : g.terms()) {
                const TruncatedSeries::Key key{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]};
                if (key_total(key) > order) continue;
                out.set_coefficient_key(key, out.coefficient_key(key) + ca * cb);
            }
        }
        return out;
    }
    for (const auto& [key, value] : f.terms())
        if (key_total(key) <= order) out.set_coefficient_key(key, value);
    for (const auto& [key, value] : g.terms()) {
        if (key_total(key) > order) continue;
        Rat updated = out.coefficient_key(key);
        if (op == SeriesOp::Add)
            updated += value;
        else
            updated -= value;
        out.set_coefficient_key(key, updated);
    }
    return out;
}

TruncatedSeries series_scale(const TruncatedSeries& f, const Rat& factor) {
    TruncatedSeries out(f.variables(), f.order());
    if (factor == 0) return out;
    for (const auto& [key, value] : f.terms()) out.set_coefficient_key(key, value * factor);
    return out;
}

TruncatedSeries series_inverse(const TruncatedSeries& f) {
    const Rat c0 = f.coefficient_key({0, 0, 0});
    if (c0 == 0) throw NonUnit("series has no constant term to invert around");
    TruncatedSeries out(f.variables(), f.order());
    const Rat c0_inv = Rat(1) / c0;
    for (const TruncatedSeries::Key& key : enumerate_keys(slot_mask(f.variables()), f.order())) {
        if (key_total(key) == 0) {
            out.set_coefficient_key(key, c0_inv);
            continue;
        }
        Rat acc(0);
        for (const auto& [kb, cb] : f.terms()) {
            if (key_total(kb) == 0) continue;
            if (kb[0] > key[0] || kb[1] > key[1] || kb[2] > key[2]) continue;
            const TruncatedSeries::Key rest{key[0] - kb[0], key[1] - kb[1], key[2] - kb[2]};
            acc += cb * out.coefficient_key(rest);
        }
        out.set_coefficient_key(key, -c0_inv * acc);
    }
    return out;
}

TruncatedSeries euler_expand(const SeriesFactorSpec& spec, const QContext& ctx) {
    if (ctx.mode() != Mode::Exact)
        throw ExactModeUnsupported("series expansion is an exact-mode construction");
    const int order = ctx.truncation_order();
    const std::vector<std::string> vars{spec.variable};
    const bool infinite =
        spec.kind == FactorKind::NumeratorPoch || spec.kind == FactorKind::DenominatorPoch;
    if (infinite && ctx.finite_only())
        throw ExactModeUnsupported("infinite product expansion is undefined for a base "
                                   "outside (0,1)");
    switch (spec.kind) {
    case FactorKind::NumeratorPoch:
    case FactorKind::DenominatorPoch: {
        TruncatedSeries out = TruncatedSeries::constant(Rat(1), vars, order);
        Rat term(1);
        Rat qn(1); // q^n
        for (int n = 1; n <= order; ++n) {
            // term ratio: c/(1-q^n), with an extra -q^(n-1) for the
            // alternating numerator expansion.
            if (spec.kind == FactorKind::NumeratorPoch)
                term *= -spec.c * qn / (Rat(1) - qn * ctx.q());
            else
                term *= spec.c / (Rat(1) - qn * ctx.q());
            qn *= ctx.q();
            if (term == 0) break;
            out.set_coefficient(std::vector<int>{n}, term);
        }
        return out;
    }
    case FactorKind::FinitePoch: {
        if (spec.k < 0) throw ConfigError("finite factor needs a nonnegative length");
        TruncatedSeries out = TruncatedSeries::constant(Rat(1), vars, order);
        for (long j = 0; j < spec.k; ++j) {
            TruncatedSeries lin = TruncatedSeries::constant(Rat(1), vars, order);
            lin.set_coefficient(std::vector<int>{1}, -spec.c * ctx.q_pow(j));
            out = series_arith(out, lin, SeriesOp::Mul);
        }
        return out;
    }
    case FactorKind::Polynomial: {
        if (spec.k < 0) throw ConfigError("negative exponent in series monomial");
        if (spec.k > order) return TruncatedSeries(vars, order);
        return TruncatedSeries::monomial(spec.c, spec.variable, static_cast<int>(spec.k), vars,
                                         order);
    }
    }
    throw ConfigError("unhandled series factor kind");
}

TruncatedSeries scale_variable(const TruncatedSeries& f, const std::string& variable,
                               const Rat& factor) {
    const int slot = TruncatedSeries::variable_slot(variable);
    if (!slot_mask(f.variables())[slot])
        throw UnknownVariable("series has no variable '" + variable + "'");
    TruncatedSeries out(f.variables(), f.order());
    for (const auto& [key, value] : f.terms())
        out.set_coefficient_key(key, value * rat_pow_int(factor, key[slot]));
    return out;
}

Rat coefficient(const TruncatedSeries& f, const std::vector<int>& exponents) {
    return f.coefficient(exponents);
}

TruncatedSeries assemble_product(const std::vector<SeriesFactorSpec>& specs,
                                 const QContext& ctx) {
    std::array<bool, 3> active{false, false, false};
    for (const SeriesFactorSpec& spec : specs)
        active[TruncatedSeries::variable_slot(spec.variable)] = true;
    TruncatedSeries out =
        TruncatedSeries::constant(Rat(1), vars_for_slots(active), ctx.truncation_order());
    for (const SeriesFactorSpec& spec : specs)
        out = series_arith(out, euler_expand(spec, ctx), SeriesOp::Mul);
    return out;
}

Rat series_eval(const TruncatedSeries& f, const std::vector<Rat>& point) {
    if (point.size() != f.variables().size())
        throw OutOfOrder("evaluation point arity does not match the variable list");
    std::array<int, 3> slot_of{-1, -1, -1};
    for (size_t i = 0; i < f.variables().size(); ++i)
        slot_of[TruncatedSeries::variable_slot(f.variables()[i])] = static_cast<int>(i);
    Rat acc(0);
    for (const auto& [key, value] : f.terms()) {
        Rat term = value;
        for (int slot = 0; slot < 3; ++slot)
            if (key[slot] != 0) term *= rat_pow_int(point[slot_of[slot]], key[slot]);
        acc += term;
    }
    return acc;
}

} // namespace qac

#include "qac/identities.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "identity_support.hpp"
#include "qac/errors.hpp"
#include "qac/qkernel.hpp"

namespace qac {

namespace detail {

// ---------------------------------------------------------------------------
// Point templates
// ---------------------------------------------------------------------------

Rat q_scale(int mag2, const QContext& ctx) {
    if (mag2 == 0) return Rat(1);
    const double qd = ctx.q().get_d();
    const long e = static_cast<long>(
        std::ceil(static_cast<double>(mag2) * M_LN2 / -std::log(qd) - 1e-9));
    return ctx.q_pow(e);
}

Rat jitter(std::mt19937_64& rng) {
    static const long table[][2] = {{1, 1},   {9, 10},  {11, 10}, {19, 20}, {21, 20},
                                    {8, 9},   {9, 8},   {13, 14}, {15, 14}};
    const auto& pick = table[rng() % 9];
    return make_rat(pick[0], pick[1]);
}

ParamPoint draw_template(const std::vector<TemplateEntry>& entries,
                         std::mt19937_64& rng, const QContext& ctx) {
    ParamPoint p;
    for (const auto& e : entries) {
        p.set(e.name, Scalar(jitter(rng) * make_rat(e.num, e.den) * q_scale(e.mag2, ctx)));
    }
    return p;
}

void set_scaled(ParamPoint& p, const char* name, long num, long den, int mag2,
                std::mt19937_64& rng, const QContext& ctx) {
    p.set(name, Scalar(jitter(rng) * make_rat(num, den) * q_scale(mag2, ctx)));
}

std::function<ParamPoint(long, std::mt19937_64&, const QContext&)>
template_draw(std::vector<TemplateEntry> entries) {
    return [entries = std::move(entries)](long, std::mt19937_64& rng, const QContext& ctx) {
        return draw_template(entries, rng, ctx);
    };
}

Constraint nonzero_constraint(const std::string& name) {
    return {name + " != 0", [name](const ParamPoint& p, const QContext&) {
                return p.rat(name) != 0;
            }};
}

Constraint below_one(const std::string& expr) {
    return {"|" + expr + "| < 1", [expr](const ParamPoint& p, const QContext& ctx) {
                Rat value(1);
                bool divide = false;
                std::string name;
                bool zero_divide = false;
                const auto flush = [&] {
                    if (name.empty()) return;
                    const Rat v = name == "q" ? ctx.q() : p.rat(name);
                    if (divide) {
                        if (v == 0)
                            zero_divide = true;
                        else
                            value /= v;
                    } else {
                        value *= v;
                    }
                    name.clear();
                };
                for (char ch : expr) {
                    if (ch == '*' || ch == '/') {
                        flush();
                        divide = ch == '/';
                    } else {
                        name.push_back(ch);
                    }
                }
                flush();
                if (zero_divide) return false;
                if (value < 0) value = -value;
                return value < 1;
            }};
}

std::vector<std::vector<long>> grid_range(long lo, long hi) {
    std::vector<std::vector<long>> out;
    for (long n = lo; n <= hi; ++n) out.push_back({n});
    return out;
}

std::vector<std::vector<long>> grid_pairs_sum(long max_sum) {
    std::vector<std::vector<long>> out;
    for (long n = 0; n <= max_sum; ++n)
        for (long m = 0; m + n <= max_sum; ++m) out.push_back({n, m});
    return out;
}

std::vector<std::vector<long>> grid_rect(long hi1, long hi2) {
    std::vector<std::vector<long>> out;
    for (long n = 0; n <= hi1; ++n)
        for (long m = 0; m <= hi2; ++m) out.push_back({n, m});
    return out;
}

// ---------------------------------------------------------------------------
// Exact value caches
// ---------------------------------------------------------------------------

AscuTable::AscuTable(Rat x, Rat y, Rat a, const QContext& ctx)
    : x_(std::move(x)), y_(std::move(y)), a_(std::move(a)), q_(ctx.q()) {
    cauchy_ = {Rat(1)};
    apow_ = {Rat(1)};
    qfac_ = {Rat(1)};
    u_ = {Rat(1)};
}

void AscuTable::extend(long n) {
    for (long j = static_cast<long>(u_.size()); j <= n; ++j) {
        cauchy_.push_back(cauchy_.back() * (x_ - rat_pow_int(q_, j - 1) * y_));
        apow_.push_back(apow_.back() * a_);
        qfac_.push_back(qfac_.back() * (Rat(1) - rat_pow_int(q_, j)));
        Rat total(0);
        Rat qc2(1);  // q^binom(k,2), updated incrementally
        for (long k = 0; k <= j; ++k) {
            if (k > 0) qc2 *= rat_pow_int(q_, k - 1);
            const Rat binom = qfac_[j] / (qfac_[k] * qfac_[j - k]);
            Rat term = binom * qc2 * apow_[k] * cauchy_[j - k];
            if (k % 2 != 0) term = -term;
            total += term;
        }
        u_.push_back(total);
    }
}

Rat AscuTable::u(long n) {
    extend(n);
    return u_[static_cast<std::size_t>(n)];
}

Rat AscuTable::qfac(long n) {
    extend(n);
    return qfac_[static_cast<std::size_t>(n)];
}

GTable::GTable(Rat a, const QContext& ctx) : a_(std::move(a)), q_(ctx.q()) {
    qfac_ = {Rat(1)};
    g_ = {Rat(1)};
}

Rat GTable::g(long n) {
    const Rat qinv = Rat(1) / q_;
    for (long j = static_cast<long>(g_.size()); j <= n; ++j) {
        qfac_.push_back(qfac_.back() * (Rat(1) - rat_pow_int(q_, j)));
        Rat total(0);
        Rat ap(1);
        for (long k = 0; k <= j; ++k) {
            if (k > 0) ap *= a_;
            const Rat binom = qfac_[j] / (qfac_[k] * qfac_[j - k]);
            total += binom * rat_pow_int(qinv, k * (j - k)) * ap;
        }
        g_.push_back(total);
    }
    return g_[static_cast<std::size_t>(n)];
}

Rat GTable::qfac(long n) {
    g(n);
    return qfac_[static_cast<std::size_t>(n)];
}

// ---------------------------------------------------------------------------
// Exact summation with magnitude stopping
// ---------------------------------------------------------------------------

namespace {

constexpr double kDivergenceGuard = 1e8;

[[noreturn]] void throw_divergent() {
    throw NonConvergent("exact series term grew beyond the divergence guard");
}

}  // namespace

double rat_mag(const Rat& value) { return std::fabs(value.get_d()); }

Rat sum_single(const std::function<Rat(long)>& term, const QContext& ctx) {
    const double thresh = ctx.tail_threshold().to_double();
    Rat total(0);
    int below = 0;
    for (long n = 0; n < ctx.max_terms(); ++n) {
        const Rat t = term(n);
        total += t;
        const double m = rat_mag(t);
        if (!std::isfinite(m) || m > kDivergenceGuard) throw_divergent();
        if (m < thresh) {
            if (++below >= 3) return total;
        } else {
            below = 0;
        }
    }
    throw GuardExceeded("series did not settle within the term budget");
}

Rat sum_shells2(const std::function<Rat(long, long)>& term, const QContext& ctx) {
    const double thresh = ctx.tail_threshold().to_double();
    Rat total(0);
    int below = 0;
    long used = 0;
    for (long N = 0;; ++N) {
        double shell_max = 0.0;
        for (long n = 0; n <= N; ++n) {
            const Rat t = term(n, N - n);
            total += t;
            const double m = rat_mag(t);
            if (!std::isfinite(m)) throw_divergent();
            shell_max = std::max(shell_max, m);
        }
        if (shell_max > kDivergenceGuard) throw_divergent();
        if (shell_max < thresh) {
            if (++below >= 2) return total;
        } else {
            below = 0;
        }
        used += N + 1;
        if (used >= ctx.max_terms())
            throw GuardExceeded("series did not settle within the term budget");
    }
}

Rat sum_shells3(const std::function<Rat(long, long, long)>& term, const QContext& ctx) {
    const double thresh = ctx.tail_threshold().to_double();
    Rat total(0);
    int below = 0;
    long used = 0;
    for (long N = 0;; ++N) {
        double shell_max = 0.0;
        for (long n = 0; n <= N; ++n) {
            for (long m = 0; m <= N - n; ++m) {
                const Rat t = term(n, m, N - n - m);
                total += t;
                const double tm = rat_mag(t);
                if (!std::isfinite(tm)) throw_divergent();
                shell_max = std::max(shell_max, tm);
                ++used;
            }
        }
        if (shell_max > kDivergenceGuard) throw_divergent();
        if (shell_max < thresh) {
            if (++below >= 2) return total;
        } else {
            below = 0;
        }
        if (used >= ctx.max_terms())
            throw GuardExceeded("series did not settle within the term budget");
    }
}

// ---------------------------------------------------------------------------
// Real-valued helpers
// ---------------------------------------------------------------------------

long rhs_precision(const QContext& ctx) { return 2 * ctx.precision_bits(); }

Real lift(const Rat& value, long prec) {
    return Real(value, static_cast<mpfr_prec_t>(prec));
}

std::vector<Real> lift(const std::vector<Rat>& values, long prec) {
    std::vector<Real> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(lift(v, prec));
    return out;
}

Real pochinf_ratio(const std::vector<Rat>& nums, const std::vector<Rat>& dens,
                   const QContext& ctx, long prec) {
    Real result = lift(Rat(1), prec);
    for (const auto& v : nums)
        result = result * qpoch_inf(lift(v, prec), ctx, static_cast<mpfr_prec_t>(prec));
    for (const auto& v : dens)
        result = result / qpoch_inf(lift(v, prec), ctx, static_cast<mpfr_prec_t>(prec));
    return result;
}

Real phi_rat(const std::vector<Rat>& nums, const std::vector<Rat>& dens, const Rat& z,
             const QContext& ctx, long prec, const Real* threshold) {
    return phi_eval_numeric(lift(nums, prec), lift(dens, prec), lift(z, prec), ctx,
                            static_cast<mpfr_prec_t>(prec), threshold);
}

Real inner_threshold(const Real& coef, const QContext& ctx, long prec) {
    const Real one = lift(Rat(1), prec);
    const Real tiny = Real::from_string("1e-300", static_cast<mpfr_prec_t>(prec));
    Real mag = coef.abs().rounded_to(static_cast<mpfr_prec_t>(prec));
    if (mag.cmp(tiny) < 0) mag = tiny;
    Real out = ctx.tail_threshold().rounded_to(static_cast<mpfr_prec_t>(prec)) / mag;
    if (out.cmp(one) > 0) out = one;
    return out;
}

Scalar at_context_precision(const Real& value, const QContext& ctx) {
    return Scalar(value.rounded_to(ctx.precision_bits()));
}

Scalar lift_exact(const Rat& value, const QContext& ctx) {
    return Scalar(lift(value, ctx.precision_bits()));
}

bool& nudge_rhs() {
    static bool flag = false;
    return flag;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Catalog assembly and lookup
// ---------------------------------------------------------------------------

const std::vector<IdentityCheck>& catalog() {
    static const std::vector<IdentityCheck> checks = [] {
        std::vector<IdentityCheck> out;
        detail::add_formal_checks(out);
        detail::add_exact_checks(out);
        detail::add_operator_checks(out);
        detail::add_kernel_checks(out);
        detail::add_product_checks(out);
        std::sort(out.begin(), out.end(),
                  [](const IdentityCheck& a, const IdentityCheck& b) { return a.id < b.id; });
        for (std::size_t i = 1; i < out.size(); ++i) {
            if (out[i - 1].id == out[i].id)
                throw ConfigError("duplicate check id: " + out[i].id);
        }
        return out;
    }();
    return checks;
}

bool glob_match(const std::string& pattern, const std::string& text) {
    std::size_t p = 0, t = 0;
    std::size_t star = std::string::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

std::vector<const IdentityCheck*> catalog_matching(const std::string& pattern) {
    std::vector<const IdentityCheck*> out;
    const std::string effective = (pattern == "all" || pattern.empty()) ? "*" : pattern;
    for (const auto& check : catalog()) {
        if (glob_match(effective, check.id)) out.push_back(&check);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

namespace {

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

bool point_admissible(const IdentityCheck& check, const ParamPoint& p, const QContext& ctx,
                      std::string* why = nullptr) {
    for (const auto& constraint : check.constraints) {
        if (!constraint.holds(p, ctx)) {
            if (why != nullptr) *why = constraint.description;
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<ParamPoint> sample_points(const IdentityCheck& check, long count,
                                      std::uint64_t seed, const QContext& ctx) {
    std::mt19937_64 rng(seed ^ fnv1a(check.id));
    std::vector<ParamPoint> points;
    points.reserve(static_cast<std::size_t>(count));
    long index = 0;
    long rejections = 0;
    while (static_cast<long>(points.size()) < count) {
        ParamPoint candidate = check.draw(index++, rng, ctx);
        if (point_admissible(check, candidate, ctx)) {
            points.push_back(std::move(candidate));
            rejections = 0;
        } else if (++rejections >= 10000) {
            throw SamplingExhausted("no admissible point for " + check.id);
        }
    }
    return points;
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

namespace {

std::string exponent_string(const TruncatedSeries::Key& key) {
    std::string out = "(";
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i != 0) out += ",";
        out += std::to_string(key[i]);
    }
    out += ")";
    return out;
}

std::string grid_string(const std::vector<long>& grid) {
    std::string out = "(";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i != 0) out += ",";
        out += std::to_string(grid[i]);
    }
    out += ")";
    return out;
}

}  // namespace

CheckReport run_check(const IdentityCheck& check, const std::vector<ParamPoint>& points,
                      const QContext& ctx) {
    const auto start = std::chrono::steady_clock::now();
    CheckReport report;
    report.id = check.id;
    report.params_used = points;

    const bool numeric = check.kind == CheckKind::NumericPoint;
    const QContext run_ctx = ctx.with_mode(numeric ? Mode::Numeric : Mode::Exact);

    const auto finish = [&](CheckStatus status) {
        report.status = status;
        report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();
        return report;
    };

    for (const auto& p : points) {
        std::string why;
        if (!point_admissible(check, p, run_ctx, &why)) {
            report.diagnostic = "constraint not satisfied: " + why;
            return finish(CheckStatus::Skipped);
        }
    }

    Rat exact_dev(0);
    Real numeric_dev = detail::lift(Rat(0), run_ctx.precision_bits());
    bool numeric_seen = false;

    try {
        for (const auto& grid : check.grid) {
            for (const auto& p : points) {
                if (check.kind == CheckKind::Formal) {
                    const TruncatedSeries lhs = check.lhs_series(grid, p, run_ctx);
                    TruncatedSeries rhs = check.rhs_series(grid, p, run_ctx);
                    if (detail::nudge_rhs()) {
                        rhs = series_arith(
                            rhs,
                            TruncatedSeries::constant(make_rat(1, 7), rhs.variables(),
                                                      rhs.order()),
                            SeriesOp::Add);
                    }
                    const TruncatedSeries diff = series_arith(lhs, rhs, SeriesOp::Sub);
                    for (const auto& [key, value] : diff.terms()) {
                        const Rat mag = value >= 0 ? value : Rat(-value);
                        if (mag > exact_dev) exact_dev = mag;
                        if (value != 0 && report.diagnostic.empty()) {
                            report.diagnostic = "coefficient mismatch at " +
                                                exponent_string(key) + " for grid " +
                                                grid_string(grid);
                        }
                    }
                    if (!diff.is_zero()) {
                        report.max_deviation = Scalar(exact_dev);
                        return finish(CheckStatus::Fail);
                    }
                } else if (check.kind == CheckKind::ExactFinite) {
                    const Rat lhs = check.lhs_value(grid, p, run_ctx).rat();
                    Rat rhs = check.rhs_value(grid, p, run_ctx).rat();
                    if (detail::nudge_rhs()) rhs += make_rat(1, 7);
                    const Rat diff = lhs - rhs;
                    const Rat mag = diff >= 0 ? diff : Rat(-diff);
                    if (mag > exact_dev) exact_dev = mag;
                    if (diff != 0) {
                        report.max_deviation = Scalar(exact_dev);
                        report.diagnostic = "value mismatch for grid " + grid_string(grid);
                        return finish(CheckStatus::Fail);
                    }
                } else {
                    const Scalar lhs = check.lhs_value(grid, p, run_ctx);
                    Scalar rhs = check.rhs_value(grid, p, run_ctx);
                    if (detail::nudge_rhs()) {
                        const Real factor =
                            detail::lift(make_rat(1048577, 1048576), rhs.real().precision());
                        rhs = Scalar(rhs.real() * factor);
                    }
                    const CompareResult cmp = compare(lhs, rhs, run_ctx);
                    if (!numeric_seen || cmp.deviation.real().cmp(numeric_dev) > 0) {
                        numeric_dev = cmp.deviation.real();
                        numeric_seen = true;
                    }
                    if (cmp.status == CompareStatus::Unequal) {
                        report.max_deviation = Scalar(numeric_dev);
                        report.diagnostic = "deviation beyond tolerance for grid " +
                                            grid_string(grid);
                        return finish(CheckStatus::Fail);
                    }
                }
            }
        }
    } catch (const Error& e) {
        report.diagnostic = e.what();
        report.max_deviation = numeric ? Scalar(numeric_dev) : Scalar(exact_dev);
        return finish(CheckStatus::Fail);
    }

    report.max_deviation = numeric ? Scalar(numeric_dev) : Scalar(exact_dev);
    return finish(CheckStatus::Pass);
}

std::vector<CheckReport> run_suite(const std::vector<const IdentityCheck*>& checks,
                                   long points, std::uint64_t seed, int jobs,
                                   const QContext& ctx) {
    std::vector<CheckReport> reports(checks.size());
    std::atomic<std::size_t> next{0};

    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= checks.size()) return;
            const IdentityCheck& check = *checks[i];
            const auto start = std::chrono::steady_clock::now();
            try {
                const std::vector<ParamPoint> pts = sample_points(check, points, seed, ctx);
                reports[i] = run_check(check, pts, ctx);
            } catch (const Error& e) {
                reports[i].id = check.id;
                reports[i].status = CheckStatus::Skipped;
                reports[i].diagnostic = e.what();
                reports[i].elapsed_ms =
                    std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
            }
        }
    };

    const int worker_count = std::max(
        1, std::min(jobs < 1 ? 1 : jobs, static_cast<int>(checks.size())));
    if (worker_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return reports;
}

}  // namespace qac

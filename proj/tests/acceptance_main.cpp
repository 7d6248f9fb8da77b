// Acceptance harness.  Runs ten end-to-end criteria covering the evaluation
// routes, the formal and numeric identity suites, the operator calculus, the
// Euler expansions, and the command-line front end, and prints exactly one
// PASS/FAIL line per criterion.  Criteria with a wall-clock budget fail when
// they exceed it.  Exit status is 0 only if every criterion passes.
//
// Usage: acceptance <path-to-qac-binary>

#include "qac/identities.hpp"
#include "qac/operators.hpp"
#include "qac/polynomials.hpp"
#include "qac/scalars.hpp"
#include "qac/series.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace qac;

namespace {

std::string g_qac_path; // set from argv[1]; required by criterion 10 only

const QContext kExact = QContext::defaults(Mode::Exact);
const QContext kNumeric = QContext::defaults(Mode::Numeric);

const std::array<Rat, 3> kBases = {make_rat(1, 2), make_rat(1, 3), make_rat(2, 5)};

QContext exact_at(const Rat& q) {
    return QContext(q, Mode::Exact, 256, 8, "1e-30", 20000);
}

// f(s) = s^n in either backend.
FunctionHandle power_handle(long n) {
    FunctionHandle h;
    h.eval = [n](const Scalar& s) {
        if (s.exact()) return Scalar(rat_pow_int(s.rat(), n));
        return Scalar(Real::pow_int(s.real(), n));
    };
    return h;
}

UniPoly random_poly(std::mt19937_64& rng, long degree) {
    std::vector<Rat> c;
    for (long i = 0; i <= degree; ++i) {
        const long num = static_cast<long>(rng() % 15) - 7;
        const long den = 1 + static_cast<long>(rng() % 6);
        c.push_back(make_rat(num, den));
    }
    if (c.back() == 0) c.back() = Rat(1);
    return UniPoly(c);
}

Rat random_nonzero(std::mt19937_64& rng) {
    const long num = 1 + static_cast<long>(rng() % 9);
    const long den = 1 + static_cast<long>(rng() % 9);
    const long sign = (rng() % 2 == 0) ? 1 : -1;
    return make_rat(sign * num, den);
}

const IdentityCheck& check_by_id(const std::string& id) {
    const auto matches = catalog_matching(id);
    if (matches.size() != 1) throw ConfigError("no unique check with id " + id);
    return *matches.front();
}

bool deviation_below(const CheckReport& report, const char* bound) {
    if (report.max_deviation.exact()) return report.max_deviation.rat() == 0;
    return report.max_deviation.real().abs() <
           Real::from_string(bound, kNumeric.precision_bits());
}

std::string describe(const CheckReport& report) {
    std::string text = report.id + ": ";
    switch (report.status) {
        case CheckStatus::Pass: text += "pass"; break;
        case CheckStatus::Fail: text += "fail"; break;
        case CheckStatus::Skipped: text += "skipped"; break;
    }
    text += ", deviation " + report.max_deviation.str();
    if (!report.diagnostic.empty()) text += " (" + report.diagnostic + ")";
    return text;
}

// ---------------------------------------------------------------------------
// Criterion bodies.  Each returns true on success; `note` carries failure
// detail for the report line.
// ---------------------------------------------------------------------------

// 1. The summation, terminating-series, and both operator representations of
//    the two-variable family agree exactly for n <= 12 at random rational
//    points over three bases.
bool criterion_routes(std::string& note) {
    std::mt19937_64 rng(271828);
    for (const Rat& q : kBases) {
        const QContext ctx = exact_at(q);
        for (int draw = 0; draw < 5; ++draw) {
            const Rat x = random_nonzero(rng), y = random_nonzero(rng),
                      a = random_nonzero(rng);
            ParamPoint p;
            p.set("x", Scalar(x));
            p.set("y", Scalar(y));
            p.set("a", Scalar(a));
            for (long n = 0; n <= 12; ++n) {
                const Rat direct = ascu_sum(n, x, y, a, ctx);
                const Rat via_phi = ascu_phi(n, p, ctx).rat();
                const Rat via_f =
                    ascu_operator(n, p, OperatorRoute::HomogeneousShift, ctx).rat();
                const Rat via_e =
                    ascu_operator(n, p, OperatorRoute::ParameterAugmentation, ctx).rat();
                if (direct != via_phi || direct != via_f || direct != via_e) {
                    std::ostringstream os;
                    os << "routes disagree at n=" << n << ", q=" << q.get_str()
                       << ", x=" << x.get_str() << ", y=" << y.get_str()
                       << ", a=" << a.get_str();
                    note = os.str();
                    return false;
                }
            }
        }
    }
    return true;
}

// 2. Every formal generating-function check passes coefficientwise at
//    truncation order 8 for three bases.
bool criterion_formal(std::string& note) {
    static const char* ids[] = {"GF-U",   "GF-P",  "GF-H",   "ROGERS-1",
                                "F-GF",   "DXY-GF", "MIXED-F"};
    for (const Rat& q : kBases) {
        const QContext ctx = exact_at(q);
        for (const char* id : ids) {
            const IdentityCheck& check = check_by_id(id);
            const auto points = sample_points(check, 3, 20260823, ctx);
            const CheckReport report = run_check(check, points, ctx);
            if (report.status != CheckStatus::Pass) {
                note = "q=" + q.get_str() + ", " + describe(report);
                return false;
            }
        }
    }
    return true;
}

// 3. The linearization of a product of two family members holds with exact
//    zero deviation on every index pair in the grid.
bool criterion_linearize(std::string& note) {
    const IdentityCheck& check = check_by_id("LINEARIZE");
    const auto points = sample_points(check, 3, 42, kExact);
    const CheckReport report = run_check(check, points, kExact);
    if (report.status != CheckStatus::Pass ||
        !report.max_deviation.exact() || report.max_deviation.rat() != 0) {
        note = describe(report);
        return false;
    }
    return true;
}

// 4. The operator lemmas hold exactly, and the product-rule expansion of the
//    iterated difference quotient holds on random polynomial pairs.
bool criterion_operators(std::string& note) {
    static const char* ids[] = {"LEM-TBDQ", "E-POLY", "DXY-LADDER"};
    for (const char* id : ids) {
        const IdentityCheck& check = check_by_id(id);
        const auto points = sample_points(check, 3, 42, kExact);
        const CheckReport report = run_check(check, points, kExact);
        if (report.status != CheckStatus::Pass ||
            !report.max_deviation.exact() || report.max_deviation.rat() != 0) {
            note = describe(report);
            return false;
        }
    }
    std::mt19937_64 rng(31415);
    const QContext third = exact_at(make_rat(1, 3));
    for (int trial = 0; trial < 6; ++trial) {
        const UniPoly f = random_poly(rng, 1 + static_cast<long>(rng() % 5));
        const UniPoly g = random_poly(rng, 1 + static_cast<long>(rng() % 5));
        const QContext& ctx = (trial % 2 == 0) ? kExact : third;
        for (long n = 0; n <= 4; ++n) {
            if (!q_leibniz_check(f, g, n, ctx)) {
                note = "product-rule expansion failed at trial " +
                       std::to_string(trial) + ", n=" + std::to_string(n);
                return false;
            }
        }
    }
    return true;
}

// 5. The terminating kernel identities pass at four sampled windows, and the
//    sampler actually sweeps all four values of the free index r.
bool criterion_terminating(std::string& note) {
    static const char* ids[] = {"MEHLER-TERM", "MEHLER-u"};
    for (const char* id : ids) {
        const IdentityCheck& check = check_by_id(id);
        const auto points = sample_points(check, 4, 42, kNumeric);
        std::set<long> seen;
        for (const ParamPoint& p : points)
            seen.insert(p.rat("r").get_num().get_si());
        if (seen != std::set<long>{0, 1, 2, 3}) {
            note = std::string(id) + ": sampled windows did not cover r=0..3";
            return false;
        }
        const CheckReport report = run_check(check, points, kNumeric);
        if (report.status != CheckStatus::Pass || !deviation_below(report, "1e-30")) {
            note = describe(report);
            return false;
        }
    }
    return true;
}

// 6. Every nonterminating check passes numerically at three sampled points
//    with relative deviation below 1e-30; none may be skipped.
bool criterion_nonterminating(std::string& note) {
    static const char* ids[] = {
        "LEM-DQN",  "LEM-T-RATIO", "E-RATIO1", "E-RATIO2", "E-EXPANSION",
        "ROGERS-2", "TRIPLE",      "ROGERS-3", "MEHLER-NT", "TRANS-32",
        "PROD-3",   "PROD-RS",     "PROD-2",  "CAO-RED",   "PROD-T3",
        "GN-T3",    "GN-GAUSS",    "PROD-1K", "GN-1K"};
    std::vector<const IdentityCheck*> checks;
    for (const char* id : ids) checks.push_back(&check_by_id(id));
    const int jobs = static_cast<int>(std::thread::hardware_concurrency());
    const auto reports = run_suite(checks, 3, 42, jobs > 0 ? jobs : 1, kNumeric);
    for (const CheckReport& report : reports) {
        if (report.status != CheckStatus::Pass || !deviation_below(report, "1e-30")) {
            note = describe(report);
            return false;
        }
    }
    return true;
}

// 7. The three-to-two series transformation with a free integer parameter
//    passes at four sampled windows within 1e-30.
bool criterion_transformation(std::string& note) {
    const IdentityCheck& check = check_by_id("TRANS-32");
    const auto points = sample_points(check, 4, 42, kNumeric);
    const CheckReport report = run_check(check, points, kNumeric);
    if (report.status != CheckStatus::Pass || !deviation_below(report, "1e-30")) {
        note = describe(report);
        return false;
    }
    return true;
}

// 8. The two-parameter theta-exponential operator agrees between the exact
//    polynomial route and the numeric functional route on powers, at points
//    inside the convergence window |bq/c| < 1/2.
bool criterion_operator_backends(std::string& note) {
    const Rat a = make_rat(2, 5), b = make_rat(3, 7);
    const std::array<Rat, 3> cs = {make_rat(3, 5), make_rat(3, 4), make_rat(9, 10)};
    const Real bound = Real::from_string("1e-30", kNumeric.precision_bits());
    for (const Rat& c : cs) {
        for (long n = 0; n <= 8; ++n) {
            const UniPoly image =
                e_cauchy_operator(Scalar(a), Scalar(b), UniPoly::monomial(Rat(1), n),
                                  kExact);
            const Rat exact = image.eval(c);
            const Scalar func = e_cauchy_operator_func(
                Scalar(Real(a, kNumeric.precision_bits())),
                Scalar(Real(b, kNumeric.precision_bits())), power_handle(n),
                Scalar(Real(c, kNumeric.precision_bits())), kNumeric);
            const Real diff =
                (Real(exact, kNumeric.precision_bits()) - func.real()).abs();
            if (!(diff < bound)) {
                note = "backends disagree at n=" + std::to_string(n) +
                       ", c=" + c.get_str() + " (diff " + diff.str() + ")";
                return false;
            }
        }
    }
    return true;
}

// 9. The exact Euler expansions of an infinite product and its reciprocal
//    match a raw 256-bit truncated-product oracle to 1e-50 per coefficient.
bool criterion_euler_oracle(std::string& note) {
    const int order = 10;
    const QContext ctx(make_rat(1, 2), Mode::Exact, 256, order, "1e-30", 20000);
    const mpfr_prec_t prec = 256;
    const Real bound = Real::from_string("1e-50", prec);
    const std::array<Rat, 2> cs = {make_rat(2, 3), make_rat(-3, 5)};
    for (const Rat& c : cs) {
        // Raw oracle: multiply out prod_k (1 - c q^k t) coefficientwise in
        // 256-bit floats until the remaining factors are below working
        // precision, then invert the series for the reciprocal.
        std::vector<Real> product(order + 1, Real(0L, prec));
        product[0] = Real(1L, prec);
        Real factor(c, prec);
        const Real q(make_rat(1, 2), prec);
        for (int k = 0; k < 320; ++k) {
            for (int j = order; j >= 1; --j)
                product[j] = product[j] - factor * product[j - 1];
            factor = factor * q;
        }
        std::vector<Real> reciprocal(order + 1, Real(0L, prec));
        reciprocal[0] = Real(1L, prec) / product[0];
        for (int j = 1; j <= order; ++j) {
            Real acc(0L, prec);
            for (int i = 1; i <= j; ++i)
                acc = acc + product[i] * reciprocal[j - i];
            reciprocal[j] = -acc / product[0];
        }

        SeriesFactorSpec spec;
        spec.c = c;
        spec.variable = "t";
        spec.kind = FactorKind::NumeratorPoch;
        const TruncatedSeries direct = euler_expand(spec, ctx);
        spec.kind = FactorKind::DenominatorPoch;
        const TruncatedSeries inverse = euler_expand(spec, ctx);
        for (int e = 0; e <= order; ++e) {
            const Real d1 =
                (Real(coefficient(direct, {e}), prec) - product[e]).abs();
            const Real d2 =
                (Real(coefficient(inverse, {e}), prec) - reciprocal[e]).abs();
            if (!(d1 < bound) || !(d2 < bound)) {
                note = "coefficient " + std::to_string(e) + " at c=" + c.get_str() +
                       " off by " + (d1 < d2 ? d2 : d1).str();
                return false;
            }
        }
    }
    return true;
}

// 10. Two full command-line runs exit 0 and produce byte-identical reports.
bool criterion_cli_determinism(std::string& note) {
    if (g_qac_path.empty()) {
        note = "path to the qac binary was not supplied on the command line";
        return false;
    }
    std::array<std::string, 2> files;
    for (int i = 0; i < 2; ++i)
        files[i] = "/tmp/qac_acceptance_" + std::to_string(getpid()) + "_" +
                   std::to_string(i) + ".json";
    std::array<std::string, 2> contents;
    for (int i = 0; i < 2; ++i) {
        const std::string cmd = "'" + g_qac_path + "' run --suite all --no-timing" +
                                " --report '" + files[i] + "' > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        if (code != 0) {
            note = "run " + std::to_string(i + 1) + " exited with status " +
                   std::to_string(code);
            return false;
        }
        std::ifstream in(files[i], std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        contents[i] = buffer.str();
        std::remove(files[i].c_str());
    }
    if (contents[0].empty()) {
        note = "report file came out empty";
        return false;
    }
    if (contents[0] != contents[1]) {
        note = "the two report files differ";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

struct Criterion {
    const char* what;
    double budget_seconds; // 0 = no explicit budget
    bool (*body)(std::string&);
};

const Criterion kCriteria[] = {
    {"all four evaluation routes agree exactly for n <= 12 over three bases", 10,
     criterion_routes},
    {"formal generating-function checks pass coefficientwise at order 8", 30,
     criterion_formal},
    {"product linearization holds with exact zero deviation", 0,
     criterion_linearize},
    {"operator lemmas and the product-rule expansion hold exactly", 0,
     criterion_operators},
    {"terminating kernel checks pass over the full window sweep r = 0..3", 0,
     criterion_terminating},
    {"nonterminating checks pass numerically within 1e-30", 0,
     criterion_nonterminating},
    {"series transformation with free integer parameter passes within 1e-30", 0,
     criterion_transformation},
    {"polynomial and functional operator backends agree within 1e-30", 0,
     criterion_operator_backends},
    {"exact Euler expansions match the 256-bit product oracle within 1e-50", 0,
     criterion_euler_oracle},
    {"two full CLI runs exit 0 with byte-identical reports", 120,
     criterion_cli_determinism},
};

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_qac_path = argv[1];
    int failures = 0;
    int number = 0;
    for (const Criterion& criterion : kCriteria) {
        ++number;
        std::string note;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = criterion.body(note);
        } catch (const std::exception& e) {
            ok = false;
            note = e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (ok && criterion.budget_seconds > 0 && seconds > criterion.budget_seconds) {
            ok = false;
            note = "exceeded the " +
                   std::to_string(static_cast<int>(criterion.budget_seconds)) +
                   " s budget";
        }
        std::printf("%s  %2d  %s (%.2f s)\n", ok ? "PASS" : "FAIL", number,
                    criterion.what, seconds);
        if (!ok) {
            std::printf("          -> %s\n", note.c_str());
            ++failures;
        }
    }
    std::printf("acceptance: %d of %d criteria passed\n",
                static_cast<int>(std::size(kCriteria)) - failures,
                static_cast<int>(std::size(kCriteria)));
    return failures == 0 ? 0 : 1;
}

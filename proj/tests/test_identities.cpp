#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "qac/errors.hpp"
#include "qac/identities.hpp"
#include "qac/report.hpp"

using namespace qac;

namespace {

const QContext kNumeric = QContext::defaults(Mode::Numeric);

const IdentityCheck& check_by_id(const std::string& id) {
    for (const auto& check : catalog())
        if (check.id == id) return check;
    REQUIRE(false);
    return catalog().front();
}

// Restores the deliberate right-hand-side perturbation switch on scope exit.
struct NudgeGuard {
    NudgeGuard() { detail::nudge_rhs() = true; }
    ~NudgeGuard() { detail::nudge_rhs() = false; }
};

}  // namespace

TEST_CASE("catalog is sorted, unique and fully titled") {
    const auto& checks = catalog();
    CHECK(checks.size() == 38);
    std::set<std::string> ids;
    for (const auto& check : checks) {
        CAPTURE(check.id);
        CHECK(!check.id.empty());
        CHECK(!check.title.empty());
        CHECK(ids.insert(check.id).second);
        CHECK(!check.grid.empty());
    }
    CHECK(std::is_sorted(checks.begin(), checks.end(),
                         [](const IdentityCheck& a, const IdentityCheck& b) {
                             return a.id < b.id;
                         }));
}

TEST_CASE("every numeric check declares at least one constraint") {
    for (const auto& check : catalog()) {
        CAPTURE(check.id);
        if (check.kind == CheckKind::NumericPoint) CHECK(!check.constraints.empty());
        if (check.kind == CheckKind::NumericPoint || check.kind == CheckKind::ExactFinite) {
            CHECK(check.lhs_value);
            CHECK(check.rhs_value);
        } else {
            CHECK(check.lhs_series);
            CHECK(check.rhs_series);
        }
    }
}

TEST_CASE("catalog_matching understands globs and the all alias") {
    CHECK(catalog_matching("all").size() == 38);
    CHECK(catalog_matching("*").size() == 38);
    CHECK(catalog_matching("").size() == 38);
    CHECK(catalog_matching("no-such-check").empty());

    const auto gf = catalog_matching("GF-*");
    REQUIRE(gf.size() == 3);
    CHECK(gf[0]->id == "GF-H");
    CHECK(gf[1]->id == "GF-P");
    CHECK(gf[2]->id == "GF-U");

    CHECK(catalog_matching("MEHLER-?ERM").size() == 1);
    CHECK(catalog_matching("PROD-*").size() == 5);
}

TEST_CASE("sampling is deterministic in the seed and check id") {
    const auto& check = check_by_id("ROGERS-2");
    const auto a = sample_points(check, 4, 42, kNumeric);
    const auto b = sample_points(check, 4, 42, kNumeric);
    REQUIRE(a.size() == 4);
    REQUIRE(b.size() == 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto ea = a[i].entries(), eb = b[i].entries();
        REQUIRE(ea.size() == eb.size());
        for (std::size_t k = 0; k < ea.size(); ++k) {
            CHECK(ea[k].first == eb[k].first);
            CHECK(ea[k].second.rat() == eb[k].second.rat());
        }
    }

    // A different seed moves at least one sampled value.
    const auto c = sample_points(check, 4, 43, kNumeric);
    bool any_difference = false;
    for (std::size_t i = 0; i < a.size() && !any_difference; ++i) {
        const auto ea = a[i].entries(), ec = c[i].entries();
        for (std::size_t k = 0; k < ea.size(); ++k)
            if (ea[k].second.rat() != ec[k].second.rat()) any_difference = true;
    }
    CHECK(any_difference);
}

TEST_CASE("sampled points satisfy the declared constraints") {
    for (const auto& check : catalog()) {
        CAPTURE(check.id);
        const auto points = sample_points(check, 3, 7, kNumeric);
        REQUIRE(points.size() == 3);
        for (const auto& p : points)
            for (const auto& constraint : check.constraints) CHECK(constraint.holds(p, kNumeric));
    }
}

TEST_CASE("terminating-parameter checks sweep the whole index window") {
    for (const char* id : {"MEHLER-TERM", "MEHLER-u", "TRANS-32"}) {
        CAPTURE(id);
        const auto points = sample_points(check_by_id(id), 4, 42, kNumeric);
        std::set<long> seen;
        for (const auto& p : points) seen.insert(p.rat("r").get_num().get_si());
        CHECK(seen == std::set<long>{0, 1, 2, 3});
    }
}

TEST_CASE("a constraint violation is reported as skipped, not as failure") {
    const auto& check = check_by_id("REL-u");  // requires y != 0
    ParamPoint bad;
    bad.set("x", Scalar(Rat(3, 4)));
    bad.set("y", Scalar(Rat(0)));
    bad.set("a", Scalar(Rat(5, 7)));
    const auto report = run_check(check, {bad}, kNumeric);
    CHECK(report.status == CheckStatus::Skipped);
    CHECK(!report.diagnostic.empty());
}

TEST_CASE("full suite passes at the default configuration") {
    const auto reports = run_suite(catalog_matching("all"), 3, 42, 4, kNumeric);
    REQUIRE(reports.size() == 38);
    for (const auto& r : reports) {
        CAPTURE(r.id);
        CAPTURE(r.diagnostic);
        CHECK(r.status == CheckStatus::Pass);
        if (!r.max_deviation.exact()) {
            // Numeric deviations must clear the tolerance with margin.
            CHECK(r.max_deviation.real().cmp(kNumeric.tolerance()) < 0);
        }
    }
}

TEST_CASE("suite results do not depend on the worker count") {
    const auto checks = catalog_matching("REL-*");
    const auto serial = run_suite(checks, 3, 42, 1, kNumeric);
    const auto parallel = run_suite(checks, 3, 42, 8, kNumeric);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].id == parallel[i].id);
        CHECK(serial[i].status == parallel[i].status);
        CHECK(serial[i].max_deviation.str() == parallel[i].max_deviation.str());
    }
}

TEST_CASE("independence audit: a perturbed right-hand side breaks every check") {
    NudgeGuard guard;
    const auto reports = run_suite(catalog_matching("all"), 2, 42, 4, kNumeric);
    REQUIRE(reports.size() == 38);
    for (const auto& r : reports) {
        CAPTURE(r.id);
        CHECK(r.status == CheckStatus::Fail);
    }
}

TEST_CASE("report renderers agree on totals and stay deterministic") {
    RunConfig config;
    config.suite = "GF-*";
    config.no_timing = true;
    const auto checks = catalog_matching(config.suite);
    const auto reports = run_suite(checks, config.points, config.seed, 2,
                                   make_context(config));

    const std::string json_a = render_json(config, reports);
    const std::string json_b = render_json(config, reports);
    CHECK(json_a == json_b);
    CHECK(json_a.find("\"passed\": 3") != std::string::npos);
    CHECK(json_a.find("\"elapsed_ms\": 0") != std::string::npos);

    const std::string csv = render_csv(config, reports);
    CHECK(csv.rfind("id,status,max_deviation,elapsed_ms\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    const std::string text = render_text(config, reports);
    CHECK(text.find("3 passed, 0 failed, 0 skipped") != std::string::npos);
}

TEST_CASE("config parsing: rationals, files and validation") {
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("-7") == Rat(-7));
    CHECK(parse_rational("0.25") == Rat(1, 4));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1e-3"), ParseError);

    RunConfig config;
    config.q = "5/3";
    CHECK_THROWS_AS(make_context(config), ConfigError);
    config.q = "2/5";
    config.order = 6;
    const QContext ctx = make_context(config);
    CHECK(ctx.q() == Rat(2, 5));
    CHECK(ctx.truncation_order() == 6);
}

// Command-line harness: batch verification runs over the identity catalog,
// ad-hoc evaluation of the polynomial families and the phi series, and a
// coefficient-table printer for Euler-product generating functions.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qac/errors.hpp"
#include "qac/identities.hpp"
#include "qac/polynomials.hpp"
#include "qac/qkernel.hpp"
#include "qac/report.hpp"
#include "qac/series.hpp"

namespace {

using namespace qac;

// key=value pairs as exact rationals.
ParamPoint parse_params(const std::vector<std::string>& args) {
    ParamPoint p;
    for (const auto& arg : args) {
        const auto eq = arg.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ParseError("expected key=value, got '" + arg + "'");
        p.set(arg.substr(0, eq), Scalar(parse_rational(arg.substr(eq + 1))));
    }
    return p;
}

std::vector<Rat> parse_rational_list(const std::string& text) {
    std::vector<Rat> values;
    std::string::size_type start = 0;
    if (text.empty()) return values;
    while (true) {
        const auto comma = text.find(',', start);
        values.push_back(parse_rational(text.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return values;
}

Scalar to_mode(const Rat& value, const QContext& ctx) {
    if (ctx.mode() == Mode::Exact) return Scalar(value);
    return Scalar(Real(value, ctx.precision_bits()));
}

int cmd_run(const RunConfig& config) {
    const auto checks = catalog_matching(config.suite);
    if (checks.empty())
        throw ConfigError("no checks match suite '" + config.suite + "'");
    const QContext ctx = make_context(config);
    int jobs = config.jobs;
    if (jobs < 1) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    const auto reports = run_suite(checks, config.points, config.seed, jobs, ctx);
    const std::string rendered = render_report(config, reports);
    if (config.report_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(config.report_path, std::ios::binary);
        if (!out) throw ConfigError("cannot write report to '" + config.report_path + "'");
        out << rendered;
    }
    return summarize(reports).failed == 0 ? 0 : 1;
}

int cmd_eval(const RunConfig& config, bool numeric, const std::string& family,
             long n, const std::vector<std::string>& params) {
    if (n < 0) throw ConfigError("index must be >= 0");
    QContext ctx = make_context(config);
    ctx = ctx.with_mode(numeric ? Mode::Numeric : Mode::Exact);

    Scalar result;
    if (family == "phi") {
        // phi takes comma-separated lists, so its arguments are read raw
        // instead of through the rational point parser.
        PhiSpec spec;
        std::string num_text, den_text, z_text;
        bool have_z = false;
        for (const auto& arg : params) {
            const auto eq = arg.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ParseError("expected key=value, got '" + arg + "'");
            const std::string key = arg.substr(0, eq);
            const std::string value = arg.substr(eq + 1);
            if (key == "num") num_text = value;
            else if (key == "den") den_text = value;
            else if (key == "z") { z_text = value; have_z = true; }
            else throw ConfigError("unknown phi parameter '" + key + "'");
        }
        if (!have_z) throw MissingParameter("z");
        for (const Rat& v : parse_rational_list(num_text))
            spec.numerator_params.push_back(to_mode(v, ctx));
        for (const Rat& v : parse_rational_list(den_text))
            spec.denominator_params.push_back(to_mode(v, ctx));
        spec.argument = to_mode(parse_rational(z_text), ctx);
        if (n != static_cast<long>(spec.numerator_params.size()))
            throw ConfigError("phi index must equal the numerator parameter count");
        result = phi_eval(spec, ctx);
    } else {
        const ParamPoint p = parse_params(params);
        if (n == 0) {
            // Every family starts at the constant 1, with no parameters needed.
            result = Scalar(Rat(1));
        } else if (family == "U") {
            result = Scalar(ascu_sum(n, p.rat("x"), p.rat("y"), p.rat("a"), ctx));
        } else if (family == "u") {
            result = Scalar(ascu_u(n, p.rat("x"), p.rat("a"), ctx));
        } else if (family == "P") {
            result = Scalar(cauchy_eval(n, p.rat("x"), p.rat("y"), ctx));
        } else if (family == "g") {
            result = Scalar(rs_g(n, p.rat("a"), ctx));
        } else if (family == "h") {
            result = Scalar(rs_h(n, p.rat("x"), p.rat("y"), ctx));
        } else {
            throw ConfigError("unknown family '" + family +
                              "' (expected U, u, P, g, h or phi)");
        }
    }

    if (ctx.mode() == Mode::Numeric && result.exact())
        result = Scalar(Real(result.rat(), ctx.precision_bits()));
    std::cout << result.str() << "\n";
    return 0;
}

// One token of a product spec: "num:" or "den:" followed by parameter letters
// and the formal variable t, e.g. "num:at" for (a t; q)_inf in t.
SeriesFactorSpec parse_factor(const std::string& token, const ParamPoint& p) {
    const auto colon = token.find(':');
    if (colon == std::string::npos)
        throw ParseError("malformed factor '" + token + "' (expected kind:letters)");
    const std::string kind = token.substr(0, colon);
    const std::string body = token.substr(colon + 1);
    SeriesFactorSpec spec;
    if (kind == "num")
        spec.kind = FactorKind::NumeratorPoch;
    else if (kind == "den")
        spec.kind = FactorKind::DenominatorPoch;
    else
        throw ParseError("unknown factor kind '" + kind + "' (expected num or den)");
    if (body.empty() || body.back() != 't')
        throw ParseError("factor '" + token + "' must end in the variable t");
    spec.variable = "t";
    spec.c = Rat(1);
    for (std::size_t i = 0; i + 1 < body.size(); ++i) {
        const std::string name(1, body[i]);
        if (!p.has(name))
            throw ParseError("factor '" + token + "' references undefined parameter '" +
                             name + "'");
        spec.c *= p.rat(name);
    }
    return spec;
}

int cmd_series(const RunConfig& config, const std::string& spec_text,
               const std::vector<std::string>& params) {
    QContext ctx = make_context(config).with_mode(Mode::Exact);
    const ParamPoint p = parse_params(params);

    std::vector<SeriesFactorSpec> factors;
    std::istringstream tokens(spec_text);
    std::string token;
    while (tokens >> token) factors.push_back(parse_factor(token, p));

    const TruncatedSeries f =
        factors.empty() ? TruncatedSeries::constant(Rat(1), {"t"}, ctx.truncation_order())
                        : assemble_product(factors, ctx);
    const int last = factors.empty() ? 0 : ctx.truncation_order();
    for (int e = 0; e <= last; ++e)
        std::cout << e << ": " << coefficient(f, {e}).get_str() << "\n";
    return 0;
}

int cmd_list() {
    for (const auto& check : catalog()) {
        std::cout << check.id;
        for (std::size_t i = check.id.size(); i < 13; ++i) std::cout << ' ';
        std::cout << check.title << "\n";
    }
    return 0;
}

void add_common_flags(CLI::App* sub, RunConfig& config, std::string& config_path) {
    sub->add_option("--q", config.q, "base q as a rational p/r");
    sub->add_option("--order", config.order, "formal-series truncation order");
    sub->add_option("--precision-bits", config.precision_bits, "float precision in bits");
    sub->add_option("--tolerance", config.tolerance, "numeric comparison tolerance");
    sub->add_option("--seed", config.seed, "sampling seed");
    sub->add_option("--points", config.points, "sample points per check");
    sub->add_option("--jobs", config.jobs, "worker threads (0 = all processors)");
    sub->add_option("--config", config_path, "JSON config file (already applied)");
}

int dispatch(int argc, char** argv) {
    RunConfig config;
    std::string config_path;

    // Defaults < QAC_CONFIG < --config file < explicit flags.
    if (const char* env = std::getenv("QAC_CONFIG"); env != nullptr && *env != '\0')
        apply_config_file(config, env);
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc)
            apply_config_file(config, argv[i + 1]);
        else if (arg.rfind("--config=", 0) == 0)
            apply_config_file(config, arg.substr(9));
    }

    CLI::App app{"verification harness for a q-polynomial identity catalog"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run identity checks and write a report");
    add_common_flags(run, config, config_path);
    run->add_option("--suite", config.suite, "id glob selecting checks");
    run->add_option("--report", config.report_path, "report output path (default stdout)");
    run->add_option("--format", config.format, "report format: json, csv or text");
    run->add_flag("--no-timing", config.no_timing, "zero out timings for reproducible output");

    std::string family;
    long index = 0;
    std::vector<std::string> params;
    bool numeric = false;
    auto* eval = app.add_subcommand("eval", "evaluate a family member at a point");
    add_common_flags(eval, config, config_path);
    eval->add_option("family", family, "U, u, P, g, h or phi")->required();
    eval->add_option("n", index, "member index (numerator count for phi)")->required();
    eval->add_option("params", params, "key=value rational parameters");
    eval->add_flag("--numeric", numeric, "evaluate with the float backend");

    std::string spec_text;
    std::vector<std::string> series_params;
    auto* series = app.add_subcommand("series", "print generating-function coefficients");
    add_common_flags(series, config, config_path);
    series->add_option("spec", spec_text, "factors, e.g. \"num:at num:yt den:xt\"")
        ->required();
    series->add_option("params", series_params, "key=value rational parameters");

    auto* list = app.add_subcommand("list", "list the identity catalog");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (run->parsed()) return cmd_run(config);
    if (eval->parsed()) return cmd_eval(config, numeric, family, index, params);
    if (series->parsed()) return cmd_series(config, spec_text, series_params);
    if (list->parsed()) return cmd_list();
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const qac::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

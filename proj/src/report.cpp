#include "qac/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qac/errors.hpp"

namespace qac {

namespace {

const char* status_name(CheckStatus status) {
    switch (status) {
        case CheckStatus::Pass:
            return "pass";
        case CheckStatus::Fail:
            return "fail";
        case CheckStatus::Skipped:
            return "skipped";
    }
    return "unknown";
}

const std::string& title_for(const std::string& id) {
    static const std::string empty;
    for (const auto& check : catalog())
        if (check.id == id) return check.title;
    return empty;
}

}  // namespace

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    std::string work = text;
    const auto dot = work.find('.');
    if (dot != std::string::npos) {
        // Decimal form: shift the point out and divide by the matching power
        // of ten.
        std::string digits = work.substr(0, dot) + work.substr(dot + 1);
        const std::size_t frac_len = work.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw ParseError("malformed rational literal '" + text + "'");
        work = digits + "/1" + std::string(frac_len, '0');
    }
    mpq_class value;
    if (value.set_str(work, 10) != 0 || work.find_first_of("eE ") != std::string::npos)
        throw ParseError("malformed rational literal '" + text + "'");
    if (value.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
    value.canonicalize();
    return value;
}

QContext make_context(const RunConfig& config) {
    const Rat q = parse_rational(config.q);
    return QContext(q, Mode::Numeric, static_cast<mpfr_prec_t>(config.precision_bits),
                    config.order, config.tolerance, 20000);
}

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config file '" + path + "' is not an object");
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "q")
                config.q = value.get<std::string>();
            else if (key == "order")
                config.order = value.get<int>();
            else if (key == "precision_bits")
                config.precision_bits = value.get<long>();
            else if (key == "tolerance")
                config.tolerance = value.get<std::string>();
            else if (key == "seed")
                config.seed = value.get<std::uint64_t>();
            else if (key == "points")
                config.points = value.get<long>();
            else if (key == "suite")
                config.suite = value.get<std::string>();
            else if (key == "report")
                config.report_path = value.get<std::string>();
            else if (key == "format")
                config.format = value.get<std::string>();
            else if (key == "jobs")
                config.jobs = value.get<int>();
            else if (key == "no_timing")
                config.no_timing = value.get<bool>();
            else
                throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
}

RunSummary summarize(const std::vector<CheckReport>& reports) {
    RunSummary totals;
    for (const auto& r : reports) {
        if (r.status == CheckStatus::Pass) ++totals.passed;
        if (r.status == CheckStatus::Fail) ++totals.failed;
        if (r.status == CheckStatus::Skipped) ++totals.skipped;
    }
    return totals;
}

std::string render_json(const RunConfig& config, const std::vector<CheckReport>& reports) {
    // Only settings that influence the verdicts go into the config block, so
    // reports are byte-identical regardless of scheduling options.
    nlohmann::ordered_json doc;
    doc["config"] = {{"q", config.q},
                     {"order", config.order},
                     {"precision_bits", config.precision_bits},
                     {"tolerance", config.tolerance},
                     {"seed", config.seed},
                     {"points", config.points},
                     {"suite", config.suite}};
    doc["checks"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json entry;
        entry["id"] = r.id;
        entry["status"] = status_name(r.status);
        entry["max_deviation"] = r.max_deviation.str();
        entry["params"] = nlohmann::ordered_json::array();
        for (const auto& point : r.params_used) {
            nlohmann::ordered_json values;
            for (const auto& [name, value] : point.entries()) values[name] = value.str();
            entry["params"].push_back(std::move(values));
        }
        entry["elapsed_ms"] = config.no_timing ? 0 : r.elapsed_ms;
        doc["checks"].push_back(std::move(entry));
    }
    const RunSummary totals = summarize(reports);
    doc["totals"] = {{"passed", totals.passed},
                     {"failed", totals.failed},
                     {"skipped", totals.skipped}};
    return doc.dump(2) + "\n";
}

std::string render_csv(const RunConfig& config, const std::vector<CheckReport>& reports) {
    std::ostringstream out;
    out << "id,status,max_deviation,elapsed_ms\n";
    for (const auto& r : reports)
        out << r.id << ',' << status_name(r.status) << ',' << r.max_deviation.str()
            << ',' << (config.no_timing ? 0 : r.elapsed_ms) << '\n';
    return out.str();
}

std::string render_text(const RunConfig& config, const std::vector<CheckReport>& reports) {
    std::ostringstream out;
    for (const auto& r : reports) {
        out << status_name(r.status);
        for (std::size_t i = std::string(status_name(r.status)).size(); i < 8; ++i)
            out << ' ';
        out << r.id;
        for (std::size_t i = r.id.size(); i < 13; ++i) out << ' ';
        out << title_for(r.id) << "  (max deviation " << r.max_deviation.str();
        if (!config.no_timing) out << "; " << r.elapsed_ms << " ms";
        out << ')';
        if (r.status != CheckStatus::Pass && !r.diagnostic.empty())
            out << "\n         " << r.diagnostic;
        out << '\n';
    }
    const RunSummary totals = summarize(reports);
    out << totals.passed << " passed, " << totals.failed << " failed, "
        << totals.skipped << " skipped\n";
    return out.str();
}

std::string render_report(const RunConfig& config, const std::vector<CheckReport>& reports) {
    if (config.format == "json") return render_json(config, reports);
    if (config.format == "csv") return render_csv(config, reports);
    if (config.format == "text") return render_text(config, reports);
    throw ConfigError("unknown report format '" + config.format + "'");
}

}  // namespace qac

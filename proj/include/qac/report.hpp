#ifndef QAC_REPORT_HPP
#define QAC_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qac/identities.hpp"
#include "qac/scalars.hpp"

namespace qac {

// Settings for one verification run.  Values are kept in their textual form
// until a context is built so that a config file, environment defaults and
// command-line flags can be merged without loss.
struct RunConfig {
    std::string q = "1/2";
    int order = 8;
    long precision_bits = 256;
    std::string tolerance = "1e-30";
    std::uint64_t seed = 42;
    long points = 3;
    std::string suite = "all";
    std::string report_path;  // empty: write to stdout
    std::string format = "json";
    int jobs = 0;  // 0: use hardware concurrency
    bool no_timing = false;
};

struct RunSummary {
    long passed = 0;
    long failed = 0;
    long skipped = 0;
};

// Parses "p", "p/r" or a decimal fraction such as "0.25" into an exact
// rational.  Throws ParseError on anything else (including r = 0).
Rat parse_rational(const std::string& text);

// Context for the run; throws ConfigError on out-of-range settings (for
// example when q does not lie in (0,1)).
QContext make_context(const RunConfig& config);

// Merges keys from a JSON config file into `config`.  Recognised keys match
// the long command-line flags: q, order, precision_bits, tolerance, seed,
// points, suite, report, format, jobs, no_timing.  Unknown keys raise
// ConfigError so typos do not silently vanish.
void apply_config_file(RunConfig& config, const std::string& path);

RunSummary summarize(const std::vector<CheckReport>& reports);

// Renderers.  All three list one entry per check in catalog order; timings
// are zeroed when config.no_timing is set so that the output is bitwise
// reproducible across runs.
std::string render_json(const RunConfig& config, const std::vector<CheckReport>& reports);
std::string render_csv(const RunConfig& config, const std::vector<CheckReport>& reports);
std::string render_text(const RunConfig& config, const std::vector<CheckReport>& reports);

// Dispatches on config.format ("json", "csv" or "text"); ConfigError on
// anything else.
std::string render_report(const RunConfig& config, const std::vector<CheckReport>& reports);

}  // namespace qac

#endif  // QAC_REPORT_HPP

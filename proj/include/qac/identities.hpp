#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qac/polynomials.hpp"
#include "qac/scalars.hpp"
#include "qac/series.hpp"

namespace qac {

// How a check is decided.
//
//   Formal       - both sides are built as truncated power series and the
//                  coefficients must agree exactly (rational arithmetic).
//   ExactFinite  - both sides are single rationals and must agree exactly.
//   NumericPoint - both sides are evaluated as high-precision reals at
//                  sampled parameter points and must agree within the
//                  context tolerance (relative deviation).
enum class CheckKind { Formal, ExactFinite, NumericPoint };

enum class CheckStatus { Pass, Fail, Skipped };

// A named admissibility predicate for a parameter point.  Constraints encode
// the convergence window of a check; sampling rejects points that violate
// them, and run_check skips (rather than fails) a check whose supplied points
// fall outside the window.
struct Constraint {
    std::string description;
    std::function<bool(const ParamPoint&, const QContext&)> holds;
};

// One verifiable identity.  The two sides are evaluated by independent code
// paths: lhs_* and rhs_* must not share the nontrivial steps that the
// identity itself asserts.
//
// `grid` lists the tuples of fixed integer indices the check ranges over
// (for example (n), or (n, m)); each grid entry is checked at each sampled
// point.  Checks with no free indices use the singleton empty tuple.
//
// Exactly one of the evaluator pairs is populated, matching `kind`:
// series evaluators for Formal, value evaluators otherwise.
struct IdentityCheck {
    std::string id;
    std::string title;
    CheckKind kind = CheckKind::NumericPoint;
    std::vector<Constraint> constraints;

    // Draws the candidate point for sample index `index`.  The generator is
    // seeded per check; candidates failing a constraint are rejected and
    // redrawn with consecutive indices.
    std::function<ParamPoint(long index, std::mt19937_64& rng, const QContext&)> draw;

    std::vector<std::vector<long>> grid = {{}};

    std::function<TruncatedSeries(const std::vector<long>&, const ParamPoint&,
                                  const QContext&)>
        lhs_series, rhs_series;
    std::function<Scalar(const std::vector<long>&, const ParamPoint&, const QContext&)>
        lhs_value, rhs_value;
};

struct CheckReport {
    std::string id;
    CheckStatus status = CheckStatus::Skipped;
    // Largest deviation seen over all grid entries and points: an exact
    // rational difference for Formal/ExactFinite checks, a relative real
    // deviation for NumericPoint checks.
    Scalar max_deviation{Rat(0)};
    std::vector<ParamPoint> params_used;
    std::int64_t elapsed_ms = 0;
    // Failure detail (exception text or first mismatch); empty on success.
    // Informational only - not part of the serialized report schema.
    std::string diagnostic;
};

// The full catalog, ordered by id.  Built once; subsequent calls return the
// same vector.
const std::vector<IdentityCheck>& catalog();

// Matches '*' (any run) and '?' (any single character); everything else is
// literal.  Used for suite selection.
bool glob_match(const std::string& pattern, const std::string& text);

// Catalog entries whose id matches the pattern, in catalog order.
std::vector<const IdentityCheck*> catalog_matching(const std::string& pattern);

// Draws `count` admissible points for the check, deterministically in
// (check.id, seed, ctx).  Throws SamplingExhausted if 10'000 consecutive
// candidates are rejected.
std::vector<ParamPoint> sample_points(const IdentityCheck& check, long count,
                                      std::uint64_t seed, const QContext& ctx);

// Evaluates the check on the given points.  The context mode is normalized
// per kind (Formal and ExactFinite run exact, NumericPoint runs numeric).
// Evaluator exceptions become Fail reports with the message as diagnostic;
// constraint violations become Skipped reports.
CheckReport run_check(const IdentityCheck& check,
                      const std::vector<ParamPoint>& points, const QContext& ctx);

// Samples and runs each check, distributing across `jobs` worker threads
// (jobs < 1 means one worker).  Reports are returned in input order.
std::vector<CheckReport> run_suite(const std::vector<const IdentityCheck*>& checks,
                                   long points, std::uint64_t seed, int jobs,
                                   const QContext& ctx);

namespace detail {

// Test hook: when set, every right-hand evaluation is perturbed before
// comparison.  A catalog in which some check still passes under the
// perturbation has a degenerate (non-independent) pair of evaluators.
bool& nudge_rhs();

// Catalog section builders (one per translation unit).
void add_formal_checks(std::vector<IdentityCheck>& out);
void add_exact_checks(std::vector<IdentityCheck>& out);
void add_operator_checks(std::vector<IdentityCheck>& out);
void add_kernel_checks(std::vector<IdentityCheck>& out);
void add_product_checks(std::vector<IdentityCheck>& out);

}  // namespace detail

}  // namespace qac

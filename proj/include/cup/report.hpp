#pragma once

// Inequality reports: paired left/right estimates, slack in combined standard
// errors, and a three-valued verdict with multiplier k = 3 (suite-level false
// alarm control across ~10^2 report lines).  JSON serialization and a content
// hash that excludes wall-clock fields live here too.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include <json.hpp>

#include "cup/mc.hpp"

namespace cup::verify {

enum class Verdict { HOLDS, INCONCLUSIVE, VIOLATED };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::HOLDS: return "HOLDS";
        case Verdict::VIOLATED: return "VIOLATED";
        default: return "INCONCLUSIVE";
    }
}

inline constexpr double kVerdictSigmas = 3.0;

/// Slack in combined standard errors is capped at +-1e9 when both sides are
/// exact, so reports stay plain JSON numbers.
inline constexpr double kExactSlackCap = 1e9;

/// A checked inequality "lhs <= rhs".
struct InequalityReport {
    std::string label;
    MCEstimate lhs;
    MCEstimate rhs;
    double ratio = 0;
    double slack_sigmas = 0;
    Verdict verdict = Verdict::INCONCLUSIVE;
    // Closed forms attached when available (Linear f paths); the MC sides are
    // cross-checked against them in the test suites.
    std::optional<double> lhs_closed_form;
    std::optional<double> rhs_closed_form;
};

/// Exact sides compare with a 1e-12 relative slack: the equality cases
/// (half-spaces through the origin) make lhs == rhs up to floating-point
/// assembly order.
inline Verdict decide(const MCEstimate& lhs, const MCEstimate& rhs) {
    const double k = kVerdictSigmas;
    if (lhs.exact && rhs.exact) {
        const double eps = 1e-12 * std::max({1.0, std::fabs(lhs.mean), std::fabs(rhs.mean)});
        return lhs.mean <= rhs.mean + eps ? Verdict::HOLDS : Verdict::VIOLATED;
    }
    if (lhs.mean - k * lhs.std_error > rhs.mean + k * rhs.std_error) return Verdict::VIOLATED;
    if (lhs.mean + k * lhs.std_error <= rhs.mean - k * rhs.std_error) return Verdict::HOLDS;
    return Verdict::INCONCLUSIVE;
}

inline InequalityReport make_report(std::string label, MCEstimate lhs, MCEstimate rhs) {
    InequalityReport r;
    r.label = std::move(label);
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = rhs.mean != 0 ? lhs.mean / rhs.mean
                            : std::numeric_limits<double>::quiet_NaN();
    const double se = std::sqrt(lhs.std_error * lhs.std_error + rhs.std_error * rhs.std_error);
    const double gap = rhs.mean - lhs.mean;
    if (se > 0) {
        r.slack_sigmas = gap / se;
    } else {
        r.slack_sigmas = gap > 0 ? kExactSlackCap : (gap < 0 ? -kExactSlackCap : 0.0);
    }
    r.verdict = decide(lhs, rhs);
    return r;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const MCEstimate& e) {
    return nlohmann::json{{"mean", e.mean},
                          {"se", e.std_error},
                          {"count", e.count},
                          {"exact", e.exact}};
}

inline nlohmann::json to_json(const InequalityReport& r) {
    nlohmann::json j{{"label", r.label},
                     {"lhs", to_json(r.lhs)},
                     {"rhs", to_json(r.rhs)},
                     {"ratio", r.ratio},
                     {"slack_sigmas", r.slack_sigmas},
                     {"verdict", to_string(r.verdict)}};
    if (r.lhs_closed_form) j["lhs_closed_form"] = *r.lhs_closed_form;
    if (r.rhs_closed_form) j["rhs_closed_form"] = *r.rhs_closed_form;
    return j;
}

/// FNV-1a over the canonical dump with wall-clock fields ("timestamp",
/// "runtime_seconds") removed at every nesting level; two runs of the same
/// seeded experiment hash identically.
inline std::uint64_t report_hash(const nlohmann::json& j) {
    nlohmann::json copy = j;
    std::function<void(nlohmann::json&)> strip = [&](nlohmann::json& node) {
        if (node.is_object()) {
            node.erase("timestamp");
            node.erase("runtime_seconds");
            for (auto& [key, value] : node.items()) strip(value);
        } else if (node.is_array()) {
            for (auto& value : node) strip(value);
        }
    };
    strip(copy);
    const std::string s = copy.dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace cup::verify

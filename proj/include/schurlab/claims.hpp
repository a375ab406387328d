#pragma once

// Registry of reproducible constants. Each claim computes a value at a stage
// and is judged by the comparison rule registered with it.

#include "schurlab/numeric.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace schurlab::claims {

enum class Status { Exact, WithinTolerance, Failed };
const char* to_string(Status status);

/// Either an exact rational or a certified bracket [lower, upper], whose
/// endpoints may themselves be exact.
struct Computed {
    std::optional<Rational> exact;
    std::optional<std::pair<Rational, Rational>> exact_bracket;
    double lower = 0.0;
    double upper = 0.0;

    static Computed from_exact(const Rational& value);
    static Computed from_bracket(double lower, double upper);
    static Computed from_exact_bracket(const Rational& lower, const Rational& upper);
    static Computed from_enclosure(const Enclosure& e);
    static Computed from_norm(const NormValue& v);
};

struct Rule {
    enum class Kind {
        Equals,   // computed is exactly the rational target
        Near,     // every point of the bracket within tolerance of target
        Between,  // computed lies in [low, high]; either side optional
    };
    Kind kind = Kind::Equals;
    std::optional<Rational> exact_target;
    double target = 0.0;
    double tolerance = 0.0;
    bool relative = false;
    std::optional<Rational> low;
    std::optional<Rational> high;
};

Status judge(const Rule& rule, const Computed& computed);

struct Paper {
    std::string text;  // the constant as written, e.g. "1/pi"
    double value = 0.0;
};

struct ClaimResult {
    std::string claim;
    Paper paper;
    Computed computed;
    int stage = 0;
    Status status = Status::Failed;
    std::string detail;
};

struct Outcome {
    Computed computed;
    std::string detail;
};

struct ClaimSpec {
    std::string id;
    std::string summary;
    Paper paper;
    int default_stage = 1;
    Rule rule;
    std::function<Outcome(int stage, std::uint64_t seed)> compute;
    /// Set for claims whose target depends on the stage; overrides `rule`.
    std::function<Rule(int stage)> rule_at_stage = {};

    Rule rule_for(int stage) const { return rule_at_stage ? rule_at_stage(stage) : rule; }
};

/// All claims in registration order.
const std::vector<ClaimSpec>& registry();
const ClaimSpec& find(const std::string& id);

/// Runs the requested claims concurrently (all of them if `ids` is empty) and
/// returns results in registration order. A computation that throws yields a
/// failed entry carrying the message.
std::vector<ClaimResult> run(const std::vector<std::string>& ids, std::optional<int> stage, std::uint64_t seed);

}  // namespace schurlab::claims

#pragma once

#include "schurlab/claims.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace schurlab::cli {

using Json = nlohmann::ordered_json;

struct Settings {
    int precision = 12;  // fractional digits in decimal renderings
    std::uint64_t seed = 7;
    bool csv = false;
    bool timing = false;
};

/// A report row. `paper` is absent for rows that only record a computation.
struct Entry {
    std::string claim;
    std::optional<claims::Paper> paper;
    claims::Computed computed;
    int stage = 0;
    claims::Status status = claims::Status::Failed;
};

Entry from_claim(const claims::ClaimResult& r);

/// Exact values become exact rows; brackets become within-tolerance rows.
Entry record(std::string claim, const claims::Computed& computed, int stage);

Json rational_json(const Rational& value, int precision);

class Report {
public:
    explicit Report(Settings settings) : settings_(settings) {}

    void add(Entry entry) { entries_.push_back(std::move(entry)); }
    void detail(const std::string& key, Json value) { details_[key] = std::move(value); }
    void runtime(double seconds) { runtime_ = seconds; }

    bool passed() const;
    Json to_json() const;
    void write(std::ostream& out) const;

private:
    Json computed_json(const claims::Computed& c) const;
    std::string computed_text(const claims::Computed& c) const;

    Settings settings_;
    std::vector<Entry> entries_;
    Json details_ = Json::object();
    std::optional<double> runtime_;
};

}  // namespace schurlab::cli

#include "report.hpp"

namespace schurlab::cli {

Entry from_claim(const claims::ClaimResult& r) {
    return {r.claim, r.paper, r.computed, r.stage, r.status};
}

Entry record(std::string claim, const claims::Computed& computed, int stage) {
    bool exact = computed.exact.has_value();
    return {std::move(claim), std::nullopt, computed, stage,
            exact ? claims::Status::Exact : claims::Status::WithinTolerance};
}

Json rational_json(const Rational& value, int precision) {
    return Json{{"num", value.get_num().get_str()},
                {"den", value.get_den().get_str()},
                {"decimal", to_decimal(value, precision)}};
}

bool Report::passed() const {
    for (const auto& e : entries_)
        if (e.status == claims::Status::Failed) return false;
    return true;
}

Json Report::computed_json(const claims::Computed& c) const {
    if (c.exact) return rational_json(*c.exact, settings_.precision);
    if (c.exact_bracket)
        return Json{{"lower", rational_json(c.exact_bracket->first, settings_.precision)},
                    {"upper", rational_json(c.exact_bracket->second, settings_.precision)}};
    return Json{{"lower", to_decimal(c.lower, settings_.precision)},
                {"upper", to_decimal(c.upper, settings_.precision)}};
}

std::string Report::computed_text(const claims::Computed& c) const {
    if (c.exact) return to_string(*c.exact);
    if (c.exact_bracket) return "[" + to_string(c.exact_bracket->first) + " " + to_string(c.exact_bracket->second) + "]";
    return "[" + to_decimal(c.lower, settings_.precision) + " " + to_decimal(c.upper, settings_.precision) + "]";
}

Json Report::to_json() const {
    Json meta{{"seed", settings_.seed}, {"precision", settings_.precision}};
    if (settings_.timing && runtime_) meta["runtime_seconds"] = *runtime_;
    Json rows = Json::array();
    for (const auto& e : entries_) {
        Json paper = nullptr;
        if (e.paper) paper = Json{{"text", e.paper->text}, {"decimal", to_decimal(e.paper->value, settings_.precision)}};
        rows.push_back(Json{{"claim", e.claim},
                            {"paper", paper},
                            {"computed", computed_json(e.computed)},
                            {"stage", e.stage},
                            {"status", claims::to_string(e.status)}});
    }
    Json out{{"metadata", meta}, {"entries", rows}};
    if (!details_.empty()) out["details"] = details_;
    return out;
}

void Report::write(std::ostream& out) const {
    if (!settings_.csv) {
        out << to_json().dump(2) << '\n';
        return;
    }
    out << "claim,paper,computed,stage,status\n";
    for (const auto& e : entries_)
        out << e.claim << ',' << (e.paper ? e.paper->text : "") << ',' << computed_text(e.computed) << ','
            << e.stage << ',' << claims::to_string(e.status) << '\n';
}

}  // namespace schurlab::cli

#include "inputs.hpp"
#include "report.hpp"

#include "schurlab/claims.hpp"
#include "schurlab/free_space.hpp"
#include "schurlab/seq_quantities.hpp"
#include "schurlab/subset_selection.hpp"
#include "schurlab/sums.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>

using namespace schurlab;
using namespace schurlab::cli;
using claims::Computed;
using claims::Rule;
using claims::Status;

namespace {

constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

Rule equals(const Rational& target) {
    Rule r;
    r.exact_target = target;
    return r;
}

Rule at_most(const Rational& high) {
    Rule r;
    r.kind = Rule::Kind::Between;
    r.high = high;
    return r;
}

Rule at_least(const Rational& low) {
    Rule r;
    r.kind = Rule::Kind::Between;
    r.low = low;
    return r;
}

Rule near(double target, double tolerance, bool relative = false) {
    Rule r;
    r.kind = Rule::Kind::Near;
    r.target = target;
    r.tolerance = tolerance;
    r.relative = relative;
    return r;
}

Entry judged(std::string claim, claims::Paper paper, const Computed& c, int stage, const Rule& rule) {
    return {std::move(claim), std::move(paper), c, stage, claims::judge(rule, c)};
}

// A rational just below 1/pi, so "ratio >= 1/pi" can be judged exactly.
Rational one_over_pi_floor() { return dyadic_approximation(1 / std::numbers::pi - 1e-15, 60); }

Json subset_json(const std::vector<std::size_t>& subset) {
    Json out = Json::array();
    for (auto i : subset) out.push_back(i);
    return out;
}

// --- rudin ------------------------------------------------------------------

struct RudinArgs {
    int witness = 0;
    std::string input;
    int random = 0;
};

void add_selection_rows(Report& report, const std::vector<spaces::ComplexRational>& lambda, int precision) {
    auto hp = subset_selection::halfplane_select(lambda);
    const int m = static_cast<int>(lambda.size());
    report.add(judged("rudin.ratio", claims::Paper{">= 1/pi", 1 / std::numbers::pi}, Computed::from_enclosure(hp.ratio),
                      m, at_least(one_over_pi_floor())));
    Json d{{"subset", subset_json(hp.subset)},
           {"sum", Json{{"re", rational_json(hp.sum.re, precision)}, {"im", rational_json(hp.sum.im, precision)}}},
           {"modulus_squared", rational_json(*hp.modulus.squared, precision)}};
    if (lambda.size() <= 20) {
        auto bf = subset_selection::best_subset_bruteforce(lambda);
        bool agree = *bf.modulus.squared == *hp.modulus.squared;
        // Squared moduli are rational, so agreement is decided exactly.
        report.add(judged("rudin.bruteforce-squared", claims::Paper{"halfplane |sum|^2", to_double(*hp.modulus.squared)},
                          Computed::from_exact(*bf.modulus.squared), m, equals(*hp.modulus.squared)));
        d["bruteforce_subset"] = subset_json(bf.subset);
        d["agrees_with_bruteforce"] = agree;
    }
    report.detail("selection", d);
}

void run_rudin(const RudinArgs& args, const Settings& settings, Report& report) {
    if (args.witness > 0) {
        auto w = subset_selection::roots_witness(args.witness, args.witness <= 8);
        report.add(judged("rudin.witness", claims::Paper{"1/pi", 1 / std::numbers::pi},
                          Computed::from_enclosure(w.ratio_enclosure), args.witness, near(1 / std::numbers::pi, 2e-4)));
        Json stages = Json::array();
        for (int n = 1; n <= args.witness; n *= 2) {
            auto s = subset_selection::roots_witness(n, false);
            stages.push_back(Json{{"n", n}, {"ratio", to_decimal(s.ratio_enclosure.value, settings.precision)}});
            if (n * 2 > args.witness && n != args.witness) {
                auto last = subset_selection::roots_witness(args.witness, false);
                stages.push_back(Json{{"n", args.witness},
                                      {"ratio", to_decimal(last.ratio_enclosure.value, settings.precision)}});
            }
        }
        Json d{{"points", 2 * args.witness}, {"optimal_subset", subset_json(w.optimal_subset)}, {"stages", stages}};
        if (w.half_circle_verified) d["half_circle_verified"] = *w.half_circle_verified;
        report.detail("witness", d);
        return;
    }
    std::vector<spaces::ComplexRational> lambda;
    if (!args.input.empty()) {
        lambda = parse_complex_list(load_json(args.input));
    } else {
        std::mt19937_64 rng(settings.seed);
        for (int j = 0; j < args.random; ++j) {
            auto draw = [&] {
                return Rational(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 4));
            };
            Rational re = draw();
            lambda.push_back({re, draw()});
        }
    }
    if (lambda.empty()) throw std::invalid_argument("no numbers to select from");
    add_selection_rows(report, lambda, settings.precision);
}

// --- constants --------------------------------------------------------------

struct ConstantsArgs {
    std::vector<std::string> ids;
    bool all = false;
    int stage = 0;
    bool list = false;
};

void run_constants(const ConstantsArgs& args, const Settings& settings, Report& report) {
    if (args.list) {
        Json rows = Json::array();
        for (const auto& c : claims::registry())
            rows.push_back(Json{{"claim", c.id}, {"summary", c.summary}, {"paper", c.paper.text},
                                {"default_stage", c.default_stage}});
        report.detail("claims", rows);
        return;
    }
    std::optional<int> stage;
    if (args.stage > 0) stage = args.stage;
    auto results = claims::run(args.all ? std::vector<std::string>{} : args.ids, stage, settings.seed);
    Json notes = Json::object();
    for (const auto& r : results) {
        report.add(from_claim(r));
        notes[r.claim] = r.detail;
    }
    report.detail("notes", notes);
}

// --- quantities -------------------------------------------------------------

struct QuantitiesArgs {
    std::string family = "l1-basis";
    int stage = 4;
};

void run_quantities(const QuantitiesArgs& args, const Settings&, Report& report) {
    using namespace seq_quantities;
    VectorFamily f = generate_family(args.family, args.stage);
    Json notes = Json::object();
    auto attempt = [&](const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::invalid_argument& e) {
            notes[name] = std::string("skipped: ") + e.what();
        }
    };
    auto bound = [](const Bound& lo, const Bound& hi) {
        if (lo.exact && hi.exact && *lo.exact == *hi.exact) return Computed::from_exact(*lo.exact);
        return Computed::from_bracket(lo.value, hi.value);
    };
    if (f.members.size() >= 2) {
        DiameterSeparation ds = diam_and_separation(f);
        report.add(record("quantities.diameter", Computed::from_norm(ds.diameter), args.stage));
        report.add(record("quantities.separation", Computed::from_norm(ds.separation), args.stage));
    }
    std::optional<LowerL1Real> real;
    attempt("quantities.cjr", [&] {
        real = lower_l1_real(f);
        report.add(record("quantities.cjr", bound(real->lower, real->upper), args.stage));
    });
    if (f.model.field() == spaces::Field::Complex) {
        attempt("quantities.cj", [&] {
            LowerL1Complex c = lower_l1_complex(f);
            report.add(record("quantities.cj", bound(c.lower, c.upper), args.stage));
            notes["quantities.cj"] = "witness " + c.witness_kind + ", lower bound " + c.lower_kind;
        });
    }
    attempt("quantities.equivalence", [&] {
        EquivalenceConstant e = l1_equivalence_constant(f);
        Computed c = e.exact ? Computed::from_exact(*e.exact) : Computed::from_bracket(e.lower, e.upper);
        if (!e.exact && std::isinf(e.upper)) c = Computed::from_bracket(e.lower, e.lower);
        report.add(record("quantities.equivalence", c, args.stage));
        if (std::isinf(e.upper)) notes["quantities.equivalence"] = "unbounded: the lower l1-estimate is 0";
    });
    if (real && real->exact && f.members.size() >= 2) {
        RosenthalReport r = rosenthal_stage_check(f);
        if (sgn(r.separation) > 0)
            report.add(judged("quantities.rosenthal", claims::Paper{"2 cjr / separation <= 1", 1.0},
                              Computed::from_exact(2 * r.lower / r.separation), args.stage, at_most(1)));
    }
    report.detail("family", Json{{"tag", args.family}, {"model", f.model.name()}, {"members", f.members.size()}});
    if (!notes.empty()) report.detail("notes", notes);
}

// --- staged -----------------------------------------------------------------

struct StagedArgs {
    std::string tag;
    int max_stage = 0;
    bool list = false;
};

const std::map<std::string, std::pair<std::string, int>>& staged_defaults() {
    static const std::map<std::string, std::pair<std::string, int>> d{
        {"roots-ratio", {"1/pi", 64}},
        {"cantor-dcj-upper", {"2/pi", 16}},
        {"l1-basis-cjr", {"1", 10}},
        {"complexified-equivalence", {"pi/2", 8}},
    };
    return d;
}

void run_staged(const StagedArgs& args, const Settings&, Report& report) {
    using namespace seq_quantities;
    if (args.list || args.tag.empty()) {
        Json rows = Json::array();
        for (const auto& tag : staged_tags())
            rows.push_back(Json{{"tag", tag}, {"target", staged_defaults().at(tag).first},
                                {"default_max_stage", staged_defaults().at(tag).second}});
        report.detail("tags", rows);
        return;
    }
    auto it = staged_defaults().find(args.tag);
    if (it == staged_defaults().end()) throw std::invalid_argument("unknown staged tag '" + args.tag + "'");
    const int max_stage = args.max_stage > 0 ? args.max_stage : it->second.second;
    StagedValues s = staged_report(args.tag, max_stage);
    const bool strict = s.direction == Direction::Decreasing;
    claims::Paper paper{it->second.first, s.target.value_or(0.0)};
    for (std::size_t i = 0; i < s.stages.size(); ++i) {
        const auto& [n, value] = s.stages[i];
        Computed c = s.exact_values ? Computed::from_exact(Rational(value.value)) : Computed::from_enclosure(value);
        Entry e = record("staged." + args.tag, c, n);
        e.paper = paper;
        if (i > 0) {
            StagedValues step = s;
            step.stages = {s.stages[i - 1], s.stages[i]};
            if (!step.monotone(strict)) e.status = Status::Failed;
        }
        if (i + 1 == s.stages.size() && !s.within_target()) e.status = Status::Failed;
        report.add(e);
    }
    report.detail("staged", Json{{"direction", to_string(s.direction)},
                                 {"tolerance", s.tolerance},
                                 {"relative_tolerance", s.relative_tolerance},
                                 {"monotone", s.monotone(strict)},
                                 {"within_target", s.within_target()}});
}

// --- free-norm --------------------------------------------------------------

struct FreeNormArgs {
    std::string space_file;
    std::string example;
    int n = 3;
    std::string vector_file;
    std::vector<std::string> coefficients;  // label=value
    std::string method = "all";
};

void run_free_norm(const FreeNormArgs& args, const Settings& settings, Report& report) {
    free_space::FiniteMetricSpace space;
    if (!args.space_file.empty()) {
        space = parse_space(load_json(args.space_file));
    } else if (args.example == "exlf") {
        space = free_space::exlf_space(args.n);
    } else if (args.example == "exlf3") {
        space = free_space::exlf3_space(args.n);
    } else if (args.example == "mprime") {
        space = free_space::mprime_space(args.n);
    } else {
        throw std::invalid_argument("give --space FILE or --example exlf|exlf3|mprime");
    }
    Json vec = Json::object();
    if (!args.vector_file.empty()) vec = load_json(args.vector_file);
    for (const auto& kv : args.coefficients) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--coeff expects label=value, got '" + kv + "'");
        vec[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    free_space::FreeVector x = parse_free_vector(vec, space);

    const bool formula_available = args.example == "exlf" || args.example == "mprime";
    std::vector<std::string> methods;
    if (args.method == "all") {
        methods = {"primal", "dual"};
        if (formula_available) methods.push_back("formula");
    } else {
        methods = {args.method};
    }
    std::vector<std::pair<std::string, Rational>> values;
    Json detail = Json::object();
    for (const auto& m : methods) {
        if (m == "primal") {
            values.emplace_back(m, free_space::free_norm_primal(x, space));
        } else if (m == "dual") {
            auto [value, f] = free_space::free_norm_dual_with_witness(x, space);
            values.emplace_back(m, value);
            Json w = Json::object();
            for (std::size_t i = 0; i < space.size(); ++i) w[space.labels[i]] = rational_json(f.values[i], settings.precision);
            detail["lipschitz_witness"] = w;
        } else if (m == "formula") {
            if (!formula_available) throw std::invalid_argument("closed formula exists only for --example exlf|mprime");
            values.emplace_back(m, args.example == "exlf" ? free_space::exlf_norm_formula(x)
                                                           : free_space::mprime_norm_formula(x));
        } else {
            throw std::invalid_argument("unknown method '" + m + "'");
        }
    }
    bool agree = true;
    for (const auto& [m, v] : values) agree = agree && v == values.front().second;
    for (const auto& [m, v] : values) {
        Entry e = record("free-norm." + m, Computed::from_exact(v), static_cast<int>(space.size()));
        if (!agree) e.status = Status::Failed;
        report.add(e);
    }
    detail["points"] = space.size();
    detail["base"] = space.labels[space.base];
    detail["methods_agree"] = agree;
    report.detail("free_norm", detail);
}

// --- certify ----------------------------------------------------------------

struct CertifyArgs {
    std::string example;
    int n = 0;
    std::string eps = "1/4";
};

void run_certify(const CertifyArgs& args, const Settings&, Report& report) {
    free_space::Example ex = free_space::parse_example(args.example);
    const int n = args.n > 0 ? args.n : (ex == free_space::Example::ExLF ? 5 : 6);
    const Rational eps = parse_rational(args.eps);
    auto c = free_space::exceptional_pair_certificate(ex, n, eps);
    for (const auto& p : c.pair_certificates)
        report.add(judged("certify.lp1(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")",
                          claims::Paper{"1", 1.0}, Computed::from_exact(p.optimum), n, equals(1)));
    if (ex == free_space::Example::ExLF) {
        const Rational cap = Rational(1) - eps;
        Computed bound = c.confinement_bound ? Computed::from_exact(*c.confinement_bound)
                                             : Computed::from_exact(Rational(0));
        report.add(judged("certify.lp2", claims::Paper{"<= " + to_string(cap), to_double(cap)}, bound, n,
                          at_most(cap)));
    }
    std::size_t feasible = 0;
    for (const auto& cc : c.confinement_certificates) feasible += cc.feasible ? 1 : 0;
    Entry verdict = record("certify.verdict", Computed::from_exact(c.holds ? 1 : 0), n);
    if (!c.holds) verdict.status = Status::Failed;
    report.add(verdict);
    report.detail("certify", Json{{"example", free_space::to_string(ex)},
                                  {"epsilon", to_string(eps)},
                                  {"pair_lps", c.pair_certificates.size()},
                                  {"confinement_lps", c.confinement_certificates.size()},
                                  {"confinement_feasible", feasible},
                                  {"holds", c.holds}});
}

// --- sums -------------------------------------------------------------------

struct SumsArgs {
    int n = 2;
    int k = 1;
    int m = 2;
    std::vector<int> indices;
    std::string phi;
    std::string family = "l1-basis";
    int components = 2;
    int stage = 3;
};

Computed collapse(const std::vector<NormValue>& values) {
    bool exact = true;
    Rational lo, hi;
    double dlo = 0, dhi = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& v = values[i];
        exact = exact && v.exact.has_value();
        if (exact) {
            if (i == 0 || *v.exact < lo) lo = *v.exact;
            if (i == 0 || *v.exact > hi) hi = *v.exact;
        }
        dlo = i == 0 ? v.lower() : std::min(dlo, v.lower());
        dhi = i == 0 ? v.upper() : std::max(dhi, v.upper());
    }
    if (exact && lo == hi) return Computed::from_exact(lo);
    if (exact) return Computed::from_exact_bracket(lo, hi);
    return Computed::from_bracket(dlo, dhi);
}

void run_sums(const SumsArgs& args, const Settings&, Report& report) {
    auto x = sums::build_witness_x(args.n, args.k);
    report.add(judged("sums.x", claims::Paper{"n+1", static_cast<double>(args.n + 1)}, Computed::from_exact(x.norm),
                      args.n, equals(args.n + 1)));
    auto z = sums::build_witness_z(args.n, args.m, args.indices);
    report.add(judged("sums.z", claims::Paper{"1", 1.0}, Computed::from_exact(z.norm), args.n, equals(1)));
    auto t = sums::telescoping_identity(args.n, args.m);
    std::vector<NormValue> tv;
    for (const auto& v : t.values) tv.push_back(NormValue::from_exact(v));
    report.add(judged("sums.telescoping", claims::Paper{"1", 1.0}, collapse(tv), args.n, equals(1)));
    Json idx = Json::array();
    for (int i : z.indices) idx.push_back(i);
    report.detail("witnesses", Json{{"k", args.k}, {"m", args.m}, {"indices", idx}});

    if (args.phi.empty()) return;
    std::vector<seq_quantities::VectorFamily> families;
    for (int c = 0; c < args.components; ++c) families.push_back(seq_quantities::generate_family(args.family, args.stage));
    auto probe = sums::phi_sum_separation_probe(spaces::parse_phi(args.phi), families);
    report.add(record("sums.probe.composite-norm", collapse(probe.composite_norms), args.stage));
    if (probe.composite_distances) {
        report.add(record("sums.probe.separation", Computed::from_norm(probe.composite_distances->separation), args.stage));
        report.add(record("sums.probe.diameter", Computed::from_norm(probe.composite_distances->diameter), args.stage));
    }
    Entry consistent = record("sums.probe.consistent", Computed::from_exact(probe.consistent ? 1 : 0), args.stage);
    if (!probe.consistent) consistent.status = Status::Failed;
    report.add(consistent);
    Json comps = Json::array();
    for (const auto& c : probe.components) {
        Json row{{"model", c.model}};
        if (c.distances) {
            row["separation"] = to_decimal(c.distances->separation.value(), 12);
            row["diameter"] = to_decimal(c.distances->diameter.value(), 12);
        }
        comps.push_back(row);
    }
    report.detail("probe", Json{{"phi", spaces::to_string(probe.phi)}, {"components", comps}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-stage computations for Schur-type constants in Banach spaces"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "flat key = value file; command-line flags take precedence");

    Settings settings;
    app.add_option("--precision", settings.precision, "fractional digits in decimal output")
        ->envname("SCHURLAB_PRECISION")
        ->check(CLI::Range(1, 40));
    app.add_option("--seed", settings.seed, "seed for random instances");
    app.add_flag("--csv", settings.csv, "CSV instead of JSON");
    app.add_flag("--timing", settings.timing, "add runtime to the metadata (output is then not reproducible)");

    std::function<void(Report&)> action;

    RudinArgs rudin;
    auto* rudin_cmd = app.add_subcommand("rudin", "best subset sums of complex numbers");
    auto* w = rudin_cmd->add_option("--witness", rudin.witness, "roots-of-unity witness with 2n points")
                  ->check(CLI::PositiveNumber);
    auto* in = rudin_cmd->add_option("--input", rudin.input, "JSON array of complex rationals")->check(CLI::ExistingFile);
    auto* rnd = rudin_cmd->add_option("--random", rudin.random, "m seeded random numbers")->check(CLI::Range(1, 20));
    w->excludes(in)->excludes(rnd);
    in->excludes(rnd);
    rudin_cmd->callback([&] {
        if (rudin.witness == 0 && rudin.input.empty() && rudin.random == 0)
            throw CLI::ValidationError("rudin", "one of --witness, --input, --random is required");
        action = [&](Report& r) { run_rudin(rudin, settings, r); };
    });

    ConstantsArgs constants;
    auto* constants_cmd = app.add_subcommand("constants", "run registered claims");
    constants_cmd->add_option("ids", constants.ids, "claim ids (default: all)");
    constants_cmd->add_flag("--all", constants.all, "run every claim");
    constants_cmd->add_option("--stage", constants.stage, "override the stage of every selected claim")
        ->check(CLI::PositiveNumber);
    constants_cmd->add_flag("--list", constants.list, "list claim ids");
    constants_cmd->callback([&] {
        if (constants.ids.empty()) constants.all = true;
        action = [&](Report& r) { run_constants(constants, settings, r); };
    });

    QuantitiesArgs quantities;
    auto* quantities_cmd = app.add_subcommand("quantities", "finite-stage quantities of a registered family");
    quantities_cmd->add_option("--family", quantities.family, "family tag")
        ->check(CLI::IsMember(seq_quantities::family_tags()));
    quantities_cmd->add_option("--stage", quantities.stage, "member count")->check(CLI::PositiveNumber);
    quantities_cmd->callback([&] { action = [&](Report& r) { run_quantities(quantities, settings, r); }; });

    StagedArgs staged;
    auto* staged_cmd = app.add_subcommand("staged", "staged values against their limits");
    staged_cmd->add_option("tag", staged.tag, "staged tag");
    staged_cmd->add_option("--max-stage", staged.max_stage, "last stage")->check(CLI::PositiveNumber);
    staged_cmd->add_flag("--list", staged.list, "list staged tags");
    staged_cmd->callback([&] { action = [&](Report& r) { run_staged(staged, settings, r); }; });

    FreeNormArgs free_norm;
    auto* fn_cmd = app.add_subcommand("free-norm", "transportation norm in a finite free space");
    auto* sp = fn_cmd->add_option("--space", free_norm.space_file, "metric space JSON")->check(CLI::ExistingFile);
    auto* ex = fn_cmd->add_option("--example", free_norm.example, "registered space")
                   ->check(CLI::IsMember({"exlf", "exlf3", "mprime"}));
    sp->excludes(ex);
    fn_cmd->add_option("--n", free_norm.n, "truncation")->check(CLI::PositiveNumber);
    fn_cmd->add_option("--vector", free_norm.vector_file, "label -> rational JSON map")->check(CLI::ExistingFile);
    fn_cmd->add_option("--coeff", free_norm.coefficients, "label=value, repeatable");
    fn_cmd->add_option("--method", free_norm.method, "primal|dual|formula|all")
        ->check(CLI::IsMember({"primal", "dual", "formula", "all"}));
    fn_cmd->callback([&] { action = [&](Report& r) { run_free_norm(free_norm, settings, r); }; });

    CertifyArgs certify;
    auto* cert_cmd = app.add_subcommand("certify", "LP certificates for the exceptional pairs");
    cert_cmd->add_option("example", certify.example, "exlf or exlf3")->required()->check(CLI::IsMember({"exlf", "exlf3"}));
    cert_cmd->add_option("--n", certify.n, "truncation (default 5 for exlf, 6 for exlf3)")->check(CLI::PositiveNumber);
    cert_cmd->add_option("--eps", certify.eps, "epsilon as a rational or decimal");
    cert_cmd->callback([&] { action = [&](Report& r) { run_certify(certify, settings, r); }; });

    SumsArgs sums_args;
    auto* sums_cmd = app.add_subcommand("sums", "chain-norm witnesses and Phi-sum probes");
    sums_cmd->add_option("--n", sums_args.n, "number of chain blocks")->check(CLI::PositiveNumber);
    sums_cmd->add_option("--k", sums_args.k, "basis index of x^k")->check(CLI::PositiveNumber);
    sums_cmd->add_option("--m", sums_args.m, "size of z^m")->check(CLI::PositiveNumber);
    sums_cmd->add_option("--indices", sums_args.indices, "indices of z^m (default 1..m)");
    sums_cmd->add_option("--phi", sums_args.phi, "max, sum or l<p>; enables the Phi-sum probe");
    sums_cmd->add_option("--family", sums_args.family, "component family tag")
        ->check(CLI::IsMember(seq_quantities::family_tags()));
    sums_cmd->add_option("--components", sums_args.components, "number of components")->check(CLI::PositiveNumber);
    sums_cmd->add_option("--stage", sums_args.stage, "members per component family")->check(CLI::PositiveNumber);
    sums_cmd->callback([&] { action = [&](Report& r) { run_sums(sums_args, settings, r); }; });

    CLI11_PARSE(app, argc, argv);

    Report report(settings);
    const auto start = std::chrono::steady_clock::now();
    try {
        action(report);
    } catch (const free_space::MetricError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failed;
    }
    report.runtime(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    report.write(std::cout);
    return report.passed() ? 0 : exit_failed;
}

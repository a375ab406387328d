#include "schurlab/claims.hpp"

#include "schurlab/free_space.hpp"
#include "schurlab/seq_quantities.hpp"
#include "schurlab/spaces.hpp"
#include "schurlab/subset_selection.hpp"
#include "schurlab/sums.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <stdexcept>

namespace schurlab::claims {

using free_space::Example;
using free_space::FreeVector;
using spaces::ComplexRational;

const char* to_string(Status status) {
    switch (status) {
        case Status::Exact: return "exact";
        case Status::WithinTolerance: return "within-tolerance";
        case Status::Failed: return "failed";
    }
    return "failed";
}

Computed Computed::from_exact(const Rational& value) {
    Computed c;
    c.exact = value;
    Enclosure e = enclose(value);
    c.lower = e.lower();
    c.upper = e.upper();
    return c;
}

Computed Computed::from_bracket(double lower, double upper) {
    if (lower > upper) throw std::logic_error("inverted bracket");
    Computed c;
    c.lower = lower;
    c.upper = upper;
    return c;
}

Computed Computed::from_exact_bracket(const Rational& lower, const Rational& upper) {
    if (lower > upper) throw std::logic_error("inverted bracket");
    Computed c;
    c.exact_bracket = {lower, upper};
    c.lower = enclose(lower).lower();
    c.upper = enclose(upper).upper();
    return c;
}

Computed Computed::from_enclosure(const Enclosure& e) { return from_bracket(e.lower(), e.upper()); }

Computed Computed::from_norm(const NormValue& v) {
    return v.exact ? from_exact(*v.exact) : from_enclosure(v.approx);
}

Status judge(const Rule& rule, const Computed& c) {
    switch (rule.kind) {
        case Rule::Kind::Equals:
            return c.exact && rule.exact_target && *c.exact == *rule.exact_target ? Status::Exact : Status::Failed;
        case Rule::Kind::Near: {
            const double limit = rule.relative ? rule.tolerance * std::abs(rule.target) : rule.tolerance;
            const double err = std::max(std::abs(c.upper - rule.target), std::abs(c.lower - rule.target));
            return err <= limit ? Status::WithinTolerance : Status::Failed;
        }
        case Rule::Kind::Between: {
            if (c.exact) {
                bool ok = (!rule.low || *rule.low <= *c.exact) && (!rule.high || *c.exact <= *rule.high);
                return ok ? Status::Exact : Status::Failed;
            }
            if (c.exact_bracket) {
                const auto& [lo, hi] = *c.exact_bracket;
                bool ok = (!rule.low || *rule.low <= lo) && (!rule.high || hi <= *rule.high);
                return ok ? Status::Exact : Status::Failed;
            }
            bool ok = (!rule.low || Rational(c.lower) >= *rule.low) && (!rule.high || Rational(c.upper) <= *rule.high);
            return ok ? Status::WithinTolerance : Status::Failed;
        }
    }
    return Status::Failed;
}

namespace {

Rule equals(const Rational& target) {
    Rule r;
    r.kind = Rule::Kind::Equals;
    r.exact_target = target;
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

Rule at_most(const Rational& high) {
    Rule r;
    r.kind = Rule::Kind::Between;
    r.high = high;
    return r;
}

// Exact when every value agrees, otherwise the bracket [min, max].
Computed collapse(const std::vector<Rational>& values) {
    if (values.empty()) throw std::logic_error("no values to report");
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*lo == *hi) return Computed::from_exact(*lo);
    return Computed::from_exact_bracket(*lo, *hi);
}

std::string str(const Rational& v) { return v.get_str(); }

Outcome rudin_ratio(int n, std::uint64_t) {
    auto w = subset_selection::roots_witness(n, false);
    return {Computed::from_enclosure(w.ratio_enclosure), "roots of unity, 2n = " + std::to_string(2 * n) + " points"};
}

Outcome rudin_four_roots(int, std::uint64_t) {
    std::vector<ComplexRational> four{ComplexRational(Rational(1)), ComplexRational(Rational(0), Rational(1)),
                                      ComplexRational(Rational(-1)), ComplexRational(Rational(0), Rational(-1))};
    auto s = subset_selection::halfplane_select(four);
    return {Computed::from_enclosure(s.ratio), "halfplane subset size " + std::to_string(s.subset.size())};
}

Outcome cantor_dcj(int n, std::uint64_t) {
    auto alpha = seq_quantities::roots_coefficients(n);
    return {Computed::from_norm(spaces::sign_sup_norm(alpha)), "sign-sup norm of the roots combination"};
}

Outcome l1_cjr(int n, std::uint64_t) {
    std::vector<Rational> values;
    for (int k = 1; k <= n; ++k)
        values.push_back(*seq_quantities::lower_l1_real(seq_quantities::generate_family("l1-basis", k)).exact);
    return {collapse(values), "stages 1.." + std::to_string(n)};
}

seq_quantities::VectorFamily complex_pair() {
    return {spaces::L1Complex{1},
            {spaces::Vector{ComplexRational(Rational(1))}, spaces::Vector{ComplexRational(Rational(0), Rational(1))}},
            std::nullopt,
            2};
}

Outcome complex_pair_cjr(int, std::uint64_t) {
    auto r = seq_quantities::lower_l1_real(complex_pair());
    return {Computed::from_bracket(r.lower.value, r.upper.value),
            "cutting planes, " + std::to_string(r.lp_solves) + " LP solves"};
}

Outcome complex_pair_cj(int, std::uint64_t) {
    auto c = seq_quantities::lower_l1_complex(complex_pair());
    if (!c.upper.exact) return {Computed::from_bracket(c.lower.value, c.upper.value), "witness " + c.witness_kind};
    return {Computed::from_exact(*c.upper.exact), "witness " + c.witness_kind};
}

Outcome complexified_equivalence(int n, std::uint64_t) {
    auto e = seq_quantities::l1_equivalence_constant(seq_quantities::generate_family("complexified-basis", n));
    return {Computed::from_bracket(e.lower, e.upper), "equivalence constant bracket"};
}

FreeVector pair_vector(const free_space::FiniteMetricSpace& space, std::size_t plus, std::size_t minus) {
    FreeVector x{std::vector<Rational>(space.size())};
    x.coefficients[plus] = 1;
    x.coefficients[minus] = -1;
    return x;
}

Outcome exlf_pair_norm(int n, std::uint64_t) {
    auto space = free_space::exlf_space(n);
    std::vector<Rational> values;
    for (int k = 1; k <= n; ++k)
        values.push_back(free_space::free_norm_dual(
            pair_vector(space, free_space::exlf_index(k), free_space::exlf_index(-k)), space));
    return {collapse(values), "||delta(k) - delta(-k)||, k = 1.." + std::to_string(n)};
}

Outcome exlf3_norm(int n, std::uint64_t) {
    auto w = free_space::schur_witness_report(Example::ExLF3, n);
    return {collapse(w.member_norms), "members delta(k) - delta(-k)"};
}

Outcome exlf3_separation(int n, std::uint64_t) {
    auto w = free_space::schur_witness_report(Example::ExLF3, n);
    return {collapse({w.min_pairwise, w.max_pairwise}), "min and max pairwise distance"};
}

Outcome exlf3_lp1(int n, std::uint64_t) {
    auto c = free_space::exceptional_pair_certificate(Example::ExLF3, n);
    std::vector<Rational> values;
    for (const auto& p : c.pair_certificates) values.push_back(p.optimum);
    return {collapse(values), std::to_string(values.size()) + " pair LPs"};
}

Outcome exlf_lp2(int n, std::uint64_t) {
    auto c = free_space::exceptional_pair_certificate(Example::ExLF, n, Rational(1, 4));
    if (!c.confinement_bound) throw std::runtime_error("no feasible confinement LP");
    return {Computed::from_exact(*c.confinement_bound),
            std::to_string(c.confinement_certificates.size()) + " confinement LPs, eps = 1/4"};
}

// A uniformly separated space with distances in [1, 2], both ends attained;
// every such matrix is a metric because 2 <= 1 + 1.
free_space::FiniteMetricSpace separated_space(int points, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    free_space::FiniteMetricSpace s;
    for (int i = 0; i < points; ++i) s.labels.push_back("p" + std::to_string(i));
    s.distance.assign(static_cast<std::size_t>(points), std::vector<Rational>(static_cast<std::size_t>(points)));
    for (int i = 0; i < points; ++i)
        for (int j = i + 1; j < points; ++j) {
            Rational d = Rational(1) + Rational(static_cast<long>(rng() % 9), 8);
            s.distance[i][j] = s.distance[j][i] = d;
        }
    s.distance[0][1] = s.distance[1][0] = 1;
    s.distance[0][2] = s.distance[2][0] = 2;
    s.validate();
    return s;
}

Outcome sandwich(int points, std::uint64_t seed) {
    if (points < 3) throw std::invalid_argument("sandwich instance needs at least 3 points");
    auto space = separated_space(points, seed);
    std::mt19937_64 rng(seed + 1);
    std::vector<std::vector<Rational>> samples;
    for (int k = 0; k < 20; ++k) {
        std::vector<Rational> mu(space.size());
        for (auto& c : mu) c = Rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
        samples.push_back(mu);
    }
    auto report = free_space::separated_sandwich_check(space, samples);
    std::vector<Rational> ratios;
    for (const auto& s : report.samples)
        if (sgn(s.l1_mass) != 0) ratios.push_back(s.norm / s.l1_mass);
    Rational lo = *std::min_element(ratios.begin(), ratios.end());
    Rational hi = *std::max_element(ratios.begin(), ratios.end());
    if (report.a != 1 || report.b != 2) throw std::logic_error("separated instance lost its a = 1, b = 2 shape");
    return {collapse({lo, hi}), "a = 1, b = 2, ratio in [" + str(lo) + ", " + str(hi) + "], star extension"};
}

Outcome chain_x(int n, std::uint64_t) {
    std::vector<Rational> values;
    for (int k = 1; k <= 100; ++k) values.push_back(sums::build_witness_x(n, k).norm);
    return {collapse(values), "||x^k|| over k = 1..100"};
}

Outcome chain_z(int n, std::uint64_t) {
    std::vector<Rational> values;
    for (int m = 1; m <= 64; ++m) values.push_back(sums::build_witness_z(n, m).norm);
    return {collapse(values), "||z^m|| over m = 1..64"};
}

Outcome telescoping(int n, std::uint64_t) {
    std::vector<Rational> values;
    for (int m = 1; m <= 128; ++m)
        for (const auto& v : sums::telescoping_identity(n, m).values) values.push_back(v);
    return {collapse(values), "k = 1.." + std::to_string(n) + ", m = 1..128"};
}

Outcome rosenthal(int n, std::uint64_t) {
    auto r = seq_quantities::rosenthal_stage_check(seq_quantities::generate_family("exlf3-alternating", n));
    return {Computed::from_exact(2 * r.lower / r.separation),
            "2 cjr = " + str(2 * r.lower) + ", separation = " + str(r.separation)};
}

std::vector<ClaimSpec> build_registry() {
    const double pi = std::numbers::pi;
    std::vector<ClaimSpec> r;
    r.push_back({"rudin.ratio", "best half-plane ratio of the 2n-th roots of unity", {"1/pi", 1 / pi}, 64,
                 near(1 / pi, 2e-4), rudin_ratio});
    r.push_back({"rudin.four-roots", "half-plane ratio of {1, i, -1, -i}", {"sqrt(2)/4", std::numbers::sqrt2 / 4}, 2,
                 near(std::numbers::sqrt2 / 4, 1e-12), rudin_four_roots});
    r.push_back({"cantor.dcj", "upper bound for the complex lower estimate of the Cantor projections",
                 {"2/pi", 2 / pi}, 16, near(2 / pi, 0.005, true), cantor_dcj});
    r.push_back({"l1.cjr", "real lower l1-estimate of the l1 basis", {"1", 1.0}, 10, equals(1), l1_cjr});
    r.push_back({"complex-pair.cjr", "real lower l1-estimate of (e1, i e1)", {"1/sqrt(2)", std::numbers::sqrt2 / 2},
                 2, near(std::numbers::sqrt2 / 2, 1e-9), complex_pair_cjr});
    r.push_back({"complex-pair.cj", "complex lower l1-estimate of (e1, i e1)", {"0", 0.0}, 2, equals(0),
                 complex_pair_cj});
    r.push_back({"complexified.equivalence", "l1-equivalence constant of the complexified l1 basis",
                 {"pi/2", pi / 2}, 8, near(pi / 2, 0.02), complexified_equivalence});
    r.push_back({"exlf.pair-norm", "norm of delta(n) - delta(-n) in the first free space", {"2", 2.0}, 5, equals(2),
                 exlf_pair_norm});
    r.push_back({"exlf3.norm", "norm of the members of the second free space", {"3", 3.0}, 6, equals(3),
                 exlf3_norm});
    r.push_back({"exlf3.separation", "pairwise distance of the members of the second free space", {"4", 4.0}, 6,
                 equals(4), exlf3_separation});
    r.push_back({"exlf3.lp1", "pair-of-pairs certificate optimum", {"1", 1.0}, 6, equals(1), exlf3_lp1});
    r.push_back({"exlf.lp2", "confinement certificate off the exceptional pair", {"<= 3/4", 0.75}, 5,
                 at_most(Rational(3, 4)), exlf_lp2});
    {
        Rule rule;
        rule.kind = Rule::Kind::Between;
        rule.low = Rational(1, 2);  // a / 2 with a = 1
        rule.high = Rational(1);    // b / 2 with b = 2
        r.push_back({"free.sandwich", "||mu|| / ||mu||_1 on a separated space with star extension",
                     {"[a/2, b/2]", 0.0}, 8, rule, sandwich});
    }
    r.push_back({"chain.x", "chain norm of x^k", {"n+1", 5.0}, 4, equals(5), chain_x,
                 [](int n) { return equals(n + 1); }});
    r.push_back({"chain.z", "chain norm of z^m", {"1", 1.0}, 4, equals(1), chain_z});
    r.push_back({"chain.telescoping", "telescoping identity values", {"1", 1.0}, 8, equals(1), telescoping});
    r.push_back({"rosenthal.exlf3", "2 cjr / separation for the second free space family", {"<= 1", 1.0}, 4,
                 at_most(1), rosenthal});
    return r;
}

}  // namespace

const std::vector<ClaimSpec>& registry() {
    static const std::vector<ClaimSpec> claims = build_registry();
    return claims;
}

const ClaimSpec& find(const std::string& id) {
    for (const auto& c : registry())
        if (c.id == id) return c;
    throw std::invalid_argument("unknown claim '" + id + "'");
}

std::vector<ClaimResult> run(const std::vector<std::string>& ids, std::optional<int> stage, std::uint64_t seed) {
    std::vector<const ClaimSpec*> selected;
    if (ids.empty()) {
        for (const auto& c : registry()) selected.push_back(&c);
    } else {
        for (const auto& id : ids) selected.push_back(&find(id));
    }
    std::vector<std::future<ClaimResult>> jobs;
    for (const ClaimSpec* spec : selected) {
        const int s = stage.value_or(spec->default_stage);
        jobs.push_back(std::async(std::launch::async, [spec, s, seed] {
            ClaimResult out{spec->id, spec->paper, {}, s, Status::Failed, {}};
            const Rule rule = spec->rule_for(s);
            if (spec->rule_at_stage && rule.exact_target) out.paper.value = to_double(*rule.exact_target);
            try {
                Outcome o = spec->compute(s, seed);
                out.computed = o.computed;
                out.detail = o.detail;
                out.status = judge(rule, o.computed);
            } catch (const std::exception& e) {
                out.detail = std::string("error: ") + e.what();
            }
            return out;
        }));
    }
    std::vector<ClaimResult> results;
    for (auto& j : jobs) results.push_back(j.get());
    return results;
}

}  // namespace schurlab::claims

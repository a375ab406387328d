#include "schurlab/free_space.hpp"

#include "schurlab/optim/linear_program.hpp"
#include "schurlab/optim/min_cost_flow.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <sstream>

namespace schurlab::free_space {

using optim::LinearExpr;
using optim::LpBuilder;
using optim::LpResult;
using optim::LpStatus;
using optim::Sense;
using optim::VariableBounds;

std::optional<std::size_t> FiniteMetricSpace::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    return std::nullopt;
}

Rational FiniteMetricSpace::min_distance() const {
    std::optional<Rational> best;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (!best || distance[i][j] < *best) best = distance[i][j];
    return best.value_or(Rational(0));
}

Rational FiniteMetricSpace::max_distance() const {
    Rational best = 0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (distance[i][j] > best) best = distance[i][j];
    return best;
}

void FiniteMetricSpace::validate() const {
    const std::size_t n = size();
    if (n == 0) throw MetricError("metric space has no points", {});
    if (base >= n) throw MetricError("base index out of range", {base});
    if (distance.size() != n) throw MetricError("distance matrix has wrong number of rows", {});
    for (std::size_t i = 0; i < n; ++i)
        if (distance[i].size() != n) throw MetricError("distance row " + std::to_string(i) + " has wrong length", {i});
    for (std::size_t i = 0; i < n; ++i) {
        if (distance[i][i] != 0) throw MetricError("d(" + labels[i] + "," + labels[i] + ") is not zero", {i, i});
        for (std::size_t j = i + 1; j < n; ++j) {
            if (distance[i][j] != distance[j][i])
                throw MetricError("distance is not symmetric at (" + labels[i] + "," + labels[j] + ")", {i, j});
            if (sgn(distance[i][j]) <= 0)
                throw MetricError("distinct points " + labels[i] + " and " + labels[j] + " are at distance <= 0",
                                  {i, j});
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (distance[i][k] > distance[i][j] + distance[j][k]) {
                    throw MetricError("triangle inequality fails: d(" + labels[i] + "," + labels[k] + ") > d(" +
                                          labels[i] + "," + labels[j] + ") + d(" + labels[j] + "," + labels[k] +
                                          ")",
                                      {i, j, k});
                }
            }
}

FiniteMetricSpace graph_metric(const Graph& graph, std::size_t base) {
    const std::size_t n = graph.labels.size();
    if (n == 0) throw std::invalid_argument("graph has no vertices");
    if (base >= n) throw std::invalid_argument("base vertex out of range");
    std::vector<std::vector<std::size_t>> adjacency(n);
    for (auto [u, v] : graph.edges) {
        if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop at vertex " + graph.labels[u]);
        adjacency[u].push_back(v);
        adjacency[v].push_back(u);
    }
    constexpr std::size_t unseen = std::numeric_limits<std::size_t>::max();
    FiniteMetricSpace space;
    space.labels = graph.labels;
    space.base = base;
    space.distance.assign(n, std::vector<Rational>(n));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> dist(n, unseen);
        std::deque<std::size_t> queue{s};
        dist[s] = 0;
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t v : adjacency[u]) {
                if (dist[v] == unseen) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        for (std::size_t t = 0; t < n; ++t) {
            if (dist[t] == unseen)
                throw std::invalid_argument("graph is disconnected: no path from " + graph.labels[s] + " to " +
                                            graph.labels[t]);
            space.distance[s][t] = Rational(static_cast<unsigned long>(dist[t]));
        }
    }
    return space;
}

namespace {

void check_vector(const FreeVector& mu, const FiniteMetricSpace& space) {
    if (mu.coefficients.size() != space.size())
        throw std::invalid_argument("free vector has " + std::to_string(mu.coefficients.size()) +
                                    " coefficients, space has " + std::to_string(space.size()) + " points");
    if (mu.coefficients[space.base] != 0)
        throw std::invalid_argument("free vector carries mass on the base point");
}

Rational l1_mass(const std::vector<Rational>& c) {
    Rational total = 0;
    for (const Rational& v : c) total += abs(v);
    return total;
}

}  // namespace

Rational lip_constant(const LipFunction& f, const FiniteMetricSpace& space) {
    if (f.values.size() != space.size()) throw std::invalid_argument("function length does not match the space");
    Rational best = 0;
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = i + 1; j < space.size(); ++j) {
            Rational slope = abs(f.values[i] - f.values[j]) / space.d(i, j);
            if (slope > best) best = slope;
        }
    return best;
}

Rational free_norm_primal(const FreeVector& mu, const FiniteMetricSpace& space) {
    check_vector(mu, space);
    optim::FlowNetwork network;
    network.supplies = mu.coefficients;
    Rational total = 0;
    for (const Rational& c : mu.coefficients) total += c;
    network.supplies[space.base] = -total;
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = 0; j < space.size(); ++j)
            if (i != j) network.add_arc(i, j, space.d(i, j));
    return optim::min_cost_flow(network).value;
}

std::pair<Rational, LipFunction> free_norm_dual_with_witness(const FreeVector& mu, const FiniteMetricSpace& space) {
    check_vector(mu, space);
    const std::size_t n = space.size();
    LpBuilder builder(Sense::Maximize);
    // f(base) = 0 is substituted directly: the base has no variable.
    std::vector<std::optional<std::size_t>> var(n);
    for (std::size_t i = 0; i < n; ++i)
        if (i != space.base) var[i] = builder.add_variable(VariableBounds::free());
    auto value_of = [&](std::size_t i) { return var[i] ? LinearExpr::variable(*var[i]) : LinearExpr(); };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            builder.add_abs_le(value_of(i) - value_of(j), LinearExpr(space.d(i, j)));
    LinearExpr objective;
    for (std::size_t i = 0; i < n; ++i)
        if (var[i]) objective += value_of(i) * mu.coefficients[i];
    builder.set_objective(objective);
    LpResult result = builder.solve();
    if (result.status != LpStatus::Optimal) throw std::logic_error("free-norm dual LP is not optimal");
    LipFunction f;
    f.values.assign(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        if (var[i]) f.values[i] = result.solution[*var[i]];
    return {result.value, f};
}

Rational free_norm_dual(const FreeVector& mu, const FiniteMetricSpace& space) {
    return free_norm_dual_with_witness(mu, space).first;
}

// ---------------------------------------------------------------------------

const char* to_string(Example example) {
    return example == Example::ExLF ? "exlf" : "exlf3";
}

Example parse_example(const std::string& name) {
    if (name == "exlf") return Example::ExLF;
    if (name == "exlf3") return Example::ExLF3;
    throw std::invalid_argument("unknown example '" + name + "' (expected exlf or exlf3)");
}

std::size_t exlf_index(int k) {
    if (k == 0) return 0;
    return k > 0 ? static_cast<std::size_t>(2 * k - 1) : static_cast<std::size_t>(-2 * k);
}

std::size_t exlf3_index(int k) {
    if (k == 0) throw std::invalid_argument("0 is not a point of the signed example");
    return exlf_index(k) - 1;
}

int exlf_label(std::size_t index) {
    if (index == 0) return 0;
    int k = static_cast<int>((index + 1) / 2);
    return index % 2 == 1 ? k : -k;
}

int exlf3_label(std::size_t index) {
    return exlf_label(index + 1);
}

namespace {

void require_positive(int n) {
    if (n < 1) throw std::invalid_argument("truncation size must be >= 1");
}

std::vector<int> exlf_points(int n) {
    std::vector<int> pts{0};
    for (int k = 1; k <= n; ++k) {
        pts.push_back(k);
        pts.push_back(-k);
    }
    return pts;
}

std::vector<int> exlf3_points(int n) {
    std::vector<int> pts = exlf_points(n);
    pts.erase(pts.begin());
    return pts;
}

std::vector<std::string> label_strings(const std::vector<int>& pts) {
    std::vector<std::string> out;
    for (int k : pts) out.push_back(std::to_string(k));
    return out;
}

Graph make_graph(const std::vector<int>& pts, bool (*adjacent)(int, int)) {
    Graph g;
    g.labels = label_strings(pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (adjacent(pts[i], pts[j])) g.edges.emplace_back(i, j);
    return g;
}

FiniteMetricSpace make_space(const std::vector<int>& pts, std::size_t base, int (*d)(int, int)) {
    FiniteMetricSpace space;
    space.labels = label_strings(pts);
    space.base = base;
    space.distance.assign(pts.size(), std::vector<Rational>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) space.distance[i][j] = d(pts[i], pts[j]);
    return space;
}

bool exlf_adjacent(int m, int k) { return m != k && m != -k; }
bool exlf3_adjacent(int m, int k) { return m * k < 0 && m != -k; }

int exlf_distance(int m, int k) {
    if (m == k) return 0;
    if (m == -k) return 2;
    return 1;
}

int exlf3_distance(int m, int k) {
    if (m == k) return 0;
    if (m == -k) return 3;
    return m * k < 0 ? 1 : 2;
}

int discrete_distance(int m, int k) { return m == k ? 0 : 1; }

void assert_coincides(const FiniteMetricSpace& closed_form, const Graph& graph) {
    FiniteMetricSpace from_graph = graph_metric(graph, closed_form.base);
    if (from_graph.distance != closed_form.distance)
        throw std::logic_error("closed-form metric differs from the graph shortest-path metric");
}

}  // namespace

Graph exlf_graph(int n) {
    require_positive(n);
    return make_graph(exlf_points(n), exlf_adjacent);
}

Graph exlf3_graph(int n) {
    require_positive(n);
    return make_graph(exlf3_points(n), exlf3_adjacent);
}

FiniteMetricSpace exlf_space(int n) {
    require_positive(n);
    FiniteMetricSpace space = make_space(exlf_points(n), 0, exlf_distance);
    assert_coincides(space, exlf_graph(n));
    return space;
}

FiniteMetricSpace exlf3_space(int n) {
    require_positive(n);
    FiniteMetricSpace space = make_space(exlf3_points(n), 0, exlf3_distance);
    // Below three points per sign the truncated graph is disconnected, so
    // only the inherited metric is available there.
    if (n >= 3) assert_coincides(space, exlf3_graph(n));
    return space;
}

FiniteMetricSpace mprime_space(int n) {
    require_positive(n);
    return make_space(exlf_points(n), 0, discrete_distance);
}

Rational exlf_norm_formula(const FreeVector& x) {
    if (x.coefficients.empty() || x.coefficients.size() % 2 == 0)
        throw std::invalid_argument("vector does not fit an exlf truncation");
    if (x.coefficients[0] != 0) throw std::invalid_argument("free vector carries mass on the base point");
    Rational pos = 0, neg = 0, pairs = 0;
    for (const Rational& c : x.coefficients) {
        if (sgn(c) > 0) pos += c;
        else neg -= c;
    }
    const int n = static_cast<int>(x.coefficients.size() / 2);
    for (int k = 1; k <= n; ++k) {
        Rational v = abs(x.coefficients[exlf_index(k)]) + abs(x.coefficients[exlf_index(-k)]);
        if (v > pairs) pairs = v;
    }
    return std::max({pos, neg, pairs});
}

Rational mprime_norm_formula(const FreeVector& x) {
    if (x.coefficients.empty()) throw std::invalid_argument("empty free vector");
    if (x.coefficients[0] != 0) throw std::invalid_argument("free vector carries mass on the base point");
    Rational pos = 0, neg = 0;
    for (const Rational& c : x.coefficients) {
        if (sgn(c) > 0) pos += c;
        else neg -= c;
    }
    return std::max(pos, neg);
}

FiniteMetricSpace star_extension(const FiniteMetricSpace& space) {
    const std::size_t n = space.size();
    Rational half = space.max_distance() / 2;
    FiniteMetricSpace out;
    out.labels = space.labels;
    out.labels.push_back("*");
    out.base = n;
    out.distance.assign(n + 1, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out.distance[i][j] = space.distance[i][j];
        out.distance[i][n] = half;
        out.distance[n][i] = half;
    }
    out.validate();
    return out;
}

SandwichReport separated_sandwich_check(const FiniteMetricSpace& space,
                                        const std::vector<std::vector<Rational>>& samples) {
    space.validate();
    if (space.size() < 2) throw std::invalid_argument("sandwich check needs at least two points");
    SandwichReport report;
    report.a = space.min_distance();
    report.b = space.max_distance();
    FiniteMetricSpace extended = star_extension(space);
    for (const auto& coefficients : samples) {
        if (coefficients.size() != space.size())
            throw std::invalid_argument("sample length does not match the space");
        FreeVector mu;
        mu.coefficients = coefficients;
        mu.coefficients.push_back(Rational(0));
        SandwichSample s;
        s.l1_mass = l1_mass(coefficients);
        s.norm = free_norm_primal(mu, extended);
        s.lower = report.a / 2 * s.l1_mass;
        s.upper = report.b / 2 * s.l1_mass;
        s.holds = s.lower <= s.norm && s.norm <= s.upper;
        report.holds = report.holds && s.holds;
        report.samples.push_back(std::move(s));
    }
    return report;
}

const char* to_string(LipClassification::Kind kind) {
    switch (kind) {
        case LipClassification::Kind::Type1: return "type1";
        case LipClassification::Kind::Type2: return "type2";
        case LipClassification::Kind::NotOneLipschitz: return "not-1-lipschitz";
    }
    return "?";
}

LipClassification classify_lip_exlf(const LipFunction& f, int n) {
    require_positive(n);
    const std::size_t size = static_cast<std::size_t>(2 * n + 1);
    if (f.values.size() != size) throw std::invalid_argument("function length does not match the exlf truncation");
    if (f.values[0] != 0) throw std::invalid_argument("function does not vanish at the base point");

    LipClassification out;
    Rational hi = *std::max_element(f.values.begin(), f.values.end());
    Rational lo = *std::min_element(f.values.begin(), f.values.end());
    if (hi - lo <= 1) {
        // 0 lies in the range, so c = max lies in [0, 1].
        out.kind = LipClassification::Kind::Type1;
        out.c = hi;
        return out;
    }
    for (int k = 1; k <= n; ++k) {
        for (int sign : {1, -1}) {
            const int p = sign * k;
            Rational a = f.values[exlf_index(p)];
            Rational b = -f.values[exlf_index(-p)];
            if (sgn(a) <= 0 || sgn(b) <= 0 || a > 1 || b > 1 || a + b <= 1) continue;
            bool confined = true;
            for (std::size_t i = 0; i < size && confined; ++i) {
                int label = exlf_label(i);
                if (label == p || label == -p) continue;
                confined = f.values[i] >= a - 1 && f.values[i] <= 1 - b;
            }
            if (confined) {
                out.kind = LipClassification::Kind::Type2;
                out.n = p;
                out.a = a;
                out.b = b;
                return out;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct LipBall {
    LpBuilder builder{Sense::Maximize};
    std::vector<std::optional<std::size_t>> var;

    explicit LipBall(const FiniteMetricSpace& space) : var(space.size()) {
        for (std::size_t i = 0; i < space.size(); ++i)
            if (i != space.base) var[i] = builder.add_variable(VariableBounds::free());
        for (std::size_t i = 0; i < space.size(); ++i)
            for (std::size_t j = i + 1; j < space.size(); ++j)
                builder.add_abs_le(at(i) - at(j), LinearExpr(space.d(i, j)));
    }

    LinearExpr at(std::size_t i) const { return var[i] ? LinearExpr::variable(*var[i]) : LinearExpr(); }
};

FiniteMetricSpace example_space(Example example, int n) {
    return example == Example::ExLF ? exlf_space(n) : exlf3_space(n);
}

std::size_t example_index(Example example, int k) {
    return example == Example::ExLF ? exlf_index(k) : exlf3_index(k);
}

Rational pair_lp(const FiniteMetricSpace& space, Example example, int p, int q) {
    LipBall ball(space);
    std::size_t t = ball.builder.add_variable(VariableBounds::free());
    LinearExpr tv = LinearExpr::variable(t);
    for (int k : {p, q})
        ball.builder.add_ge(ball.at(example_index(example, k)) - ball.at(example_index(example, -k)), tv);
    ball.builder.set_objective(tv);
    LpResult r = ball.builder.solve();
    if (r.status != LpStatus::Optimal) throw std::logic_error("pair certificate LP is not optimal");
    return r.value;
}

ConfinementCertificate confinement_lp(const FiniteMetricSpace& space, int n, int orientation, int high, int low,
                                      const Rational& epsilon) {
    LipBall ball(space);
    LinearExpr gap = ball.at(exlf_index(n)) - ball.at(exlf_index(-n));
    if (orientation < 0) gap = -gap;
    ball.builder.add_ge(gap, LinearExpr(Rational(1) + epsilon));
    ball.builder.set_objective(ball.at(exlf_index(high)) - ball.at(exlf_index(low)));
    LpResult r = ball.builder.solve();
    ConfinementCertificate c;
    c.exceptional = n;
    c.orientation = orientation;
    c.high = high;
    c.low = low;
    if (r.status == LpStatus::Unbounded) throw std::logic_error("confinement LP is unbounded");
    c.feasible = r.status == LpStatus::Optimal;
    if (c.feasible) c.optimum = r.value;
    return c;
}

}  // namespace

CertificateReport exceptional_pair_certificate(Example example, int n, const Rational& epsilon) {
    if (n < 2) throw std::invalid_argument("certificates need at least two pairs");
    if (sgn(epsilon) <= 0) throw std::invalid_argument("epsilon must be positive");
    FiniteMetricSpace space = example_space(example, n);
    CertificateReport report;
    report.example = example;
    report.n = n;
    report.epsilon = epsilon;

    for (int p = 1; p <= n; ++p)
        for (int q = p + 1; q <= n; ++q) {
            PairCertificate c{p, q, pair_lp(space, example, p, q)};
            if (report.pair_certificates.empty() || c.optimum > report.pair_bound) report.pair_bound = c.optimum;
            report.pair_certificates.push_back(std::move(c));
        }
    // On ExLF3 the bound is attained; on ExLF it need only hold.
    if (example == Example::ExLF3) report.holds = report.pair_bound == 1;
    else report.holds = report.pair_bound <= 1;
    for (const auto& c : report.pair_certificates)
        if (c.optimum > 1) report.holds = false;

    if (example == Example::ExLF) {
        Rational limit = Rational(1) - epsilon;
        for (int k = 1; k <= n; ++k)
            for (int orientation : {1, -1})
                for (std::size_t i = 0; i < space.size(); ++i)
                    for (std::size_t j = 0; j < space.size(); ++j) {
                        int high = exlf_label(i), low = exlf_label(j);
                        if (i == j || std::abs(high) == k || std::abs(low) == k) continue;
                        ConfinementCertificate c = confinement_lp(space, k, orientation, high, low, epsilon);
                        if (c.feasible) {
                            if (!report.confinement_bound || c.optimum > *report.confinement_bound)
                                report.confinement_bound = c.optimum;
                            if (c.optimum > limit) report.holds = false;
                        }
                        report.confinement_certificates.push_back(std::move(c));
                    }
    }
    return report;
}

LipFunction exlf3_pair_extremal(int n) {
    require_positive(n);
    LipFunction f;
    for (int k : exlf3_points(n)) f.values.push_back(k > 0 ? Rational(0) : Rational(-1));
    // The base point 1 already carries the value 0, so no shift is needed.
    return f;
}

WitnessReport schur_witness_report(Example example, int n) {
    if (n < 3) throw std::invalid_argument("witness report needs n >= 3");
    FiniteMetricSpace space = example_space(example, n);
    WitnessReport report;
    report.example = example;
    report.n = n;

    std::vector<FreeVector> members;
    auto delta = [&](int k) {
        FreeVector v;
        v.coefficients.assign(space.size(), Rational(0));
        std::size_t i = example_index(example, k);
        if (i != space.base) v.coefficients[i] = 1;
        return v;
    };
    auto difference = [&](const FreeVector& a, const FreeVector& b) {
        FreeVector v = a;
        for (std::size_t i = 0; i < v.coefficients.size(); ++i) v.coefficients[i] -= b.coefficients[i];
        return v;
    };
    for (int k = 1; k <= n; ++k) {
        if (example == Example::ExLF) {
            members.push_back(delta(k));
            members.push_back(delta(-k));
        } else {
            members.push_back(difference(delta(k), delta(-k)));
        }
    }
    for (const FreeVector& m : members) report.member_norms.push_back(free_norm_primal(m, space));
    bool first = true;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            Rational d = free_norm_primal(difference(members[i], members[j]), space);
            if (first || d < report.min_pairwise) report.min_pairwise = d;
            if (first || d > report.max_pairwise) report.max_pairwise = d;
            first = false;
        }
    CertificateReport cert = exceptional_pair_certificate(example, n);
    report.certificate_bound = cert.pair_bound;
    if (example == Example::ExLF) {
        report.oscillation_pair_distance = free_norm_primal(difference(delta(1), delta(-1)), space);
        report.oscillation_ratio = report.max_pairwise / report.certificate_bound;
    } else {
        report.oscillation_pair_distance = report.min_pairwise;
        report.oscillation_ratio = report.min_pairwise / (2 * report.certificate_bound);
        Rational top = *std::max_element(report.member_norms.begin(), report.member_norms.end());
        report.norm_ratio = top / report.certificate_bound;
    }
    return report;
}

}  // namespace schurlab::free_space

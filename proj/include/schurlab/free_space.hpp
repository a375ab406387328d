#pragma once

// Finite metric spaces, Lipschitz functions and Lipschitz-free (transportation)
// norms, plus the two graph metrics on the integers used as counterexamples to
// small quantitative Schur constants.

#include "schurlab/numeric.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace schurlab::free_space {

/// Raised when a distance matrix is not a metric. Carries the offending
/// indices (a triple for triangle violations, a pair otherwise).
class MetricError : public std::invalid_argument {
public:
    MetricError(const std::string& what, std::vector<std::size_t> witness)
        : std::invalid_argument(what), witness_(std::move(witness)) {}
    const std::vector<std::size_t>& witness() const { return witness_; }

private:
    std::vector<std::size_t> witness_;
};

struct FiniteMetricSpace {
    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> distance;
    std::size_t base = 0;

    std::size_t size() const { return labels.size(); }
    const Rational& d(std::size_t i, std::size_t j) const { return distance[i][j]; }
    std::optional<std::size_t> index_of(const std::string& label) const;
    Rational min_distance() const;
    Rational max_distance() const;

    /// Exact check of every metric axiom, including all triangle inequalities.
    void validate() const;
};

struct Graph {
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Unit-edge shortest-path metric (BFS from every vertex). Throws
/// std::invalid_argument on self-loops or a disconnected graph.
FiniteMetricSpace graph_metric(const Graph& graph, std::size_t base = 0);

/// Coefficients of sum c_x delta(x), one per point; the base coefficient must
/// be zero because delta(base) = 0.
struct FreeVector {
    std::vector<Rational> coefficients;
};

/// Values of a function on the points; the base value must be zero.
struct LipFunction {
    std::vector<Rational> values;
};

Rational lip_constant(const LipFunction& f, const FiniteMetricSpace& space);

/// Transportation form: min-cost flow with supply c_x at each point and the
/// base absorbing the balance.
Rational free_norm_primal(const FreeVector& mu, const FiniteMetricSpace& space);

/// Lipschitz-ball form: max sum c_x f(x) over 1-Lipschitz f vanishing at the
/// base, as an exact LP.
Rational free_norm_dual(const FreeVector& mu, const FiniteMetricSpace& space);

/// The dual LP optimum together with an optimal 1-Lipschitz function.
std::pair<Rational, LipFunction> free_norm_dual_with_witness(const FreeVector& mu,
                                                             const FiniteMetricSpace& space);

// ---------------------------------------------------------------------------
// The integer graph examples, truncated to |k| <= n.
//
// Point order is 0, 1, -1, 2, -2, ... for the spaces containing 0, and
// 1, -1, 2, -2, ... for the one that omits it.

enum class Example { ExLF, ExLF3 };

const char* to_string(Example example);
Example parse_example(const std::string& name);

/// Vertices -n..n; m ~ k iff m != +-k.
Graph exlf_graph(int n);
/// Vertices +-1..+-n; m ~ k iff mk < 0 and m != -k.
Graph exlf3_graph(int n);

/// Closed-form metric: 0 on the diagonal, 2 for m = -k != 0, 1 otherwise. Base 0.
FiniteMetricSpace exlf_space(int n);
/// Closed-form metric: 3 for m = -k, 1 for mk < 0, 2 for mk > 0. Base is the point 1.
FiniteMetricSpace exlf3_space(int n);
/// Discrete 0-1 metric on -n..n with base 0.
FiniteMetricSpace mprime_space(int n);

std::size_t exlf_index(int k);
std::size_t exlf3_index(int k);
int exlf_label(std::size_t index);
int exlf3_label(std::size_t index);

/// max{ ||x+||_1, ||x-||_1, max_n |x(n)| + |x(-n)| } for x on exlf_space(n).
Rational exlf_norm_formula(const FreeVector& x);
/// max{ ||x+||_1, ||x-||_1 } for x on mprime_space(n).
Rational mprime_norm_formula(const FreeVector& x);

/// Adds a point "*" at distance b/2 from every point of `space` (b = largest
/// distance) and makes it the base. The result is always a metric.
FiniteMetricSpace star_extension(const FiniteMetricSpace& space);

struct SandwichSample {
    Rational l1_mass;
    Rational norm;
    Rational lower;  // (a/2) * l1 mass
    Rational upper;  // (b/2) * l1 mass
    bool holds = false;
};

struct SandwichReport {
    Rational a;
    Rational b;
    std::vector<SandwichSample> samples;
    bool holds = true;
};

/// For each coefficient vector over the points of `space` (all points carry
/// mass; the added star point is the base) checks
/// (a/2)||mu||_1 <= ||mu|| <= (b/2)||mu||_1 on the star extension.
SandwichReport separated_sandwich_check(const FiniteMetricSpace& space, const std::vector<std::vector<Rational>>& samples);

struct LipClassification {
    enum class Kind { Type1, Type2, NotOneLipschitz };
    Kind kind = Kind::NotOneLipschitz;
    Rational c;      // Type1: values lie in [c - 1, c]
    int n = 0;       // Type2: f(n) = a, f(-n) = -b
    Rational a;
    Rational b;
};

const char* to_string(LipClassification::Kind kind);

/// Decides 1-Lipschitzness of f on exlf_space(n) from the two structural
/// conditions alone (no pairwise distance check).
LipClassification classify_lip_exlf(const LipFunction& f, int n);

struct PairCertificate {
    int first = 0;
    int second = 0;
    Rational optimum;
};

struct ConfinementCertificate {
    int exceptional = 0;   // pair {+n, -n}
    int orientation = 1;   // +1: f(n) - f(-n) >= 1 + eps; -1: the reverse
    int high = 0;          // point k in f(k) - f(l)
    int low = 0;           // point l
    bool feasible = false;
    Rational optimum;      // meaningful when feasible
};

struct CertificateReport {
    Example example = Example::ExLF;
    int n = 0;
    Rational epsilon;
    /// Max t with f(p) - f(-p) >= t and f(q) - f(-q) >= t, per pair p < q.
    std::vector<PairCertificate> pair_certificates;
    Rational pair_bound;   // max over pair certificates
    /// ExLF only: max f(k) - f(l) off an exceptional pair forced above 1 + eps.
    std::vector<ConfinementCertificate> confinement_certificates;
    std::optional<Rational> confinement_bound;  // max over feasible ones
    bool holds = true;
};

/// Solves the finite LP families behind the "at most one exceptional pair"
/// arguments. Pair certificates must be <= 1 (exactly 1 on ExLF3); ExLF
/// confinement certificates must be <= 1 - eps.
CertificateReport exceptional_pair_certificate(Example example, int n, const Rational& epsilon = Rational(1, 4));

/// The explicit 1-Lipschitz function (0 on positives, -1 on negatives,
/// shifted to vanish at the base point 1) attaining pair certificates on ExLF3.
LipFunction exlf3_pair_extremal(int n);

struct WitnessReport {
    Example example = Example::ExLF;
    int n = 0;
    std::vector<Rational> member_norms;
    Rational min_pairwise;
    Rational max_pairwise;
    /// ExLF: ||delta(k) - delta(-k)||, which realizes the oscillation.
    Rational oscillation_pair_distance;
    Rational certificate_bound;
    /// ExLF: oscillation / certificate. ExLF3: separation / (2 * certificate).
    Rational oscillation_ratio;
    /// ExLF3 only: limsup of member norms / cluster-point bound.
    std::optional<Rational> norm_ratio;
};

WitnessReport schur_witness_report(Example example, int n);

}  // namespace schurlab::free_space

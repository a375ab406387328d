#pragma once

// Dense exact-rational simplex solver.
//
// Two-phase tableau method with Bland's smallest-index rule, so degenerate
// transportation-type programs cannot cycle. Every returned optimum is
// re-substituted before it leaves the solver.

#include "schurlab/numeric.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace schurlab::optim {

enum class Sense { Maximize, Minimize };
enum class Relation { LessEqual, Equal, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus status);

/// Bounds default to x >= 0 with no upper bound.
struct VariableBounds {
    std::optional<Rational> lower = Rational(0);
    std::optional<Rational> upper;

    static VariableBounds free() { return {std::nullopt, std::nullopt}; }
    static VariableBounds nonnegative() { return {}; }
    static VariableBounds nonpositive() { return {std::nullopt, Rational(0)}; }
    static VariableBounds fixed(const Rational& v) { return {v, v}; }
    static VariableBounds between(const Rational& lo, const Rational& hi) { return {lo, hi}; }
};

struct Constraint {
    std::vector<Rational> coefficients;
    Relation relation = Relation::LessEqual;
    Rational rhs;
};

struct LinearProgram {
    Sense sense = Sense::Maximize;
    std::vector<Rational> objective;
    std::vector<Constraint> constraints;
    /// Empty means every variable uses the default bounds.
    std::vector<VariableBounds> bounds;

    std::size_t num_variables() const { return objective.size(); }
    /// Throws std::invalid_argument on ragged rows or inconsistent bounds.
    void validate() const;
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    std::vector<Rational> solution;
    std::size_t pivots = 0;

    bool optimal() const { return status == LpStatus::Optimal; }
};

LpResult lp_solve(const LinearProgram& program);

/// Objective value of `x`, and whether `x` satisfies every row and bound exactly.
Rational evaluate_objective(const LinearProgram& program, const std::vector<Rational>& x);
bool is_feasible(const LinearProgram& program, const std::vector<Rational>& x);

/// Sparse linear expression over builder variables: sum(coef * var) + constant.
struct LinearExpr {
    std::map<std::size_t, Rational> terms;
    Rational constant;

    LinearExpr() = default;
    explicit LinearExpr(const Rational& c) : constant(c) {}
    static LinearExpr variable(std::size_t index, const Rational& coefficient = Rational(1));

    LinearExpr& operator+=(const LinearExpr& other);
    LinearExpr& operator-=(const LinearExpr& other);
    LinearExpr& operator*=(const Rational& factor);
    friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
    friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
    friend LinearExpr operator*(LinearExpr a, const Rational& f) { return a *= f; }
    friend LinearExpr operator*(const Rational& f, LinearExpr a) { return a *= f; }
    LinearExpr operator-() const { return *this * Rational(-1); }
};

/// Incremental construction of sparse programs; `build()` densifies.
class LpBuilder {
public:
    explicit LpBuilder(Sense sense = Sense::Maximize) : sense_(sense) {}

    std::size_t add_variable(VariableBounds bounds = {});
    std::size_t num_variables() const { return bounds_.size(); }

    /// lhs (relation) rhs; constants on both sides are folded.
    void add_constraint(const LinearExpr& lhs, Relation relation, const LinearExpr& rhs);
    void add_le(const LinearExpr& lhs, const LinearExpr& rhs) { add_constraint(lhs, Relation::LessEqual, rhs); }
    void add_ge(const LinearExpr& lhs, const LinearExpr& rhs) { add_constraint(lhs, Relation::GreaterEqual, rhs); }
    void add_eq(const LinearExpr& lhs, const LinearExpr& rhs) { add_constraint(lhs, Relation::Equal, rhs); }
    /// |expr| <= bound, as two rows.
    void add_abs_le(const LinearExpr& expr, const LinearExpr& bound);

    void set_objective(const LinearExpr& objective);
    const LinearExpr& objective() const { return objective_; }

    LinearProgram build() const;
    /// Solves and adds the objective constant back to the optimal value.
    LpResult solve() const;

private:
    struct SparseRow {
        std::map<std::size_t, Rational> terms;
        Relation relation;
        Rational rhs;
    };

    Sense sense_;
    std::vector<VariableBounds> bounds_;
    std::vector<SparseRow> rows_;
    LinearExpr objective_;
};

}  // namespace schurlab::optim

#include "schurlab/optim/linear_program.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace schurlab::optim {

const char* to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

void LinearProgram::validate() const {
    const std::size_t n = objective.size();
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        if (constraints[i].coefficients.size() != n) {
            throw std::invalid_argument("constraint " + std::to_string(i) + " has " +
                                        std::to_string(constraints[i].coefficients.size()) +
                                        " coefficients, expected " + std::to_string(n));
        }
    }
    if (!bounds.empty() && bounds.size() != n) {
        throw std::invalid_argument("bounds vector does not match the number of variables");
    }
    for (const auto& b : bounds) {
        if (b.lower && b.upper && *b.lower > *b.upper) {
            throw std::invalid_argument("variable with lower bound above upper bound");
        }
    }
}

namespace {

using Row = std::vector<Rational>;

// x_j = offset + sum(sign * y_col) over nonnegative standard-form columns.
struct VariableMap {
    Rational offset;
    std::vector<std::pair<std::size_t, int>> columns;
};

class Tableau {
public:
    Tableau(std::vector<Row> rows, Row rhs, std::vector<std::size_t> basis, std::size_t columns)
        : rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)), allowed_(columns, true) {}

    std::size_t num_rows() const { return rows_.size(); }
    std::size_t num_columns() const { return allowed_.size(); }
    const std::vector<std::size_t>& basis() const { return basis_; }
    const Row& rhs() const { return rhs_; }
    const Rational& value() const { return value_; }
    std::size_t pivots() const { return pivots_; }

    void forbid(std::size_t column) { allowed_[column] = false; }

    // Reduced costs d_j = c_j - c_B^T T_j for a maximization objective.
    void set_objective(const Row& cost) {
        reduced_ = cost;
        value_ = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational& cb = cost[basis_[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j < reduced_.size(); ++j) {
                if (sgn(rows_[i][j]) != 0) reduced_[j] -= cb * rows_[i][j];
            }
            value_ += cb * rhs_[i];
        }
    }

    // Bland's rule: lowest-index improving column, lowest-index basic variable
    // among tied ratios. Returns false when the objective is unbounded.
    bool optimize() {
        for (;;) {
            std::size_t entering = num_columns();
            for (std::size_t j = 0; j < num_columns(); ++j) {
                if (allowed_[j] && sgn(reduced_[j]) > 0) {
                    entering = j;
                    break;
                }
            }
            if (entering == num_columns()) return true;

            std::size_t leaving = num_rows();
            Rational best_ratio;
            for (std::size_t i = 0; i < num_rows(); ++i) {
                if (sgn(rows_[i][entering]) <= 0) continue;
                Rational ratio = rhs_[i] / rows_[i][entering];
                if (leaving == num_rows() || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (leaving == num_rows()) return false;
            pivot(leaving, entering);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        ++pivots_;
        Row& pivot_row = rows_[r];
        const Rational inv = 1 / pivot_row[c];
        for (auto& entry : pivot_row) {
            if (sgn(entry) != 0) entry *= inv;
        }
        rhs_[r] *= inv;

        for (std::size_t i = 0; i < num_rows(); ++i) {
            if (i == r || sgn(rows_[i][c]) == 0) continue;
            const Rational factor = rows_[i][c];
            Row& row = rows_[i];
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (sgn(pivot_row[j]) != 0) row[j] -= factor * pivot_row[j];
            }
            rhs_[i] -= factor * rhs_[r];
        }
        if (sgn(reduced_[c]) != 0) {
            const Rational factor = reduced_[c];
            for (std::size_t j = 0; j < reduced_.size(); ++j) {
                if (sgn(pivot_row[j]) != 0) reduced_[j] -= factor * pivot_row[j];
            }
            value_ += factor * rhs_[r];
        }
        basis_[r] = c;
    }

    // Pivots basic artificial columns out at zero level; drops rows that are
    // linear combinations of the others.
    void expel(const std::vector<bool>& artificial) {
        for (std::size_t i = 0; i < num_rows();) {
            if (!artificial[basis_[i]]) {
                ++i;
                continue;
            }
            std::size_t column = num_columns();
            for (std::size_t j = 0; j < num_columns(); ++j) {
                if (!artificial[j] && sgn(rows_[i][j]) != 0) {
                    column = j;
                    break;
                }
            }
            if (column == num_columns()) {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            pivot(i, column);
            ++i;
        }
    }

private:
    std::vector<Row> rows_;
    Row rhs_;
    std::vector<std::size_t> basis_;
    std::vector<bool> allowed_;
    Row reduced_;
    Rational value_;
    std::size_t pivots_ = 0;
};

}  // namespace

LpResult lp_solve(const LinearProgram& program) {
    program.validate();
    const std::size_t n = program.num_variables();

    // Map every original variable onto nonnegative structural columns.
    std::vector<VariableMap> maps(n);
    std::size_t structural = 0;
    std::vector<std::pair<std::size_t, Rational>> upper_rows;  // column <= value
    for (std::size_t j = 0; j < n; ++j) {
        VariableBounds b = program.bounds.empty() ? VariableBounds{} : program.bounds[j];
        if (b.lower) {
            maps[j].offset = *b.lower;
            maps[j].columns.emplace_back(structural, 1);
            if (b.upper) upper_rows.emplace_back(structural, Rational(*b.upper - *b.lower));
            ++structural;
        } else if (b.upper) {
            maps[j].offset = *b.upper;
            maps[j].columns.emplace_back(structural++, -1);
        } else {
            maps[j].columns.emplace_back(structural++, 1);
            maps[j].columns.emplace_back(structural++, -1);
        }
    }

    struct StdRow {
        Row coefficients;
        Relation relation;
        Rational rhs;
    };
    std::vector<StdRow> std_rows;
    std_rows.reserve(program.constraints.size() + upper_rows.size());
    for (const auto& c : program.constraints) {
        StdRow row{Row(structural), c.relation, c.rhs};
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(c.coefficients[j]) == 0) continue;
            row.rhs -= c.coefficients[j] * maps[j].offset;
            for (auto [col, sign] : maps[j].columns) {
                row.coefficients[col] += sign > 0 ? c.coefficients[j] : Rational(-c.coefficients[j]);
            }
        }
        std_rows.push_back(std::move(row));
    }
    for (const auto& [col, value] : upper_rows) {
        StdRow row{Row(structural), Relation::LessEqual, value};
        row.coefficients[col] = 1;
        std_rows.push_back(std::move(row));
    }

    // Nonnegative right-hand sides.
    for (auto& row : std_rows) {
        if (sgn(row.rhs) < 0) {
            row.rhs = -row.rhs;
            for (auto& a : row.coefficients) a = -a;
            if (row.relation == Relation::LessEqual) {
                row.relation = Relation::GreaterEqual;
            } else if (row.relation == Relation::GreaterEqual) {
                row.relation = Relation::LessEqual;
            }
        }
    }

    const std::size_t m = std_rows.size();
    std::size_t slack_count = 0;
    std::size_t artificial_count = 0;
    for (const auto& row : std_rows) {
        if (row.relation != Relation::Equal) ++slack_count;
        if (row.relation != Relation::LessEqual) ++artificial_count;
    }
    const std::size_t columns = structural + slack_count + artificial_count;
    std::vector<bool> artificial(columns, false);

    std::vector<Row> rows(m, Row(columns));
    Row rhs(m);
    std::vector<std::size_t> basis(m);
    std::size_t next_slack = structural;
    std::size_t next_artificial = structural + slack_count;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < structural; ++j) rows[i][j] = std_rows[i].coefficients[j];
        rhs[i] = std_rows[i].rhs;
        switch (std_rows[i].relation) {
            case Relation::LessEqual:
                rows[i][next_slack] = 1;
                basis[i] = next_slack++;
                break;
            case Relation::GreaterEqual:
                rows[i][next_slack++] = -1;
                rows[i][next_artificial] = 1;
                artificial[next_artificial] = true;
                basis[i] = next_artificial++;
                break;
            case Relation::Equal:
                rows[i][next_artificial] = 1;
                artificial[next_artificial] = true;
                basis[i] = next_artificial++;
                break;
        }
    }

    Tableau tableau(std::move(rows), std::move(rhs), std::move(basis), columns);
    LpResult result;

    if (artificial_count > 0) {
        Row phase_one(columns);
        for (std::size_t j = 0; j < columns; ++j) {
            if (artificial[j]) phase_one[j] = -1;
        }
        tableau.set_objective(phase_one);
        tableau.optimize();  // bounded above by zero
        if (sgn(tableau.value()) < 0) {
            result.status = LpStatus::Infeasible;
            result.pivots = tableau.pivots();
            return result;
        }
        tableau.expel(artificial);
        for (std::size_t j = 0; j < columns; ++j) {
            if (artificial[j]) tableau.forbid(j);
        }
    }

    // Phase two maximizes; minimization is handled by negation.
    Row cost(columns);
    for (std::size_t j = 0; j < n; ++j) {
        Rational c = program.sense == Sense::Maximize ? program.objective[j] : Rational(-program.objective[j]);
        if (sgn(c) == 0) continue;
        for (auto [col, sign] : maps[j].columns) cost[col] += sign > 0 ? c : Rational(-c);
    }
    tableau.set_objective(cost);
    if (!tableau.optimize()) {
        result.status = LpStatus::Unbounded;
        result.pivots = tableau.pivots();
        return result;
    }

    Row y(columns);
    for (std::size_t i = 0; i < tableau.num_rows(); ++i) y[tableau.basis()[i]] = tableau.rhs()[i];
    result.solution.assign(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        Rational x = maps[j].offset;
        for (auto [col, sign] : maps[j].columns) {
            if (sign > 0) {
                x += y[col];
            } else {
                x -= y[col];
            }
        }
        result.solution[j] = x;
    }
    result.status = LpStatus::Optimal;
    result.value = evaluate_objective(program, result.solution);
    result.pivots = tableau.pivots();

    if (!is_feasible(program, result.solution)) {
        throw std::logic_error("simplex returned an infeasible point");
    }
    Rational tableau_value = program.sense == Sense::Maximize ? tableau.value() : Rational(-tableau.value());
    Rational offset_value;
    for (std::size_t j = 0; j < n; ++j) offset_value += program.objective[j] * maps[j].offset;
    if (tableau_value + offset_value != result.value) {
        throw std::logic_error("simplex objective does not match re-substituted solution");
    }
    return result;
}

Rational evaluate_objective(const LinearProgram& program, const std::vector<Rational>& x) {
    Rational value;
    for (std::size_t j = 0; j < program.objective.size(); ++j) value += program.objective[j] * x[j];
    return value;
}

bool is_feasible(const LinearProgram& program, const std::vector<Rational>& x) {
    if (x.size() != program.num_variables()) return false;
    for (const auto& c : program.constraints) {
        Rational lhs;
        for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coefficients[j] * x[j];
        switch (c.relation) {
            case Relation::LessEqual:
                if (lhs > c.rhs) return false;
                break;
            case Relation::GreaterEqual:
                if (lhs < c.rhs) return false;
                break;
            case Relation::Equal:
                if (lhs != c.rhs) return false;
                break;
        }
    }
    for (std::size_t j = 0; j < program.bounds.size(); ++j) {
        const auto& b = program.bounds[j];
        if (b.lower && x[j] < *b.lower) return false;
        if (b.upper && x[j] > *b.upper) return false;
    }
    if (program.bounds.empty()) {
        for (const auto& v : x) {
            if (sgn(v) < 0) return false;
        }
    }
    return true;
}

LinearExpr LinearExpr::variable(std::size_t index, const Rational& coefficient) {
    LinearExpr e;
    if (sgn(coefficient) != 0) e.terms.emplace(index, coefficient);
    return e;
}

LinearExpr& LinearExpr::operator+=(const LinearExpr& other) {
    for (const auto& [var, coef] : other.terms) {
        auto [it, inserted] = terms.try_emplace(var, coef);
        if (!inserted) {
            it->second += coef;
            if (sgn(it->second) == 0) terms.erase(it);
        }
    }
    constant += other.constant;
    return *this;
}

LinearExpr& LinearExpr::operator-=(const LinearExpr& other) {
    for (const auto& [var, coef] : other.terms) {
        auto [it, inserted] = terms.try_emplace(var, Rational(-coef));
        if (!inserted) {
            it->second -= coef;
            if (sgn(it->second) == 0) terms.erase(it);
        }
    }
    constant -= other.constant;
    return *this;
}

LinearExpr& LinearExpr::operator*=(const Rational& factor) {
    if (sgn(factor) == 0) {
        terms.clear();
        constant = 0;
        return *this;
    }
    for (auto& [var, coef] : terms) coef *= factor;
    constant *= factor;
    return *this;
}

std::size_t LpBuilder::add_variable(VariableBounds bounds) {
    bounds_.push_back(std::move(bounds));
    return bounds_.size() - 1;
}

void LpBuilder::add_constraint(const LinearExpr& lhs, Relation relation, const LinearExpr& rhs) {
    LinearExpr diff = lhs - rhs;
    for (const auto& [var, coef] : diff.terms) {
        if (var >= bounds_.size()) throw std::out_of_range("constraint references an unknown variable");
    }
    rows_.push_back({diff.terms, relation, Rational(-diff.constant)});
}

void LpBuilder::add_abs_le(const LinearExpr& expr, const LinearExpr& bound) {
    add_le(expr, bound);
    add_le(-expr, bound);
}

void LpBuilder::set_objective(const LinearExpr& objective) {
    objective_ = objective;
}

LinearProgram LpBuilder::build() const {
    LinearProgram program;
    program.sense = sense_;
    const std::size_t n = bounds_.size();
    program.objective.assign(n, Rational(0));
    for (const auto& [var, coef] : objective_.terms) {
        if (var >= n) throw std::out_of_range("objective references an unknown variable");
        program.objective[var] = coef;
    }
    program.bounds = bounds_;
    program.constraints.reserve(rows_.size());
    for (const auto& row : rows_) {
        Constraint c{std::vector<Rational>(n), row.relation, row.rhs};
        for (const auto& [var, coef] : row.terms) c.coefficients[var] = coef;
        program.constraints.push_back(std::move(c));
    }
    return program;
}

LpResult LpBuilder::solve() const {
    LpResult result = lp_solve(build());
    if (result.optimal()) result.value += objective_.constant;
    return result;
}

}  // namespace schurlab::optim

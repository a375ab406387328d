#include "schurlab/seq_quantities.hpp"

#include "schurlab/free_space.hpp"
#include "schurlab/optim/linear_program.hpp"
#include "schurlab/subset_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace schurlab::seq_quantities {

using optim::LinearExpr;
using optim::LpBuilder;
using optim::LpResult;
using optim::LpStatus;
using optim::Sense;
using optim::VariableBounds;
using spaces::Field;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double down(double x) { return std::nextafter(x, -inf); }
double up(double x) { return std::nextafter(x, inf); }

Vector combine(const std::vector<Vector>& members, const std::vector<ComplexRational>& alpha) {
    Vector w(members.front().size());
    for (std::size_t k = 0; k < members.size(); ++k) {
        if (alpha[k].is_zero()) continue;
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += alpha[k] * members[k][i];
    }
    return w;
}

Vector difference(const Vector& a, const Vector& b) {
    Vector out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

bool all_real(const std::vector<Vector>& members) {
    for (const auto& v : members)
        for (const auto& z : v)
            if (!z.is_real()) return false;
    return true;
}

Bound bound_of(const NormValue& v, bool lower) {
    Bound b;
    if (v.exact) {
        b.exact = *v.exact;
        b.value = to_double(*v.exact);
        // Keep the double on the safe side of the exact rational.
        if (lower && Rational(b.value) > *v.exact) b.value = down(b.value);
        if (!lower && Rational(b.value) < *v.exact) b.value = up(b.value);
    } else {
        b.value = lower ? v.lower() : v.upper();
    }
    return b;
}

bool is_modulus_model(const NormModel& model) {
    const auto& v = model.variant();
    return std::holds_alternative<spaces::L1Complex>(v) || std::holds_alternative<spaces::SignSup>(v) ||
           std::holds_alternative<spaces::ComplexifiedL1>(v);
}

// Orthant sign vectors with sigma_0 = +1.
std::vector<int> orthant_signs(std::size_t n, std::uint64_t code) {
    std::vector<int> sigma(n, 1);
    for (std::size_t k = 1; k < n; ++k) sigma[k] = (code >> (k - 1) & 1) ? -1 : 1;
    return sigma;
}

std::vector<std::size_t> add_orthant_coefficients(LpBuilder& b, const std::vector<int>& sigma) {
    std::vector<std::size_t> alpha;
    LinearExpr sphere;
    for (int s : sigma) {
        std::size_t a = b.add_variable(s > 0 ? VariableBounds::nonnegative() : VariableBounds::nonpositive());
        alpha.push_back(a);
        sphere += LinearExpr::variable(a, Rational(s));
    }
    b.add_eq(sphere, LinearExpr(Rational(1)));
    return alpha;
}

struct OrthantOutcome {
    Rational lower;
    NormValue upper;
    std::vector<Rational> alpha;
    std::size_t lp_solves = 0;
};

OrthantOutcome exact_orthant(const VectorFamily& f, const std::vector<int>& sigma) {
    LpBuilder b(Sense::Minimize);
    std::vector<std::size_t> alpha = add_orthant_coefficients(b, sigma);
    const std::size_t dim = f.model.dimension();
    std::vector<LinearExpr> coords(dim);
    for (std::size_t k = 0; k < f.members.size(); ++k)
        for (std::size_t i = 0; i < dim; ++i)
            if (sgn(f.members[k][i].re) != 0) coords[i] += LinearExpr::variable(alpha[k], f.members[k][i].re);
    std::size_t t = b.add_variable();
    spaces::add_norm_epigraph(f.model, b, coords, LinearExpr::variable(t));
    b.set_objective(LinearExpr::variable(t));
    LpResult r = b.solve();
    if (r.status != LpStatus::Optimal) throw std::logic_error("orthant LP is not optimal");
    OrthantOutcome out;
    out.lower = r.value;
    out.upper = NormValue::from_exact(r.value);
    for (std::size_t a : alpha) out.alpha.push_back(r.solution[a]);
    out.lp_solves = 1;
    return out;
}

// Kelley cutting planes for modulus-type models with complex members and
// real coefficients. Cuts use exact unit vectors (c, s), so each one is a
// valid linear underestimate and the LP value is a certified lower bound.
struct Cut {
    std::optional<std::size_t> coordinate;  // l1-complex: bounds u_i; otherwise bounds t
    std::vector<Rational> row;              // coefficients over alpha
};

class CuttingPlane {
public:
    CuttingPlane(const VectorFamily& f, std::vector<int> sigma)
        : f_(f), sigma_(std::move(sigma)), l1_(std::holds_alternative<spaces::L1Complex>(f.model.variant())) {}

    // Probes the orthant vertices and center; returns the best value seen.
    double seed() {
        const std::size_t n = f_.members.size();
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Rational> vertex(n);
            vertex[k] = sigma_[k];
            probe(vertex);
        }
        std::vector<Rational> center(n);
        for (std::size_t k = 0; k < n; ++k) center[k] = Rational(sigma_[k]) / static_cast<long>(n);
        probe(center);
        return best_.upper.upper();
    }

    // Tightens until the orthant gap is below tolerance or its lower bound
    // clears the best value found anywhere (then it cannot hold the minimum).
    OrthantOutcome run(double tolerance, int max_iterations, double& global_upper) {
        const std::size_t n = f_.members.size();
        std::optional<std::vector<Rational>> last;
        for (int it = 0; it < max_iterations; ++it) {
            LpResult r = solve();
            ++best_.lp_solves;
            best_.lower = r.value;
            if (to_double(r.value) >= global_upper - tolerance) break;
            std::vector<Rational> alpha(r.solution.begin(), r.solution.begin() + static_cast<std::ptrdiff_t>(n));
            if (last && *last == alpha) break;  // no progress: the cut set is saturated
            last = alpha;
            probe(alpha);
            global_upper = std::min(global_upper, best_.upper.upper());
            if (best_.upper.upper() - to_double(best_.lower) <= tolerance) break;
        }
        return best_;
    }

private:
    void probe(const std::vector<Rational>& alpha) {
        NormValue v = evaluate(alpha);
        if (best_.alpha.empty() || v.upper() < best_.upper.upper()) {
            best_.upper = v;
            best_.alpha = alpha;
        }
        add_cuts(alpha);
    }

    NormValue evaluate(const std::vector<Rational>& alpha) const {
        std::vector<ComplexRational> a(alpha.begin(), alpha.end());
        return spaces::norm(f_.model, combine(f_.members, a));
    }

    std::vector<Rational> projected(std::size_t coordinate, const ComplexRational& u) const {
        // alpha -> Re(conj(u) * (sum alpha_k x_k)_i)
        std::vector<Rational> row(f_.members.size());
        for (std::size_t k = 0; k < f_.members.size(); ++k) {
            const auto& z = f_.members[k][coordinate];
            row[k] = u.re * z.re + u.im * z.im;
        }
        return row;
    }

    void add_cuts(const std::vector<Rational>& alpha) {
        std::vector<ComplexRational> a(alpha.begin(), alpha.end());
        Vector w = combine(f_.members, a);
        if (l1_) {
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (w[i].is_zero()) continue;
                ComplexRational u = spaces::rational_unit(std::atan2(to_double(w[i].im), to_double(w[i].re)), 26);
                cuts_.push_back({i, projected(i, u)});
            }
            return;
        }
        std::vector<Rational> x, y;
        for (const auto& z : w) {
            x.push_back(z.re);
            y.push_back(z.im);
        }
        spaces::SweepOptimum opt = spaces::complexified_l1_sweep(x, y);
        Rational sx = 0, sy = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            sx += opt.signs[i] * x[i];
            sy += opt.signs[i] * y[i];
        }
        if (sgn(sx) == 0 && sgn(sy) == 0) return;
        ComplexRational u = spaces::rational_unit(std::atan2(to_double(sy), to_double(sx)), 26);
        std::vector<Rational> row(f_.members.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::vector<Rational> p = projected(i, u);
            for (std::size_t k = 0; k < row.size(); ++k) row[k] += opt.signs[i] * p[k];
        }
        cuts_.push_back({std::nullopt, std::move(row)});
    }

    LpResult solve() const {
        LpBuilder b(Sense::Minimize);
        std::vector<std::size_t> alpha = add_orthant_coefficients(b, sigma_);
        auto row_expr = [&](const std::vector<Rational>& row) {
            LinearExpr e;
            for (std::size_t k = 0; k < row.size(); ++k)
                if (sgn(row[k]) != 0) e += LinearExpr::variable(alpha[k], row[k]);
            return e;
        };
        LinearExpr objective;
        if (l1_) {
            const std::size_t dim = f_.model.dimension();
            std::vector<std::size_t> u(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                u[i] = b.add_variable();
                objective += LinearExpr::variable(u[i]);
            }
            for (const Cut& c : cuts_) b.add_ge(LinearExpr::variable(u[*c.coordinate]), row_expr(c.row));
        } else {
            std::size_t t = b.add_variable();
            objective = LinearExpr::variable(t);
            for (const Cut& c : cuts_) b.add_ge(objective, row_expr(c.row));
        }
        b.set_objective(objective);
        LpResult r = b.solve();
        if (r.status != LpStatus::Optimal) throw std::logic_error("cutting-plane LP is not optimal");
        // Report alpha first, in member order.
        std::vector<Rational> sol;
        for (std::size_t a : alpha) sol.push_back(r.solution[a]);
        r.solution = std::move(sol);
        return r;
    }

    const VectorFamily& f_;
    std::vector<int> sigma_;
    bool l1_;
    std::vector<Cut> cuts_;
    OrthantOutcome best_;
};

// A nonzero real kernel vector of the members (as real vectors of length 2d),
// scaled to unit l1 norm.
std::optional<std::vector<Rational>> real_kernel(const std::vector<Vector>& members) {
    const std::size_t n = members.size();
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < members.front().size(); ++i) {
        std::vector<Rational> re(n), im(n);
        for (std::size_t k = 0; k < n; ++k) {
            re[k] = members[k][i].re;
            im[k] = members[k][i].im;
        }
        rows.push_back(std::move(re));
        rows.push_back(std::move(im));
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        Rational inv = Rational(1) / rows[r][c];
        for (auto& v : rows[r]) v *= inv;
        for (std::size_t q = 0; q < rows.size(); ++q) {
            if (q == r || sgn(rows[q][c]) == 0) continue;
            Rational factor = rows[q][c];
            for (std::size_t j = 0; j < n; ++j) rows[q][j] -= factor * rows[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    if (pivot_col.size() == n) return std::nullopt;
    std::size_t free_col = 0;
    while (std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end()) ++free_col;
    std::vector<Rational> alpha(n);
    alpha[free_col] = 1;
    for (std::size_t q = 0; q < pivot_col.size(); ++q) alpha[pivot_col[q]] = -rows[q][free_col];
    Rational total = 0;
    for (const auto& a : alpha) total += abs(a);
    for (auto& a : alpha) a /= total;
    return alpha;
}

}  // namespace

void VectorFamily::check() const {
    for (const auto& m : members) model.check(m);
}

std::vector<std::string> family_tags() {
    return {"l1-basis", "l1-basis-complex", "cantor-projections", "complexified-basis", "exlf-alternating",
            "exlf3-alternating"};
}

VectorFamily generate_family(const std::string& tag, int stage) {
    if (stage < 1) throw std::invalid_argument("stage must be >= 1");
    const std::size_t n = static_cast<std::size_t>(stage);
    auto basis_family = [&](NormModel model) {
        VectorFamily f{std::move(model), {}, tag, stage};
        for (std::size_t k = 0; k < n; ++k) f.members.push_back(spaces::basis_vector(n, k));
        return f;
    };
    if (tag == "l1-basis") return basis_family(spaces::L1Real{n});
    if (tag == "l1-basis-complex") return basis_family(spaces::L1Complex{n});
    if (tag == "cantor-projections") return basis_family(spaces::SignSup{n});
    if (tag == "complexified-basis") return basis_family(spaces::ComplexifiedL1{n});
    if (tag == "exlf-alternating" || tag == "exlf3-alternating") {
        const bool three = tag == "exlf3-alternating";
        const int size = three ? std::max(stage, 3) : (stage + 1) / 2;
        free_space::FiniteMetricSpace space = three ? free_space::exlf3_space(size) : free_space::exlf_space(size);
        const std::size_t points = space.size();
        const std::size_t base = space.base;
        VectorFamily f{spaces::free_space_model(std::move(space)), {}, tag, stage};
        auto delta = [&](int k) {
            Vector v(points);
            std::size_t i = three ? free_space::exlf3_index(k) : free_space::exlf_index(k);
            if (i != base) v[i] = Rational(1);
            return v;
        };
        for (int j = 1; j <= stage; ++j) {
            if (three) f.members.push_back(difference(delta(j), delta(-j)));
            else f.members.push_back(delta(j % 2 ? (j + 1) / 2 : -(j / 2)));
        }
        return f;
    }
    throw std::invalid_argument("unknown family tag '" + tag + "'");
}

DiameterSeparation diam_and_separation(const VectorFamily& family) {
    if (family.members.size() < 2) throw std::invalid_argument("diameter and separation need at least two members");
    family.check();
    std::optional<NormValue> diameter, separation;
    for (std::size_t k = 0; k < family.members.size(); ++k)
        for (std::size_t l = k + 1; l < family.members.size(); ++l) {
            NormValue d = spaces::norm(family.model, difference(family.members[k], family.members[l]));
            if (!diameter || certainly_le(*diameter, d)) {
                if (!diameter || !certainly_le(d, *diameter)) diameter = d;
            } else if (!certainly_le(d, *diameter)) {
                // Overlapping enclosures: keep the hull.
                diameter = NormValue::from_enclosure(from_bounds(std::max(diameter->lower(), d.lower()),
                                                                 std::max(diameter->upper(), d.upper())));
            }
            if (!separation || certainly_le(d, *separation)) {
                if (!separation || !certainly_le(*separation, d)) separation = d;
            } else if (!certainly_le(*separation, d)) {
                separation = NormValue::from_enclosure(from_bounds(std::min(separation->lower(), d.lower()),
                                                                   std::min(separation->upper(), d.upper())));
            }
        }
    return {*diameter, *separation};
}

LowerL1Real lower_l1_real(const VectorFamily& family) {
    const std::size_t n = family.members.size();
    if (n == 0) throw std::invalid_argument("lower l1-estimate needs at least one member");
    family.check();
    LowerL1Real out;
    const bool exact_route = all_real(family.members) && family.model.polyhedral_on_reals();
    if (exact_route) {
        if (n > max_orthant_members)
            throw std::invalid_argument("orthant enumeration limited to " + std::to_string(max_orthant_members) +
                                        " members, got " + std::to_string(n));
    } else {
        if (!is_modulus_model(family.model))
            throw std::invalid_argument("lower_l1_real needs a polyhedral model or an l1-complex / sign-sup / "
                                        "complexified model, got " + family.model.name());
        if (n > max_cutting_plane_members)
            throw std::invalid_argument("cutting-plane route limited to " + std::to_string(max_cutting_plane_members) +
                                        " members, got " + std::to_string(n));
        out.cutting_plane = true;
    }

    if (auto kernel = real_kernel(family.members)) {
        out.exact = Rational(0);
        out.lower = out.upper = {0.0, Rational(0)};
        out.coefficients = *kernel;
        return out;
    }

    const std::uint64_t orthants = std::uint64_t{1} << (n - 1);
    std::optional<Rational> lower;
    std::optional<NormValue> upper;
    auto absorb = [&](const OrthantOutcome& o) {
        ++out.orthants;
        out.lp_solves += o.lp_solves;
        if (!lower || o.lower < *lower) lower = o.lower;
        if (!upper || o.upper.upper() < upper->upper() ||
            (o.upper.exact && upper->exact && *o.upper.exact < *upper->exact)) {
            upper = o.upper;
            out.coefficients = o.alpha;
        }
    };
    if (exact_route) {
        for (std::uint64_t code = 0; code < orthants; ++code) {
            absorb(exact_orthant(family, orthant_signs(n, code)));
            if (sgn(*lower) == 0) break;  // nothing can go below zero
        }
    } else {
        std::vector<CuttingPlane> planes;
        double global_upper = inf;
        for (std::uint64_t code = 0; code < orthants; ++code) {
            planes.emplace_back(family, orthant_signs(n, code));
            global_upper = std::min(global_upper, planes.back().seed());
        }
        for (auto& plane : planes) absorb(plane.run(cutting_plane_tolerance, 400, global_upper));
    }
    if (exact_route) {
        out.exact = *lower;
        out.lower = bound_of(NormValue::from_exact(*lower), true);
        out.upper = bound_of(NormValue::from_exact(*lower), false);
    } else {
        out.lower.value = down(to_double(*lower));
        if (sgn(*lower) == 0) out.lower = {0.0, Rational(0)};
        out.upper = bound_of(*upper, false);
        if (out.lower.value > out.upper.value) out.lower.value = out.upper.value;
    }
    return out;
}

std::vector<ComplexRational> roots_coefficients(int n) {
    if (n < 1) throw std::invalid_argument("roots witness needs n >= 1");
    std::vector<ComplexRational> alpha;
    ComplexRational scale(Rational(1, static_cast<unsigned long>(n)));
    for (int j = 0; j < n; ++j) alpha.push_back(spaces::rational_unit(j * std::numbers::pi / n) * scale);
    return alpha;
}

namespace {

// min_k (||x_k|B_k|| - ||x_k|B_k^c||) in complex l1, where coordinate i goes
// to the member of largest modulus there (lowest index on ties).
Bound block_lower_bound(const VectorFamily& family) {
    const std::size_t n = family.members.size();
    const std::size_t dim = family.model.dimension();
    std::vector<std::size_t> owner(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < n; ++k)
            if (family.members[k][i].norm_squared() > family.members[best][i].norm_squared()) best = k;
        owner[i] = best;
    }
    std::optional<Rational> exact_min;
    bool exact = true;
    double value = inf;
    for (std::size_t k = 0; k < n; ++k) {
        Vector inside(dim), outside(dim);
        for (std::size_t i = 0; i < dim; ++i) (owner[i] == k ? inside : outside)[i] = family.members[k][i];
        spaces::NormModel l1 = spaces::L1Complex{dim};
        NormValue a = spaces::norm(l1, inside), b = spaces::norm(l1, outside);
        if (a.exact && b.exact) {
            Rational d = *a.exact - *b.exact;
            if (!exact_min || d < *exact_min) exact_min = d;
            value = std::min(value, down(to_double(d)));
        } else {
            exact = false;
            value = std::min(value, down(a.lower() - b.upper()));
        }
    }
    Bound out;
    if (exact && exact_min) {
        Rational clamped = sgn(*exact_min) < 0 ? Rational(0) : *exact_min;
        out = bound_of(NormValue::from_exact(clamped), true);
    } else {
        out.value = std::max(0.0, value);
    }
    // The complexified norm dominates 2/pi times complex l1 (average of |cos|).
    if (!std::holds_alternative<spaces::L1Complex>(family.model.variant())) {
        const double two_over_pi = down(2 / std::numbers::pi);
        out.value = down(out.value * two_over_pi);
        out.exact.reset();
        if (out.value < 0) out.value = 0;
    }
    return out;
}

}  // namespace

LowerL1Complex lower_l1_complex(const VectorFamily& family, int phase_grid) {
    if (phase_grid < 4) throw std::invalid_argument("phase grid size must be >= 4");
    if (family.model.field() != Field::Complex || !is_modulus_model(family.model))
        throw std::invalid_argument("lower_l1_complex needs an l1-complex, sign-sup or complexified model, got " +
                                    family.model.name());
    const std::size_t n = family.members.size();
    if (n == 0) throw std::invalid_argument("lower l1-estimate needs at least one member");
    family.check();
    LowerL1Complex out;
    std::optional<NormValue> best;

    auto consider = [&](const std::vector<ComplexRational>& alpha, const std::string& kind) {
        ++out.witnesses_tried;
        NormValue v = spaces::norm(family.model, combine(family.members, alpha));
        bool better = !best || v.upper() < best->upper() ||
                      (v.exact && best->exact && *v.exact < *best->exact);
        if (better) {
            best = v;
            out.witness = alpha;
            out.witness_kind = kind;
        }
    };

    // Phase grid: P equally spaced phases plus the four quadrant phases.
    std::vector<ComplexRational> phases;
    for (int p = 0; p < phase_grid; ++p) phases.push_back(spaces::rational_unit(2 * std::numbers::pi * p / phase_grid));
    for (ComplexRational q : {ComplexRational(Rational(1)), ComplexRational(Rational(0), Rational(1)),
                              ComplexRational(Rational(-1)), ComplexRational(Rational(0), Rational(-1))})
        if (std::find(phases.begin(), phases.end(), q) == phases.end()) phases.push_back(q);

    for (std::size_t k = 0; k < n; ++k) {
        std::vector<ComplexRational> alpha(n);
        alpha[k] = Rational(1);
        consider(alpha, "single");
    }
    const ComplexRational half(Rational(1, 2));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l)
            for (const auto& u : phases) {
                std::vector<ComplexRational> alpha(n);
                alpha[k] = half;
                alpha[l] = u * half;
                consider(alpha, "pair-phase");
            }
    // Full grid of equal-magnitude phases when small.
    double grid_size = std::pow(static_cast<double>(phases.size()), static_cast<double>(n - 1));
    if (n >= 3 && grid_size <= 4096) {
        std::vector<std::size_t> digits(n, 0);
        const ComplexRational scale(Rational(1, static_cast<unsigned long>(n)));
        while (true) {
            std::vector<ComplexRational> alpha(n);
            for (std::size_t k = 0; k < n; ++k) alpha[k] = phases[digits[k]] * scale;
            consider(alpha, "phase-grid");
            std::size_t pos = 1;
            while (pos < n && ++digits[pos] == phases.size()) digits[pos++] = 0;
            if (pos == n) break;
        }
    }
    if (family.generator && (*family.generator == "cantor-projections" || *family.generator == "complexified-basis"))
        consider(roots_coefficients(static_cast<int>(n)), "roots");

    // Real coefficients: the real minimizer is also a complex witness.
    const bool real_exact = all_real(family.members) && n <= max_orthant_members;
    if (real_exact || n <= max_cutting_plane_members) {
        LowerL1Real r = lower_l1_real(family);
        consider(std::vector<ComplexRational>(r.coefficients.begin(), r.coefficients.end()), "real-minimizer");
    }
    out.upper = bound_of(*best, false);

    // Lower bounds.
    out.lower = block_lower_bound(family);
    out.lower_kind = "block";
    const bool settled = out.lower.exact && out.upper.exact && *out.lower.exact == *out.upper.exact;
    if (!settled && n <= max_split_members) {
        VectorFamily doubled{family.model, family.members, std::nullopt, family.stage};
        for (const auto& v : family.members) {
            Vector iv = v;
            for (auto& z : iv) z *= ComplexRational(Rational(0), Rational(1));
            doubled.members.push_back(iv);
        }
        LowerL1Real split = lower_l1_real(doubled);
        if (split.lower.value > out.lower.value) {
            out.lower = split.lower;
            out.lower_kind = "real-splitting";
        }
    }
    if (out.lower.value > out.upper.value) {
        if (out.lower.exact && out.upper.exact && *out.lower.exact > *out.upper.exact)
            throw std::logic_error("complex lower bound exceeds the witness value");
        out.lower.value = out.upper.value;
    }
    return out;
}

EquivalenceConstant l1_equivalence_constant(const VectorFamily& family) {
    family.check();
    for (std::size_t k = 0; k < family.members.size(); ++k) {
        NormValue v = spaces::norm(family.model, family.members[k]);
        bool normalized = v.exact ? *v.exact == 1 : std::abs(v.value() - 1) <= 1e-12;
        if (!normalized) throw std::invalid_argument("member " + std::to_string(k) + " is not normalized");
    }
    EquivalenceConstant out;
    Bound lower, upper;
    if (family.model.field() == Field::Real) {
        LowerL1Real r = lower_l1_real(family);
        lower = r.lower;
        upper = r.upper;
    } else {
        LowerL1Complex c = lower_l1_complex(family);
        lower = c.lower;
        upper = c.upper;
    }
    if (lower.exact && upper.exact && *lower.exact == *upper.exact && sgn(*lower.exact) > 0) {
        out.exact = Rational(1) / *lower.exact;
        out.lower = out.upper = to_double(*out.exact);
        if (Rational(out.lower) > *out.exact) out.lower = down(out.lower);
        if (Rational(out.upper) < *out.exact) out.upper = up(out.upper);
        return out;
    }
    out.lower = upper.value > 0 ? down(1 / upper.value) : inf;
    out.upper = lower.value > 0 ? up(1 / lower.value) : inf;
    return out;
}

namespace {

Rational mass(const std::vector<Rational>& v, std::size_t from, std::size_t to) {
    // Coordinates (from, to], 1-based.
    Rational s = 0;
    for (std::size_t i = from; i < std::min(to, v.size()); ++i) s += abs(v[i]);
    return s;
}

}  // namespace

HumpSelection gliding_hump(const std::vector<std::vector<Rational>>& y, std::size_t m, const Rational& epsilon) {
    if (y.empty()) throw std::invalid_argument("gliding hump needs at least one vector");
    if (sgn(epsilon) <= 0) throw std::invalid_argument("epsilon must be positive");
    HumpSelection out;
    out.boundaries.push_back(m);
    for (std::size_t k = 0; k < y.size(); ++k) {
        const auto& v = y[k];
        const std::size_t boundary = out.boundaries.back();
        Rational needed = mass(v, m, v.size()) - epsilon;
        if (mass(v, boundary, v.size()) <= needed) continue;
        // Smallest end N >= boundary with ||v|(boundary, N]|| > needed.
        std::size_t end = boundary;
        Rational acc = 0;
        while (!(acc > needed)) {
            acc += abs(v[end]);
            ++end;
        }
        out.indices.push_back(k);
        out.boundaries.push_back(end);
    }
    return out;
}

bool verify_hump(const std::vector<std::vector<Rational>>& y, std::size_t m, const Rational& epsilon,
                 const HumpSelection& selection) {
    if (selection.boundaries.size() != selection.indices.size() + 1) return false;
    if (selection.boundaries.front() != m) return false;
    for (std::size_t j = 0; j < selection.indices.size(); ++j) {
        if (j > 0 && selection.indices[j] <= selection.indices[j - 1]) return false;
        std::size_t lo = selection.boundaries[j], hi = selection.boundaries[j + 1];
        if (hi < lo || selection.indices[j] >= y.size()) return false;
        const auto& v = y[selection.indices[j]];
        if (hi > std::max(v.size(), lo)) return false;
        if (!(mass(v, lo, hi) > mass(v, m, v.size()) - epsilon)) return false;
    }
    return true;
}

RosenthalReport rosenthal_stage_check(const VectorFamily& family) {
    LowerL1Real lower = lower_l1_real(family);
    if (!lower.exact) throw std::invalid_argument("finite-stage check needs an exact lower l1-estimate");
    DiameterSeparation ds = diam_and_separation(family);
    if (!ds.diameter.exact || !ds.separation.exact)
        throw std::invalid_argument("finite-stage check needs exact distances");
    RosenthalReport r;
    r.lower = *lower.exact;
    r.separation = *ds.separation.exact;
    r.diameter = *ds.diameter.exact;
    r.holds = 2 * r.lower <= r.separation && r.separation <= r.diameter;
    return r;
}

const char* to_string(Direction d) {
    switch (d) {
        case Direction::Decreasing: return "decreasing";
        case Direction::Increasing: return "increasing";
        case Direction::None: return "none";
    }
    return "?";
}

bool StagedValues::monotone(bool strict) const {
    for (std::size_t i = 1; i < stages.size(); ++i) {
        const Enclosure& a = stages[i - 1].second;
        const Enclosure& b = stages[i].second;
        switch (direction) {
            case Direction::Decreasing:
                if (strict ? !(b.upper() < a.lower()) : b.value > a.value + 1e-12) return false;
                break;
            case Direction::Increasing:
                if (strict ? !(b.lower() > a.upper()) : b.value < a.value - 1e-12) return false;
                break;
            case Direction::None: break;
        }
    }
    return true;
}

bool StagedValues::within_target() const {
    if (!target || stages.empty()) return true;
    const Enclosure& last = stages.back().second;
    double err = std::max(std::abs(last.upper() - *target), std::abs(last.lower() - *target));
    double limit = relative_tolerance ? tolerance * std::abs(*target) : tolerance;
    return err <= limit;
}

std::vector<std::string> staged_tags() {
    return {"roots-ratio", "cantor-dcj-upper", "l1-basis-cjr", "complexified-equivalence"};
}

StagedValues staged_report(const std::string& tag, int max_stage) {
    if (max_stage < 1) throw std::invalid_argument("max stage must be >= 1");
    StagedValues out;
    out.tag = tag;
    if (tag == "roots-ratio") {
        out.direction = Direction::Decreasing;
        out.target = 1 / std::numbers::pi;
        out.tolerance = 2e-4;
        for (int n = 1; n <= max_stage; ++n)
            out.stages.emplace_back(n, subset_selection::roots_witness(n, false).ratio_enclosure);
    } else if (tag == "cantor-dcj-upper") {
        if (static_cast<std::size_t>(max_stage) > spaces::sign_sup_max_dim)
            throw std::invalid_argument("cantor stages limited to " + std::to_string(spaces::sign_sup_max_dim));
        out.direction = Direction::Decreasing;
        out.target = 2 / std::numbers::pi;
        out.tolerance = 0.005;
        out.relative_tolerance = true;
        for (int n = 1; n <= max_stage; ++n) {
            std::vector<ComplexRational> alpha = roots_coefficients(n);
            out.stages.emplace_back(n, spaces::sign_sup_norm(alpha).approx);
        }
    } else if (tag == "l1-basis-cjr") {
        if (static_cast<std::size_t>(max_stage) > max_orthant_members)
            throw std::invalid_argument("l1-basis stages limited to " + std::to_string(max_orthant_members));
        out.direction = Direction::None;
        out.target = 1.0;
        out.tolerance = 0.0;
        out.exact_values = true;
        for (int n = 1; n <= max_stage; ++n) {
            LowerL1Real r = lower_l1_real(generate_family("l1-basis", n));
            out.stages.emplace_back(n, enclose(*r.exact));
        }
    } else if (tag == "complexified-equivalence") {
        out.direction = Direction::Increasing;
        out.target = std::numbers::pi / 2;
        out.tolerance = 0.02;
        for (int n = 1; n <= max_stage; ++n) {
            EquivalenceConstant c = l1_equivalence_constant(generate_family("complexified-basis", n));
            // The witness side of the bracket, which is what the stage certifies.
            out.stages.emplace_back(n, Enclosure::exact(c.lower));
        }
    } else {
        throw std::invalid_argument("unknown staged tag '" + tag + "'");
    }
    return out;
}

}  // namespace schurlab::seq_quantities

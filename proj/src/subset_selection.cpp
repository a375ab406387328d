#include "schurlab/subset_selection.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace schurlab::subset_selection {

namespace {

struct Direction {
    Rational x;
    Rational y;
};

// Angle order on [0, 2pi) without trigonometry.
int half_of(const Direction& d) {
    return (sgn(d.y) > 0 || (sgn(d.y) == 0 && sgn(d.x) > 0)) ? 0 : 1;
}

bool angle_less(const Direction& a, const Direction& b) {
    int ha = half_of(a), hb = half_of(b);
    if (ha != hb) return ha < hb;
    return sgn(a.x * b.y - a.y * b.x) > 0;
}

bool same_direction(const Direction& a, const Direction& b) {
    return a.x * b.y - a.y * b.x == 0 && sgn(a.x * b.x + a.y * b.y) > 0;
}

NormValue total_modulus(std::span<const ComplexRational> lambda) {
    Rational exact = 0;
    HighPrecision approx = 0;
    bool all_exact = true;
    for (const auto& z : lambda) {
        std::optional<Rational> m = exact_sqrt(z.norm_squared());
        if (m) {
            exact += *m;
            approx += to_high_precision(*m);
        } else {
            all_exact = false;
            approx += sqrt(to_high_precision(z.norm_squared()));
        }
    }
    if (all_exact) return NormValue::from_exact(exact);
    return NormValue::from_enclosure(enclose(approx));
}

SelectionResult finish(std::span<const ComplexRational> lambda, std::vector<std::size_t> subset) {
    SelectionResult out;
    std::sort(subset.begin(), subset.end());
    out.subset = std::move(subset);
    for (std::size_t j : out.subset) out.sum += lambda[j];
    out.modulus = NormValue::from_squared(out.sum.norm_squared());
    out.total = total_modulus(lambda);
    if (out.total.exact && sgn(*out.total.exact) == 0) {
        out.ratio = Enclosure::exact(1.0);
        return out;
    }
    if (out.modulus.exact && out.total.exact) {
        out.ratio = enclose(Rational(*out.modulus.exact / *out.total.exact));
        return out;
    }
    HighPrecision total = 0;
    for (const auto& z : lambda) total += sqrt(to_high_precision(z.norm_squared()));
    out.ratio = enclose(HighPrecision(sqrt(to_high_precision(out.sum.norm_squared())) / total));
    return out;
}

Rational sum_squared(std::span<const ComplexRational> lambda, const std::vector<std::size_t>& subset) {
    ComplexRational s;
    for (std::size_t j : subset) s += lambda[j];
    return s.norm_squared();
}

}  // namespace

SelectionResult halfplane_select(std::span<const ComplexRational> lambda) {
    if (lambda.empty()) throw std::invalid_argument("halfplane_select needs at least one number");
    std::vector<Direction> critical;
    for (const auto& z : lambda) {
        if (z.is_zero()) continue;
        for (int o : {1, -1}) {
            Direction u{Rational(-z.im * o), Rational(z.re * o)};
            bool dup = std::any_of(critical.begin(), critical.end(), [&](const Direction& c) { return same_direction(c, u); });
            if (!dup) critical.push_back(u);
        }
    }
    if (critical.empty()) return finish(lambda, {});
    std::sort(critical.begin(), critical.end(), angle_less);

    std::optional<Rational> best;
    std::vector<std::size_t> best_subset;
    auto consider = [&](std::vector<std::size_t> subset) {
        Rational value = sum_squared(lambda, subset);
        if (!best || value > *best) {
            best = value;
            best_subset = std::move(subset);
        }
    };
    // At a critical direction u the open half-plane set changes only by the
    // boundary points; just before u they lie on the side of -rot90(u),
    // just after on the side of rot90(u).
    for (const Direction& u : critical) {
        std::vector<std::size_t> before, after;
        for (std::size_t j = 0; j < lambda.size(); ++j) {
            const auto& z = lambda[j];
            if (z.is_zero()) continue;
            int side = sgn(z.re * u.x + z.im * u.y);
            if (side > 0) {
                before.push_back(j);
                after.push_back(j);
            } else if (side == 0) {
                int turn = sgn(z.im * u.x - z.re * u.y);
                (turn > 0 ? after : before).push_back(j);
            }
        }
        consider(std::move(before));
        consider(std::move(after));
    }
    return finish(lambda, std::move(best_subset));
}

SelectionResult best_subset_bruteforce(std::span<const ComplexRational> lambda) {
    if (lambda.size() > bruteforce_max_size)
        throw std::invalid_argument("brute force limited to " + std::to_string(bruteforce_max_size) + " numbers, got " +
                                    std::to_string(lambda.size()));
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j < lambda.size(); ++j)
        if (!lambda[j].is_zero()) nonzero.push_back(j);
    const std::size_t m = nonzero.size();

    auto subset_of = [&](std::uint64_t mask) {
        std::vector<std::size_t> s;
        for (std::size_t b = 0; b < m; ++b)
            if (mask >> b & 1) s.push_back(nonzero[b]);
        return s;
    };

    Rational re = 0, im = 0, best = 0;
    std::uint64_t mask = 0, best_mask = 0;
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t step = 1; step < count; ++step) {
        const std::size_t b = static_cast<std::size_t>(std::countr_zero(step));
        const auto& z = lambda[nonzero[b]];
        mask ^= std::uint64_t{1} << b;
        if (mask >> b & 1) {
            re += z.re;
            im += z.im;
        } else {
            re -= z.re;
            im -= z.im;
        }
        Rational value = re * re + im * im;
        if (value > best || (value == best && sgn(value) > 0 && subset_of(mask) < subset_of(best_mask))) {
            best = value;
            best_mask = mask;
        }
    }
    return finish(lambda, subset_of(best_mask));
}

bool is_cyclic_run(const std::vector<std::size_t>& subset, std::size_t size) {
    if (subset.empty() || subset.size() > size) return false;
    std::vector<bool> in(size, false);
    for (std::size_t j : subset) {
        if (j >= size || in[j]) return false;
        in[j] = true;
    }
    if (subset.size() == size) return true;
    // A cyclic run has exactly one start: a member whose predecessor is absent.
    std::size_t starts = 0;
    for (std::size_t j = 0; j < size; ++j)
        if (in[j] && !in[(j + size - 1) % size]) ++starts;
    return starts == 1;
}

RootsWitness roots_witness(int n, bool verify_structure) {
    if (n < 1) throw std::invalid_argument("roots witness needs n >= 1");
    RootsWitness w;
    w.n = n;
    for (int j = 0; j < 2 * n; ++j) w.points.push_back(spaces::rational_unit(j * std::numbers::pi / n));
    const HighPrecision pi = boost::math::constants::pi<HighPrecision>();
    w.best = HighPrecision(1) / sin(pi / (2 * n));
    w.ratio = w.best / (2 * n);
    w.best_enclosure = enclose(w.best);
    w.ratio_enclosure = enclose(w.ratio);
    for (int j = 0; j < n; ++j) w.optimal_subset.push_back(static_cast<std::size_t>(j));
    if (verify_structure && n <= 8) {
        SelectionResult brute = best_subset_bruteforce(w.points);
        w.half_circle_verified = brute.subset.size() == static_cast<std::size_t>(n) &&
                                 is_cyclic_run(brute.subset, w.points.size());
    }
    return w;
}

}  // namespace schurlab::subset_selection

#include "schurlab/spaces.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace schurlab::spaces {

using optim::LinearExpr;
using optim::LpBuilder;
using optim::VariableBounds;

NormValue ComplexRational::modulus() const {
    if (is_real()) return NormValue::from_exact(abs(re));
    return NormValue::from_squared(norm_squared());
}

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = r;
    im = i;
    return *this;
}

std::string to_string(const ComplexRational& z) {
    if (z.is_real()) return schurlab::to_string(z.re);
    std::string out = sgn(z.re) == 0 ? "" : schurlab::to_string(z.re);
    Rational mag = abs(z.im);
    std::string sign = sgn(z.im) < 0 ? "-" : (out.empty() ? "" : "+");
    out += sign + (mag == 1 ? "" : schurlab::to_string(mag)) + "i";
    return out;
}

ComplexRational rational_unit(double theta, int bits) {
    constexpr double pi = std::numbers::pi;
    theta = std::remainder(theta, 2 * pi);  // now in [-pi, pi]
    bool flip = std::cos(theta) < 0;
    if (flip) theta += theta > 0 ? -pi : pi;
    Rational t = dyadic_approximation(std::tan(theta / 2), bits);
    Rational t2 = t * t;
    Rational den = 1 + t2;
    ComplexRational u{Rational((1 - t2) / den), Rational(2 * t / den)};
    return flip ? -u : u;
}

Vector real_vector(const std::vector<Rational>& coords) {
    return Vector(coords.begin(), coords.end());
}

Vector basis_vector(std::size_t dim, std::size_t k, const ComplexRational& value) {
    if (k >= dim) throw std::invalid_argument("basis index out of range");
    Vector v(dim);
    v[k] = value;
    return v;
}

std::string to_string(const PhiSpec& phi) {
    switch (phi.kind) {
        case PhiKind::Max: return "max";
        case PhiKind::Sum: return "sum";
        case PhiKind::Lp: return "l" + std::to_string(phi.p);
    }
    return "?";
}

PhiSpec parse_phi(const std::string& text) {
    if (text == "max") return {PhiKind::Max};
    if (text == "sum") return {PhiKind::Sum};
    if (text.size() > 1 && (text[0] == 'l' || text[0] == 'L')) {
        int p = 0;
        try {
            p = std::stoi(text.substr(1));
        } catch (const std::exception&) {
            p = 0;
        }
        if (p == 1) return {PhiKind::Sum};
        if (p >= 2) return {PhiKind::Lp, p};
    }
    throw std::invalid_argument("unknown phi '" + text + "' (expected max, sum or l<p> with integer p >= 1)");
}

NormModel::NormModel(Variant v) : v_(std::move(v)) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, FreeSpace>) {
                if (!m.space) throw std::invalid_argument("free-space model without a metric space");
                if (m.space->size() < 1) throw std::invalid_argument("free-space model over an empty space");
            } else if constexpr (std::is_same_v<T, PhiSum>) {
                if (m.components.empty()) throw std::invalid_argument("phi-sum without components");
                if (m.phi.kind == PhiKind::Lp && m.phi.p < 2) throw std::invalid_argument("phi-sum exponent must be >= 2");
            } else if constexpr (std::is_same_v<T, ChainNorm>) {
                if (m.blocks < 1 || m.block_dim < 1) throw std::invalid_argument("chain norm needs blocks >= 1");
            } else {
                if (m.dim < 1) throw std::invalid_argument("dimension must be >= 1");
            }
        },
        v_);
}

std::size_t NormModel::dimension() const {
    return std::visit(
        [](const auto& m) -> std::size_t {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, FreeSpace>) {
                return m.space->size();
            } else if constexpr (std::is_same_v<T, PhiSum>) {
                std::size_t d = 0;
                for (const auto& c : m.components) d += c.dimension();
                return d;
            } else if constexpr (std::is_same_v<T, ChainNorm>) {
                return 1 + m.blocks * m.block_dim;
            } else {
                return m.dim;
            }
        },
        v_);
}

Field NormModel::field() const {
    return std::visit(
        [](const auto& m) -> Field {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, L1Complex> || std::is_same_v<T, SignSup> ||
                          std::is_same_v<T, ComplexifiedL1>) {
                return Field::Complex;
            } else if constexpr (std::is_same_v<T, PhiSum>) {
                for (const auto& c : m.components)
                    if (c.field() == Field::Complex) return Field::Complex;
                return Field::Real;
            } else {
                return Field::Real;
            }
        },
        v_);
}

std::string NormModel::name() const {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, L1Real>) return "l1-real(" + std::to_string(m.dim) + ")";
            else if constexpr (std::is_same_v<T, L1Complex>) return "l1-complex(" + std::to_string(m.dim) + ")";
            else if constexpr (std::is_same_v<T, LinfReal>) return "linf-real(" + std::to_string(m.dim) + ")";
            else if constexpr (std::is_same_v<T, SignSup>) return "sign-sup(" + std::to_string(m.dim) + ")";
            else if constexpr (std::is_same_v<T, ComplexifiedL1>) return "complexified-l1(" + std::to_string(m.dim) + ")";
            else if constexpr (std::is_same_v<T, FreeSpace>) return "free-space(" + std::to_string(m.space->size()) + ")";
            else if constexpr (std::is_same_v<T, PhiSum>) {
                std::string out = "phi-sum[" + to_string(m.phi) + "](";
                for (std::size_t i = 0; i < m.components.size(); ++i) out += (i ? "," : "") + m.components[i].name();
                return out + ")";
            } else {
                return "chain(" + std::to_string(m.blocks) + "x" + std::to_string(m.block_dim) + ")";
            }
        },
        v_);
}

bool NormModel::polyhedral_on_reals() const {
    if (const auto* p = std::get_if<PhiSum>(&v_)) {
        if (p->phi.kind == PhiKind::Lp) return false;
        return std::all_of(p->components.begin(), p->components.end(),
                           [](const NormModel& c) { return c.polyhedral_on_reals(); });
    }
    return true;
}

void NormModel::check(const Vector& v) const {
    if (v.size() != dimension())
        throw std::invalid_argument("vector of length " + std::to_string(v.size()) + " does not conform to " + name());
    if (field() == Field::Real) {
        for (const auto& z : v)
            if (!z.is_real()) throw std::invalid_argument("complex coordinate in a real model " + name());
    }
    if (const auto* p = std::get_if<PhiSum>(&v_)) {
        std::size_t offset = 0;
        for (const auto& c : p->components) {
            Vector part(v.begin() + static_cast<std::ptrdiff_t>(offset),
                        v.begin() + static_cast<std::ptrdiff_t>(offset + c.dimension()));
            c.check(part);
            offset += c.dimension();
        }
    }
    if (const auto* f = std::get_if<FreeSpace>(&v_)) {
        if (!v[f->space->base].is_zero()) throw std::invalid_argument("free-space vector carries mass on the base point");
    }
}

NormModel free_space_model(free_space::FiniteMetricSpace space) {
    space.validate();
    return NormModel(FreeSpace{std::make_shared<const free_space::FiniteMetricSpace>(std::move(space))});
}

namespace {

std::vector<Rational> real_parts(const Vector& v) {
    std::vector<Rational> out;
    out.reserve(v.size());
    for (const auto& z : v) out.push_back(z.re);
    return out;
}

std::vector<Rational> imag_parts(const Vector& v) {
    std::vector<Rational> out;
    out.reserve(v.size());
    for (const auto& z : v) out.push_back(z.im);
    return out;
}

NormValue l1_complex(const Vector& v) {
    Rational exact_sum = 0;
    HighPrecision approx = 0;
    bool exact = true;
    for (const auto& z : v) {
        std::optional<Rational> m = z.is_real() ? std::optional<Rational>(abs(z.re)) : exact_sqrt(z.norm_squared());
        if (m) {
            exact_sum += *m;
            approx += to_high_precision(*m);
        } else {
            exact = false;
            approx += sqrt(to_high_precision(z.norm_squared()));
        }
    }
    if (exact) return NormValue::from_exact(exact_sum);
    return NormValue::from_enclosure(enclose(approx));
}

}  // namespace

NormValue norm(const NormModel& model, const Vector& v) {
    model.check(v);
    return std::visit(
        [&](const auto& m) -> NormValue {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, L1Real>) {
                Rational s = 0;
                for (const auto& z : v) s += abs(z.re);
                return NormValue::from_exact(s);
            } else if constexpr (std::is_same_v<T, LinfReal>) {
                Rational s = 0;
                for (const auto& z : v) s = std::max(s, Rational(abs(z.re)));
                return NormValue::from_exact(s);
            } else if constexpr (std::is_same_v<T, L1Complex>) {
                return l1_complex(v);
            } else if constexpr (std::is_same_v<T, SignSup> || std::is_same_v<T, ComplexifiedL1>) {
                std::vector<Rational> x = real_parts(v), y = imag_parts(v);
                return complexified_norm(x, y);
            } else if constexpr (std::is_same_v<T, FreeSpace>) {
                free_space::FreeVector mu{real_parts(v)};
                return NormValue::from_exact(free_space::free_norm_primal(mu, *m.space));
            } else if constexpr (std::is_same_v<T, PhiSum>) {
                return phi_sum_norm(m.phi, m.components, v);
            } else {
                auto [t, blocks] = split_chain(m, v);
                return NormValue::from_exact(chain_norm(t, blocks));
            }
        },
        model.variant());
}

NormValue sign_sup_norm(std::span<const ComplexRational> alpha) {
    const std::size_t d = alpha.size();
    if (d == 0) return NormValue::from_exact(Rational(0));
    if (d > sign_sup_max_dim)
        throw std::invalid_argument("sign-pattern enumeration limited to " + std::to_string(sign_sup_max_dim) +
                                    " coefficients, got " + std::to_string(d));
    // Gray-code walk over patterns with s_0 = +1 (s and -s have equal modulus).
    std::vector<int> s(d, 1);
    Rational re = 0, im = 0;
    for (const auto& a : alpha) {
        re += a.re;
        im += a.im;
    }
    Rational best = re * re + im * im;
    const std::uint64_t patterns = std::uint64_t{1} << (d - 1);
    for (std::uint64_t step = 1; step < patterns; ++step) {
        const std::size_t j = 1 + static_cast<std::size_t>(std::countr_zero(step));
        if (s[j] > 0) {
            re -= 2 * alpha[j].re;
            im -= 2 * alpha[j].im;
        } else {
            re += 2 * alpha[j].re;
            im += 2 * alpha[j].im;
        }
        s[j] = -s[j];
        Rational value = re * re + im * im;
        if (value > best) best = value;
    }
    return NormValue::from_squared(best);
}

SweepOptimum complexified_l1_sweep(std::span<const Rational> x, std::span<const Rational> y) {
    if (x.size() != y.size()) throw std::invalid_argument("real and imaginary parts differ in length");
    const std::size_t d = x.size();
    SweepOptimum best;
    best.squared = 0;
    best.signs.assign(d, 1);

    // Breakpoint directions u are perpendicular to some w_k = (x_k, y_k).
    // Collinear duplicates (same direction, exact cross product test) are
    // dropped; both orientations of every perpendicular are kept.
    std::vector<std::pair<Rational, Rational>> directions;
    auto seen = [&](const Rational& a, const Rational& b) {
        for (const auto& [c, e] : directions)
            if (a * e - b * c == 0 && sgn(a * c + b * e) > 0) return true;
        return false;
    };
    for (std::size_t k = 0; k < d; ++k) {
        if (sgn(x[k]) == 0 && sgn(y[k]) == 0) continue;
        for (int o : {1, -1}) {
            Rational a = -y[k] * o, b = x[k] * o;
            if (!seen(a, b)) directions.emplace_back(a, b);
        }
    }
    if (directions.empty()) return best;

    // On the open arc just counterclockwise of u, the sign of <w_k, u'> is
    // sign <w_k, u>, or sign <w_k, rot90(u)> when w_k is perpendicular to u.
    // The objective there is <sum s_k w_k, u'>, whose sup over the circle is
    // |sum s_k w_k|; the maximum over arcs is the norm.
    std::vector<int> signs(d);
    for (const auto& [a, b] : directions) {
        Rational sx = 0, sy = 0;
        for (std::size_t k = 0; k < d; ++k) {
            Rational dot = x[k] * a + y[k] * b;
            int sign = sgn(dot);
            if (sign == 0) sign = sgn(y[k] * a - x[k] * b);
            if (sign == 0) sign = 1;
            signs[k] = sign;
            if (sign > 0) {
                sx += x[k];
                sy += y[k];
            } else {
                sx -= x[k];
                sy -= y[k];
            }
        }
        Rational value = sx * sx + sy * sy;
        if (value > best.squared) {
            best.squared = value;
            best.signs = signs;
        }
    }
    return best;
}

NormValue complexified_norm(std::span<const Rational> x, std::span<const Rational> y, const NormModel& base) {
    if (x.size() != y.size()) throw std::invalid_argument("real and imaginary parts differ in length");
    if (std::holds_alternative<L1Real>(base.variant())) {
        if (base.dimension() != 1 && base.dimension() != x.size())
            throw std::invalid_argument("base norm dimension does not match the vectors");
        return NormValue::from_squared(complexified_l1_sweep(x, y).squared);
    }
    if (std::holds_alternative<LinfReal>(base.variant())) {
        if (base.dimension() != 1 && base.dimension() != x.size())
            throw std::invalid_argument("base norm dimension does not match the vectors");
        // sup over unit u of max_k |<w_k, u>| is max_k |w_k|.
        Rational best = 0;
        for (std::size_t k = 0; k < x.size(); ++k) best = std::max(best, Rational(x[k] * x[k] + y[k] * y[k]));
        return NormValue::from_squared(best);
    }
    throw std::invalid_argument("complexified norm supports l1-real and linf-real bases only, got " + base.name());
}

NormValue apply_phi(const PhiSpec& phi, std::span<const NormValue> values) {
    if (values.empty()) return NormValue::from_exact(Rational(0));
    const bool all_exact = std::all_of(values.begin(), values.end(), [](const NormValue& v) { return v.exact.has_value(); });
    switch (phi.kind) {
        case PhiKind::Max: {
            if (std::all_of(values.begin(), values.end(), [](const NormValue& v) { return v.squared.has_value(); })) {
                std::size_t arg = 0;
                for (std::size_t i = 1; i < values.size(); ++i)
                    if (*values[i].squared > *values[arg].squared) arg = i;
                return values[arg];
            }
            double lo = 0, hi = 0;
            for (const auto& v : values) {
                lo = std::max(lo, v.lower());
                hi = std::max(hi, v.upper());
            }
            return NormValue::from_enclosure(from_bounds(lo, hi));
        }
        case PhiKind::Sum: {
            if (all_exact) {
                Rational s = 0;
                for (const auto& v : values) s += *v.exact;
                return NormValue::from_exact(s);
            }
            HighPrecision lo = 0, hi = 0;
            for (const auto& v : values) {
                lo += HighPrecision(v.lower());
                hi += HighPrecision(v.upper());
            }
            Enclosure l = enclose(lo), h = enclose(hi);
            return NormValue::from_enclosure(from_bounds(l.lower(), h.upper()));
        }
        case PhiKind::Lp: {
            if (phi.p == 2 && std::all_of(values.begin(), values.end(),
                                          [](const NormValue& v) { return v.squared.has_value(); })) {
                Rational s = 0;
                for (const auto& v : values) s += *v.squared;
                return NormValue::from_squared(s);
            }
            if (all_exact) {
                Rational s = 0;
                for (const auto& v : values) {
                    Rational term = 1;
                    for (int i = 0; i < phi.p; ++i) term *= *v.exact;
                    s += term;
                }
                mpz_class num, den;
                const auto p = static_cast<unsigned long>(phi.p);
                if (mpz_root(num.get_mpz_t(), s.get_num().get_mpz_t(), p) != 0 &&
                    mpz_root(den.get_mpz_t(), s.get_den().get_mpz_t(), p) != 0)
                    return NormValue::from_exact(Rational(num, den));
            }
            HighPrecision lo = 0, hi = 0;
            for (const auto& v : values) {
                lo += pow(HighPrecision(std::max(0.0, v.lower())), phi.p);
                hi += pow(HighPrecision(v.upper()), phi.p);
            }
            HighPrecision inv = HighPrecision(1) / phi.p;
            Enclosure l = enclose(HighPrecision(pow(lo, inv))), h = enclose(HighPrecision(pow(hi, inv)));
            return NormValue::from_enclosure(from_bounds(std::max(0.0, l.lower()), h.upper()));
        }
    }
    throw std::logic_error("unreachable phi kind");
}

NormValue phi_sum_norm(const PhiSpec& phi, std::span<const NormModel> components, const Vector& v) {
    std::size_t total = 0;
    for (const auto& c : components) total += c.dimension();
    if (v.size() != total)
        throw std::invalid_argument("phi-sum vector of length " + std::to_string(v.size()) + " does not match " +
                                    std::to_string(total) + " component coordinates");
    std::vector<NormValue> values;
    std::size_t offset = 0;
    for (const auto& c : components) {
        Vector part(v.begin() + static_cast<std::ptrdiff_t>(offset),
                    v.begin() + static_cast<std::ptrdiff_t>(offset + c.dimension()));
        values.push_back(norm(c, part));
        offset += c.dimension();
    }
    return apply_phi(phi, values);
}

Rational chain_norm(const Rational& t, const std::vector<std::vector<Rational>>& blocks) {
    if (blocks.empty()) return abs(t);
    const std::size_t n = blocks.size();
    std::vector<Rational> l1(n), linf(n);
    for (std::size_t j = 0; j < n; ++j)
        for (const Rational& c : blocks[j]) {
            l1[j] += abs(c);
            if (abs(c) > linf[j]) linf[j] = abs(c);
        }
    // Term k: ||x_k||_1 + sum_{j>k} ||x_j||_inf, with ||x_0|| = |t|.
    Rational tail = 0, best = 0;
    for (std::size_t k = n; k-- > 0;) {
        Rational term = l1[k] + tail;
        if (term > best) best = term;
        tail += linf[k];
    }
    Rational head = abs(t) + tail;
    return head > best ? head : best;
}

std::pair<Rational, std::vector<std::vector<Rational>>> split_chain(const ChainNorm& model, const Vector& v) {
    if (v.size() != 1 + model.blocks * model.block_dim)
        throw std::invalid_argument("chain vector has the wrong length");
    std::vector<std::vector<Rational>> blocks(model.blocks, std::vector<Rational>(model.block_dim));
    for (std::size_t j = 0; j < model.blocks; ++j)
        for (std::size_t i = 0; i < model.block_dim; ++i) blocks[j][i] = v[1 + j * model.block_dim + i].re;
    return {v[0].re, blocks};
}

namespace {

LinearExpr l1_epigraph(LpBuilder& b, std::span<const LinearExpr> coords) {
    LinearExpr total;
    for (const auto& c : coords) {
        std::size_t u = b.add_variable();
        b.add_abs_le(c, LinearExpr::variable(u));
        total += LinearExpr::variable(u);
    }
    return total;
}

LinearExpr linf_epigraph(LpBuilder& b, std::span<const LinearExpr> coords) {
    std::size_t m = b.add_variable();
    for (const auto& c : coords) b.add_abs_le(c, LinearExpr::variable(m));
    return LinearExpr::variable(m);
}

}  // namespace

void add_norm_epigraph(const NormModel& model, LpBuilder& builder, const std::vector<LinearExpr>& coords,
                       const LinearExpr& bound) {
    if (coords.size() != model.dimension()) throw std::invalid_argument("epigraph coordinates do not match the model");
    if (!model.polyhedral_on_reals()) throw std::invalid_argument("no polyhedral epigraph for " + model.name());
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LinfReal>) {
                for (const auto& c : coords) builder.add_abs_le(c, bound);
            } else if constexpr (std::is_same_v<T, FreeSpace>) {
                // Transport formulation: nonnegative flow on every ordered pair,
                // net outflow at each non-base point equal to its coefficient.
                const auto& space = *m.space;
                const std::size_t n = space.size();
                std::vector<LinearExpr> net(n);
                LinearExpr cost;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        if (i == j) continue;
                        LinearExpr f = LinearExpr::variable(builder.add_variable());
                        net[i] += f;
                        net[j] -= f;
                        cost += f * space.d(i, j);
                    }
                for (std::size_t i = 0; i < n; ++i)
                    if (i != space.base) builder.add_eq(net[i], coords[i]);
                builder.add_le(cost, bound);
            } else if constexpr (std::is_same_v<T, ChainNorm>) {
                const std::size_t n = m.blocks;
                std::vector<LinearExpr> l1(n), linf(n);
                for (std::size_t j = 0; j < n; ++j) {
                    std::span<const LinearExpr> block(coords.data() + 1 + j * m.block_dim, m.block_dim);
                    l1[j] = l1_epigraph(builder, block);
                    linf[j] = linf_epigraph(builder, block);
                }
                LinearExpr tail;
                for (std::size_t k = n; k-- > 0;) {
                    builder.add_le(l1[k] + tail, bound);
                    tail += linf[k];
                }
                std::size_t head = builder.add_variable();
                builder.add_abs_le(coords[0], LinearExpr::variable(head));
                builder.add_le(LinearExpr::variable(head) + tail, bound);
            } else if constexpr (std::is_same_v<T, PhiSum>) {
                std::size_t offset = 0;
                LinearExpr total;
                for (const auto& c : m.components) {
                    std::vector<LinearExpr> part(coords.begin() + static_cast<std::ptrdiff_t>(offset),
                                                 coords.begin() + static_cast<std::ptrdiff_t>(offset + c.dimension()));
                    offset += c.dimension();
                    if (m.phi.kind == PhiKind::Max) {
                        add_norm_epigraph(c, builder, part, bound);
                    } else {
                        LinearExpr b = LinearExpr::variable(builder.add_variable());
                        add_norm_epigraph(c, builder, part, b);
                        total += b;
                    }
                }
                if (m.phi.kind == PhiKind::Sum) builder.add_le(total, bound);
            } else {
                // Every remaining model is l1 on real coordinates.
                builder.add_le(l1_epigraph(builder, coords), bound);
            }
        },
        model.variant());
}

}  // namespace schurlab::spaces

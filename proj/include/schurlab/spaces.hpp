#pragma once

// Concrete finite-dimensional norm models and their evaluation.

#include "schurlab/free_space.hpp"
#include "schurlab/numeric.hpp"
#include "schurlab/optim/linear_program.hpp"

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace schurlab::spaces {

struct ComplexRational {
    Rational re;
    Rational im;

    ComplexRational() = default;
    ComplexRational(const Rational& r) : re(r) {}  // NOLINT: real numbers embed implicitly
    ComplexRational(const Rational& r, const Rational& i) : re(r), im(i) {}

    bool is_real() const { return sgn(im) == 0; }
    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    Rational norm_squared() const { return re * re + im * im; }
    ComplexRational conj() const { return {re, -im}; }
    NormValue modulus() const;
    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    ComplexRational& operator+=(const ComplexRational& o);
    ComplexRational& operator-=(const ComplexRational& o);
    ComplexRational& operator*=(const ComplexRational& o);
    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
    ComplexRational operator-() const { return {-re, -im}; }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) { return a.re == b.re && a.im == b.im; }
};

std::string to_string(const ComplexRational& z);

/// Exact point on the unit circle within about 2^-bits of angle `theta`,
/// from the rational parametrization ((1-t^2)/(1+t^2), 2t/(1+t^2)).
/// Multiples of pi/2 map to exactly 1, i, -1, -i.
ComplexRational rational_unit(double theta, int bits = 40);

using Vector = std::vector<ComplexRational>;

Vector real_vector(const std::vector<Rational>& coords);
Vector basis_vector(std::size_t dim, std::size_t k, const ComplexRational& value = Rational(1));

enum class Field { Real, Complex };

class NormModel;

struct L1Real { std::size_t dim = 1; };
struct L1Complex { std::size_t dim = 1; };
struct LinfReal { std::size_t dim = 1; };
/// max over sign patterns s of |sum s_j v_j|; the Cantor-cube norm.
struct SignSup { std::size_t dim = 1; };
/// Complexification of real l1: ||x + iy|| = sup over unit (a, b) of ||ax + by||_1.
struct ComplexifiedL1 { std::size_t dim = 1; };
struct FreeSpace { std::shared_ptr<const free_space::FiniteMetricSpace> space; };

enum class PhiKind { Max, Sum, Lp };
struct PhiSpec {
    PhiKind kind = PhiKind::Max;
    int p = 2;  // used only for Lp
};
std::string to_string(const PhiSpec& phi);
PhiSpec parse_phi(const std::string& text);  // "max", "sum", "l3", ...

struct PhiSum {
    std::vector<NormModel> components;
    PhiSpec phi;
};

/// Coordinates (t, x_1, ..., x_n) with t a scalar and each x_j in l1^block_dim:
/// max{ ||x_n||_1, ||x_{n-1}||_1 + ||x_n||_inf, ..., |t| + sum ||x_j||_inf }.
struct ChainNorm {
    std::size_t blocks = 1;
    std::size_t block_dim = 1;
};

class NormModel {
public:
    using Variant = std::variant<L1Real, L1Complex, LinfReal, SignSup, ComplexifiedL1, FreeSpace, PhiSum, ChainNorm>;

    NormModel(Variant v);  // NOLINT: models are built from their variants
    template <typename T>
        requires(!std::is_same_v<std::decay_t<T>, NormModel> && !std::is_same_v<std::decay_t<T>, Variant> &&
                 std::is_constructible_v<Variant, T>)
    NormModel(T model) : NormModel(Variant(std::move(model))) {}  // NOLINT

    const Variant& variant() const { return v_; }
    std::size_t dimension() const;
    Field field() const;
    std::string name() const;
    /// Polyhedral for every vector with real coordinates.
    bool polyhedral_on_reals() const;
    /// Throws std::invalid_argument if `v` does not conform.
    void check(const Vector& v) const;

private:
    Variant v_;
};

NormModel free_space_model(free_space::FiniteMetricSpace space);

/// Exact for polyhedral models with real input and for modulus-type values
/// whose square is rational; certified enclosure otherwise.
NormValue norm(const NormModel& model, const Vector& v);

/// Brute force over the 2^(d-1) sign patterns with s_1 = +1. d <= 20.
/// Exact: the result carries the squared maximum modulus.
NormValue sign_sup_norm(std::span<const ComplexRational> alpha);
constexpr std::size_t sign_sup_max_dim = 20;

/// Exact angle sweep: the sup over unit (a, b) of ||ax + by|| for a base norm
/// of the form sum |.| (l1) or max |.| (linf). The squared value is exact.
NormValue complexified_norm(std::span<const Rational> x, std::span<const Rational> y,
                            const NormModel& base = NormModel(L1Real{}));

/// Direction (a, b) attaining the complexified l1 norm, as an exact
/// (unnormalized) vector together with the optimal sign pattern.
struct SweepOptimum {
    Rational squared;
    std::vector<int> signs;
};
SweepOptimum complexified_l1_sweep(std::span<const Rational> x, std::span<const Rational> y);

NormValue phi_sum_norm(const PhiSpec& phi, std::span<const NormModel> components, const Vector& v);
/// Combine already evaluated component norms.
NormValue apply_phi(const PhiSpec& phi, std::span<const NormValue> values);

/// Exact chain norm for real input.
Rational chain_norm(const Rational& t, const std::vector<std::vector<Rational>>& blocks);

/// Splits chain-norm coordinates into (t, blocks).
std::pair<Rational, std::vector<std::vector<Rational>>> split_chain(const ChainNorm& model, const Vector& v);

/// Adds constraints expressing norm(coords) <= bound to `builder` for real
/// coordinates given as linear expressions. Requires polyhedral_on_reals().
void add_norm_epigraph(const NormModel& model, optim::LpBuilder& builder, const std::vector<optim::LinearExpr>& coords,
                       const optim::LinearExpr& bound);

}  // namespace schurlab::spaces

#pragma once

// Finite-stage sequence quantities: diameter and separation, best lower
// l1-estimates over real and complex coefficients, l1-equivalence constants,
// gliding-hump block selection and staged convergence reports.

#include "schurlab/numeric.hpp"
#include "schurlab/spaces.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace schurlab::seq_quantities {

using spaces::ComplexRational;
using spaces::NormModel;
using spaces::Vector;

struct VectorFamily {
    NormModel model;
    std::vector<Vector> members;
    std::optional<std::string> generator;
    int stage = 0;

    /// Throws std::invalid_argument if a member does not conform to the model.
    void check() const;
};

/// Registered generators, each taking the stage N as its member count:
///   l1-basis            e_1..e_N in real l1^N
///   l1-basis-complex    e_1..e_N in complex l1^N
///   cantor-projections  coordinate projections on {-1,1}^N (sign-sup model)
///   complexified-basis  e_1..e_N in the complexification of real l1^N
///   exlf-alternating    delta(1), delta(-1), delta(2), ... in the free space of exlf
///   exlf3-alternating   delta(n) - delta(-n), n = 1..N, in the free space of exlf3
VectorFamily generate_family(const std::string& tag, int stage);
std::vector<std::string> family_tags();

struct DiameterSeparation {
    NormValue diameter;
    NormValue separation;
};

DiameterSeparation diam_and_separation(const VectorFamily& family);

/// A certified bound, exact when the rational value is known.
struct Bound {
    double value = 0.0;
    std::optional<Rational> exact;
};

struct LowerL1Real {
    /// Exact minimum when every member is real and the model is polyhedral.
    std::optional<Rational> exact;
    Bound lower;
    Bound upper;
    std::vector<Rational> coefficients;  // minimizer (or best point found)
    std::size_t orthants = 0;
    std::size_t lp_solves = 0;
    bool cutting_plane = false;
};

constexpr std::size_t max_orthant_members = 14;
constexpr std::size_t max_cutting_plane_members = 6;
constexpr double cutting_plane_tolerance = 1e-11;
// Families up to this size also get the real-splitting lower bound in
// lower_l1_complex (a cutting-plane run on 2n members).
constexpr std::size_t max_split_members = 2;

/// min over real alpha with sum |alpha_k| = 1 of ||sum alpha_k x_k||, one LP
/// per orthant (alpha_1 >= 0 by symmetry). Complex members of modulus-type
/// models are handled by cutting planes and yield a certified bracket.
LowerL1Real lower_l1_real(const VectorFamily& family);

struct LowerL1Complex {
    Bound lower;
    Bound upper;
    std::vector<ComplexRational> witness;  // attains `upper`
    std::string witness_kind;
    std::string lower_kind;
    std::size_t witnesses_tried = 0;
};

/// Bracket for min over complex alpha with sum |alpha_k| = 1. Upper bounds
/// come from explicit witnesses (phase grids of size P, the real minimizer,
/// and the roots-of-unity witness for the Cantor and complexified families);
/// lower bounds from a block-support estimate and the real lower estimate of
/// the family (x_k, i x_k).
LowerL1Complex lower_l1_complex(const VectorFamily& family, int phase_grid = 8);

struct EquivalenceConstant {
    std::optional<Rational> exact;
    double lower = 0.0;
    double upper = 0.0;  // +inf when the lower l1-estimate is 0
};

EquivalenceConstant l1_equivalence_constant(const VectorFamily& family);

struct HumpSelection {
    std::vector<std::size_t> indices;     // positions in the input list
    std::vector<std::size_t> boundaries;  // N_0 = m, N_1, ...; coordinates are 1-based
};

/// Greedy block selection in l1^d; a block may be empty only when the
/// vector's tail mass beyond m is below epsilon.
HumpSelection gliding_hump(const std::vector<std::vector<Rational>>& y, std::size_t m, const Rational& epsilon);

/// Replays ||y|_(N_{k-1}, N_k]||_1 > ||y|_(m, inf)||_1 - eps exactly.
bool verify_hump(const std::vector<std::vector<Rational>>& y, std::size_t m, const Rational& epsilon,
                 const HumpSelection& selection);

struct RosenthalReport {
    Rational lower;
    Rational separation;
    Rational diameter;
    bool holds = false;  // 2 * lower <= separation <= diameter
};

RosenthalReport rosenthal_stage_check(const VectorFamily& family);

enum class Direction { Decreasing, Increasing, None };
const char* to_string(Direction d);

struct StagedValues {
    std::string tag;
    std::vector<std::pair<int, Enclosure>> stages;
    Direction direction = Direction::None;
    std::optional<double> target;
    double tolerance = 0.0;
    bool relative_tolerance = false;
    bool exact_values = false;  // stage values are exact integers

    /// Consecutive values respect the direction (within 1e-12); with
    /// `strict`, every step must move.
    bool monotone(bool strict = false) const;
    bool within_target() const;
};

/// Tags: roots-ratio, cantor-dcj-upper, l1-basis-cjr, complexified-equivalence.
StagedValues staged_report(const std::string& tag, int max_stage);
std::vector<std::string> staged_tags();

/// The Cantor / complexified-basis witness at stage N: alpha_j = e^{i j pi/N}/N
/// for j = 0..N-1, as exact rationals with sum |alpha_j| = 1.
std::vector<ComplexRational> roots_coefficients(int n);

}  // namespace schurlab::seq_quantities

#pragma once

// Choosing a subset of complex numbers whose sum is large compared with the
// total modulus, and the roots-of-unity family showing 1/pi is the best ratio.

#include "schurlab/numeric.hpp"
#include "schurlab/spaces.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace schurlab::subset_selection {

using spaces::ComplexRational;

struct SelectionResult {
    std::vector<std::size_t> subset;  // increasing indices
    ComplexRational sum;              // exact sum of the selected entries
    NormValue modulus;                // |sum|, squared exactly
    NormValue total;                  // sum of |lambda_j|
    Enclosure ratio;                  // modulus / total; exactly 1 for all-zero input
};

/// Maximizes |sum over I| among open half-plane sets {j : Re(conj(u) lambda_j) > 0},
/// which contain a global maximizer. Ties go to the smallest critical angle
/// in [0, 2pi); zeros are never selected.
SelectionResult halfplane_select(std::span<const ComplexRational> lambda);

constexpr std::size_t bruteforce_max_size = 20;

/// Exact maximizer of |sum over I| over all subsets of the nonzero entries;
/// ties go to the lexicographically smallest index list. m <= 20.
SelectionResult best_subset_bruteforce(std::span<const ComplexRational> lambda);

struct RootsWitness {
    int n = 1;
    /// The 2n points e^{i j pi / n}, j = 0..2n-1, as exact unit-circle
    /// rationals within 1e-12 of the true roots.
    std::vector<ComplexRational> points;
    /// 2 / |1 - e^{i pi / n}| = 1 / sin(pi / 2n).
    HighPrecision best;
    /// best / (2n), the largest achievable ratio for this configuration.
    HighPrecision ratio;
    Enclosure best_enclosure;
    Enclosure ratio_enclosure;
    /// The half circle j = 0..n-1.
    std::vector<std::size_t> optimal_subset;
    /// For n <= 8: the brute-force maximizer on `points` is n cyclically
    /// consecutive points.
    std::optional<bool> half_circle_verified;
};

RootsWitness roots_witness(int n, bool verify_structure = true);

/// True when `subset` is a run of cyclically consecutive indices mod `size`.
bool is_cyclic_run(const std::vector<std::size_t>& subset, std::size_t size);

}  // namespace schurlab::subset_selection

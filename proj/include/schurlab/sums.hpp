#pragma once

// Direct-sum constructions: the chain norm witness vectors, the telescoping
// identity behind them, and a finite-stage probe of Phi-sums of families.

#include "schurlab/numeric.hpp"
#include "schurlab/seq_quantities.hpp"
#include "schurlab/spaces.hpp"

#include <cstddef>
#include <vector>

namespace schurlab::sums {

/// x^k = (1, e_k, ..., e_k) with n copies of e_k; its chain norm is n + 1.
struct ChainWitnessX {
    int n = 0;
    int k = 0;  // 1-based basis index
    spaces::ChainNorm model;
    spaces::Vector vector;
    Rational norm;
};

/// z^m = ((1-1/m)^n, (1-1/m)^(n-1) u, ..., u) with u the average of
/// e_{k_1}, ..., e_{k_m}; its chain norm is 1.
struct ChainWitnessZ {
    int n = 0;
    int m = 0;
    std::vector<int> indices;  // 1-based, strictly increasing
    spaces::ChainNorm model;
    spaces::Vector vector;
    Rational norm;
};

/// Throws std::logic_error if the norm is not exactly n + 1.
ChainWitnessX build_witness_x(int n, int k);

/// indices empty means 1..m. Throws std::invalid_argument on repeated or
/// nonpositive indices and std::logic_error if the norm is not exactly 1.
ChainWitnessZ build_witness_z(int n, int m, std::vector<int> indices = {});

struct TelescopingReport {
    int n = 0;
    int m = 0;
    // Per k = 1..n: (1-1/m)^k + (1/m) sum_{j<k} (1-1/m)^j, summed term by term.
    std::vector<Rational> values;
    bool holds = false;
};

TelescopingReport telescoping_identity(int n, int m);

struct ComponentSummary {
    std::string model;
    std::vector<NormValue> member_norms;
    std::optional<seq_quantities::DiameterSeparation> distances;  // needs two members
};

struct PhiSumProbe {
    spaces::PhiSpec phi;
    std::vector<ComponentSummary> components;
    std::vector<NormValue> composite_norms;
    std::optional<seq_quantities::DiameterSeparation> composite_distances;
    // Phi applied to the component norms must equal the composite norm.
    bool consistent = false;
};

/// Member k of the product family concatenates member k of every component
/// family. All families must have the same number of members.
PhiSumProbe phi_sum_separation_probe(const spaces::PhiSpec& phi,
                                     const std::vector<seq_quantities::VectorFamily>& families);

}  // namespace schurlab::sums

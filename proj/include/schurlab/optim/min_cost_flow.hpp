#pragma once

// Successive-shortest-path min-cost flow over exact rationals.

#include "schurlab/numeric.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace schurlab::optim {

struct FlowArc {
    std::size_t from = 0;
    std::size_t to = 0;
    Rational cost;
    std::optional<Rational> capacity;  // nullopt = uncapacitated
};

/// Positive supply = source, negative = demand. Supplies must sum to zero and
/// arc costs must be nonnegative.
struct FlowNetwork {
    std::vector<Rational> supplies;
    std::vector<FlowArc> arcs;

    std::size_t num_nodes() const { return supplies.size(); }
    std::size_t add_arc(std::size_t from, std::size_t to, const Rational& cost,
                        std::optional<Rational> capacity = std::nullopt);
};

struct FlowResult {
    Rational value;
    std::vector<Rational> flow;  // one entry per arc, in input order
    std::size_t augmentations = 0;
};

/// Throws std::invalid_argument on unbalanced supplies, negative costs or bad
/// arc endpoints, and std::domain_error when no feasible flow exists.
FlowResult min_cost_flow(const FlowNetwork& network);

/// Net outflow minus supply is zero at every node and capacities hold.
bool satisfies_conservation(const FlowNetwork& network, const std::vector<Rational>& flow);

}  // namespace schurlab::optim

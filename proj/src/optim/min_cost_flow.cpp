#include "schurlab/optim/min_cost_flow.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace schurlab::optim {

std::size_t FlowNetwork::add_arc(std::size_t from, std::size_t to, const Rational& cost,
                                 std::optional<Rational> capacity) {
    arcs.push_back({from, to, cost, std::move(capacity)});
    return arcs.size() - 1;
}

namespace {

struct ResidualEdge {
    std::size_t to;
    std::size_t reverse;
    Rational cost;
    std::optional<Rational> residual;  // nullopt = infinite
    std::size_t arc;                   // input arc index, or npos for super edges
    bool forward;
};

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

class Residual {
public:
    explicit Residual(std::size_t nodes) : adjacency_(nodes) {}

    void add(std::size_t from, std::size_t to, const Rational& cost, std::optional<Rational> capacity,
             std::size_t arc) {
        // A self-loop has nonnegative cost and can never lower the optimum.
        if (from == to) return;
        ResidualEdge fwd{to, adjacency_[to].size(), cost, std::move(capacity), arc, true};
        ResidualEdge bwd{from, adjacency_[from].size(), Rational(-cost), Rational(0), arc, false};
        adjacency_[from].push_back(std::move(fwd));
        adjacency_[to].push_back(std::move(bwd));
    }

    std::vector<std::vector<ResidualEdge>>& edges() { return adjacency_; }

private:
    std::vector<std::vector<ResidualEdge>> adjacency_;
};

bool has_capacity(const ResidualEdge& e) {
    return !e.residual || sgn(*e.residual) > 0;
}

}  // namespace

FlowResult min_cost_flow(const FlowNetwork& network) {
    const std::size_t n = network.num_nodes();
    Rational balance;
    for (const auto& s : network.supplies) balance += s;
    if (sgn(balance) != 0) {
        throw std::invalid_argument("unbalanced supplies: net supply " + to_string(balance));
    }
    for (const auto& arc : network.arcs) {
        if (arc.from >= n || arc.to >= n) throw std::invalid_argument("arc endpoint out of range");
        if (sgn(arc.cost) < 0) throw std::invalid_argument("negative arc cost");
        if (arc.capacity && sgn(*arc.capacity) < 0) throw std::invalid_argument("negative arc capacity");
    }

    // Super source s = n, super sink t = n + 1.
    const std::size_t source = n;
    const std::size_t sink = n + 1;
    Residual residual(n + 2);
    for (std::size_t a = 0; a < network.arcs.size(); ++a) {
        const auto& arc = network.arcs[a];
        residual.add(arc.from, arc.to, arc.cost, arc.capacity, a);
    }
    Rational required;
    for (std::size_t v = 0; v < n; ++v) {
        const Rational& s = network.supplies[v];
        if (sgn(s) > 0) {
            residual.add(source, v, Rational(0), s, npos);
            required += s;
        } else if (sgn(s) < 0) {
            residual.add(v, sink, Rational(0), Rational(-s), npos);
        }
    }

    auto& graph = residual.edges();
    const std::size_t total = n + 2;
    std::vector<Rational> potential(total);
    FlowResult result;
    Rational shipped;

    while (shipped < required) {
        // Dijkstra on reduced costs (nonnegative thanks to the potentials).
        std::vector<std::optional<Rational>> dist(total);
        std::vector<bool> done(total, false);
        std::vector<std::size_t> parent_node(total, npos);
        std::vector<std::size_t> parent_edge(total, npos);
        dist[source] = Rational(0);
        for (;;) {
            std::size_t u = npos;
            for (std::size_t v = 0; v < total; ++v) {
                if (!done[v] && dist[v] && (u == npos || *dist[v] < *dist[u])) u = v;
            }
            if (u == npos) break;
            done[u] = true;
            for (std::size_t k = 0; k < graph[u].size(); ++k) {
                const auto& e = graph[u][k];
                if (!has_capacity(e) || done[e.to]) continue;
                Rational candidate = *dist[u] + e.cost + potential[u] - potential[e.to];
                if (!dist[e.to] || candidate < *dist[e.to]) {
                    dist[e.to] = candidate;
                    parent_node[e.to] = u;
                    parent_edge[e.to] = k;
                }
            }
        }
        if (!dist[sink]) {
            throw std::domain_error("flow network has no feasible flow");
        }
        for (std::size_t v = 0; v < total; ++v) {
            if (dist[v]) potential[v] += *dist[v];
        }

        std::optional<Rational> bottleneck;
        for (std::size_t v = sink; v != source; v = parent_node[v]) {
            const auto& e = graph[parent_node[v]][parent_edge[v]];
            if (e.residual && (!bottleneck || *e.residual < *bottleneck)) bottleneck = *e.residual;
        }
        Rational amount = bottleneck ? *bottleneck : Rational(required - shipped);
        if (amount > required - shipped) amount = required - shipped;

        for (std::size_t v = sink; v != source; v = parent_node[v]) {
            auto& e = graph[parent_node[v]][parent_edge[v]];
            auto& back = graph[v][e.reverse];
            if (e.residual) *e.residual -= amount;
            if (back.residual) *back.residual += amount;
        }
        shipped += amount;
        ++result.augmentations;
    }

    result.flow.assign(network.arcs.size(), Rational(0));
    for (std::size_t u = 0; u < n; ++u) {
        for (const auto& e : graph[u]) {
            if (e.forward || e.arc == npos) continue;
            // The reverse edge's residual equals the flow on the forward arc.
            result.flow[e.arc] = *e.residual;
        }
    }
    for (std::size_t a = 0; a < network.arcs.size(); ++a) {
        result.value += network.arcs[a].cost * result.flow[a];
    }
    return result;
}

bool satisfies_conservation(const FlowNetwork& network, const std::vector<Rational>& flow) {
    if (flow.size() != network.arcs.size()) return false;
    std::vector<Rational> net(network.num_nodes());
    for (std::size_t a = 0; a < flow.size(); ++a) {
        const auto& arc = network.arcs[a];
        if (sgn(flow[a]) < 0) return false;
        if (arc.capacity && flow[a] > *arc.capacity) return false;
        net[arc.from] += flow[a];
        net[arc.to] -= flow[a];
    }
    for (std::size_t v = 0; v < net.size(); ++v) {
        if (net[v] != network.supplies[v]) return false;
    }
    return true;
}

}  // namespace schurlab::optim

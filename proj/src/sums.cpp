#include "schurlab/sums.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace schurlab::sums {

using spaces::ComplexRational;

namespace {

Rational power(const Rational& base, int exponent) {
    Rational out = 1;
    for (int i = 0; i < exponent; ++i) out *= base;
    return out;
}

spaces::Vector chain_vector(const Rational& t, const std::vector<std::vector<Rational>>& blocks) {
    spaces::Vector v;
    v.emplace_back(t);
    for (const auto& block : blocks)
        for (const auto& c : block) v.emplace_back(c);
    return v;
}

}  // namespace

ChainWitnessX build_witness_x(int n, int k) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (k < 1) throw std::invalid_argument("basis index must be >= 1");
    std::vector<Rational> e(static_cast<std::size_t>(k));
    e.back() = 1;
    std::vector<std::vector<Rational>> blocks(static_cast<std::size_t>(n), e);
    ChainWitnessX out;
    out.n = n;
    out.k = k;
    out.model = {static_cast<std::size_t>(n), static_cast<std::size_t>(k)};
    out.vector = chain_vector(1, blocks);
    out.norm = spaces::chain_norm(1, blocks);
    if (out.norm != n + 1) throw std::logic_error("chain norm of x^k is " + out.norm.get_str() + ", expected n + 1");
    return out;
}

ChainWitnessZ build_witness_z(int n, int m, std::vector<int> indices) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (indices.empty())
        for (int i = 1; i <= m; ++i) indices.push_back(i);
    if (indices.size() != static_cast<std::size_t>(m))
        throw std::invalid_argument("expected " + std::to_string(m) + " indices, got " + std::to_string(indices.size()));
    std::sort(indices.begin(), indices.end());
    if (indices.front() < 1) throw std::invalid_argument("indices must be >= 1");
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
        throw std::invalid_argument("repeated index in z^m");

    const std::size_t dim = static_cast<std::size_t>(indices.back());
    std::vector<Rational> u(dim);
    for (int i : indices) u[static_cast<std::size_t>(i - 1)] = Rational(1, m);
    const Rational r = Rational(1) - Rational(1, m);
    std::vector<std::vector<Rational>> blocks;
    for (int j = 1; j <= n; ++j) {
        Rational scale = power(r, n - j);
        std::vector<Rational> block = u;
        for (auto& c : block) c *= scale;
        blocks.push_back(std::move(block));
    }
    ChainWitnessZ out;
    out.n = n;
    out.m = m;
    out.indices = indices;
    out.model = {static_cast<std::size_t>(n), dim};
    out.vector = chain_vector(power(r, n), blocks);
    out.norm = spaces::chain_norm(power(r, n), blocks);
    if (out.norm != 1) throw std::logic_error("chain norm of z^m is " + out.norm.get_str() + ", expected 1");
    return out;
}

TelescopingReport telescoping_identity(int n, int m) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    TelescopingReport out{n, m, {}, true};
    const Rational r = Rational(1) - Rational(1, m);
    const Rational inv_m(1, m);
    Rational partial = 0;  // sum_{j<k} r^j
    Rational rk = 1;       // r^k
    for (int k = 1; k <= n; ++k) {
        partial += rk;
        rk *= r;
        Rational value = rk + inv_m * partial;
        // The closed form (1 - r^k) / (1 - r) of the geometric sum must agree.
        Rational closed = rk + inv_m * (Rational(1) - rk) / (Rational(1) - r);
        out.values.push_back(value);
        if (value != 1 || closed != 1) out.holds = false;
    }
    return out;
}

PhiSumProbe phi_sum_separation_probe(const spaces::PhiSpec& phi,
                                     const std::vector<seq_quantities::VectorFamily>& families) {
    if (families.empty()) throw std::invalid_argument("Phi-sum probe needs at least one component family");
    const std::size_t members = families.front().members.size();
    std::vector<spaces::NormModel> models;
    for (std::size_t c = 0; c < families.size(); ++c) {
        families[c].check();
        if (families[c].members.size() != members)
            throw std::invalid_argument("component " + std::to_string(c) + " has " +
                                        std::to_string(families[c].members.size()) + " members, expected " +
                                        std::to_string(members));
        models.push_back(families[c].model);
    }
    if (phi.kind == spaces::PhiKind::Lp && phi.p < 1) throw std::invalid_argument("l_p needs p >= 1");

    PhiSumProbe out;
    out.phi = phi;
    for (const auto& f : families) {
        ComponentSummary s;
        s.model = f.model.name();
        for (const auto& v : f.members) s.member_norms.push_back(spaces::norm(f.model, v));
        if (members >= 2) s.distances = seq_quantities::diam_and_separation(f);
        out.components.push_back(std::move(s));
    }

    seq_quantities::VectorFamily product{spaces::PhiSum{models, phi}, {}, std::nullopt, families.front().stage};
    for (std::size_t k = 0; k < members; ++k) {
        spaces::Vector v;
        for (const auto& f : families) v.insert(v.end(), f.members[k].begin(), f.members[k].end());
        product.members.push_back(std::move(v));
    }
    out.consistent = true;
    for (std::size_t k = 0; k < members; ++k) {
        NormValue composite = spaces::norm(product.model, product.members[k]);
        std::vector<NormValue> parts;
        for (const auto& s : out.components) parts.push_back(s.member_norms[k]);
        NormValue expected = spaces::apply_phi(phi, parts);
        if (composite.exact && expected.exact) {
            if (*composite.exact != *expected.exact) out.consistent = false;
        } else if (composite.upper() < expected.lower() || expected.upper() < composite.lower()) {
            out.consistent = false;
        }
        out.composite_norms.push_back(composite);
    }
    if (members >= 2) out.composite_distances = seq_quantities::diam_and_separation(product);
    return out;
}

}  // namespace schurlab::sums

#include "schurlab/sums.hpp"

#include <gtest/gtest.h>

using namespace schurlab;
using namespace schurlab::sums;

namespace {

// Independent evaluation of the chain norm straight from its definition:
// max over k = 0..n of ||x_k|| + sum_{j>k} ||x_j||_inf, with x_0 = t in the
// scalar slot. Reads the flattened vector directly.
Rational chain_oracle(const spaces::ChainNorm& model, const spaces::Vector& v) {
    auto block = [&](std::size_t j, bool sup) {
        Rational acc = 0;
        for (std::size_t i = 0; i < model.block_dim; ++i) {
            Rational a = abs(v[1 + (j - 1) * model.block_dim + i].re);
            acc = sup ? (a > acc ? a : acc) : acc + a;
        }
        return acc;
    };
    Rational best = 0;
    for (std::size_t k = 0; k <= model.blocks; ++k) {
        Rational term = k == 0 ? abs(v[0].re) : block(k, false);
        for (std::size_t j = k + 1; j <= model.blocks; ++j) term += block(j, true);
        if (term > best) best = term;
    }
    return best;
}

}  // namespace

TEST(WitnessX, Examples) {
    EXPECT_EQ(build_witness_x(2, 1).norm, 3);
    EXPECT_EQ(build_witness_x(1, 1).norm, 2);
    EXPECT_EQ(build_witness_x(4, 7).norm, 5);
    EXPECT_THROW(build_witness_x(0, 1), std::invalid_argument);
}

TEST(WitnessX, GridAgainstOracle) {
    for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= 100; k += 9) {
            ChainWitnessX x = build_witness_x(n, k);
            EXPECT_EQ(chain_oracle(x.model, x.vector), n + 1);
            EXPECT_EQ(*spaces::norm(x.model, x.vector).exact, n + 1);
        }
}

TEST(WitnessZ, Examples) {
    ChainWitnessZ z = build_witness_z(2, 2, {1, 2});
    EXPECT_EQ(z.norm, 1);
    EXPECT_EQ(z.vector[0].re, Rational(1, 4));
    EXPECT_EQ(build_witness_z(1, 1).norm, 1);
    EXPECT_EQ(build_witness_z(1, 1).vector[0].re, 0);
    EXPECT_EQ(build_witness_z(3, 8).norm, 1);
    EXPECT_EQ(build_witness_z(2, 3, {9, 2, 5}).indices, (std::vector<int>{2, 5, 9}));
    EXPECT_THROW(build_witness_z(2, 2, {3, 3}), std::invalid_argument);
    EXPECT_THROW(build_witness_z(2, 2, {1}), std::invalid_argument);
}

TEST(WitnessZ, GridAgainstOracle) {
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 64; ++m) {
            ChainWitnessZ z = build_witness_z(n, m);
            EXPECT_EQ(chain_oracle(z.model, z.vector), 1) << n << " " << m;
            // The last block is u itself: unit l1 norm, sup norm 1/m.
            Rational l1 = 0, sup = 0;
            for (std::size_t i = 0; i < z.model.block_dim; ++i) {
                Rational a = z.vector[1 + (z.model.blocks - 1) * z.model.block_dim + i].re;
                l1 += a;
                if (a > sup) sup = a;
            }
            EXPECT_EQ(l1, 1);
            EXPECT_EQ(sup, Rational(1, m));
        }
}

TEST(Telescoping, Examples) {
    TelescopingReport r = telescoping_identity(2, 2);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.values, (std::vector<Rational>{Rational(1), Rational(1)}));
    EXPECT_TRUE(telescoping_identity(5, 1).holds);
    r = telescoping_identity(5, 7);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.values.size(), 5u);
    EXPECT_THROW(telescoping_identity(3, 0), std::invalid_argument);
}

TEST(Telescoping, Grid) {
    for (int n = 1; n <= 8; ++n)
        for (int m = 1; m <= 128; ++m) EXPECT_TRUE(telescoping_identity(n, m).holds) << n << " " << m;
}

TEST(PhiProbe, Examples) {
    using seq_quantities::generate_family;
    PhiSumProbe p = phi_sum_separation_probe(spaces::parse_phi("max"),
                                             {generate_family("l1-basis", 3), generate_family("l1-basis", 3)});
    EXPECT_TRUE(p.consistent);
    EXPECT_EQ(p.composite_distances->separation.exact, Rational(2));
    EXPECT_EQ(p.composite_norms[0].exact, Rational(1));

    p = phi_sum_separation_probe(spaces::parse_phi("sum"),
                                 {generate_family("l1-basis", 3), generate_family("l1-basis", 3)});
    EXPECT_TRUE(p.consistent);
    for (const auto& v : p.composite_norms) EXPECT_EQ(v.exact, Rational(2));
    EXPECT_EQ(p.composite_distances->separation.exact, Rational(4));

    seq_quantities::VectorFamily zero{spaces::L1Real{2}, {spaces::Vector(2), spaces::Vector(2), spaces::Vector(2)},
                                      std::nullopt, 3};
    p = phi_sum_separation_probe(spaces::parse_phi("l2"), {generate_family("l1-basis", 3), zero});
    EXPECT_TRUE(p.consistent);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(p.composite_norms[k].exact, p.components[0].member_norms[k].exact);
    EXPECT_EQ(p.composite_distances->separation.exact, p.components[0].distances->separation.exact);

    EXPECT_THROW(phi_sum_separation_probe(spaces::parse_phi("max"),
                                          {generate_family("l1-basis", 3), generate_family("l1-basis", 2)}),
                 std::invalid_argument);
}

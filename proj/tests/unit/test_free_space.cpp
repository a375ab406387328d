#include "schurlab/free_space.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace schurlab;
using namespace schurlab::free_space;

namespace {

FiniteMetricSpace two_points() {
    FiniteMetricSpace m;
    m.labels = {"base", "p"};
    m.distance = {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
    return m;
}

FreeVector on(const FiniteMetricSpace& m, std::vector<std::pair<std::size_t, Rational>> entries) {
    FreeVector v;
    v.coefficients.assign(m.size(), Rational(0));
    for (auto& [i, c] : entries) v.coefficients[i] = c;
    return v;
}

}  // namespace

TEST(Metric, ValidateReportsOffendingTriple) {
    FiniteMetricSpace m;
    m.labels = {"a", "b", "c"};
    m.distance = {{Rational(0), Rational(1), Rational(5)},
                  {Rational(1), Rational(0), Rational(1)},
                  {Rational(5), Rational(1), Rational(0)}};
    try {
        m.validate();
        FAIL() << "expected a metric error";
    } catch (const MetricError& e) {
        EXPECT_EQ(e.witness(), (std::vector<std::size_t>{0, 1, 2}));
    }
}

TEST(Metric, PathGraph) {
    Graph g{{"0", "1", "2"}, {{0, 1}, {1, 2}}};
    FiniteMetricSpace m = graph_metric(g);
    EXPECT_EQ(m.d(0, 2), 2);
    m.validate();
}

TEST(Metric, DisconnectedGraphRejected) {
    Graph g{{"a", "b", "c"}, {{0, 1}}};
    EXPECT_THROW(graph_metric(g), std::invalid_argument);
    EXPECT_THROW(graph_metric(exlf3_graph(2)), std::invalid_argument);
}

TEST(Metric, ExampleGraphsMatchClosedForms) {
    for (int n = 1; n <= 20; ++n) {
        FiniteMetricSpace closed = exlf_space(n);
        EXPECT_EQ(graph_metric(exlf_graph(n)).distance, closed.distance);
        closed.validate();
    }
    for (int n = 3; n <= 20; ++n) {
        FiniteMetricSpace closed = exlf3_space(n);
        EXPECT_EQ(graph_metric(exlf3_graph(n)).distance, closed.distance);
        closed.validate();
    }
    FiniteMetricSpace m = exlf_space(4);
    EXPECT_EQ(m.d(exlf_index(3), exlf_index(-3)), 2);
    EXPECT_EQ(m.d(exlf_index(3), exlf_index(2)), 1);
    EXPECT_EQ(m.d(exlf_index(0), exlf_index(-4)), 1);
    FiniteMetricSpace m3 = exlf3_space(4);
    EXPECT_EQ(m3.d(exlf3_index(2), exlf3_index(-2)), 3);
    EXPECT_EQ(m3.d(exlf3_index(2), exlf3_index(-3)), 1);
    EXPECT_EQ(m3.d(exlf3_index(2), exlf3_index(4)), 2);
    EXPECT_EQ(m3.labels[m3.base], "1");
}

TEST(Metric, IndexRoundTrip) {
    for (int k = -10; k <= 10; ++k) EXPECT_EQ(exlf_label(exlf_index(k)), k);
    for (int k = -10; k <= 10; ++k)
        if (k != 0) EXPECT_EQ(exlf3_label(exlf3_index(k)), k);
}

TEST(Lipschitz, Constants) {
    FiniteMetricSpace m = exlf_space(3);
    LipFunction dist;
    for (std::size_t i = 0; i < m.size(); ++i) dist.values.push_back(m.d(i, m.base));
    EXPECT_EQ(lip_constant(dist, m), 1);
    LipFunction zero{std::vector<Rational>(m.size())};
    EXPECT_EQ(lip_constant(zero, m), 0);
    FiniteMetricSpace m3 = exlf3_space(5);
    EXPECT_EQ(lip_constant(exlf3_pair_extremal(5), m3), 1);
}

TEST(FreeNorm, SmallExamples) {
    FiniteMetricSpace m = two_points();
    FreeVector d = on(m, {{1, Rational(1)}});
    EXPECT_EQ(free_norm_primal(d, m), 1);
    EXPECT_EQ(free_norm_dual(d, m), 1);

    FiniteMetricSpace m3 = exlf3_space(4);
    FreeVector x = on(m3, {{exlf3_index(3), Rational(1)}, {exlf3_index(-3), Rational(-1)}});
    EXPECT_EQ(free_norm_primal(x, m3), 3);
    EXPECT_EQ(free_norm_dual(x, m3), 3);

    FreeVector zero = on(m3, {});
    EXPECT_EQ(free_norm_primal(zero, m3), 0);
    EXPECT_EQ(free_norm_dual(zero, m3), 0);
}

TEST(FreeNorm, BaseMassRejected) {
    FiniteMetricSpace m = two_points();
    FreeVector bad = on(m, {{0, Rational(1)}});
    EXPECT_THROW(free_norm_primal(bad, m), std::invalid_argument);
    EXPECT_THROW(free_norm_dual(bad, m), std::invalid_argument);
}

TEST(FreeNorm, PrimalEqualsDualOnRandomSpaces) {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 60; ++trial) {
        FiniteMetricSpace m = fixtures::random_metric_space(rng, 2 + rng() % 7);
        m.validate();
        FreeVector mu = fixtures::random_free_vector(rng, m);
        auto [dual, witness] = free_norm_dual_with_witness(mu, m);
        EXPECT_EQ(free_norm_primal(mu, m), dual) << "trial " << trial;
        EXPECT_LE(lip_constant(witness, m), 1);
        EXPECT_EQ(witness.values[m.base], 0);
    }
}

TEST(FreeNorm, ClosedFormulas) {
    FiniteMetricSpace m = exlf_space(5);
    FreeVector x = on(m, {{exlf_index(1), Rational(1)}, {exlf_index(-1), Rational(-1)}, {exlf_index(2), make_rational(1, 2)}});
    EXPECT_EQ(exlf_norm_formula(x), 2);
    EXPECT_EQ(free_norm_dual(x, m), 2);
    EXPECT_EQ(exlf_norm_formula(on(m, {{exlf_index(1), Rational(1)}})), 1);
    EXPECT_EQ(exlf_norm_formula(on(m, {})), 0);

    FiniteMetricSpace mp = mprime_space(1);
    EXPECT_EQ(mprime_norm_formula(on(mp, {{1, Rational(1)}, {2, Rational(-1)}})), 1);
    EXPECT_EQ(mprime_norm_formula(on(mp, {{1, Rational(1)}, {2, Rational(1)}})), 2);

    std::mt19937_64 rng(99);
    FiniteMetricSpace m5 = mprime_space(5);
    for (int trial = 0; trial < 30; ++trial) {
        FreeVector a = fixtures::random_free_vector(rng, m);
        EXPECT_EQ(exlf_norm_formula(a), free_norm_dual(a, m));
        FreeVector b = fixtures::random_free_vector(rng, m5);
        EXPECT_EQ(mprime_norm_formula(b), free_norm_dual(b, m5));
    }
}

TEST(FreeNorm, SubspaceIsometry) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        FiniteMetricSpace small = exlf_space(3);
        FiniteMetricSpace large = exlf_space(6);
        FreeVector v = fixtures::random_free_vector(rng, small);
        FreeVector w;
        w.coefficients.assign(large.size(), Rational(0));
        for (std::size_t i = 0; i < small.size(); ++i) w.coefficients[i] = v.coefficients[i];
        EXPECT_EQ(free_norm_primal(v, small), free_norm_primal(w, large));
    }
}

TEST(Sandwich, DiscreteMetricIsExactlyHalfMass) {
    FiniteMetricSpace m = mprime_space(3);
    std::mt19937_64 rng(3);
    std::vector<std::vector<Rational>> samples;
    for (int i = 0; i < 10; ++i) samples.push_back(fixtures::random_coefficients(rng, m.size()));
    samples.push_back(std::vector<Rational>(m.size()));
    SandwichReport r = separated_sandwich_check(m, samples);
    EXPECT_TRUE(r.holds);
    for (const auto& s : r.samples) EXPECT_EQ(s.norm, s.l1_mass / 2);
    EXPECT_EQ(r.samples.back().norm, 0);
}

TEST(Sandwich, RandomSeparatedSpaces) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        FiniteMetricSpace m = fixtures::random_separated_space(rng, 2 + rng() % 6);
        std::vector<std::vector<Rational>> samples{fixtures::random_coefficients(rng, m.size())};
        EXPECT_TRUE(separated_sandwich_check(m, samples).holds);
    }
}

TEST(Classification, Examples) {
    const int n = 5;
    LipFunction f{std::vector<Rational>(2 * n + 1)};
    f.values[exlf_index(2)] = make_rational(1, 2);
    f.values[exlf_index(-4)] = make_rational(1, 3);
    LipClassification c = classify_lip_exlf(f, n);
    EXPECT_EQ(c.kind, LipClassification::Kind::Type1);
    EXPECT_EQ(c.c, make_rational(1, 2));

    LipFunction g{std::vector<Rational>(2 * n + 1)};
    g.values[exlf_index(3)] = 1;
    g.values[exlf_index(-3)] = -1;
    c = classify_lip_exlf(g, n);
    EXPECT_EQ(c.kind, LipClassification::Kind::Type2);
    EXPECT_EQ(c.n, 3);
    EXPECT_EQ(c.a, 1);
    EXPECT_EQ(c.b, 1);

    g.values[exlf_index(5)] = 1;
    EXPECT_EQ(classify_lip_exlf(g, n).kind, LipClassification::Kind::NotOneLipschitz);
}

TEST(Classification, IffLipschitz) {
    std::mt19937_64 rng(2718);
    const int n = 4;
    FiniteMetricSpace m = exlf_space(n);
    int type2 = 0;
    for (int trial = 0; trial < 400; ++trial) {
        LipFunction f{std::vector<Rational>(m.size())};
        for (std::size_t i = 1; i < m.size(); ++i) f.values[i] = fixtures::random_rational(rng, -1, 1, 4);
        if (trial % 2 == 0) {
            // Plant a wide exceptional pair so Type 2 is exercised often.
            int k = 1 + static_cast<int>(rng() % n);
            f.values[exlf_index(k)] = make_rational(3 + static_cast<int>(rng() % 2), 4);
            f.values[exlf_index(-k)] = make_rational(-3 - static_cast<int>(rng() % 2), 4);
            for (std::size_t i = 1; i < m.size(); ++i)
                if (std::abs(exlf_label(i)) != k && rng() % 4 != 0) f.values[i] = fixtures::random_rational(rng, 0, 0, 4) / 4;
        }
        LipClassification c = classify_lip_exlf(f, n);
        bool lip = lip_constant(f, m) <= 1;
        EXPECT_EQ(c.kind != LipClassification::Kind::NotOneLipschitz, lip) << "trial " << trial;
        if (c.kind == LipClassification::Kind::Type2) ++type2;
    }
    EXPECT_GT(type2, 20);
}

TEST(Certificates, Exlf3PairsAreExactlyOne) {
    CertificateReport r = exceptional_pair_certificate(Example::ExLF3, 6);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.pair_certificates.size(), 15u);
    for (const auto& c : r.pair_certificates) EXPECT_EQ(c.optimum, 1);
    FiniteMetricSpace m = exlf3_space(6);
    LipFunction f = exlf3_pair_extremal(6);
    EXPECT_EQ(f.values[exlf3_index(2)] - f.values[exlf3_index(-2)], 1);
    EXPECT_EQ(f.values[exlf3_index(5)] - f.values[exlf3_index(-5)], 1);
}

TEST(Certificates, ExlfConfinement) {
    auto start = std::chrono::steady_clock::now();
    CertificateReport r = exceptional_pair_certificate(Example::ExLF, 5, make_rational(1, 4));
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << "exlf n=5 certificates: " << r.confinement_certificates.size() << " LPs in " << ms << " ms\n";
    EXPECT_TRUE(r.holds);
    ASSERT_TRUE(r.confinement_bound.has_value());
    EXPECT_LE(*r.confinement_bound, make_rational(3, 4));
    EXPECT_EQ(r.pair_bound, 1);
}

TEST(Witnesses, Constants) {
    for (int n : {3, 5}) {
        WitnessReport a = schur_witness_report(Example::ExLF, n);
        for (const auto& v : a.member_norms) EXPECT_EQ(v, 1);
        EXPECT_EQ(a.oscillation_pair_distance, 2);
        EXPECT_EQ(a.certificate_bound, 1);
        EXPECT_EQ(a.oscillation_ratio, 2);

        WitnessReport b = schur_witness_report(Example::ExLF3, n);
        for (const auto& v : b.member_norms) EXPECT_EQ(v, 3);
        EXPECT_EQ(b.min_pairwise, 4);
        EXPECT_EQ(b.max_pairwise, 4);
        EXPECT_EQ(b.certificate_bound, 1);
        EXPECT_EQ(b.oscillation_ratio, 2);
        ASSERT_TRUE(b.norm_ratio.has_value());
        EXPECT_EQ(*b.norm_ratio, 3);
    }
}

#include "schurlab/seq_quantities.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <numbers>

using namespace schurlab;
using namespace schurlab::seq_quantities;
using spaces::ComplexRational;

namespace {

ComplexRational cr(long re, long im = 0) { return {Rational(re), Rational(im)}; }

VectorFamily random_real_family(std::mt19937_64& rng, const NormModel& model, std::size_t members) {
    VectorFamily f{model, {}, std::nullopt, 0};
    for (std::size_t k = 0; k < members; ++k) {
        spaces::Vector v(model.dimension());
        for (auto& z : v) z = fixtures::random_rational(rng, -2, 2, 3);
        if (const auto* fs = std::get_if<spaces::FreeSpace>(&model.variant())) v[fs->space->base] = ComplexRational();
        f.members.push_back(v);
    }
    return f;
}

Rational norm_at(const VectorFamily& f, const std::vector<Rational>& alpha) {
    spaces::Vector w(f.model.dimension());
    for (std::size_t k = 0; k < alpha.size(); ++k)
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += ComplexRational(alpha[k]) * f.members[k][i];
    return *spaces::norm(f.model, w).exact;
}

}  // namespace

TEST(Families, Generators) {
    for (const auto& tag : family_tags()) {
        VectorFamily f = generate_family(tag, 4);
        EXPECT_EQ(f.members.size(), 4u) << tag;
        f.check();
    }
    EXPECT_THROW(generate_family("fibonacci", 3), std::invalid_argument);
}

TEST(DiameterSeparation, Examples) {
    DiameterSeparation ds = diam_and_separation(generate_family("l1-basis", 4));
    EXPECT_EQ(ds.diameter.exact, Rational(2));
    EXPECT_EQ(ds.separation.exact, Rational(2));

    VectorFamily constant{spaces::L1Real{2}, {spaces::basis_vector(2, 0), spaces::basis_vector(2, 0)}, std::nullopt, 0};
    ds = diam_and_separation(constant);
    EXPECT_EQ(ds.diameter.exact, Rational(0));
    EXPECT_EQ(ds.separation.exact, Rational(0));

    ds = diam_and_separation(generate_family("exlf3-alternating", 5));
    EXPECT_EQ(ds.diameter.exact, Rational(4));
    EXPECT_EQ(ds.separation.exact, Rational(4));

    VectorFamily single{spaces::L1Real{1}, {spaces::basis_vector(1, 0)}, std::nullopt, 0};
    EXPECT_THROW(diam_and_separation(single), std::invalid_argument);
}

TEST(LowerReal, Examples) {
    for (int n = 1; n <= 10; ++n) EXPECT_EQ(lower_l1_real(generate_family("l1-basis", n)).exact, Rational(1)) << n;
    VectorFamily repeated{spaces::L1Real{1}, {spaces::basis_vector(1, 0), spaces::basis_vector(1, 0)}, std::nullopt, 0};
    LowerL1Real r = lower_l1_real(repeated);
    EXPECT_EQ(r.exact, Rational(0));
    EXPECT_EQ(abs(r.coefficients[0]) + abs(r.coefficients[1]), 1);
}

TEST(LowerReal, ComplexPairOverRealScalars) {
    VectorFamily f{spaces::L1Complex{1}, {spaces::Vector{cr(1)}, spaces::Vector{cr(0, 1)}}, std::nullopt, 0};
    LowerL1Real r = lower_l1_real(f);
    EXPECT_TRUE(r.cutting_plane);
    EXPECT_LE(r.lower.value, std::numbers::sqrt2 / 2);
    EXPECT_GE(r.upper.value, std::numbers::sqrt2 / 2);
    EXPECT_LT(r.upper.value - r.lower.value, 1e-9);
}

TEST(LowerReal, RejectsLargeOrUnsupported) {
    EXPECT_THROW(lower_l1_real(generate_family("l1-basis", 15)), std::invalid_argument);
    std::vector<NormModel> comps{NormModel(spaces::L1Real{1}), NormModel(spaces::L1Real{1})};
    VectorFamily lp{spaces::PhiSum{comps, {spaces::PhiKind::Lp, 2}}, {spaces::Vector{cr(1), cr(0)}}, std::nullopt, 0};
    EXPECT_THROW(lower_l1_real(lp), std::invalid_argument);
}

TEST(LowerReal, AttainedAndBelowSamples) {
    std::mt19937_64 rng(606);
    std::vector<NormModel> models{spaces::L1Real{3}, spaces::LinfReal{3}, spaces::SignSup{3},
                                  spaces::free_space_model(free_space::exlf_space(1)), spaces::ChainNorm{2, 1}};
    for (const NormModel& model : models) {
        for (int trial = 0; trial < 8; ++trial) {
            VectorFamily f = random_real_family(rng, model, 2 + rng() % 3);
            LowerL1Real r = lower_l1_real(f);
            ASSERT_TRUE(r.exact.has_value());
            Rational l1 = 0;
            for (const auto& a : r.coefficients) l1 += abs(a);
            EXPECT_EQ(l1, 1) << model.name();
            EXPECT_EQ(norm_at(f, r.coefficients), *r.exact) << model.name();
            for (int s = 0; s < 200; ++s) {
                std::vector<Rational> alpha(f.members.size());
                Rational total = 0;
                for (auto& a : alpha) {
                    a = fixtures::random_rational(rng, -1, 1, 5);
                    total += abs(a);
                }
                if (sgn(total) == 0) continue;
                for (auto& a : alpha) a /= total;
                EXPECT_LE(*r.exact, norm_at(f, alpha)) << model.name();
            }
        }
    }
}

TEST(LowerReal, MonotoneUnderAppending) {
    std::mt19937_64 rng(909);
    for (int trial = 0; trial < 15; ++trial) {
        VectorFamily f = random_real_family(rng, spaces::L1Real{3}, 4);
        VectorFamily prefix = f;
        prefix.members.pop_back();
        EXPECT_LE(*lower_l1_real(f).exact, *lower_l1_real(prefix).exact);
    }
}

TEST(Rosenthal, StageChecks) {
    RosenthalReport r = rosenthal_stage_check(generate_family("l1-basis", 6));
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.lower, 1);
    EXPECT_EQ(r.separation, 2);
    EXPECT_EQ(r.diameter, 2);
    r = rosenthal_stage_check(generate_family("exlf3-alternating", 4));
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.separation, 4);
    EXPECT_EQ(r.diameter, 4);
    EXPECT_LE(2 * r.lower, 4);
    r = rosenthal_stage_check(generate_family("l1-basis", 2));
    EXPECT_TRUE(r.holds);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial)
        EXPECT_TRUE(rosenthal_stage_check(random_real_family(rng, spaces::L1Real{3}, 3)).holds);
}

TEST(LowerComplex, Examples) {
    VectorFamily pair{spaces::L1Complex{1}, {spaces::Vector{cr(1)}, spaces::Vector{cr(0, 1)}}, std::nullopt, 0};
    LowerL1Complex c = lower_l1_complex(pair);
    EXPECT_EQ(c.upper.exact, Rational(0));
    EXPECT_EQ(c.lower.value, 0.0);

    for (int n = 1; n <= 5; ++n) {
        c = lower_l1_complex(generate_family("l1-basis-complex", n));
        EXPECT_EQ(c.lower.exact, Rational(1)) << n;
        EXPECT_EQ(c.upper.exact, Rational(1)) << n;
    }
    EXPECT_THROW(lower_l1_complex(generate_family("l1-basis", 3)), std::invalid_argument);
    EXPECT_THROW(lower_l1_complex(pair, 3), std::invalid_argument);
}

TEST(LowerComplex, CantorRootsWitness) {
    for (int n : {2, 4, 8}) {
        LowerL1Complex c = lower_l1_complex(generate_family("cantor-projections", n));
        EXPECT_LE(c.lower.value, c.upper.value);
        EXPECT_GE(c.lower.value, 2 / std::numbers::pi - 1e-12);
        // pi/2 relation between the real and complex estimates: cjr = 1 here.
        EXPECT_LE(1.0, std::numbers::pi / 2 * c.upper.value);
    }
    LowerL1Complex c8 = lower_l1_complex(generate_family("cantor-projections", 8));
    EXPECT_NEAR(c8.upper.value, 0.6407288619353765, 1e-10);
    EXPECT_EQ(c8.witness_kind, "roots");
}

TEST(LowerComplex, BracketsRandomFamilies) {
    std::mt19937_64 rng(4444);
    for (int trial = 0; trial < 12; ++trial) {
        NormModel model = trial % 2 ? NormModel(spaces::L1Complex{2}) : NormModel(spaces::ComplexifiedL1{2});
        VectorFamily f{model, {}, std::nullopt, 0};
        for (int k = 0; k < 3; ++k) {
            spaces::Vector v(2);
            for (auto& z : v) z = {fixtures::random_rational(rng, -2, 2, 3), trial % 3 ? Rational(0) : fixtures::random_rational(rng, -2, 2, 3)};
            f.members.push_back(v);
        }
        LowerL1Complex c = lower_l1_complex(f);
        EXPECT_LE(c.lower.value, c.upper.value);
        bool real = trial % 3 != 0;
        if (real) {
            LowerL1Real r = lower_l1_real(f);
            EXPECT_LE(c.upper.value, r.upper.value);
        }
    }
}

TEST(Equivalence, Examples) {
    EquivalenceConstant e = l1_equivalence_constant(generate_family("l1-basis", 5));
    EXPECT_EQ(e.exact, Rational(1));
    VectorFamily opposite{spaces::L1Real{1}, {spaces::Vector{cr(1)}, spaces::Vector{cr(-1)}}, std::nullopt, 0};
    e = l1_equivalence_constant(opposite);
    EXPECT_TRUE(std::isinf(e.upper));
    VectorFamily unnormalized{spaces::L1Real{1}, {spaces::Vector{cr(2)}}, std::nullopt, 0};
    EXPECT_THROW(l1_equivalence_constant(unnormalized), std::invalid_argument);

    e = l1_equivalence_constant(generate_family("complexified-basis", 8));
    EXPECT_GE(e.lower, std::numbers::pi / 2 - 0.02);
    EXPECT_NEAR(e.lower, 1.560722576129026, 1e-9);
}

TEST(Hump, Examples) {
    std::vector<std::vector<Rational>> disjoint(4, std::vector<Rational>(4));
    for (std::size_t k = 0; k < 4; ++k) disjoint[k][k] = 1;
    HumpSelection h = gliding_hump(disjoint, 0, make_rational(1, 10));
    EXPECT_EQ(h.indices, (std::vector<std::size_t>{0, 1, 2, 3}));
    EXPECT_EQ(h.boundaries, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
    EXPECT_TRUE(verify_hump(disjoint, 0, make_rational(1, 10), h));

    std::vector<std::vector<Rational>> same(3, std::vector<Rational>{Rational(1), Rational(0)});
    h = gliding_hump(same, 1, make_rational(1, 10));
    EXPECT_EQ(h.indices.size(), 3u);
    EXPECT_TRUE(verify_hump(same, 1, make_rational(1, 10), h));
    EXPECT_THROW(gliding_hump({}, 0, Rational(1)), std::invalid_argument);
}

TEST(Hump, RandomDecayingTails) {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t d = 5 + rng() % 20;
        std::vector<std::vector<Rational>> y(3 + rng() % 8, std::vector<Rational>(d));
        for (auto& v : y) {
            Rational scale = fixtures::random_rational(rng, 1, 3);
            std::size_t start = rng() % d;
            for (std::size_t i = start; i < d; ++i) {
                v[i] = scale;
                scale /= 2 + static_cast<long>(rng() % 3);
            }
        }
        Rational eps = make_rational(1, 2 + static_cast<long>(rng() % 20));
        std::size_t m = rng() % 3;
        HumpSelection h = gliding_hump(y, m, eps);
        EXPECT_TRUE(verify_hump(y, m, eps, h));
    }
    // A tampered selection must fail the replay.
    std::vector<std::vector<Rational>> y{{Rational(1), Rational(1)}};
    HumpSelection bad{{0}, {0, 1}};
    EXPECT_FALSE(verify_hump(y, 0, make_rational(1, 10), bad));
}

TEST(Staged, RootsRatio) {
    StagedValues s = staged_report("roots-ratio", 64);
    EXPECT_TRUE(s.monotone(true));
    EXPECT_TRUE(s.within_target());
}

TEST(Staged, CantorUpper) {
    auto start = std::chrono::steady_clock::now();
    StagedValues s = staged_report("cantor-dcj-upper", 16);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << "cantor stages 1..16: " << ms << " ms\n";
    EXPECT_TRUE(s.monotone(true));
    EXPECT_TRUE(s.within_target());
    EXPECT_NEAR(s.stages.back().second.value, 0.6376435773361455, 1e-10);
    EXPECT_NEAR(s.stages[7].second.value, 0.6407288619353765, 1e-10);
}

TEST(Staged, BasisAndEquivalence) {
    StagedValues b = staged_report("l1-basis-cjr", 10);
    for (const auto& [n, v] : b.stages) EXPECT_EQ(v.value, 1.0) << n;
    EXPECT_TRUE(b.within_target());
    StagedValues e = staged_report("complexified-equivalence", 8);
    EXPECT_TRUE(e.monotone());
    EXPECT_TRUE(e.within_target());
    EXPECT_THROW(staged_report("nope", 3), std::invalid_argument);
}

#include "schurlab/spaces.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace schurlab;
using namespace schurlab::spaces;

namespace {

ComplexRational cr(long re, long im = 0) { return {Rational(re), Rational(im)}; }

Vector random_vector(std::mt19937_64& rng, const NormModel& model) {
    Vector v(model.dimension());
    for (auto& z : v) {
        z.re = fixtures::random_rational(rng, -3, 3);
        if (model.field() == Field::Complex) z.im = fixtures::random_rational(rng, -3, 3);
    }
    if (const auto* f = std::get_if<FreeSpace>(&model.variant())) v[f->space->base] = ComplexRational();
    return v;
}

Vector scaled(const Vector& v, const ComplexRational& c) {
    Vector out = v;
    for (auto& z : out) z *= c;
    return out;
}

Vector added(const Vector& a, const Vector& b) {
    Vector out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

std::vector<NormModel> sample_models() {
    std::vector<NormModel> models{L1Real{4}, L1Complex{3}, LinfReal{4}, SignSup{4}, ComplexifiedL1{3},
                                  free_space_model(free_space::exlf_space(2)), ChainNorm{2, 2}};
    models.emplace_back(PhiSum{{NormModel(L1Real{2}), NormModel(LinfReal{2})}, {PhiKind::Max}});
    models.emplace_back(PhiSum{{NormModel(L1Complex{2}), NormModel(SignSup{2})}, {PhiKind::Sum}});
    models.emplace_back(PhiSum{{NormModel(L1Real{1}), NormModel(L1Real{2})}, {PhiKind::Lp, 2}});
    return models;
}

}  // namespace

TEST(Complex, Arithmetic) {
    ComplexRational a = cr(1, 2), b = cr(3, -1);
    EXPECT_EQ(a * b, cr(5, 5));
    EXPECT_EQ(a + b, cr(4, 1));
    EXPECT_EQ(cr(3, 4).modulus().exact, Rational(5));
    EXPECT_FALSE(cr(1, 1).modulus().exact.has_value());
    EXPECT_EQ(to_string(cr(0, -1)), "-i");
    EXPECT_EQ(to_string(ComplexRational(make_rational(1, 2), Rational(3))), "1/2+3i");
}

TEST(Complex, RationalUnitCircle) {
    EXPECT_EQ(rational_unit(0.0), cr(1));
    EXPECT_EQ(rational_unit(std::numbers::pi / 2), cr(0, 1));
    EXPECT_EQ(rational_unit(std::numbers::pi), cr(-1));
    EXPECT_EQ(rational_unit(-std::numbers::pi / 2), cr(0, -1));
    EXPECT_EQ(rational_unit(3 * std::numbers::pi / 2), cr(0, -1));
    for (int k = 0; k < 50; ++k) {
        double theta = 0.37 * k - 5;
        ComplexRational u = rational_unit(theta);
        EXPECT_EQ(u.norm_squared(), 1);
        EXPECT_NEAR(to_double(u.re), std::cos(theta), 1e-11);
        EXPECT_NEAR(to_double(u.im), std::sin(theta), 1e-11);
    }
}

TEST(Norms, Examples) {
    EXPECT_EQ(norm(L1Real{3}, real_vector({Rational(1), Rational(-2), Rational(3)})).exact, Rational(6));
    Vector chain{cr(1), cr(1), cr(0), cr(1), cr(0)};
    EXPECT_EQ(norm(ChainNorm{2, 2}, chain).exact, Rational(3));

    free_space::FiniteMetricSpace two;
    two.labels = {"base", "p"};
    two.distance = {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
    EXPECT_EQ(norm(free_space_model(two), Vector{cr(0), cr(1)}).exact, Rational(1));
    EXPECT_EQ(norm(L1Complex{2}, Vector{cr(3, 4), cr(0, -2)}).exact, Rational(7));
}

TEST(Norms, ShapeMismatch) {
    EXPECT_THROW(norm(L1Real{3}, Vector{cr(1)}), std::invalid_argument);
    EXPECT_THROW(norm(L1Real{1}, Vector{cr(1, 1)}), std::invalid_argument);
    EXPECT_THROW(NormModel(L1Real{0}), std::invalid_argument);
}

TEST(SignSup, Examples) {
    std::vector<ComplexRational> a{cr(1), cr(1)};
    EXPECT_EQ(sign_sup_norm(a).exact, Rational(2));
    std::vector<ComplexRational> real{ComplexRational(make_rational(1, 2)), ComplexRational(make_rational(-1, 3)),
                                      ComplexRational(make_rational(1, 6))};
    EXPECT_EQ(sign_sup_norm(real).exact, Rational(1));
    // Four consecutive pairs of the eighth roots of unity, scaled by 1/8:
    // the brute force must stay below 2/pi plus the finite-stage margin.
    std::vector<ComplexRational> roots;
    for (int j = 0; j < 8; ++j) {
        ComplexRational u = rational_unit(j * std::numbers::pi / 4);
        roots.push_back(u * ComplexRational(make_rational(1, 8)));
    }
    NormValue v = sign_sup_norm(roots);
    EXPECT_NEAR(v.value(), 0.6532814824381883, 1e-11);
    EXPECT_LT(v.value(), 2 / std::numbers::pi + 0.02);
    std::vector<ComplexRational> too_many(21, cr(1));
    EXPECT_THROW(sign_sup_norm(too_many), std::invalid_argument);
}

TEST(Complexified, Examples) {
    std::vector<Rational> e1{Rational(1), Rational(0)}, zero{Rational(0), Rational(0)}, e2{Rational(0), Rational(1)};
    EXPECT_EQ(complexified_norm(e1, zero).exact, Rational(1));
    NormValue root2 = complexified_norm(e1, e1);
    EXPECT_EQ(root2.squared, Rational(2));
    EXPECT_NEAR(root2.value(), std::sqrt(2.0), 1e-15);
    std::vector<Rational> diff{Rational(1), Rational(-1)};
    EXPECT_EQ(complexified_norm(diff, zero).exact, Rational(2));
    EXPECT_EQ(complexified_norm(e1, e2).squared, Rational(2));
    EXPECT_EQ(complexified_norm(e1, e1, NormModel(LinfReal{2})).squared, Rational(2));
    EXPECT_THROW(complexified_norm(e1, std::vector<Rational>{Rational(1)}), std::invalid_argument);
}

TEST(Complexified, AgreesWithSignEnumeration) {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t d = 1 + rng() % 10;
        std::vector<Rational> x(d), y(d);
        std::vector<ComplexRational> alpha(d);
        for (std::size_t k = 0; k < d; ++k) {
            // Sparse and repeated coordinates exercise collinear breakpoints.
            x[k] = rng() % 4 == 0 ? Rational(0) : fixtures::random_rational(rng, -2, 2, 3);
            y[k] = rng() % 4 == 0 ? Rational(0) : fixtures::random_rational(rng, -2, 2, 3);
            if (k > 0 && rng() % 5 == 0) {
                x[k] = -2 * x[k - 1];
                y[k] = -2 * y[k - 1];
            }
            alpha[k] = {x[k], y[k]};
        }
        NormValue sweep = complexified_norm(x, y);
        NormValue brute = sign_sup_norm(alpha);
        EXPECT_EQ(*sweep.squared, *brute.squared) << "trial " << trial;
        EXPECT_NEAR(sweep.value(), brute.value(), 1e-12);

        std::vector<Rational> zero(d);
        Rational l1 = 0;
        for (const auto& c : x) l1 += abs(c);
        EXPECT_EQ(complexified_norm(x, zero).exact, l1);
    }
}

TEST(Phi, Examples) {
    std::vector<NormModel> comps{NormModel(L1Real{1}), NormModel(L1Real{1})};
    Vector v{cr(3), cr(-4)};
    EXPECT_EQ(phi_sum_norm({PhiKind::Max}, comps, v).exact, Rational(4));
    EXPECT_EQ(phi_sum_norm({PhiKind::Sum}, comps, v).exact, Rational(7));
    std::vector<NormModel> l1s{NormModel(L1Real{2}), NormModel(L1Real{2})};
    EXPECT_EQ(phi_sum_norm({PhiKind::Max}, l1s, Vector{cr(1), cr(0), cr(1), cr(0)}).exact, Rational(1));
    NormValue l2 = phi_sum_norm({PhiKind::Lp, 2}, comps, v);
    EXPECT_TRUE(l2.approx.contains(5.0));
    EXPECT_EQ(parse_phi("l1").kind, PhiKind::Sum);
    EXPECT_EQ(parse_phi("l3").p, 3);
    EXPECT_THROW(parse_phi("median"), std::invalid_argument);
}

TEST(Phi, BetweenSupAndSumOnBasis) {
    for (const PhiSpec& phi : {PhiSpec{PhiKind::Max}, PhiSpec{PhiKind::Sum}, PhiSpec{PhiKind::Lp, 3}}) {
        std::vector<NormModel> comps{NormModel(L1Real{1}), NormModel(L1Real{1}), NormModel(L1Real{1})};
        for (int mask = 1; mask < 8; ++mask) {
            Vector v(3);
            int count = 0;
            for (int j = 0; j < 3; ++j)
                if (mask & (1 << j)) {
                    v[j] = cr(j % 2 ? -1 : 1);
                    ++count;
                }
            NormValue value = phi_sum_norm(phi, comps, v);
            EXPECT_GE(value.upper(), 1.0);
            EXPECT_LE(value.lower(), static_cast<double>(count));
        }
    }
}

TEST(Chain, Examples) {
    std::vector<std::vector<Rational>> x{{Rational(1), Rational(0)}, {Rational(1), Rational(0)}};
    EXPECT_EQ(chain_norm(Rational(1), x), 3);
    Rational h = make_rational(1, 2);
    std::vector<std::vector<Rational>> z{{Rational(h / 2), Rational(h / 2)}, {h, h}};
    EXPECT_EQ(chain_norm(make_rational(1, 4), z), 1);
    EXPECT_EQ(chain_norm(Rational(0), {{Rational(0)}, {Rational(0)}}), 0);
}

TEST(Chain, SandwichedBetweenMaxAndSum) {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t blocks = 1 + rng() % 4, dim = 1 + rng() % 3;
        Rational t = fixtures::random_rational(rng, -2, 2);
        std::vector<std::vector<Rational>> x(blocks, std::vector<Rational>(dim));
        Rational mx = abs(t), sum = abs(t);
        for (auto& b : x) {
            Rational l1 = 0;
            for (auto& c : b) {
                c = fixtures::random_rational(rng, -2, 2);
                l1 += abs(c);
            }
            mx = std::max(mx, l1);
            sum += l1;
        }
        Rational value = chain_norm(t, x);
        EXPECT_LE(mx, value);
        EXPECT_LE(value, sum);
    }
}

TEST(Norms, HomogeneityAndTriangle) {
    std::mt19937_64 rng(555);
    for (const NormModel& model : sample_models()) {
        for (int trial = 0; trial < 100; ++trial) {
            Vector u = random_vector(rng, model), w = random_vector(rng, model);
            ComplexRational c = model.field() == Field::Complex
                                    ? ComplexRational(fixtures::random_rational(rng, -2, 2), fixtures::random_rational(rng, -2, 2))
                                    : ComplexRational(fixtures::random_rational(rng, -2, 2));
            NormValue nu = norm(model, u), nw = norm(model, w), nuw = norm(model, added(u, w));
            NormValue ncu = norm(model, scaled(u, c));
            // |c| * ||u|| = ||c u||, exactly when both sides are exact.
            if (nu.squared && ncu.squared) {
                EXPECT_EQ(*ncu.squared, c.norm_squared() * *nu.squared) << model.name();
            } else {
                double m = std::sqrt(to_double(c.norm_squared()));
                EXPECT_NEAR(ncu.value(), m * nu.value(), 1e-10 * (1 + nu.value())) << model.name();
            }
            if (nu.exact && nw.exact && nuw.exact) {
                EXPECT_LE(*nuw.exact, *nu.exact + *nw.exact) << model.name();
            } else {
                EXPECT_LE(nuw.lower(), nu.upper() + nw.upper()) << model.name();
            }
        }
    }
}

TEST(Epigraph, MatchesNormOnRealVectors) {
    std::mt19937_64 rng(8080);
    for (const NormModel& model : sample_models()) {
        if (!model.polyhedral_on_reals()) continue;
        for (int trial = 0; trial < 10; ++trial) {
            Vector v = random_vector(rng, model);
            for (auto& z : v) z.im = 0;
            optim::LpBuilder b(optim::Sense::Minimize);
            std::size_t t = b.add_variable();
            std::vector<optim::LinearExpr> coords;
            for (const auto& z : v) coords.emplace_back(z.re);
            add_norm_epigraph(model, b, coords, optim::LinearExpr::variable(t));
            b.set_objective(optim::LinearExpr::variable(t));
            optim::LpResult r = b.solve();
            ASSERT_TRUE(r.optimal()) << model.name();
            NormValue n = norm(model, v);
            if (n.exact) EXPECT_EQ(r.value, *n.exact) << model.name();
            else EXPECT_TRUE(n.approx.contains(to_double(r.value))) << model.name();
        }
    }
}

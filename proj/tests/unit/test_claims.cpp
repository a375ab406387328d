#include "schurlab/claims.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace schurlab;
using namespace schurlab::claims;

TEST(Decimal, Rendering) {
    EXPECT_EQ(to_decimal(make_rational(1, 3), 3), "0.333");
    EXPECT_EQ(to_decimal(make_rational(-2, 3), 3), "-0.667");
    EXPECT_EQ(to_decimal(make_rational(5, 2), 0), "3");
    EXPECT_EQ(to_decimal(make_rational(-1, 2000), 3), "-0.001");
    EXPECT_EQ(to_decimal(make_rational(-1, 3000), 3), "0.000");
    EXPECT_EQ(to_decimal(Rational(4), 2), "4.00");
    EXPECT_EQ(to_decimal(0.125, 2), "0.13");
    EXPECT_THROW(to_decimal(Rational(1), -1), std::invalid_argument);
}

TEST(Judge, Rules) {
    Rule eq;
    eq.exact_target = Rational(4);
    EXPECT_EQ(judge(eq, Computed::from_exact(4)), Status::Exact);
    EXPECT_EQ(judge(eq, Computed::from_exact(make_rational(7, 2))), Status::Failed);
    EXPECT_EQ(judge(eq, Computed::from_bracket(4, 4)), Status::Failed);  // equality needs an exact value

    Rule nr;
    nr.kind = Rule::Kind::Near;
    nr.target = 1.0;
    nr.tolerance = 0.1;
    EXPECT_EQ(judge(nr, Computed::from_bracket(0.95, 1.05)), Status::WithinTolerance);
    EXPECT_EQ(judge(nr, Computed::from_bracket(0.85, 1.05)), Status::Failed);
    nr.relative = true;
    nr.target = 10.0;
    EXPECT_EQ(judge(nr, Computed::from_bracket(9.5, 10.5)), Status::WithinTolerance);

    Rule bt;
    bt.kind = Rule::Kind::Between;
    bt.high = make_rational(3, 4);
    EXPECT_EQ(judge(bt, Computed::from_exact(make_rational(3, 4))), Status::Exact);
    EXPECT_EQ(judge(bt, Computed::from_exact(1)), Status::Failed);
    bt.low = make_rational(1, 2);
    EXPECT_EQ(judge(bt, Computed::from_exact_bracket(make_rational(1, 2), make_rational(3, 4))), Status::Exact);
    EXPECT_EQ(judge(bt, Computed::from_bracket(0.6, 0.7)), Status::WithinTolerance);
    EXPECT_EQ(judge(bt, Computed::from_bracket(0.4, 0.7)), Status::Failed);
    EXPECT_THROW(Computed::from_bracket(2, 1), std::logic_error);
}

TEST(Registry, UniqueIdsAndLookup) {
    std::set<std::string> ids;
    for (const auto& c : registry()) EXPECT_TRUE(ids.insert(c.id).second) << c.id;
    EXPECT_EQ(find("exlf3.separation").default_stage, 6);
    EXPECT_THROW(find("missing"), std::invalid_argument);
}

TEST(Registry, RunsInRegistrationOrder) {
    auto results = run({"chain.z", "exlf3.separation", "l1.cjr"}, std::nullopt, 7);
    ASSERT_EQ(results.size(), 3u);
    EXPECT_EQ(results[0].claim, "chain.z");
    EXPECT_EQ(results[1].claim, "exlf3.separation");
    EXPECT_EQ(results[1].computed.exact, Rational(4));
    for (const auto& r : results) EXPECT_EQ(r.status, Status::Exact) << r.claim;
}

TEST(Registry, StageDependentTarget) {
    auto r = run({"chain.x"}, 3, 7);
    EXPECT_EQ(r[0].computed.exact, Rational(4));
    EXPECT_EQ(r[0].status, Status::Exact);
    EXPECT_EQ(r[0].paper.value, 4.0);
}

TEST(Registry, FailingStageIsReported) {
    // At n = 4 the roots ratio is still 0.0083 away from 1/pi.
    auto r = run({"rudin.ratio"}, 4, 7);
    EXPECT_EQ(r[0].status, Status::Failed);
    // Errors inside a claim become failed rows rather than exceptions.
    r = run({"free.sandwich"}, 2, 7);
    EXPECT_EQ(r[0].status, Status::Failed);
    EXPECT_NE(r[0].detail.find("error"), std::string::npos);
}

#include <gtest/gtest.h>

#include <qpwalk/verify.hpp>

TEST(Verify, EverySuitePasses)
{
    const auto results = qpwalk::run_verify("all");
    ASSERT_EQ(results.size(), 6U);
    for (const auto &s : results) {
        for (const auto &c : s.checks) {
            EXPECT_TRUE(c.passed) << s.suite << ": " << c.name << " " << c.detail;
        }
    }
    EXPECT_TRUE(qpwalk::to_json(results)["passed"].get<bool>());
}

TEST(Verify, MutatedOracleIsCaught)
{
    qpwalk::verify_options opt;
    opt.mutate_dp = true;
    const auto results = qpwalk::run_verify("oracle", opt);
    ASSERT_EQ(results.size(), 1U);
    EXPECT_FALSE(results[0].passed());
    EXPECT_FALSE(qpwalk::to_json(results)["passed"].get<bool>());
}

TEST(Verify, UnknownSuite)
{
    EXPECT_THROW((void)qpwalk::run_verify("everything"), qpwalk::error);
}

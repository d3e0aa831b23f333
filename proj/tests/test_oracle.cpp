#include "pgsa/oracle.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "testutil.hpp"

using namespace pgsa;

TEST(Oracle, RunningExample) {
    ReadSet rs = test::example_reads();
    OracleIndex oracle(rs, 2);
    EXPECT_EQ(oracle.q4("TT"), 3u);
    EXPECT_EQ(oracle.q6("TT"), 0u);
    EXPECT_EQ(oracle.q2("GG"), 0u);
    EXPECT_EQ(oracle.q1("TT"), (ReadList{4}));
}

TEST(Oracle, CrossQueryAlgebra) {
    test::Rng rng(20240640);
    for (int iter = 0; iter < 40; ++iter) {
        ReadSet rs = test::random_reads(
            rng, {.q = 1 + uint32_t(test::rand_below(rng, 40)),
                  .m = 8 + uint32_t(test::rand_below(rng, 16)),
                  .alphabet_size = iter % 2 ? 5 : 4});
        uint32_t k = 1 + uint32_t(test::rand_below(rng, rs.read_length()));
        OracleIndex oracle(rs, k);
        for (int pi = 0; pi < 10; ++pi) {
            uint32_t r = uint32_t(test::rand_below(rng, rs.count()));
            uint32_t start = uint32_t(test::rand_below(rng, rs.read_length() - k + 1));
            std::string f(rs.read(r).substr(start, k));
            auto q1 = oracle.q1(f), q5 = oracle.q5(f);
            auto q3 = oracle.q3(f), q7 = oracle.q7(f);
            EXPECT_EQ(oracle.q2(f), q1.size());
            EXPECT_EQ(oracle.q4(f), q3.size());
            EXPECT_EQ(oracle.q6(f), q5.size());
            EXPECT_EQ(q5.size(), q7.size());
            EXPECT_LE(q5.size(), q1.size());
            EXPECT_LE(q1.size(), q3.size());
            auto sorted1 = test::sorted(q1);
            for (uint32_t id : q5)
                EXPECT_TRUE(std::binary_search(sorted1.begin(), sorted1.end(), id));
            auto sorted3 = test::sorted(q3);
            for (const auto& occ : q7)
                EXPECT_TRUE(std::binary_search(sorted3.begin(), sorted3.end(), occ));
        }
    }
}

TEST(Oracle, TotalSubstringCount) {
    // q4 summed over all distinct windows is exactly q*(m-k+1)
    test::Rng rng(20240641);
    ReadSet rs = test::random_reads(rng, {.q = 13, .m = 9});
    for (uint32_t k = 1; k <= 9; ++k) {
        OracleIndex oracle(rs, k);
        std::map<std::string, uint64_t> direct;
        for (uint32_t r = 0; r < rs.count(); ++r)
            for (uint32_t pos = 0; pos + k <= 9; ++pos)
                ++direct[std::string(rs.read(r).substr(pos, k))];
        uint64_t total = 0;
        for (const auto& [f, n] : direct) {
            EXPECT_EQ(oracle.q4(f), n) << f;
            total += n;
        }
        EXPECT_EQ(total, uint64_t(rs.count()) * (9 - k + 1));
    }
}

TEST(Oracle, DispatchAndPositionalInput) {
    ReadSet rs = test::example_reads();
    auto res = oracle_query(rs, QueryType::Q4, PatternInput{"TT"});
    EXPECT_EQ(std::get<uint64_t>(res), 3u);
    auto pos = oracle_query(rs, QueryType::Q1, PositionalInput{2, 0, 3});
    EXPECT_EQ(test::sorted(std::get<ReadList>(pos)), (ReadList{1, 2, 3}));
    EXPECT_THROW(oracle_query(rs, QueryType::Q1, PositionalInput{9, 0, 3}),
                 UnknownReadId);
    EXPECT_THROW(oracle_query(rs, QueryType::Q1, PositionalInput{1, 3, 3}),
                 PositionOutOfRange);
    EXPECT_THROW(oracle_query(rs, QueryType::Q1, PatternInput{"AXT"}), InvalidSymbol);
}

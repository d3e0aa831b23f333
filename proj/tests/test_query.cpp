#include "pgsa/query.hpp"

#include <gtest/gtest.h>

#include <thread>

#include "pgsa/oracle.hpp"
#include "testutil.hpp"

using namespace pgsa;
using pgsa::test::RandomReadsOptions;

namespace {

QueryInput pat(std::string s) { return PatternInput{std::move(s)}; }
QueryInput at(uint32_t read, uint32_t start, uint32_t len) {
    return PositionalInput{read, start, len};
}

Index example_index(int s = 1, CacheLevels cache = CacheLevels::none()) {
    return Index::build(test::example_reads(),
                        {.sparsity = s, .cache = cache});
}

}  // namespace

TEST(Query, Q3RunningExample) {
    Index idx = example_index();
    QuerySession session(idx);
    EXPECT_EQ(test::sorted(session.q3_positions(pat("CGT"))),
              (OccurrenceList{{1, 1}, {2, 0}, {3, 1}}));
    EXPECT_EQ(test::sorted(session.q3_positions(pat("TT"))),
              (OccurrenceList{{4, 0}, {4, 1}, {4, 2}}));
    EXPECT_TRUE(session.q3_positions(pat("GGG")).empty());
}

TEST(Query, Q4RunningExample) {
    Index idx = example_index();
    QuerySession session(idx);
    EXPECT_EQ(session.q4_count(pat("CGT")), 3u);
    EXPECT_EQ(session.q4_count(pat("TT")), 3u);
    EXPECT_EQ(session.q4_count(pat("GGG")), 0u);
}

TEST(Query, Q1Q2RunningExample) {
    Index idx = example_index();
    QuerySession session(idx);
    EXPECT_EQ(test::sorted(session.q1_reads(pat("CGT"))), (ReadList{1, 2, 3}));
    EXPECT_EQ(session.q1_reads(pat("TT")), (ReadList{4}));
    EXPECT_TRUE(session.q1_reads(pat("GGG")).empty());
    EXPECT_EQ(session.q2_count(pat("CGT")), 3u);
    EXPECT_EQ(session.q2_count(pat("TT")), 1u);
    EXPECT_EQ(session.q2_count(pat("GGG")), 0u);
}

TEST(Query, Q5Q6Q7RunningExample) {
    Index idx = example_index();
    QuerySession session(idx);
    EXPECT_EQ(test::sorted(session.q5_reads(pat("T"))), (ReadList{1, 2, 3}));
    EXPECT_TRUE(session.q5_reads(pat("TT")).empty());
    EXPECT_EQ(test::sorted(session.q5_reads(pat("CGT"))), (ReadList{1, 2, 3}));
    EXPECT_EQ(session.q6_count(pat("T")), 3u);
    EXPECT_EQ(session.q6_count(pat("TT")), 0u);
    EXPECT_EQ(session.q6_count(pat("GGG")), 0u);
    EXPECT_EQ(test::sorted(session.q7_positions(pat("CGT"))),
              (OccurrenceList{{1, 1}, {2, 0}, {3, 1}}));
    EXPECT_TRUE(session.q7_positions(pat("TT")).empty());
}

TEST(Query, PositionalInputResolution) {
    Index idx = example_index();
    EXPECT_EQ(resolve_positional(idx, {2, 0, 3}), "CGT");
    EXPECT_EQ(resolve_positional(idx, {1, 0, 4}), "ACGT");
    EXPECT_THROW(resolve_positional(idx, {4, 3, 2}), PositionOutOfRange);
    EXPECT_THROW(resolve_positional(idx, {0, 0, 2}), UnknownReadId);
    EXPECT_THROW(resolve_positional(idx, {5, 0, 2}), UnknownReadId);

    QuerySession session(idx);
    EXPECT_EQ(test::sorted(session.q1_reads(at(2, 0, 3))), (ReadList{1, 2, 3}));
    EXPECT_EQ(session.q4_count(at(2, 0, 3)), 3u);
}

TEST(Query, InputValidation) {
    Index idx = example_index(3);
    QuerySession session(idx);
    EXPECT_THROW(session.q3_positions(pat("AT")), PatternTooShort);  // k < s
    EXPECT_THROW(session.q3_positions(pat("")), PatternTooShort);
    EXPECT_THROW(session.q4_count(pat("ANT")), InvalidSymbol);  // 4-letter index
    EXPECT_THROW(session.q1_reads(at(2, 3, 3)), PositionOutOfRange);
}

TEST(Query, PatternLongerThanReadIsEmpty) {
    Index idx = example_index();
    QuerySession session(idx);
    EXPECT_EQ(session.q4_count(pat("ACGTA")), 0u);  // k > m, spans reads in PG
    EXPECT_TRUE(session.q1_reads(pat("ACGTATTTT")).empty());
}

TEST(Query, LowercasePatternNormalized) {
    Index idx = example_index();
    QuerySession session(idx);
    EXPECT_EQ(session.q4_count(pat("cgt")), 3u);
}

TEST(Query, SessionHygieneAfterEveryQuery) {
    Index idx = example_index();
    QuerySession session(idx);
    for (const char* f : {"CGT", "TT", "T", "GGG", "ACGT"}) {
        session.q1_reads(pat(f));
        EXPECT_TRUE(session.flags_clear()) << f;
        session.q5_reads(pat(f));
        EXPECT_TRUE(session.flags_clear()) << f;
        session.q7_positions(pat(f));
        EXPECT_TRUE(session.flags_clear()) << f;
    }
}

TEST(Query, RepetitiveHeuristicNeverChangesAnswers) {
    test::Rng rng(20240630);
    for (int iter = 0; iter < 25; ++iter) {
        RandomReadsOptions opt;
        opt.q = 1 + uint32_t(test::rand_below(rng, 40));
        opt.m = 14 + uint32_t(test::rand_below(rng, 14));
        opt.alphabet_size = iter % 2 ? 5 : 4;
        ReadSet rs = test::random_reads(rng, opt);
        // low threshold so the heuristic actually kicks in at small k
        Index idx = Index::build(rs, {.sparsity = 2, .repetitive_threshold = 5});
        QuerySession with(idx), without(idx);
        without.set_repetitive_heuristic(false);
        for (int pi = 0; pi < 12; ++pi) {
            uint32_t r = 1 + uint32_t(test::rand_below(rng, rs.count()));
            uint32_t k = 5 + uint32_t(test::rand_below(rng, opt.m - 5));
            uint32_t start = uint32_t(test::rand_below(rng, opt.m - k + 1));
            QueryInput in = at(r, start, k);
            EXPECT_EQ(test::sorted(with.q1_reads(in)), test::sorted(without.q1_reads(in)));
            EXPECT_EQ(test::sorted(with.q5_reads(in)), test::sorted(without.q5_reads(in)));
            EXPECT_EQ(test::sorted(with.q7_positions(in)),
                      test::sorted(without.q7_positions(in)));
            EXPECT_EQ(with.q2_count(in), without.q2_count(in));
            EXPECT_EQ(with.q6_count(in), without.q6_count(in));
            EXPECT_TRUE(with.flags_clear());
            EXPECT_TRUE(without.flags_clear());
        }
    }
}

TEST(Query, CacheTransparency) {
    test::Rng rng(20240631);
    ReadSet rs = test::random_reads(rng, {.q = 50, .m = 16, .alphabet_size = 5});
    Index plain = Index::build(rs, {.sparsity = 1, .cache = CacheLevels::none()});
    Index cached = Index::build(rs, {.sparsity = 1, .cache = CacheLevels{6, false, false}});
    QuerySession a(plain), b(cached);
    for (int pi = 0; pi < 60; ++pi) {
        size_t k = 1 + test::rand_below(rng, 10);
        std::string f = test::random_sequence(rng, k, 5);
        if (pi % 2) {
            uint32_t r = uint32_t(test::rand_below(rng, rs.count()));
            size_t kk = std::min<size_t>(k, rs.read_length());
            f = std::string(rs.read(r).substr(0, kk));
        }
        EXPECT_EQ(a.q2_count(pat(f)), b.q2_count(pat(f))) << f;
        EXPECT_EQ(a.q4_count(pat(f)), b.q4_count(pat(f))) << f;
        EXPECT_EQ(a.q6_count(pat(f)), b.q6_count(pat(f))) << f;
    }
}

TEST(Query, CrossQueryAlgebra) {
    test::Rng rng(20240635);
    for (int iter = 0; iter < 20; ++iter) {
        RandomReadsOptions opt;
        opt.q = 1 + uint32_t(test::rand_below(rng, 50));
        opt.m = 10 + uint32_t(test::rand_below(rng, 20));
        opt.alphabet_size = iter % 2 ? 5 : 4;
        ReadSet rs = test::random_reads(rng, opt);
        Index idx = Index::build(rs, {.sparsity = 1 + int(test::rand_below(rng, 6))});
        QuerySession session(idx);
        for (int pi = 0; pi < 10; ++pi) {
            uint32_t k = uint32_t(idx.sparsity()) +
                         uint32_t(test::rand_below(rng, opt.m - idx.sparsity() + 1));
            uint32_t r = uint32_t(test::rand_below(rng, rs.count()));
            std::string f(rs.read(r).substr(test::rand_below(rng, opt.m - k + 1), k));
            auto q1 = session.q1_reads(pat(f));
            auto q3 = session.q3_positions(pat(f));
            auto q5 = session.q5_reads(pat(f));
            auto q7 = session.q7_positions(pat(f));
            EXPECT_EQ(session.q2_count(pat(f)), q1.size());
            EXPECT_EQ(session.q4_count(pat(f)), q3.size());
            EXPECT_EQ(session.q6_count(pat(f)), q5.size());
            EXPECT_EQ(q5.size(), q7.size());
            EXPECT_LE(q5.size(), q1.size());
            EXPECT_LE(q1.size(), q3.size());
            auto s1 = test::sorted(q1);
            for (uint32_t id : q5)
                EXPECT_TRUE(std::binary_search(s1.begin(), s1.end(), id));
            auto s3 = test::sorted(q3);
            for (const auto& occ : q7)
                EXPECT_TRUE(std::binary_search(s3.begin(), s3.end(), occ));
        }
    }
}

TEST(Query, MasterOracleEquivalenceSweep) {
    test::Rng rng(20240632);
    for (int iter = 0; iter < 30; ++iter) {
        RandomReadsOptions opt;
        opt.q = 1 + uint32_t(test::rand_below(rng, 60));
        opt.m = 8 + uint32_t(test::rand_below(rng, 25));
        opt.alphabet_size = iter % 2 ? 5 : 4;
        ReadSet rs = test::random_reads(rng, opt);
        int s = 1 + int(test::rand_below(rng, 6));
        Index idx = Index::build(rs, {.sparsity = s});
        QuerySession session(idx);
        for (uint32_t k : {uint32_t(s), uint32_t(s) + 2, opt.m}) {
            if (k > opt.m) continue;
            OracleIndex oracle(rs, k);
            for (int pi = 0; pi < 6; ++pi) {
                uint32_t r = uint32_t(test::rand_below(rng, rs.count()));
                uint32_t start = uint32_t(test::rand_below(rng, opt.m - k + 1));
                std::string f(rs.read(r).substr(start, k));
                EXPECT_EQ(test::sorted(session.q1_reads(pat(f))),
                          test::sorted(oracle.q1(f)));
                EXPECT_EQ(session.q2_count(pat(f)), oracle.q2(f));
                EXPECT_EQ(test::sorted(session.q3_positions(pat(f))),
                          test::sorted(oracle.q3(f)));
                EXPECT_EQ(session.q4_count(pat(f)), oracle.q4(f));
                EXPECT_EQ(test::sorted(session.q5_reads(pat(f))),
                          test::sorted(oracle.q5(f)));
                EXPECT_EQ(session.q6_count(pat(f)), oracle.q6(f));
                EXPECT_EQ(test::sorted(session.q7_positions(pat(f))),
                          test::sorted(oracle.q7(f)));
            }
        }
    }
}

TEST(Query, MinimalDimensions) {
    // single-symbol reads: the duplicate pass is the only overlap pass
    ReadSet rs = ReadSet::from_sequences({"A", "C", "A", "A", "T"});
    Index idx = Index::build(rs, {.sparsity = 1});
    EXPECT_EQ(idx.pg_length(), 3u);  // A, C, T
    QuerySession session(idx);
    EXPECT_EQ(test::sorted(session.q1_reads(pat("A"))), (ReadList{1, 3, 4}));
    EXPECT_EQ(session.q4_count(pat("A")), 3u);
    EXPECT_EQ(session.q6_count(pat("A")), 3u);
    EXPECT_EQ(test::sorted(session.q7_positions(pat("T"))), (OccurrenceList{{5, 0}}));

    // a single read
    ReadSet one = ReadSet::from_sequences({"ACGTA"});
    Index idx1 = Index::build(one, {.sparsity = 2});
    QuerySession s1(idx1);
    EXPECT_EQ(s1.q4_count(pat("A")), 0u);  // wait: k=1 < s=2
}

TEST(Query, AllNReads) {
    ReadSet rs = ReadSet::from_sequences({"NNNN", "ACGT", "NNNN"});
    EXPECT_EQ(rs.alphabet().size(), 5);
    for (int s : {1, 2, 4}) {
        Index idx = Index::build(rs, {.sparsity = s, .cache = CacheLevels{3, false, false}});
        QuerySession session(idx);
        OracleIndex oracle(rs, 4);
        EXPECT_EQ(test::sorted(session.q1_reads(pat("NNNN"))),
                  test::sorted(oracle.q1("NNNN")));
        EXPECT_EQ(session.q4_count(pat("NNNN")), oracle.q4("NNNN"));
        EXPECT_EQ(session.q6_count(pat("NNNN")), oracle.q6("NNNN"));
        OracleIndex oracle2(rs, 2);
        EXPECT_EQ(test::sorted(session.q3_positions(pat("NN"))),
                  test::sorted(oracle2.q3("NN")));
    }
}

TEST(Query, LongReadsUseTwoByteOffsets) {
    // m > 256 switches the suffix elements to 2-byte in-read offsets
    test::Rng rng(20240634);
    std::string genome = test::random_sequence(rng, 2000, 4);
    std::vector<std::string> seqs;
    for (int i = 0; i < 30; ++i)
        seqs.push_back(genome.substr(test::rand_below(rng, 2000 - 300), 300));
    ReadSet rs = ReadSet::from_sequences(std::move(seqs));
    Index idx = Index::build(rs, {.sparsity = 3});
    EXPECT_EQ(idx.suffix_index().widths().offset, 2);
    QuerySession session(idx);
    for (int pi = 0; pi < 30; ++pi) {
        uint32_t k = 3 + uint32_t(test::rand_below(rng, 40));
        uint32_t r = uint32_t(test::rand_below(rng, rs.count()));
        uint32_t start = uint32_t(test::rand_below(rng, 300 - k + 1));
        std::string f(rs.read(r).substr(start, k));
        OracleIndex oracle(rs, k);
        ASSERT_EQ(test::sorted(session.q3_positions(pat(f))),
                  test::sorted(oracle.q3(f)));
        ASSERT_EQ(session.q6_count(pat(f)), oracle.q6(f));
    }
}

TEST(Query, ConcurrentSessionsShareOneIndex) {
    test::Rng rng(20240633);
    ReadSet rs = test::random_reads(rng, {.q = 80, .m = 20});
    Index idx = Index::build(rs, {.sparsity = 3});
    QuerySession reference(idx);
    std::vector<std::string> patterns;
    std::vector<uint64_t> expected;
    for (int i = 0; i < 64; ++i) {
        uint32_t r = uint32_t(test::rand_below(rng, rs.count()));
        patterns.emplace_back(rs.read(r).substr(0, 8));
        expected.push_back(reference.q4_count(pat(patterns.back())));
    }
    std::vector<std::thread> workers;
    std::vector<int> failures(4, 0);
    for (int w = 0; w < 4; ++w) {
        workers.emplace_back([&, w] {
            QuerySession session(idx);
            for (size_t i = 0; i < patterns.size(); ++i)
                if (session.q4_count(pat(patterns[i])) != expected[i]) ++failures[w];
        });
    }
    for (auto& t : workers) t.join();
    for (int w = 0; w < 4; ++w) EXPECT_EQ(failures[w], 0);
}

TEST(Query, RunDispatchMatchesDirectCalls) {
    Index idx = example_index();
    QuerySession session(idx);
    EXPECT_EQ(std::get<uint64_t>(session.run(QueryType::Q4, pat("TT"))), 3u);
    EXPECT_EQ(std::get<ReadList>(session.run(QueryType::Q1, pat("TT"))), (ReadList{4}));
    EXPECT_EQ(std::get<OccurrenceList>(session.run(QueryType::Q7, pat("T"))).size(), 3u);
}

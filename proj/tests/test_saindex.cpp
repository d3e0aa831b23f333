#include "pgsa/suffix_index.hpp"

#include <gtest/gtest.h>

#include <set>

#include "pgsa/pseudogenome.hpp"
#include "testutil.hpp"

using namespace pgsa;
using pgsa::test::RandomReadsOptions;

namespace {

struct Built {
    ReadSet rs;
    Pseudogenome pg;
    ReadArray ra;
    SparseSuffixIndex sa;
    PackedSequence packed;
};

Built build_all(ReadSet rs, int s) {
    Pseudogenome pg = build_pseudogenome(rs);
    ReadArray ra = build_read_array(pg);
    SparseSuffixIndex sa = SparseSuffixIndex::build(pg, ra, s);
    PackedSequence packed = PackedSequence::from_text(
        pg.text, pg.alphabet, PackingScheme::for_sparsity(pg.alphabet.size(), s));
    return {std::move(rs), std::move(pg), std::move(ra), std::move(sa),
            std::move(packed)};
}

// pg positions of all located occurrences
std::vector<uint64_t> located_positions(const Built& b, std::string_view pattern) {
    std::vector<uint64_t> out;
    for (const auto& occ : b.sa.locate_range(b.packed, b.ra, pattern))
        out.push_back(b.ra.pg_offset(occ.read_idx) + occ.in_read_offset);
    return out;
}

int compare_suffixes(std::string_view text, uint64_t a, uint64_t b) {
    for (uint64_t i = 0;; ++i) {
        const bool ea = a + i >= text.size(), eb = b + i >= text.size();
        if (ea || eb) return ea == eb ? 0 : (ea ? -1 : 1);
        if (text[a + i] != text[b + i]) return text[a + i] < text[b + i] ? -1 : 1;
    }
}

}  // namespace

TEST(ReadArrayBuild, RunningExampleEntries) {
    Built b = build_all(test::example_reads(), 1);
    ASSERT_EQ(b.ra.size(), 4u);
    const uint64_t offsets[] = {0, 0, 1, 5};
    const uint32_t origs[] = {1, 3, 2, 4};
    for (uint32_t i = 0; i < 4; ++i) {
        EXPECT_EQ(b.ra.pg_offset(i), offsets[i]);
        EXPECT_EQ(b.ra.orig_id(i), origs[i]);
        EXPECT_FALSE(b.ra.repetitive(i));  // m < 12
    }
}

TEST(ReadArrayBuild, OffsetsNonDecreasing) {
    test::Rng rng(42);
    ReadSet rs = test::random_reads(rng, {.q = 50, .m = 14});
    Built b = build_all(std::move(rs), 2);
    for (uint32_t i = 0; i + 1 < b.ra.size(); ++i)
        EXPECT_LE(b.ra.pg_offset(i), b.ra.pg_offset(i + 1));
}

TEST(RepetitiveFlag, MatchesBruteForcePredicate) {
    EXPECT_TRUE(is_repetitive_read("AAAAAAAAAAAA", 11));  // 12 A's: AAAAAAAAAAA twice
    EXPECT_FALSE(is_repetitive_read("AAAAAAAAAAA", 11));  // only one window
    EXPECT_FALSE(is_repetitive_read("ACGTACGTACGT", 11)); // both 11-mers differ
    // same 11-mer at both ends
    EXPECT_TRUE(is_repetitive_read("ACGTACGTACCTTACGTACGTACC", 11));
    // N windows compare as symbols
    EXPECT_TRUE(is_repetitive_read("ACGTNACGTACCACGTNACGTACC", 11));

    test::Rng rng(99);
    for (int iter = 0; iter < 200; ++iter) {
        uint32_t len = 1 + uint32_t(test::rand_below(rng, 40));
        uint32_t thr = 1 + uint32_t(test::rand_below(rng, 13));
        std::string read = test::random_sequence(rng, len, iter % 2 ? 5 : 4);
        bool expect = false;
        std::set<std::string> seen;
        for (size_t i = 0; i + thr <= read.size(); ++i)
            if (!seen.insert(read.substr(i, thr)).second) expect = true;
        EXPECT_EQ(is_repetitive_read(read, thr), expect) << read << " thr " << thr;
    }
}

TEST(SuffixIndexBuild, FullArrayOnRunningExample) {
    Built b = build_all(test::example_reads(), 1);
    EXPECT_EQ(b.sa.element_count(), 9u);  // p = 9, s = 1, no padding
    EXPECT_FALSE(b.sa.has_sentinel_element());

    // suffix "CGTATTTT" starts at pg position 1; its furthest read is the
    // ordered read at index 2 (offset 1), suffix offset 0 inside it
    bool found = false;
    for (size_t i = 0; i < b.sa.element_count(); ++i) {
        if (b.sa.suffix_position(i, b.ra) == 1) {
            EXPECT_EQ(b.sa.element_read_idx(i), 2u);
            EXPECT_EQ(b.sa.element_in_read_offset(i), 0u);
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(SuffixIndexBuild, SparseSamplingPositions) {
    Built b = build_all(test::example_reads(), 2);
    // p = 9 padded to 10; samples at odd positions
    EXPECT_EQ(b.sa.element_count(), 5u);
    EXPECT_TRUE(b.sa.has_sentinel_element());
    std::set<uint64_t> positions;
    for (size_t i = 0; i < b.sa.element_count(); ++i)
        positions.insert(b.sa.suffix_position(i, b.ra));
    EXPECT_EQ(positions, (std::set<uint64_t>{1, 3, 5, 7, 9}));
}

TEST(SuffixIndexBuild, ElementCountIsPaddedPOverS) {
    test::Rng rng(1234);
    for (int iter = 0; iter < 40; ++iter) {
        RandomReadsOptions opt;
        opt.q = 1 + uint32_t(test::rand_below(rng, 30));
        opt.m = 6 + uint32_t(test::rand_below(rng, 20));
        opt.alphabet_size = iter % 2 ? 5 : 4;
        int s = 1 + int(test::rand_below(rng, 6));
        Built b = build_all(test::random_reads(rng, opt), s);
        EXPECT_EQ(b.sa.element_count(), (b.pg.length() + s - 1) / s);
        EXPECT_EQ(b.sa.padded_length() % s, 0u);
    }
}

TEST(SuffixIndexBuild, SampledSuffixesStrictlySorted) {
    test::Rng rng(4321);
    for (int iter = 0; iter < 40; ++iter) {
        RandomReadsOptions opt;
        opt.q = 1 + uint32_t(test::rand_below(rng, 40));
        opt.m = 6 + uint32_t(test::rand_below(rng, 20));
        opt.alphabet_size = iter % 2 ? 5 : 4;
        int s = 1 + int(test::rand_below(rng, 6));
        Built b = build_all(test::random_reads(rng, opt), s);
        for (size_t i = 0; i + 1 < b.sa.element_count(); ++i) {
            uint64_t a = b.sa.suffix_position(i, b.ra);
            uint64_t c = b.sa.suffix_position(i + 1, b.ra);
            ASSERT_LT(compare_suffixes(b.pg.text, a, c), 0)
                << "elements " << i << "," << i + 1 << " s=" << s;
        }
    }
}

TEST(SuffixIndexBuild, ElementsStoreFurthestRead) {
    test::Rng rng(777);
    ReadSet rs = test::random_reads(rng, {.q = 40, .m = 10, .duplicate_fraction = 0.4});
    Built b = build_all(std::move(rs), 1);
    for (size_t i = 0; i < b.sa.element_count(); ++i) {
        uint64_t t = b.sa.suffix_position(i, b.ra);
        uint32_t r = b.sa.element_read_idx(i);
        EXPECT_EQ(r, b.ra.furthest_read_at(t));
        EXPECT_LT(t - b.ra.pg_offset(r), b.ra.read_length());
    }
}

TEST(SuffixIndexBuild, SparsityLargerThanReadLength) {
    // m=4, s=6: the only sample sits in padding, the index degenerates to a
    // single inert element, and every k >= s query is empty.
    Built b = build_all(ReadSet::from_sequences({"ACGT"}), 6);
    EXPECT_EQ(b.sa.element_count(), 1u);
    EXPECT_TRUE(b.sa.has_sentinel_element());
    EXPECT_TRUE(b.sa.locate_range(b.packed, b.ra, "ACGTAC").empty());
}

TEST(SuffixIndexBuild, RejectsBadSparsity) {
    Pseudogenome pg = build_pseudogenome(test::example_reads());
    ReadArray ra = build_read_array(pg);
    EXPECT_THROW(SparseSuffixIndex::build(pg, ra, 0), IncompatibleSparsity);
    EXPECT_THROW(SparseSuffixIndex::build(pg, ra, 7), IncompatibleSparsity);
}

TEST(Locate, RunningExample) {
    Built b = build_all(test::example_reads(), 1);
    auto occs = b.sa.locate_range(b.packed, b.ra, "CGT");
    ASSERT_EQ(occs.size(), 1u);
    EXPECT_EQ(occs[0].read_idx, 2u);
    EXPECT_EQ(occs[0].in_read_offset, 0u);

    EXPECT_EQ(test::sorted(located_positions(b, "TT")),
              (std::vector<uint64_t>{5, 6, 7}));
    EXPECT_TRUE(located_positions(b, "GGG").empty());
}

TEST(Locate, ErrorsOnBadPatterns) {
    Built b4 = build_all(test::example_reads(), 3);
    EXPECT_THROW(b4.sa.locate_range(b4.packed, b4.ra, "AT"), PatternTooShort);
    EXPECT_THROW(b4.sa.locate_range(b4.packed, b4.ra, ""), PatternTooShort);
    EXPECT_THROW(b4.sa.locate_range(b4.packed, b4.ra, "ANT"), InvalidSymbol);
    EXPECT_THROW(b4.sa.locate_range(b4.packed, b4.ra, "AXT"), InvalidSymbol);
}

TEST(Locate, AgreesWithNaiveScanAcrossSparsities) {
    test::Rng rng(20240611);
    int cases = 0;
    for (int iter = 0; iter < 150; ++iter) {
        RandomReadsOptions opt;
        opt.q = 1 + uint32_t(test::rand_below(rng, 50));
        opt.m = 6 + uint32_t(test::rand_below(rng, 26));
        opt.alphabet_size = iter % 2 ? 5 : 4;
        opt.genome_length = opt.m + test::rand_below(rng, 150);
        ReadSet rs = test::random_reads(rng, opt);
        Pseudogenome pg = build_pseudogenome(rs);
        ReadArray ra = build_read_array(pg);
        for (int s = 1; s <= 6; ++s) {
            SparseSuffixIndex sa = SparseSuffixIndex::build(pg, ra, s);
            PackedSequence packed = PackedSequence::from_text(
                pg.text, pg.alphabet, PackingScheme::for_sparsity(pg.alphabet.size(), s));
            for (int pi = 0; pi < 8; ++pi) {
                size_t k = s + test::rand_below(rng, opt.m - s + 3);
                std::string pattern;
                if (pi % 3 == 0) {
                    pattern = test::random_sequence(rng, k, opt.alphabet_size);
                } else {  // sample from the text so hits are common
                    k = std::min<size_t>(k, pg.text.size());
                    size_t at = test::rand_below(rng, pg.text.size() - k + 1);
                    pattern = pg.text.substr(at, k);
                }
                std::vector<uint64_t> got;
                for (const auto& occ : sa.locate_range(packed, ra, pattern))
                    got.push_back(ra.pg_offset(occ.read_idx) + occ.in_read_offset);
                auto want = test::naive_find_all(pg.text, pattern);
                ASSERT_EQ(test::sorted(got), want)
                    << "s=" << s << " pattern=" << pattern << " pg=" << pg.text;
                ++cases;
            }
        }
    }
    EXPECT_GT(cases, 5000);
}

TEST(Locate, ResultSetIndependentOfSparsity) {
    test::Rng rng(20240612);
    ReadSet rs = test::random_reads(rng, {.q = 60, .m = 20, .alphabet_size = 4});
    Pseudogenome pg = build_pseudogenome(rs);
    ReadArray ra = build_read_array(pg);
    for (int pi = 0; pi < 20; ++pi) {
        size_t k = 6 + test::rand_below(rng, 10);
        size_t at = test::rand_below(rng, pg.text.size() - k + 1);
        std::string pattern = pg.text.substr(at, k);
        std::vector<std::vector<uint64_t>> results;
        for (int s = 1; s <= 6; ++s) {
            SparseSuffixIndex sa = SparseSuffixIndex::build(pg, ra, s);
            PackedSequence packed = PackedSequence::from_text(
                pg.text, pg.alphabet, PackingScheme::for_sparsity(pg.alphabet.size(), s));
            std::vector<uint64_t> got;
            for (const auto& occ : sa.locate_range(packed, ra, pattern))
                got.push_back(ra.pg_offset(occ.read_idx) + occ.in_read_offset);
            results.push_back(test::sorted(got));
        }
        for (size_t i = 1; i < results.size(); ++i)
            EXPECT_EQ(results[i], results[0]) << "s=" << (i + 1);
    }
}

TEST(ElementSize, WithinPaperBounds) {
    test::Rng rng(20240613);
    for (int sigma : {4, 5}) {
        for (int s = 1; s <= 6; ++s) {
            ReadSet rs = test::random_reads(
                rng, {.q = 10, .m = 12, .alphabet_size = sigma});
            Built b = build_all(std::move(rs), s);
            int esz = b.sa.widths().element_size();
            if (s == 1) {
                EXPECT_GE(esz, 4);
                EXPECT_LE(esz, 6);
            } else {
                EXPECT_GE(esz, 5);
                EXPECT_LE(esz, 8);
            }
            EXPECT_EQ(b.sa.raw_elements().size(),
                      b.sa.element_count() * size_t(esz));
        }
    }
}

TEST(Widths, ChosenFromDimensions) {
    // E. coli scale: q=11.5M reads of m=151 over 5 letters
    IndexWidths e = choose_widths(551'400'000, 11'500'000, 151, 5, 6);
    EXPECT_EQ(e.read_idx, 3);
    EXPECT_EQ(e.offset, 1);
    EXPECT_EQ(e.pg_offset, 4);
    EXPECT_EQ(e.prev, 2);  // 5^5 needs two bytes
    EXPECT_EQ(e.element_size(), 6);

    // C. elegans scale: q=67.6M forces 4-byte read indices
    IndexWidths c = choose_widths(1'603'100'000, 67'600'000, 100, 5, 5);
    EXPECT_EQ(c.read_idx, 4);
    EXPECT_EQ(c.element_size(), 7);

    IndexWidths long_reads = choose_widths(1000, 10, 300, 4, 2);
    EXPECT_EQ(long_reads.offset, 2);
    IndexWidths huge = choose_widths(uint64_t(5) << 32, 100, 100, 4, 1);
    EXPECT_EQ(huge.pg_offset, 8);
    EXPECT_EQ(huge.prev, 0);
}

#ifndef PGSA_TESTS_TESTUTIL_HPP
#define PGSA_TESTS_TESTUTIL_HPP

#include <algorithm>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pgsa/query.hpp"
#include "pgsa/read_set.hpp"

namespace pgsa::test {

using Rng = std::mt19937_64;

inline uint64_t rand_below(Rng& rng, uint64_t n) {
    return std::uniform_int_distribution<uint64_t>(0, n - 1)(rng);
}

inline std::string random_sequence(Rng& rng, size_t len, int alphabet_size) {
    static constexpr const char* kSym = "ACGTN";
    std::string s(len, 'A');
    for (auto& c : s) {
        // keep N rare so 5-letter instances still overlap
        size_t pick = rand_below(rng, alphabet_size == 5 ? 12 : 4);
        c = kSym[pick < 4 ? pick : 4];
    }
    return s;
}

struct RandomReadsOptions {
    uint32_t q = 20;
    uint32_t m = 16;
    int alphabet_size = 4;
    double duplicate_fraction = 0.15;  // reads copied from an earlier read
    double genome_fraction = 0.7;      // reads sampled from a shared genome
    size_t genome_length = 120;
};

/// Read sets with deliberate structure: duplicates (ol = m links), genome
/// overlaps (long links) and pure-random reads (often unlinkable).
inline ReadSet random_reads(Rng& rng, const RandomReadsOptions& opt) {
    std::string genome =
        random_sequence(rng, std::max<size_t>(opt.genome_length, opt.m), 4);
    std::vector<std::string> reads;
    reads.reserve(opt.q);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (uint32_t i = 0; i < opt.q; ++i) {
        if (!reads.empty() && coin(rng) < opt.duplicate_fraction) {
            reads.push_back(reads[rand_below(rng, reads.size())]);
        } else if (coin(rng) < opt.genome_fraction) {
            size_t at = rand_below(rng, genome.size() - opt.m + 1);
            reads.push_back(genome.substr(at, opt.m));
        } else {
            reads.push_back(random_sequence(rng, opt.m, opt.alphabet_size));
        }
    }
    if (opt.alphabet_size == 5) {
        // force at least one N so the alphabet really is 5 letters
        std::string& r = reads[rand_below(rng, reads.size())];
        r[rand_below(rng, r.size())] = 'N';
    }
    return ReadSet::from_sequences(std::move(reads));
}

/// Start positions of every occurrence of `pattern` in `text`, by direct
/// scan. Independent oracle for the suffix-array search path.
inline std::vector<uint64_t> naive_find_all(std::string_view text,
                                            std::string_view pattern) {
    std::vector<uint64_t> out;
    if (pattern.empty() || pattern.size() > text.size()) return out;
    for (size_t i = 0; i + pattern.size() <= text.size(); ++i)
        if (text.substr(i, pattern.size()) == pattern) out.push_back(i);
    return out;
}

template <typename T>
std::vector<T> sorted(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    return v;
}

/// The running example: four length-4 reads whose pseudogenome is
/// "ACGTATTTT" (duplicate link, a 3-overlap and one appended read).
inline ReadSet example_reads() {
    return ReadSet::from_sequences({"ACGT", "CGTA", "ACGT", "TTTT"});
}

}  // namespace pgsa::test

#endif  // PGSA_TESTS_TESTUTIL_HPP

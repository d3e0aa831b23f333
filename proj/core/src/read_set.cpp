#include "pgsa/read_set.hpp"

#include <algorithm>
#include <cctype>

namespace pgsa {

ReadSet ReadSet::from_sequences(std::vector<std::string> sequences,
                                LengthPolicy policy) {
    if (sequences.empty())
        throw ParseError("input contains no reads");

    size_t m = sequences.front().size();
    if (policy == LengthPolicy::TrimToMin) {
        for (const auto& s : sequences) m = std::min(m, s.size());
    }
    if (m == 0)
        throw LengthMismatch("read " +
                             std::to_string(1 + (std::min_element(
                                     sequences.begin(), sequences.end(),
                                     [](auto& a, auto& b) { return a.size() < b.size(); }) -
                                 sequences.begin())) +
                             " is empty");
    if (m > kMaxReadLength)
        throw ParseError("read length " + std::to_string(m) + " exceeds the maximum " +
                         std::to_string(kMaxReadLength));

    bool has_n = false;
    std::string flat;
    flat.reserve(sequences.size() * m);
    for (size_t i = 0; i < sequences.size(); ++i) {
        std::string& s = sequences[i];
        if (policy == LengthPolicy::Reject && s.size() != m)
            throw LengthMismatch("read " + std::to_string(i + 1) + " has length " +
                                 std::to_string(s.size()) + ", expected " +
                                 std::to_string(m));
        for (size_t j = 0; j < m; ++j) {
            char c = static_cast<char>(std::toupper(static_cast<unsigned char>(s[j])));
            switch (c) {
                case 'A': case 'C': case 'G': case 'T':
                    break;
                case 'N':
                    has_n = true;
                    break;
                default:
                    throw InvalidSymbol("read " + std::to_string(i + 1) + ", offset " +
                                        std::to_string(j) + ": invalid character '" +
                                        s[j] + "'");
            }
            flat.push_back(c);
        }
    }

    return ReadSet(std::move(flat), static_cast<uint32_t>(sequences.size()),
                   static_cast<uint32_t>(m), has_n ? Alphabet::dna5() : Alphabet::dna4());
}

}  // namespace pgsa

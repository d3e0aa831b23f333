#ifndef PGSA_PSEUDOGENOME_HPP
#define PGSA_PSEUDOGENOME_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgsa/read_set.hpp"

namespace pgsa {

/// A superstring containing every read verbatim, with the permutation that
/// maps pseudogenome order back to original read IDs.
///
/// Invariants: offsets[0] == 0; consecutive offset deltas lie in [0, m];
/// offsets.back() == length() - m; text[offsets[i] .. offsets[i]+m) equals
/// the read with original ID order[i]; order is a permutation of 1..q.
struct Pseudogenome {
    std::string text;               // PG, unpacked symbols
    std::vector<uint32_t> order;    // 1-based original read ID per ordered read
    std::vector<uint64_t> offsets;  // 0-based start of each ordered read in text
    uint32_t read_length = 0;       // m, carried from the read set
    Alphabet alphabet = Alphabet::dna4();

    uint64_t length() const noexcept { return text.size(); }  // p
    uint32_t read_count() const noexcept { return static_cast<uint32_t>(order.size()); }
};

/// Greedy overlap merge: for each overlap length ol = m down to 1, links
/// pairs whose length-ol suffix/prefix match, each read gaining at most one
/// successor and one predecessor, never closing a cycle. ol = m links are
/// exact duplicates (offset delta 0). Remaining chains are emitted
/// head-to-tail in ascending order of the head's original read ID.
///
/// Ties among candidate successors go to the smallest original read ID;
/// predecessors are processed in ascending original read ID, so the output
/// is deterministic. The result is a heuristic, not a shortest superstring.
Pseudogenome build_pseudogenome(const ReadSet& reads);

struct PgViolation {
    std::string message;
    uint64_t location;  // ordered read index or offset index, see message
};

/// Checks every Pseudogenome invariant against the reads; returns the first
/// violation, or nullopt when valid. Used in tests and after deserialization.
std::optional<PgViolation> validate_pseudogenome(const Pseudogenome& pg,
                                                 const ReadSet& reads);

}  // namespace pgsa

#endif  // PGSA_PSEUDOGENOME_HPP

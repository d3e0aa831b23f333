#ifndef PGSA_QUERY_HPP
#define PGSA_QUERY_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pgsa/index.hpp"

namespace pgsa {

/// One occurrence of the query string inside a read.
struct Occurrence {
    uint32_t read_id;  // original, 1-based
    uint32_t pos;      // 0-based offset within the read

    bool operator==(const Occurrence&) const = default;
    auto operator<=>(const Occurrence&) const = default;
};

using ReadList = std::vector<uint32_t>;      // original 1-based read IDs
using OccurrenceList = std::vector<Occurrence>;

/// A query string, given either directly or as a location inside a read.
struct PatternInput {
    std::string symbols;
};
struct PositionalInput {
    uint32_t read_id;  // original, 1-based
    uint32_t start;    // 0-based offset within the read
    uint32_t length;   // k
};
using QueryInput = std::variant<PatternInput, PositionalInput>;

enum class QueryType : uint8_t { Q1 = 1, Q2, Q3, Q4, Q5, Q6, Q7 };
using QueryResult = std::variant<uint64_t, ReadList, OccurrenceList>;

/// Per-caller scratch state for querying one shared Index.
///
/// Holds the per-read occurrence and single-occurrence flag bitsets plus the
/// visited stack; every query leaves both bitsets all-zero again, so a
/// session can be reused indefinitely. One session serves one caller at a
/// time; the index itself is immutable and safe to share.
///
/// All queries run in O(k log p) for the suffix-array search plus the number
/// of visited read-array locations.
class QuerySession {
  public:
    explicit QuerySession(const Index& index);

    /// Original IDs of the reads containing f.
    ReadList q1_reads(const QueryInput& input);
    /// Number of reads containing f.
    uint64_t q2_count(const QueryInput& input);
    /// Every (read, position) occurrence of f.
    OccurrenceList q3_positions(const QueryInput& input);
    /// Total number of occurrences of f.
    uint64_t q4_count(const QueryInput& input);
    /// Original IDs of the reads containing f exactly once.
    ReadList q5_reads(const QueryInput& input);
    /// Number of reads containing f exactly once.
    uint64_t q6_count(const QueryInput& input);
    /// The unique (read, position) per read where f occurs exactly once.
    OccurrenceList q7_positions(const QueryInput& input);

    QueryResult run(QueryType type, const QueryInput& input);

    /// When disabled, every read takes the flag-bookkeeping path; answers
    /// never change, only the work done.
    void set_repetitive_heuristic(bool enabled) noexcept { heuristic_ = enabled; }

    /// True when both flag bitsets are all-zero (always, between queries).
    bool flags_clear() const noexcept;

    const Index& index() const noexcept { return *index_; }

  private:
    struct Visited {
        uint32_t ordered_idx;
        uint32_t first_pos;
    };

    // Decoded query: symbol codes plus the original symbols when available.
    struct Prepared {
        std::vector<uint8_t> codes;
        std::string symbols;  // for cache lookup
        size_t k;
    };
    Prepared prepare(const QueryInput& input) const;

    template <typename Visit>
    void scan_read_occurrences(const Prepared& q, Visit&& visit);

    const Index* index_;
    std::vector<bool> occurrence_flags_;
    std::vector<bool> single_flags_;
    std::vector<Visited> visited_;
    bool heuristic_ = true;
};

/// Extracts the pattern a positional input denotes, by decoding the read
/// from the pseudogenome. Throws UnknownReadId / PositionOutOfRange.
std::string resolve_positional(const Index& index, const PositionalInput& input);

}  // namespace pgsa

#endif  // PGSA_QUERY_HPP

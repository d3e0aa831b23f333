#ifndef PGSA_ORACLE_HPP
#define PGSA_ORACLE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pgsa/query.hpp"
#include "pgsa/read_set.hpp"

namespace pgsa {

/// Brute-force reference for Q1-Q7, built directly from the read set by
/// enumerating all q*(m-k+1) substrings of one length. Never touches the
/// suffix array; O(n*k) to build, desk scale only.
class OracleIndex {
  public:
    OracleIndex(const ReadSet& reads, uint32_t k);

    uint32_t k() const noexcept { return k_; }

    OccurrenceList q3(std::string_view f) const;
    ReadList q1(std::string_view f) const;
    ReadList q5(std::string_view f) const;
    OccurrenceList q7(std::string_view f) const;
    uint64_t q2(std::string_view f) const { return q1(f).size(); }
    uint64_t q4(std::string_view f) const { return q3(f).size(); }
    uint64_t q6(std::string_view f) const { return q5(f).size(); }

  private:
    const OccurrenceList* find(std::string_view f) const;

    uint32_t k_;
    // substring -> its occurrences in read order, positions ascending
    std::unordered_map<std::string, OccurrenceList> occurrences_;
};

/// One-shot oracle dispatch with the same input validation as the engine
/// (minus the sparsity bound, which is an index property).
QueryResult oracle_query(const ReadSet& reads, QueryType type,
                         const QueryInput& input);

}  // namespace pgsa

#endif  // PGSA_ORACLE_HPP

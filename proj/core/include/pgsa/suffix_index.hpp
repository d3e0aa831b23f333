#ifndef PGSA_SUFFIX_INDEX_HPP
#define PGSA_SUFFIX_INDEX_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "pgsa/alphabet.hpp"
#include "pgsa/read_array.hpp"

namespace pgsa {

inline constexpr int kMaxSparsity = 6;

/// Serialized field widths, chosen from q, m, p at build time.
struct IndexWidths {
    uint8_t read_idx;   // 3 or 4 bytes
    uint8_t offset;     // 1 or 2 bytes
    uint8_t pg_offset;  // 4 or 8 bytes (read-array records)
    uint8_t prev;       // 0, 1 or 2 bytes (s-1 preceding symbols)

    uint8_t element_size() const noexcept { return read_idx + offset + prev; }
    uint8_t read_record_size() const noexcept { return pg_offset + 1 + 4; }

    bool operator==(const IndexWidths&) const = default;
};

IndexWidths choose_widths(uint64_t p, uint32_t q, uint32_t m, int alphabet_size,
                          int sparsity);

/// Sampled suffix array over the pseudogenome.
///
/// Positions t with t % s == s-1 are sampled (every position for s = 1); the
/// pseudogenome is padded to a multiple of s with a terminator that sorts
/// before every real symbol, so the element count is exactly padded_length/s.
/// When s does not divide the text length the lexicographically first element
/// denotes the all-terminator suffix at padded_length-1 and can never match
/// a query.
///
/// Each element stores the read-array index of the furthest read covering
/// the suffix start, the suffix offset inside that read, and the s-1 symbols
/// preceding the suffix start in packed form. Elements are fixed-width
/// little-endian records, identical in memory and on disk.
class SparseSuffixIndex {
  public:
    SparseSuffixIndex() = default;

    /// Sorts all sampled suffixes of pg.text and encodes the elements.
    /// Throws IncompatibleSparsity for s outside [1, 6].
    static SparseSuffixIndex build(const Pseudogenome& pg, const ReadArray& reads,
                                   int sparsity);

    /// Reconstructs an index from its serialized element blob.
    static SparseSuffixIndex from_raw(std::vector<uint8_t> elements, uint64_t pg_length,
                                      int sparsity, int alphabet_size, IndexWidths widths);

    int sparsity() const noexcept { return s_; }
    uint64_t pg_length() const noexcept { return p_; }
    uint64_t padded_length() const noexcept { return padded_p_; }
    bool has_sentinel_element() const noexcept { return padded_p_ != p_; }
    size_t element_count() const noexcept { return count_; }
    const IndexWidths& widths() const noexcept { return widths_; }
    const std::vector<uint8_t>& raw_elements() const noexcept { return elements_; }
    const PackingScheme& prev_scheme() const noexcept { return prev_scheme_; }

    uint32_t element_read_idx(size_t i) const noexcept {
        return static_cast<uint32_t>(field(i, 0, widths_.read_idx));
    }
    uint32_t element_in_read_offset(size_t i) const noexcept {
        return static_cast<uint32_t>(field(i, widths_.read_idx, widths_.offset));
    }
    uint32_t element_prev(size_t i) const noexcept {
        return static_cast<uint32_t>(
            field(i, widths_.read_idx + widths_.offset, widths_.prev));
    }

    /// Pseudogenome position of the suffix denoted by element i.
    uint64_t suffix_position(size_t i, const ReadArray& reads) const noexcept {
        if (i == 0 && has_sentinel_element()) return padded_p_ - 1;
        return reads.pg_offset(element_read_idx(i)) + element_in_read_offset(i);
    }

    /// One pattern occurrence in the pseudogenome, addressed through the
    /// furthest read covering its start.
    struct PgOccurrence {
        uint32_t read_idx;        // read-array index
        uint32_t in_read_offset;  // occurrence start minus the read's pg offset
    };

    /// All occurrences of `pattern` in the pseudogenome, each exactly once,
    /// grouped by sample shift, SA order within a group. Requires
    /// pattern.size() >= s (PatternTooShort) and symbols in the alphabet
    /// (InvalidSymbol).
    std::vector<PgOccurrence> locate_range(const PackedSequence& pg,
                                           const ReadArray& reads,
                                           std::string_view pattern) const;

    /// locate_range over pre-encoded symbol codes.
    std::vector<PgOccurrence> locate_codes(const PackedSequence& pg,
                                           const ReadArray& reads,
                                           const std::vector<uint8_t>& codes) const;

  private:
    uint64_t field(size_t i, unsigned at, unsigned width) const noexcept {
        const uint8_t* b = elements_.data() + i * widths_.element_size() + at;
        uint64_t v = 0;
        for (unsigned j = 0; j < width; ++j) v |= uint64_t(b[j]) << (8 * j);
        return v;
    }

    int s_ = 1;
    uint64_t p_ = 0;         // real pseudogenome length
    uint64_t padded_p_ = 0;  // p rounded up to a multiple of s
    size_t count_ = 0;
    IndexWidths widths_{};
    PackingScheme prev_scheme_{};  // packing of the s-1 preceding symbols
    std::vector<uint8_t> elements_;
};

}  // namespace pgsa

#endif  // PGSA_SUFFIX_INDEX_HPP

#ifndef PGSA_READ_ARRAY_HPP
#define PGSA_READ_ARRAY_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "pgsa/pseudogenome.hpp"

namespace pgsa {

/// Default repeat-window length for the repetitive-read flag.
inline constexpr uint32_t kDefaultRepetitiveThreshold = 11;

/// Per-read records in pseudogenome order: start offset in PG, original
/// (1-based) read ID and the repetitive flag — true iff the read contains
/// some threshold-length substring at least twice. Entries are sorted by
/// pg_offset, non-decreasing.
class ReadArray {
  public:
    ReadArray() = default;
    ReadArray(std::vector<uint64_t> pg_offsets, std::vector<uint32_t> orig_ids,
              std::vector<uint8_t> repetitive, uint32_t read_length);

    uint32_t size() const noexcept { return static_cast<uint32_t>(pg_offsets_.size()); }
    uint32_t read_length() const noexcept { return m_; }

    uint64_t pg_offset(uint32_t i) const noexcept { return pg_offsets_[i]; }
    uint32_t orig_id(uint32_t i) const noexcept { return orig_ids_[i]; }
    bool repetitive(uint32_t i) const noexcept { return repetitive_[i] != 0; }

    const std::vector<uint64_t>& pg_offsets() const noexcept { return pg_offsets_; }
    const std::vector<uint32_t>& orig_ids() const noexcept { return orig_ids_; }
    const std::vector<uint8_t>& repetitive_flags() const noexcept { return repetitive_; }

    /// Index of the furthest read whose span contains pg position `pos`
    /// (the last entry with pg_offset <= pos). pos must be < PG length.
    uint32_t furthest_read_at(uint64_t pos) const noexcept;

    /// Ordered index of an original 1-based read ID. Throws UnknownReadId.
    uint32_t ordered_index_of(uint32_t orig_id) const;

  private:
    std::vector<uint64_t> pg_offsets_;
    std::vector<uint32_t> orig_ids_;    // 1-based original IDs
    std::vector<uint8_t> repetitive_;
    std::vector<uint32_t> inverse_;     // orig_id-1 -> ordered index
    uint32_t m_ = 0;
};

/// True iff `read` contains some window of `threshold` symbols at least
/// twice. Reads shorter than threshold+1 can never repeat a window.
bool is_repetitive_read(std::string_view read, uint32_t threshold);

/// Builds the read array for a pseudogenome; repetitive flags are computed
/// per read with the given window length.
ReadArray build_read_array(const Pseudogenome& pg,
                           uint32_t repetitive_threshold = kDefaultRepetitiveThreshold);

}  // namespace pgsa

#endif  // PGSA_READ_ARRAY_HPP

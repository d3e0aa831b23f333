#ifndef PGSA_INDEX_IO_HPP
#define PGSA_INDEX_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pgsa/index.hpp"

namespace pgsa {

inline constexpr char kIndexMagic[4] = {'P', 'G', 'S', 'A'};
inline constexpr uint8_t kIndexFormatVersion = 1;

/// Per-component byte counts from the serialization formulas. `total` is the
/// sum of the four component sections (header and checksum excluded), the
/// same columns the stats report prints.
struct SizeModel {
    uint64_t pg_bytes = 0;          // ceil(p/s) * unit_width
    uint64_t read_array_bytes = 0;  // q * (pg_offset_width + 1 + 4)
    uint64_t sa_bytes = 0;          // ceil(p/s) * element_size
    uint64_t cache_bytes = 0;

    uint64_t total() const noexcept {
        return pg_bytes + read_array_bytes + sa_bytes + cache_bytes;
    }
};

/// Evaluates the size formulas for arbitrary parameters (no index needed).
SizeModel compute_size_model(uint64_t p, uint32_t q, uint32_t m, int alphabet_size,
                             int sparsity, CacheLevels cache = CacheLevels::none());

/// The model for a built index; save_index emits sections of exactly these
/// lengths.
SizeModel size_model_of(const Index& index);

/// Serializes the complete index; all integers little-endian, fixed widths
/// from the header. Returns the number of bytes written (header + sections +
/// trailing checksum).
uint64_t save_index(const Index& index, std::ostream& out);
uint64_t save_index_file(const Index& index, const std::string& path);

/// Deserializes and cross-checks an index: magic/version, section lengths
/// against the size formulas, the trailing checksum, pseudogenome validity
/// and a sampled sorted-suffix spot check. Throws BadMagic,
/// UnsupportedVersion, SectionLengthMismatch or ChecksumMismatch.
Index load_index(std::istream& in);
Index load_index_file(const std::string& path);

}  // namespace pgsa

#endif  // PGSA_INDEX_IO_HPP

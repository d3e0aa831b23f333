#ifndef PGSA_COUNT_CACHE_HPP
#define PGSA_COUNT_CACHE_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "pgsa/pseudogenome.hpp"
#include "pgsa/read_array.hpp"

namespace pgsa {

/// Which k-mer lengths get precomputed counting answers. Keys are always
/// over ACGT, regardless of the index alphabet.
struct CacheLevels {
    uint8_t full_k = 0;    // full (q2, q4, q6) triples for every k <= full_k
    bool partial12 = false;  // 2-byte single-value level for k = 12
    bool partial13 = false;  // 1-byte single-value level for k = 13

    /// Full-level bound from the pseudogenome length: 10 up to 300 Mbases,
    /// 11 beyond; both partial levels enabled.
    static CacheLevels auto_for(uint64_t pg_length) {
        return CacheLevels{pg_length <= 300'000'000 ? uint8_t(10) : uint8_t(11),
                           true, true};
    }
    static CacheLevels none() { return CacheLevels{0, false, false}; }

    bool empty() const noexcept { return full_k == 0 && !partial12 && !partial13; }
    bool operator==(const CacheLevels&) const = default;
};

inline constexpr uint16_t kPartial12Sentinel = 0xFFFF;
inline constexpr uint8_t kPartial13Sentinel = 0xFF;

/// Precomputed Q2/Q4/Q6 answers for short ACGT k-mers.
///
/// Full levels store all three counts per key. The partial k=12/13 levels
/// store a single value v meaning Q2 = Q4 = Q6 = v; the sentinel (all bits
/// set) marks keys where the three counts differ or v would not fit, and
/// sends the caller to the suffix-array path.
class CountCache {
  public:
    struct Hit {
        uint32_t q2;
        uint64_t q4;
        uint32_t q6;
    };
    struct PartialHit {
        uint32_t value;  // Q2 = Q4 = Q6
    };
    struct Miss {};
    using Lookup = std::variant<Hit, PartialHit, Miss>;

    CountCache() = default;

    const CacheLevels& levels() const noexcept { return levels_; }
    bool empty() const noexcept { return levels_.empty(); }

    /// Cache answer for a k-mer, or Miss when the k-mer contains a non-ACGT
    /// symbol, k is not cached, or the partial entry is the sentinel.
    Lookup lookup(std::string_view kmer) const noexcept;

    // Direct access to one level, for serialization and tests.
    const std::vector<uint32_t>& q2_level(int k) const { return q2_[k]; }
    const std::vector<uint64_t>& q4_level(int k) const { return q4_[k]; }
    const std::vector<uint32_t>& q6_level(int k) const { return q6_[k]; }
    const std::vector<uint16_t>& partial12() const { return partial12_; }
    const std::vector<uint8_t>& partial13() const { return partial13_; }

    std::vector<uint32_t>& q2_level_mut(int k) { return q2_[k]; }
    std::vector<uint64_t>& q4_level_mut(int k) { return q4_[k]; }
    std::vector<uint32_t>& q6_level_mut(int k) { return q6_[k]; }
    std::vector<uint16_t>& partial12_mut() { return partial12_; }
    std::vector<uint8_t>& partial13_mut() { return partial13_; }

    /// Allocates zeroed arrays for the requested levels. Throws ConfigError
    /// when full_k exceeds 13 (no answers are cached past k = 13).
    static CountCache allocate(CacheLevels levels);

    /// Total bytes of all arrays: sum over full levels of 4^k * 16, plus
    /// 4^12 * 2 and 4^13 * 1 for enabled partial levels.
    static uint64_t byte_size(CacheLevels levels);
    uint64_t byte_size() const { return byte_size(levels_); }

  private:
    CacheLevels levels_{};
    std::vector<std::vector<uint32_t>> q2_;  // indexed by k, [0] unused
    std::vector<std::vector<uint64_t>> q4_;
    std::vector<std::vector<uint32_t>> q6_;
    std::vector<uint16_t> partial12_;
    std::vector<uint8_t> partial13_;
};

/// Encodes an ACGT k-mer as a 2-bit-per-symbol key (first symbol most
/// significant); nullopt when any symbol is not ACGT.
std::optional<uint64_t> acgt_key(std::string_view kmer) noexcept;

/// Builds the cache in one pass over the read substrings (never by issuing
/// per-key engine queries). Counts cover occurrences fully contained in
/// reads, matching the query engine.
CountCache build_cache(const Pseudogenome& pg, CacheLevels levels);

}  // namespace pgsa

#endif  // PGSA_COUNT_CACHE_HPP

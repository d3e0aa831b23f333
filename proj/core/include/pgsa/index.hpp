#ifndef PGSA_INDEX_HPP
#define PGSA_INDEX_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "pgsa/alphabet.hpp"
#include "pgsa/count_cache.hpp"
#include "pgsa/pseudogenome.hpp"
#include "pgsa/read_array.hpp"
#include "pgsa/read_set.hpp"
#include "pgsa/suffix_index.hpp"

namespace pgsa {

struct BuildOptions {
    int sparsity = 4;
    /// Cache levels; nullopt picks the automatic rule from the pseudogenome
    /// length (CacheLevels::auto_for).
    std::optional<CacheLevels> cache = CacheLevels::none();
    uint32_t repetitive_threshold = kDefaultRepetitiveThreshold;
};

/// The complete immutable search structure: packed pseudogenome, read array,
/// sampled suffix array and optional count cache. Safe to share across
/// threads; per-caller state lives in QuerySession.
class Index {
  public:
    Index() = default;

    static Index build(const ReadSet& reads, const BuildOptions& options = {});

    /// Reassembles an index from deserialized parts (see index_io).
    static Index from_parts(Alphabet alphabet, uint32_t m, int sparsity,
                            uint32_t repetitive_threshold, PackedSequence pg,
                            ReadArray reads, SparseSuffixIndex sa, CountCache cache);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    uint32_t read_length() const noexcept { return m_; }         // m
    uint32_t read_count() const noexcept { return reads_.size(); }  // q
    uint64_t pg_length() const noexcept { return pg_.size(); }   // p
    int sparsity() const noexcept { return sa_.sparsity(); }
    uint32_t repetitive_threshold() const noexcept { return repetitive_threshold_; }

    const PackedSequence& pg() const noexcept { return pg_; }
    const ReadArray& reads() const noexcept { return reads_; }
    const SparseSuffixIndex& suffix_index() const noexcept { return sa_; }
    const CountCache& cache() const noexcept { return cache_; }

    /// Decodes the read at a read-array position from the pseudogenome.
    std::string decode_ordered_read(uint32_t ordered_idx) const {
        return pg_.decode(reads_.pg_offset(ordered_idx), m_);
    }
    /// Decodes a read by its original 1-based ID.
    std::string decode_read(uint32_t orig_id) const {
        return decode_ordered_read(reads_.ordered_index_of(orig_id));
    }

    /// Rebuilds the original read collection (file order) from the index.
    ReadSet reconstruct_reads() const;

  private:
    Alphabet alphabet_ = Alphabet::dna4();
    uint32_t m_ = 0;
    uint32_t repetitive_threshold_ = kDefaultRepetitiveThreshold;
    PackedSequence pg_;
    ReadArray reads_;
    SparseSuffixIndex sa_;
    CountCache cache_;
};

}  // namespace pgsa

#endif  // PGSA_INDEX_HPP

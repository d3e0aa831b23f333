#include "pgsa/index.hpp"

#include "pgsa/errors.hpp"

namespace pgsa {

Index Index::build(const ReadSet& reads, const BuildOptions& options) {
    Pseudogenome pg = build_pseudogenome(reads);
    Index idx;
    idx.alphabet_ = reads.alphabet();
    idx.m_ = reads.read_length();
    idx.repetitive_threshold_ = options.repetitive_threshold;
    idx.reads_ = build_read_array(pg, options.repetitive_threshold);
    idx.sa_ = SparseSuffixIndex::build(pg, idx.reads_, options.sparsity);
    idx.pg_ = PackedSequence::from_text(
        pg.text, reads.alphabet(),
        PackingScheme::for_sparsity(reads.alphabet().size(), options.sparsity));
    CacheLevels levels =
        options.cache ? *options.cache : CacheLevels::auto_for(pg.length());
    if (!levels.empty()) idx.cache_ = build_cache(pg, levels);
    return idx;
}

Index Index::from_parts(Alphabet alphabet, uint32_t m, int sparsity,
                        uint32_t repetitive_threshold, PackedSequence pg,
                        ReadArray reads, SparseSuffixIndex sa, CountCache cache) {
    if (sa.sparsity() != sparsity || pg.scheme().symbols_per_unit != sparsity)
        throw InternalError("sparsity disagreement between components");
    Index idx;
    idx.alphabet_ = alphabet;
    idx.m_ = m;
    idx.repetitive_threshold_ = repetitive_threshold;
    idx.pg_ = std::move(pg);
    idx.reads_ = std::move(reads);
    idx.sa_ = std::move(sa);
    idx.cache_ = std::move(cache);
    return idx;
}

ReadSet Index::reconstruct_reads() const {
    std::vector<std::string> sequences(read_count());
    for (uint32_t i = 0; i < read_count(); ++i)
        sequences[reads_.orig_id(i) - 1] = decode_ordered_read(i);
    return ReadSet::from_sequences(std::move(sequences));
}

}  // namespace pgsa

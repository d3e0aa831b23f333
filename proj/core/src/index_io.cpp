#include "pgsa/index_io.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "pgsa/errors.hpp"

namespace pgsa {

namespace {

constexpr size_t kHeaderSize = 69;

uint64_t fnv1a(const uint8_t* data, size_t n, uint64_t h) {
    for (size_t i = 0; i < n; ++i) {
        h ^= data[i];
        h *= 1099511628211ull;
    }
    return h;
}

void put_le(std::string& buf, uint64_t v, unsigned width) {
    for (unsigned i = 0; i < width; ++i)
        buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

class Writer {
  public:
    explicit Writer(std::ostream& out) : out_(out) { buf_.reserve(kBufCap); }

    void raw(const void* data, size_t n, bool hashed = true) {
        flush();
        out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
        if (!out_) throw IoError("write failed");
        if (hashed) hash_ = fnv1a(static_cast<const uint8_t*>(data), n, hash_);
        written_ += n;
    }
    // Buffered little-endian append; buffered bytes are always hashed.
    void le(uint64_t v, unsigned width) {
        for (unsigned i = 0; i < width; ++i)
            buf_.push_back(uint8_t(v >> (8 * i)));
        if (buf_.size() >= kBufCap) flush();
    }
    void flush() {
        if (buf_.empty()) return;
        out_.write(reinterpret_cast<const char*>(buf_.data()),
                   static_cast<std::streamsize>(buf_.size()));
        if (!out_) throw IoError("write failed");
        hash_ = fnv1a(buf_.data(), buf_.size(), hash_);
        written_ += buf_.size();
        buf_.clear();
    }
    uint64_t hash() {
        flush();
        return hash_;
    }
    uint64_t written() {
        flush();
        return written_;
    }

  private:
    static constexpr size_t kBufCap = size_t(1) << 20;
    std::ostream& out_;
    std::vector<uint8_t> buf_;
    uint64_t hash_ = 14695981039346656037ull;
    uint64_t written_ = 0;
};

class Reader {
  public:
    explicit Reader(std::istream& in) : in_(in) {}

    void raw(void* data, size_t n, bool hashed = true) {
        in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
        if (size_t(in_.gcount()) != n)
            throw SectionLengthMismatch("file truncated: wanted " +
                                        std::to_string(n) + " bytes, got " +
                                        std::to_string(in_.gcount()));
        if (hashed) hash_ = fnv1a(static_cast<const uint8_t*>(data), n, hash_);
    }
    uint64_t le(unsigned width, bool hashed = true) {
        uint8_t b[8];
        raw(b, width, hashed);
        uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i) v |= uint64_t(b[i]) << (8 * i);
        return v;
    }
    uint64_t hash() const noexcept { return hash_; }

  private:
    std::istream& in_;
    uint64_t hash_ = 14695981039346656037ull;
};

}  // namespace

SizeModel compute_size_model(uint64_t p, uint32_t q, uint32_t m, int alphabet_size,
                             int sparsity, CacheLevels cache) {
    const PackingScheme scheme = PackingScheme::for_sparsity(alphabet_size, sparsity);
    const IndexWidths widths = choose_widths(p, q, m, alphabet_size, sparsity);
    const uint64_t samples = (p + sparsity - 1) / uint64_t(sparsity);
    SizeModel model;
    model.pg_bytes = samples * scheme.unit_width;
    model.read_array_bytes = uint64_t(q) * widths.read_record_size();
    model.sa_bytes = samples * widths.element_size();
    model.cache_bytes = CountCache::byte_size(cache);
    return model;
}

SizeModel size_model_of(const Index& index) {
    return compute_size_model(index.pg_length(), index.read_count(),
                              index.read_length(), index.alphabet().size(),
                              index.sparsity(), index.cache().levels());
}

uint64_t save_index(const Index& index, std::ostream& out) {
    const SizeModel model = size_model_of(index);
    const IndexWidths& widths = index.suffix_index().widths();
    const CacheLevels levels = index.cache().levels();

    // header (not covered by the checksum; validated field-by-field on load)
    std::string header;
    header.reserve(kHeaderSize);
    header.append(kIndexMagic, 4);
    header.push_back(char(kIndexFormatVersion));
    header.push_back(char(index.alphabet().size()));
    std::string symbols(index.alphabet().symbols());
    symbols.resize(8, '\0');
    header += symbols;
    put_le(header, index.read_length(), 2);
    put_le(header, index.read_count(), 4);
    put_le(header, index.pg_length(), 8);
    header.push_back(char(index.sparsity()));
    header.push_back(char(widths.read_idx));
    header.push_back(char(widths.offset));
    header.push_back(char(widths.pg_offset));
    header.push_back(char(widths.prev));
    put_le(header, index.repetitive_threshold(), 2);
    uint8_t cache_flags = (levels.empty() ? 0 : 1) | (levels.partial12 ? 2 : 0) |
                          (levels.partial13 ? 4 : 0);
    header.push_back(char(cache_flags));
    header.push_back(char(levels.full_k));
    put_le(header, model.pg_bytes, 8);
    put_le(header, model.read_array_bytes, 8);
    put_le(header, model.sa_bytes, 8);
    put_le(header, model.cache_bytes, 8);
    if (header.size() != kHeaderSize)
        throw InternalError("header size drifted from the format constant");

    Writer w(out);
    w.raw(header.data(), header.size(), /*hashed=*/false);

    // section 1: packed pseudogenome
    w.raw(index.pg().bytes().data(), index.pg().bytes().size());

    // section 2: read array records (offset, flag byte, original ID)
    const ReadArray& reads = index.reads();
    for (uint32_t i = 0; i < reads.size(); ++i) {
        w.le(reads.pg_offset(i), widths.pg_offset);
        w.le(reads.repetitive(i) ? 1 : 0, 1);  // scratch flag bits stay zero
        w.le(reads.orig_id(i), 4);
    }
    w.flush();

    // section 3: suffix-array elements (already little-endian fixed-width)
    w.raw(index.suffix_index().raw_elements().data(),
          index.suffix_index().raw_elements().size());

    // section 4: count cache
    const CountCache& cache = index.cache();
    for (int k = 1; k <= levels.full_k; ++k) {
        for (uint32_t v : cache.q2_level(k)) w.le(v, 4);
        for (uint64_t v : cache.q4_level(k)) w.le(v, 8);
        for (uint32_t v : cache.q6_level(k)) w.le(v, 4);
    }
    if (levels.partial12)
        for (uint16_t v : cache.partial12()) w.le(v, 2);
    if (levels.partial13) w.raw(cache.partial13().data(), cache.partial13().size());

    const uint64_t checksum = w.hash();
    uint8_t tail[8];
    for (unsigned i = 0; i < 8; ++i) tail[i] = uint8_t(checksum >> (8 * i));
    w.raw(tail, 8, /*hashed=*/false);
    return w.written();
}

uint64_t save_index_file(const Index& index, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot create '" + path + "'");
    uint64_t n = save_index(index, out);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
    return n;
}

namespace {

// Compares two pseudogenome suffixes; positions past the text end sort low.
int compare_suffixes(const PackedSequence& pg, uint64_t a, uint64_t b) {
    const uint64_t p = pg.size();
    for (uint64_t i = 0;; ++i) {
        const bool ea = a + i >= p, eb = b + i >= p;
        if (ea || eb) return ea == eb ? 0 : (ea ? -1 : 1);
        int d = int(pg.code_at(a + i)) - int(pg.code_at(b + i));
        if (d != 0) return d;
    }
}

}  // namespace

Index load_index(std::istream& in) {
    Reader r(in);

    char magic[4];
    r.raw(magic, 4, /*hashed=*/false);
    if (std::memcmp(magic, kIndexMagic, 4) != 0)
        throw BadMagic("not an index file (bad magic)");
    const uint8_t version = uint8_t(r.le(1, false));
    if (version != kIndexFormatVersion)
        throw UnsupportedVersion("format version " + std::to_string(version) +
                                 ", supported: " +
                                 std::to_string(kIndexFormatVersion));

    const int alphabet_size = int(r.le(1, false));
    if (alphabet_size != 4 && alphabet_size != 5)
        throw SectionLengthMismatch("invalid alphabet size field");
    const Alphabet alphabet = Alphabet::with_size(alphabet_size);
    char symbols[8];
    r.raw(symbols, 8, false);
    if (std::string_view(symbols, alphabet_size) != alphabet.symbols())
        throw SectionLengthMismatch("unexpected symbol order in header");

    const uint32_t m = uint32_t(r.le(2, false));
    const uint32_t q = uint32_t(r.le(4, false));
    const uint64_t p = r.le(8, false);
    const int sparsity = int(r.le(1, false));
    IndexWidths widths;
    widths.read_idx = uint8_t(r.le(1, false));
    widths.offset = uint8_t(r.le(1, false));
    widths.pg_offset = uint8_t(r.le(1, false));
    widths.prev = uint8_t(r.le(1, false));
    const uint32_t threshold = uint32_t(r.le(2, false));
    const uint8_t cache_flags = uint8_t(r.le(1, false));
    CacheLevels levels;
    levels.full_k = uint8_t(r.le(1, false));
    levels.partial12 = (cache_flags & 2) != 0;
    levels.partial13 = (cache_flags & 4) != 0;
    if ((cache_flags & 1) == 0) levels = CacheLevels::none();

    const uint64_t pg_bytes = r.le(8, false);
    const uint64_t ra_bytes = r.le(8, false);
    const uint64_t sa_bytes = r.le(8, false);
    const uint64_t cache_bytes = r.le(8, false);

    if (sparsity < 1 || sparsity > kMaxSparsity)
        throw SectionLengthMismatch("invalid sparsity field");
    if (m == 0 || q == 0 || p == 0)
        throw SectionLengthMismatch("empty index dimensions");
    const SizeModel model = compute_size_model(p, q, m, alphabet_size, sparsity, levels);
    if (model.pg_bytes != pg_bytes || model.read_array_bytes != ra_bytes ||
        model.sa_bytes != sa_bytes || model.cache_bytes != cache_bytes)
        throw SectionLengthMismatch("declared section lengths do not match the "
                                    "size formulas");
    const IndexWidths expect =
        choose_widths(p, q, m, alphabet_size, sparsity);
    if (!(widths == expect))
        throw SectionLengthMismatch("field widths do not match q, m, p");

    // Pull in all section bytes and settle the checksum before building
    // anything, so corruption is reported as corruption.
    std::vector<uint8_t> pg_raw(pg_bytes), ra_raw(ra_bytes), sa_raw(sa_bytes),
        cache_raw(cache_bytes);
    r.raw(pg_raw.data(), pg_raw.size());
    r.raw(ra_raw.data(), ra_raw.size());
    r.raw(sa_raw.data(), sa_raw.size());
    r.raw(cache_raw.data(), cache_raw.size());
    const uint64_t computed = r.hash();
    const uint64_t stored = r.le(8, /*hashed=*/false);
    if (stored != computed)
        throw ChecksumMismatch("index checksum mismatch");

    auto le_at = [](const std::vector<uint8_t>& buf, size_t at, unsigned width) {
        uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i) v |= uint64_t(buf[at + i]) << (8 * i);
        return v;
    };

    // section 1: packed pseudogenome
    const PackingScheme scheme = PackingScheme::for_sparsity(alphabet_size, sparsity);
    PackedSequence pg =
        PackedSequence::from_bytes(std::move(pg_raw), p, alphabet, scheme);

    // section 2: read array
    std::vector<uint64_t> offsets(q);
    std::vector<uint32_t> orig_ids(q);
    std::vector<uint8_t> repetitive(q);
    const unsigned rec = widths.read_record_size();
    for (uint32_t i = 0; i < q; ++i) {
        offsets[i] = le_at(ra_raw, size_t(i) * rec, widths.pg_offset);
        repetitive[i] = ra_raw[size_t(i) * rec + widths.pg_offset] & 1;
        orig_ids[i] =
            uint32_t(le_at(ra_raw, size_t(i) * rec + widths.pg_offset + 1, 4));
    }
    ReadArray reads(std::move(offsets), std::move(orig_ids), std::move(repetitive), m);

    // section 3: suffix array
    SparseSuffixIndex sa = SparseSuffixIndex::from_raw(std::move(sa_raw), p,
                                                       sparsity, alphabet_size, widths);

    // section 4: count cache
    CountCache cache;
    if (!levels.empty()) {
        cache = CountCache::allocate(levels);
        size_t at = 0;
        for (int k = 1; k <= levels.full_k; ++k) {
            for (auto& v : cache.q2_level_mut(k)) {
                v = uint32_t(le_at(cache_raw, at, 4));
                at += 4;
            }
            for (auto& v : cache.q4_level_mut(k)) {
                v = le_at(cache_raw, at, 8);
                at += 8;
            }
            for (auto& v : cache.q6_level_mut(k)) {
                v = uint32_t(le_at(cache_raw, at, 4));
                at += 4;
            }
        }
        if (levels.partial12) {
            for (auto& v : cache.partial12_mut()) {
                v = uint16_t(le_at(cache_raw, at, 2));
                at += 2;
            }
        }
        if (levels.partial13) {
            auto& p13 = cache.partial13_mut();
            std::copy(cache_raw.begin() + at, cache_raw.begin() + at + p13.size(),
                      p13.begin());
            at += p13.size();
        }
        if (at != cache_raw.size())
            throw SectionLengthMismatch("cache section length drifted");
    }

    Index index = Index::from_parts(alphabet, m, sparsity, threshold, std::move(pg),
                                    std::move(reads), std::move(sa), std::move(cache));

    // Cross-checks: the pseudogenome must still satisfy its definition and
    // the suffix array must still be suffix-sorted (sampled).
    {
        Pseudogenome check;
        check.text = index.pg().decode(0, index.pg_length());
        check.order.assign(index.reads().orig_ids().begin(),
                           index.reads().orig_ids().end());
        check.offsets = index.reads().pg_offsets();
        check.read_length = m;
        check.alphabet = alphabet;
        ReadSet rs = index.reconstruct_reads();
        if (auto violation = validate_pseudogenome(check, rs))
            throw InternalError("loaded pseudogenome invalid: " + violation->message);
    }
    {
        const SparseSuffixIndex& s = index.suffix_index();
        const size_t n = s.element_count();
        const size_t step = std::max<size_t>(1, n / 1024);
        for (size_t i = 0; i + 1 < n; i += step) {
            if (compare_suffixes(index.pg(), s.suffix_position(i, index.reads()),
                                 s.suffix_position(i + 1, index.reads())) >= 0)
                throw InternalError("loaded suffix array not sorted at element " +
                                    std::to_string(i));
        }
    }
    return index;
}

Index load_index_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return load_index(in);
}

}  // namespace pgsa

#include "pgsa/suffix_index.hpp"

#include <algorithm>
#include <cassert>

#include "pgsa/errors.hpp"

namespace pgsa {

IndexWidths choose_widths(uint64_t p, uint32_t q, uint32_t m, int alphabet_size,
                          int sparsity) {
    IndexWidths w;
    w.read_idx = (q <= (uint32_t(1) << 24)) ? 3 : 4;
    w.offset = (m <= 256) ? 1 : 2;
    w.pg_offset = (p <= (uint64_t(1) << 32)) ? 4 : 8;
    if (sparsity == 1) {
        w.prev = 0;
    } else {
        w.prev = PackingScheme::for_sparsity(alphabet_size, sparsity - 1).unit_width;
    }
    return w;
}

namespace {

// Suffix ordering with a positional terminator: positions at or past the
// real text end compare below every symbol. Two sampled suffixes can never
// tie, because the one starting later reaches the terminator first.
class SuffixSorter {
  public:
    SuffixSorter(std::string_view text) : text_(text) {}

    int sym(uint64_t pos) const noexcept {
        return pos < text_.size() ? static_cast<unsigned char>(text_[pos]) : -1;
    }

    bool suffix_less(uint64_t a, uint64_t b) const noexcept {
        for (uint64_t i = 0;; ++i) {
            int sa = sym(a + i), sb = sym(b + i);
            if (sa != sb) return sa < sb;
            if (sa < 0) return a > b;  // both exhausted: later start is shorter
        }
    }

    void sort(std::vector<uint64_t>& positions) {
        mkq(positions.data(), positions.size(), 0);
    }

  private:
    // Multikey (three-way radix) quicksort on suffix symbols.
    void mkq(uint64_t* v, size_t n, uint64_t depth) {
        while (n > 16) {
            int pivot = sym(v[n / 2] + depth);
            size_t lt = 0, i = 0, gt = n;
            while (i < gt) {
                int c = sym(v[i] + depth);
                if (c < pivot)
                    std::swap(v[lt++], v[i++]);
                else if (c > pivot)
                    std::swap(v[i], v[--gt]);
                else
                    ++i;
            }
            mkq(v, lt, depth);
            mkq(v + gt, n - gt, depth);
            if (pivot < 0) return;  // terminator group cannot hold two suffixes
            v += lt;
            n = gt - lt;
            ++depth;
        }
        std::sort(v, v + n, [&](uint64_t a, uint64_t b) {
            return suffix_less(a + depth, b + depth);
        });
    }

    std::string_view text_;
};

void store_field(uint8_t* at, unsigned width, uint64_t value) {
    for (unsigned j = 0; j < width; ++j) at[j] = static_cast<uint8_t>(value >> (8 * j));
}

// Base-sigma value of the first n codes, most significant first.
uint32_t pack_prefix(const uint8_t* codes, size_t n, const std::array<uint32_t, 7>& pow) {
    uint32_t v = 0;
    for (size_t i = 0; i < n; ++i) v += codes[i] * pow[n - 1 - i];
    return v;
}

}  // namespace

SparseSuffixIndex SparseSuffixIndex::build(const Pseudogenome& pg,
                                           const ReadArray& reads, int sparsity) {
    if (sparsity < 1 || sparsity > kMaxSparsity)
        throw IncompatibleSparsity("sparsity must be in [1, " +
                                   std::to_string(kMaxSparsity) + "], got " +
                                   std::to_string(sparsity));
    SparseSuffixIndex idx;
    idx.s_ = sparsity;
    idx.p_ = pg.length();
    idx.padded_p_ = (pg.length() + sparsity - 1) / sparsity * uint64_t(sparsity);

    const Alphabet alpha = pg.alphabet;
    idx.widths_ = choose_widths(idx.p_, reads.size(), reads.read_length(),
                                alpha.size(), sparsity);
    idx.prev_scheme_ = PackingScheme::for_sparsity(alpha.size(),
                                                   sparsity == 1 ? 1 : sparsity - 1);

    // Sample every s-th position, then sort the sampled suffixes.
    const uint64_t s = sparsity;
    std::vector<uint64_t> positions;
    positions.reserve(idx.padded_p_ / s);
    for (uint64_t t = s - 1; t < idx.padded_p_; t += s) positions.push_back(t);
    SuffixSorter sorter(pg.text);
    sorter.sort(positions);

    // Furthest read covering each sample, in position order.
    std::vector<uint32_t> furthest(positions.size());
    {
        uint32_t r = 0;
        for (uint64_t i = 0, t = s - 1; t < idx.padded_p_; t += s, ++i) {
            while (r + 1 < reads.size() && reads.pg_offset(r + 1) <= t) ++r;
            furthest[i] = r;
        }
    }

    idx.count_ = positions.size();
    const unsigned esz = idx.widths_.element_size();
    idx.elements_.assign(idx.count_ * esz, 0);
    for (size_t i = 0; i < positions.size(); ++i) {
        const uint64_t t = positions[i];
        uint8_t* at = idx.elements_.data() + i * esz;
        if (t >= idx.p_) {
            assert(i == 0);  // the all-terminator suffix sorts first
            continue;        // inert element, fields stay zero
        }
        const uint32_t r = furthest[t / s];
        store_field(at, idx.widths_.read_idx, r);
        store_field(at + idx.widths_.read_idx, idx.widths_.offset,
                    t - reads.pg_offset(r));
        if (idx.widths_.prev > 0) {
            uint8_t codes[kMaxSparsity];
            for (int j = 0; j < sparsity - 1; ++j)
                codes[j] = alpha.code(pg.text[t - (sparsity - 1) + j]);
            store_field(at + idx.widths_.read_idx + idx.widths_.offset,
                        idx.widths_.prev,
                        pack_prefix(codes, sparsity - 1, idx.prev_scheme_.pow));
        }
    }
    return idx;
}

SparseSuffixIndex SparseSuffixIndex::from_raw(std::vector<uint8_t> elements,
                                              uint64_t pg_length, int sparsity,
                                              int alphabet_size, IndexWidths widths) {
    if (sparsity < 1 || sparsity > kMaxSparsity)
        throw IncompatibleSparsity("sparsity must be in [1, 6], got " +
                                   std::to_string(sparsity));
    SparseSuffixIndex idx;
    idx.s_ = sparsity;
    idx.p_ = pg_length;
    idx.padded_p_ = (pg_length + sparsity - 1) / sparsity * uint64_t(sparsity);
    idx.widths_ = widths;
    idx.prev_scheme_ = PackingScheme::for_sparsity(alphabet_size,
                                                   sparsity == 1 ? 1 : sparsity - 1);
    if (elements.size() % widths.element_size() != 0)
        throw SectionLengthMismatch("suffix element blob is not a whole number "
                                    "of elements");
    idx.count_ = elements.size() / widths.element_size();
    if (idx.count_ != idx.padded_p_ / uint64_t(sparsity))
        throw SectionLengthMismatch(
            "suffix element count " + std::to_string(idx.count_) + " differs from " +
            std::to_string(idx.padded_p_ / uint64_t(sparsity)));
    idx.elements_ = std::move(elements);
    return idx;
}

std::vector<SparseSuffixIndex::PgOccurrence> SparseSuffixIndex::locate_range(
    const PackedSequence& pg, const ReadArray& reads, std::string_view pattern) const {
    std::vector<uint8_t> codes(pattern.size());
    for (size_t i = 0; i < pattern.size(); ++i)
        codes[i] = pg.alphabet().code(pattern[i]);
    return locate_codes(pg, reads, codes);
}

std::vector<SparseSuffixIndex::PgOccurrence> SparseSuffixIndex::locate_codes(
    const PackedSequence& pg, const ReadArray& reads,
    const std::vector<uint8_t>& codes) const {
    const size_t k = codes.size();
    const uint64_t s = s_;
    if (k < uint64_t(s_))
        throw PatternTooShort("pattern length " + std::to_string(k) +
                              " below sparsity " + std::to_string(s_));

    const PackingScheme& scheme = pg.scheme();
    std::vector<PgOccurrence> out;

    // Three-way comparison of the sampled suffix at t against sub[0..k').
    // Terminator positions (>= p_) compare below every pattern symbol.
    auto compare = [&](uint64_t t, const uint8_t* sub, size_t klen,
                       const uint32_t* pat_units, uint32_t pat_tail,
                       size_t full_units, size_t tail_len) -> int {
        if (t >= p_) return -1;
        if (t + klen <= p_) {
            int d = int(pg.code_at(t)) - int(sub[0]);
            if (d != 0) return d < 0 ? -1 : 1;
            const uint64_t base = (t + 1) / s;
            for (size_t j = 0; j < full_units; ++j) {
                PackedUnit u = pg.unit(base + j);
                if (u != pat_units[j]) return u < pat_units[j] ? -1 : 1;
            }
            if (tail_len) {
                uint32_t u = pg.unit(base + full_units) / scheme.pow[s - tail_len];
                if (u != pat_tail) return u < pat_tail ? -1 : 1;
            }
            return 0;
        }
        // Suffix runs into the terminator-padded tail.
        for (size_t i = 0; i < klen; ++i) {
            if (t + i >= p_) return -1;
            int d = int(pg.code_at(t + i)) - int(sub[i]);
            if (d != 0) return d < 0 ? -1 : 1;
        }
        return 0;
    };

    for (uint32_t shift = 0; shift < uint32_t(s_); ++shift) {
        const uint8_t* sub = codes.data() + shift;
        const size_t klen = k - shift;

        // Pattern symbols past the first one, packed at unit granularity.
        const size_t full_units = (klen - 1) / s;
        const size_t tail_len = (klen - 1) % s;
        std::vector<uint32_t> pat_units(full_units);
        for (size_t j = 0; j < full_units; ++j)
            pat_units[j] = pack_codes(sub + 1 + j * s, s, scheme);
        const uint32_t pat_tail =
            tail_len ? pack_prefix(sub + 1 + full_units * s, tail_len, scheme.pow) : 0;

        auto cmp_at = [&](size_t idx) {
            return compare(suffix_position(idx, reads), sub, klen, pat_units.data(),
                           pat_tail, full_units, tail_len);
        };

        size_t lo = 0, hi = count_;
        while (lo < hi) {
            size_t mid = lo + (hi - lo) / 2;
            if (cmp_at(mid) < 0) lo = mid + 1; else hi = mid;
        }
        const size_t lower = lo;
        hi = count_;
        while (lo < hi) {
            size_t mid = lo + (hi - lo) / 2;
            if (cmp_at(mid) <= 0) lo = mid + 1; else hi = mid;
        }
        const size_t upper = lo;

        // Expected preceding symbols for this shift, as the low `shift`
        // digits of the stored prev field.
        const uint32_t want_prev =
            shift ? pack_prefix(codes.data(), shift, prev_scheme_.pow) : 0;
        const uint32_t prev_mod = prev_scheme_.pow[shift];

        for (size_t i = lower; i < upper; ++i) {
            if (shift) {
                if (element_prev(i) % prev_mod != want_prev) continue;
                const uint64_t t = suffix_position(i, reads);
                const uint64_t x = t - shift;  // occurrence start
                const uint32_t r = reads.furthest_read_at(x);
                out.push_back({r, static_cast<uint32_t>(x - reads.pg_offset(r))});
            } else {
                out.push_back({element_read_idx(i), element_in_read_offset(i)});
            }
        }
    }
    return out;
}

}  // namespace pgsa

#include "pgsa/count_cache.hpp"

#include <algorithm>

#include "pgsa/errors.hpp"

namespace pgsa {

namespace {

inline int acgt_code(char c) noexcept {
    switch (c) {
        case 'A': return 0;
        case 'C': return 1;
        case 'G': return 2;
        case 'T': return 3;
        default: return -1;
    }
}

// Sorted 2-bit keys of all ACGT-only k-windows of `read`.
void collect_window_keys(std::string_view read, uint32_t k,
                         std::vector<uint64_t>& keys) {
    keys.clear();
    if (read.size() < k) return;
    const uint64_t mask = (k == 32) ? ~uint64_t(0) : (uint64_t(1) << (2 * k)) - 1;
    uint64_t code = 0;
    size_t invalid_until = 0;  // windows ending before this are tainted by N
    for (size_t i = 0; i < read.size(); ++i) {
        int c = acgt_code(read[i]);
        if (c < 0) {
            invalid_until = i + 1 + k;
            code = 0;
            continue;
        }
        code = ((code << 2) | uint64_t(c)) & mask;
        if (i + 1 >= k && i + 1 >= invalid_until) keys.push_back(code);
    }
    std::sort(keys.begin(), keys.end());
}

}  // namespace

std::optional<uint64_t> acgt_key(std::string_view kmer) noexcept {
    uint64_t key = 0;
    for (char ch : kmer) {
        int c = acgt_code(ch);
        if (c < 0) return std::nullopt;
        key = (key << 2) | uint64_t(c);
    }
    return key;
}

CountCache CountCache::allocate(CacheLevels levels) {
    if (levels.full_k > 13)
        throw ConfigError("cache level " + std::to_string(levels.full_k) +
                          " exceeds the k <= 13 bound");
    if (levels.partial12 && levels.full_k >= 12)
        throw ConfigError("partial k=12 level overlaps the full levels");
    if (levels.partial13 && levels.full_k >= 13)
        throw ConfigError("partial k=13 level overlaps the full levels");
    CountCache cache;
    cache.levels_ = levels;
    cache.q2_.resize(levels.full_k + 1);
    cache.q4_.resize(levels.full_k + 1);
    cache.q6_.resize(levels.full_k + 1);
    for (int k = 1; k <= levels.full_k; ++k) {
        const size_t n = size_t(1) << (2 * k);
        cache.q2_[k].assign(n, 0);
        cache.q4_[k].assign(n, 0);
        cache.q6_[k].assign(n, 0);
    }
    if (levels.partial12) cache.partial12_.assign(size_t(1) << 24, 0);
    if (levels.partial13) cache.partial13_.assign(size_t(1) << 26, 0);
    return cache;
}

uint64_t CountCache::byte_size(CacheLevels levels) {
    uint64_t bytes = 0;
    for (int k = 1; k <= levels.full_k; ++k)
        bytes += (uint64_t(1) << (2 * k)) * (4 + 8 + 4);
    if (levels.partial12) bytes += (uint64_t(1) << 24) * 2;
    if (levels.partial13) bytes += (uint64_t(1) << 26) * 1;
    return bytes;
}

CountCache::Lookup CountCache::lookup(std::string_view kmer) const noexcept {
    const size_t k = kmer.size();
    if (k == 0 || k > 13) return Miss{};
    auto key = acgt_key(kmer);
    if (!key) return Miss{};
    if (k <= levels_.full_k)
        return Hit{q2_[k][*key], q4_[k][*key], q6_[k][*key]};
    if (k == 12 && levels_.partial12) {
        uint16_t v = partial12_[*key];
        if (v == kPartial12Sentinel) return Miss{};
        return PartialHit{v};
    }
    if (k == 13 && levels_.partial13) {
        uint8_t v = partial13_[*key];
        if (v == kPartial13Sentinel) return Miss{};
        return PartialHit{v};
    }
    return Miss{};
}

CountCache build_cache(const Pseudogenome& pg, CacheLevels levels) {
    CountCache cache = CountCache::allocate(levels);
    const uint32_t m = pg.read_length;
    std::string_view text = pg.text;
    std::vector<uint64_t> keys;

    for (int k = 1; k <= levels.full_k; ++k) {
        auto& q2 = cache.q2_level_mut(k);
        auto& q4 = cache.q4_level_mut(k);
        auto& q6 = cache.q6_level_mut(k);
        for (uint32_t r = 0; r < pg.read_count(); ++r) {
            collect_window_keys(text.substr(pg.offsets[r], m), uint32_t(k), keys);
            for (size_t i = 0; i < keys.size();) {
                size_t j = i;
                while (j < keys.size() && keys[j] == keys[i]) ++j;
                q2[keys[i]] += 1;
                q4[keys[i]] += j - i;
                if (j - i == 1) q6[keys[i]] += 1;
                i = j;
            }
        }
    }

    // Partial levels hold v iff Q2 = Q4 = Q6 = v and v is below the
    // sentinel. A read with a repeated key spoils the key; a count that
    // climbs into the sentinel stays there.
    auto fill_partial = [&](uint32_t k, auto& entries, auto sentinel) {
        for (uint32_t r = 0; r < pg.read_count(); ++r) {
            collect_window_keys(text.substr(pg.offsets[r], m), k, keys);
            for (size_t i = 0; i < keys.size();) {
                size_t j = i;
                while (j < keys.size() && keys[j] == keys[i]) ++j;
                auto& e = entries[keys[i]];
                if (e != sentinel) e = (j - i > 1) ? sentinel : e + 1;
                i = j;
            }
        }
    };
    if (levels.partial12) fill_partial(12, cache.partial12_mut(), kPartial12Sentinel);
    if (levels.partial13) fill_partial(13, cache.partial13_mut(), kPartial13Sentinel);
    return cache;
}

}  // namespace pgsa

#include "pgsa/read_array.hpp"

#include <algorithm>

#include "pgsa/errors.hpp"

namespace pgsa {

ReadArray::ReadArray(std::vector<uint64_t> pg_offsets, std::vector<uint32_t> orig_ids,
                     std::vector<uint8_t> repetitive, uint32_t read_length)
    : pg_offsets_(std::move(pg_offsets)),
      orig_ids_(std::move(orig_ids)),
      repetitive_(std::move(repetitive)),
      m_(read_length) {
    if (pg_offsets_.size() != orig_ids_.size() ||
        pg_offsets_.size() != repetitive_.size())
        throw InternalError("read array column sizes differ");
    inverse_.assign(orig_ids_.size(), UINT32_MAX);
    for (uint32_t i = 0; i < orig_ids_.size(); ++i) {
        uint32_t id = orig_ids_[i];
        if (id < 1 || id > orig_ids_.size() || inverse_[id - 1] != UINT32_MAX)
            throw InternalError("read array original IDs are not a permutation");
        inverse_[id - 1] = i;
    }
}

uint32_t ReadArray::furthest_read_at(uint64_t pos) const noexcept {
    auto it = std::upper_bound(pg_offsets_.begin(), pg_offsets_.end(), pos);
    return static_cast<uint32_t>(it - pg_offsets_.begin()) - 1;
}

uint32_t ReadArray::ordered_index_of(uint32_t orig_id) const {
    if (orig_id < 1 || orig_id > inverse_.size())
        throw UnknownReadId("read ID " + std::to_string(orig_id) +
                            " outside 1.." + std::to_string(inverse_.size()));
    return inverse_[orig_id - 1];
}

bool is_repetitive_read(std::string_view read, uint32_t threshold) {
    if (threshold == 0 || read.size() < size_t(threshold) + 1) return false;
    // Encode each window in 3 bits/symbol; threshold <= 21 fits 64 bits.
    if (threshold <= 21) {
        std::vector<uint64_t> windows;
        windows.reserve(read.size() - threshold + 1);
        uint64_t code = 0;
        const uint64_t mask =
            threshold == 21 ? ~uint64_t(0) : (uint64_t(1) << (3 * threshold)) - 1;
        auto sym3 = [](char c) -> uint64_t {
            switch (c) {
                case 'A': return 0;
                case 'C': return 1;
                case 'G': return 2;
                case 'N': return 3;
                default: return 4;  // T
            }
        };
        for (size_t i = 0; i < read.size(); ++i) {
            code = ((code << 3) | sym3(read[i])) & mask;
            if (i + 1 >= threshold) windows.push_back(code);
        }
        std::sort(windows.begin(), windows.end());
        return std::adjacent_find(windows.begin(), windows.end()) != windows.end();
    }
    // Long windows: compare substrings directly.
    std::vector<std::string_view> windows;
    windows.reserve(read.size() - threshold + 1);
    for (size_t i = 0; i + threshold <= read.size(); ++i)
        windows.push_back(read.substr(i, threshold));
    std::sort(windows.begin(), windows.end());
    return std::adjacent_find(windows.begin(), windows.end()) != windows.end();
}

ReadArray build_read_array(const Pseudogenome& pg, uint32_t repetitive_threshold) {
    const uint32_t q = pg.read_count();
    const uint32_t m = pg.read_length;
    std::vector<uint8_t> repetitive(q, 0);
    std::string_view text = pg.text;
    for (uint32_t i = 0; i < q; ++i)
        repetitive[i] =
            is_repetitive_read(text.substr(pg.offsets[i], m), repetitive_threshold);
    return ReadArray(pg.offsets, pg.order, std::move(repetitive), m);
}

}  // namespace pgsa

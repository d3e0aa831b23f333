#include "pgsa/pseudogenome.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pgsa {

namespace {

// Union-find over reads; a link A->B is legal only when A and B are in
// different chains, which also rules out self-links.
class ChainSets {
  public:
    explicit ChainSets(uint32_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }

    uint32_t find(uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

  private:
    std::vector<uint32_t> parent_;
    std::vector<uint32_t> rank_;
};

// Orders candidate successors by their length-ol prefix, ties by original
// index ascending; transparent so the tree can be probed by a suffix view.
struct PrefixLess {
    using is_transparent = void;

    const ReadSet* reads;
    uint32_t ol;

    std::string_view prefix(uint32_t r) const {
        return reads->read(r).substr(0, ol);
    }
    bool operator()(uint32_t a, uint32_t b) const {
        int c = prefix(a).compare(prefix(b));
        return c != 0 ? c < 0 : a < b;
    }
    bool operator()(uint32_t a, std::string_view sv) const { return prefix(a) < sv; }
    bool operator()(std::string_view sv, uint32_t b) const { return sv < prefix(b); }
};

}  // namespace

Pseudogenome build_pseudogenome(const ReadSet& reads) {
    const uint32_t q = reads.count();
    const uint32_t m = reads.read_length();
    constexpr uint32_t kNone = UINT32_MAX;

    std::vector<uint32_t> succ(q, kNone), pred(q, kNone);
    std::vector<uint32_t> link_ol(q);  // overlap length of the link into succ[i]
    ChainSets chains(q);
    std::string_view flat = reads.flat();

    for (uint32_t ol = m; ol >= 1; --ol) {
        // Candidate successors: reads that do not have a predecessor yet.
        std::multiset<uint32_t, PrefixLess> candidates(PrefixLess{&reads, ol});
        for (uint32_t i = 0; i < q; ++i)
            if (pred[i] == kNone) candidates.insert(i);

        for (uint32_t a = 0; a < q; ++a) {
            if (succ[a] != kNone) continue;
            std::string_view suffix = flat.substr(size_t(a) * m + (m - ol), ol);
            for (auto it = candidates.lower_bound(suffix);
                 it != candidates.end() && candidates.key_comp().prefix(*it) == suffix;
                 ++it) {
                uint32_t b = *it;
                if (chains.find(a) == chains.find(b)) continue;  // cycle or self
                succ[a] = b;
                pred[b] = a;
                link_ol[b] = ol;
                chains.unite(a, b);
                candidates.erase(it);
                break;
            }
        }
        if (ol == 1) break;  // ol is unsigned
    }

    // Emit chains head-to-tail; heads ascending by original read ID. A new
    // chain starts one full read length after the previous read.
    Pseudogenome pg;
    pg.read_length = m;
    pg.alphabet = reads.alphabet();
    pg.order.reserve(q);
    pg.offsets.reserve(q);
    pg.text.reserve(size_t(q) * m);
    for (uint32_t head = 0; head < q; ++head) {
        if (pred[head] != kNone) continue;
        uint64_t offset = 0;
        for (uint32_t r = head; r != kNone; r = succ[r]) {
            if (r == head) {
                offset = pg.text.size();
            } else {
                offset += m - link_ol[r];
            }
            pg.order.push_back(r + 1);
            pg.offsets.push_back(offset);
            uint64_t have = pg.text.size() - offset;  // prefix already emitted
            pg.text.append(reads.read(r).substr(have));
        }
    }
    return pg;
}

std::optional<PgViolation> validate_pseudogenome(const Pseudogenome& pg,
                                                 const ReadSet& reads) {
    const uint64_t q = reads.count();
    const uint64_t m = reads.read_length();
    const uint64_t p = pg.length();

    if (pg.order.size() != q || pg.offsets.size() != q)
        return PgViolation{"order/offsets size differs from read count", 0};
    if (p > q * m)
        return PgViolation{"pseudogenome longer than concatenation bound", p};

    // offset sequence: starts at 0, deltas in [0, m], ends at p - m
    if (pg.offsets[0] != 0)
        return PgViolation{"first offset is not 0", 0};
    for (size_t i = 0; i + 1 < pg.offsets.size(); ++i) {
        uint64_t a = pg.offsets[i], b = pg.offsets[i + 1];
        if (b < a || b - a > m)
            return PgViolation{"delta out of range at ordered read " +
                                   std::to_string(i + 1), i + 1};
    }
    if (pg.offsets.back() != p - m)
        return PgViolation{"last read does not end at the pseudogenome end",
                           pg.offsets.size() - 1};

    // order is a permutation of 1..q
    std::vector<bool> seen(q, false);
    for (size_t i = 0; i < pg.order.size(); ++i) {
        uint32_t id = pg.order[i];
        if (id < 1 || id > q || seen[id - 1])
            return PgViolation{"order is not a permutation of 1..q at index " +
                                   std::to_string(i), i};
        seen[id - 1] = true;
    }

    // every ordered read appears verbatim at its offset
    for (size_t i = 0; i < pg.order.size(); ++i) {
        std::string_view expect = reads.read(pg.order[i] - 1);
        if (std::string_view(pg.text).substr(pg.offsets[i], m) != expect)
            return PgViolation{"read mismatch at ordered read " + std::to_string(i),
                               i};
    }
    return std::nullopt;
}

}  // namespace pgsa

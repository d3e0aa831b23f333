#include "pgsa/query.hpp"

#include <algorithm>

#include "pgsa/errors.hpp"

namespace pgsa {

QuerySession::QuerySession(const Index& index)
    : index_(&index),
      occurrence_flags_(index.read_count(), false),
      single_flags_(index.read_count(), false) {}

std::string resolve_positional(const Index& index, const PositionalInput& input) {
    const ReadArray& ra = index.reads();
    const uint32_t ordered = ra.ordered_index_of(input.read_id);
    if (uint64_t(input.start) + input.length > index.read_length())
        throw PositionOutOfRange(
            "window [" + std::to_string(input.start) + ", " +
            std::to_string(uint64_t(input.start) + input.length) +
            ") exceeds read length " + std::to_string(index.read_length()));
    return index.pg().decode(ra.pg_offset(ordered) + input.start, input.length);
}

QuerySession::Prepared QuerySession::prepare(const QueryInput& input) const {
    std::string symbols;
    if (const auto* pat = std::get_if<PatternInput>(&input))
        symbols = pat->symbols;
    else
        symbols = resolve_positional(*index_, std::get<PositionalInput>(input));

    Prepared p;
    p.k = symbols.size();
    p.codes.resize(p.k);
    p.symbols.resize(p.k);
    const Alphabet& alpha = index_->alphabet();
    for (size_t i = 0; i < p.k; ++i) {
        p.codes[i] = alpha.code(symbols[i]);       // throws InvalidSymbol
        p.symbols[i] = alpha.symbol(p.codes[i]);   // canonical uppercase
    }
    if (p.k < size_t(index_->sparsity()))
        throw PatternTooShort("query length " + std::to_string(p.k) +
                              " below index sparsity " +
                              std::to_string(index_->sparsity()));
    return p;
}

template <typename Visit>
void QuerySession::scan_read_occurrences(const Prepared& q, Visit&& visit) {
    const auto occs =
        index_->suffix_index().locate_codes(index_->pg(), index_->reads(), q.codes);
    const ReadArray& ra = index_->reads();
    const uint64_t m = index_->read_length();
    for (const auto& occ : occs) {
        const uint64_t x = ra.pg_offset(occ.read_idx) + occ.in_read_offset;
        // The furthest read has the smallest in-read offset; walk backward
        // while the occurrence still fits inside the read.
        for (uint32_t r = occ.read_idx;; --r) {
            const uint64_t o = x - ra.pg_offset(r);
            if (o + q.k > m) break;
            visit(r, static_cast<uint32_t>(o));
            if (r == 0) break;
        }
    }
}

namespace {

std::optional<CountCache::Hit> cached_counts(const Index& index,
                                             const std::string& symbols) {
    const CountCache& cache = index.cache();
    if (cache.empty()) return std::nullopt;
    auto res = cache.lookup(symbols);
    if (const auto* hit = std::get_if<CountCache::Hit>(&res)) return *hit;
    if (const auto* partial = std::get_if<CountCache::PartialHit>(&res))
        return CountCache::Hit{partial->value, partial->value, partial->value};
    return std::nullopt;
}

}  // namespace

OccurrenceList QuerySession::q3_positions(const QueryInput& input) {
    const Prepared q = prepare(input);
    OccurrenceList out;
    const ReadArray& ra = index_->reads();
    scan_read_occurrences(q, [&](uint32_t r, uint32_t o) {
        out.push_back({ra.orig_id(r), o});
    });
    return out;
}

uint64_t QuerySession::q4_count(const QueryInput& input) {
    const Prepared q = prepare(input);
    if (auto hit = cached_counts(*index_, q.symbols)) return hit->q4;
    uint64_t n = 0;
    scan_read_occurrences(q, [&](uint32_t, uint32_t) { ++n; });
    return n;
}

ReadList QuerySession::q1_reads(const QueryInput& input) {
    const Prepared q = prepare(input);
    ReadList out;
    const ReadArray& ra = index_->reads();
    const bool may_skip = heuristic_ && q.k >= index_->repetitive_threshold();
    scan_read_occurrences(q, [&](uint32_t r, uint32_t) {
        if (may_skip && !ra.repetitive(r)) {
            // No window of threshold length repeats inside this read, so no
            // k-mer with k >= threshold can either: first and only visit.
            out.push_back(ra.orig_id(r));
            return;
        }
        if (!occurrence_flags_[r]) {
            occurrence_flags_[r] = true;
            visited_.push_back({r, 0});
            out.push_back(ra.orig_id(r));
        }
    });
    for (const auto& v : visited_) occurrence_flags_[v.ordered_idx] = false;
    visited_.clear();
    return out;
}

uint64_t QuerySession::q2_count(const QueryInput& input) {
    const Prepared q = prepare(input);
    if (auto hit = cached_counts(*index_, q.symbols)) return hit->q2;
    uint64_t n = 0;
    const ReadArray& ra = index_->reads();
    const bool may_skip = heuristic_ && q.k >= index_->repetitive_threshold();
    scan_read_occurrences(q, [&](uint32_t r, uint32_t) {
        if (may_skip && !ra.repetitive(r)) {
            ++n;
            return;
        }
        if (!occurrence_flags_[r]) {
            occurrence_flags_[r] = true;
            visited_.push_back({r, 0});
            ++n;
        }
    });
    for (const auto& v : visited_) occurrence_flags_[v.ordered_idx] = false;
    visited_.clear();
    return n;
}

OccurrenceList QuerySession::q7_positions(const QueryInput& input) {
    const Prepared q = prepare(input);
    OccurrenceList out;
    const ReadArray& ra = index_->reads();
    const bool may_skip = heuristic_ && q.k >= index_->repetitive_threshold();
    scan_read_occurrences(q, [&](uint32_t r, uint32_t o) {
        if (may_skip && !ra.repetitive(r)) {
            out.push_back({ra.orig_id(r), o});  // provably the only occurrence
            return;
        }
        if (!occurrence_flags_[r]) {
            occurrence_flags_[r] = true;
            single_flags_[r] = true;
            visited_.push_back({r, o});
        } else if (single_flags_[r]) {
            single_flags_[r] = false;
        }
    });
    for (const auto& v : visited_) {
        if (single_flags_[v.ordered_idx]) {
            out.push_back({ra.orig_id(v.ordered_idx), v.first_pos});
            single_flags_[v.ordered_idx] = false;
        }
        occurrence_flags_[v.ordered_idx] = false;
    }
    visited_.clear();
    return out;
}

ReadList QuerySession::q5_reads(const QueryInput& input) {
    OccurrenceList occ = q7_positions(input);
    ReadList out;
    out.reserve(occ.size());
    for (const auto& o : occ) out.push_back(o.read_id);
    return out;
}

uint64_t QuerySession::q6_count(const QueryInput& input) {
    const Prepared q = prepare(input);
    if (auto hit = cached_counts(*index_, q.symbols)) return hit->q6;
    uint64_t n = 0;
    const ReadArray& ra = index_->reads();
    const bool may_skip = heuristic_ && q.k >= index_->repetitive_threshold();
    scan_read_occurrences(q, [&](uint32_t r, uint32_t o) {
        if (may_skip && !ra.repetitive(r)) {
            ++n;
            return;
        }
        if (!occurrence_flags_[r]) {
            occurrence_flags_[r] = true;
            single_flags_[r] = true;
            visited_.push_back({r, o});
        } else if (single_flags_[r]) {
            single_flags_[r] = false;
        }
    });
    for (const auto& v : visited_) {
        if (single_flags_[v.ordered_idx]) {
            ++n;
            single_flags_[v.ordered_idx] = false;
        }
        occurrence_flags_[v.ordered_idx] = false;
    }
    visited_.clear();
    return n;
}

QueryResult QuerySession::run(QueryType type, const QueryInput& input) {
    switch (type) {
        case QueryType::Q1: return q1_reads(input);
        case QueryType::Q2: return q2_count(input);
        case QueryType::Q3: return q3_positions(input);
        case QueryType::Q4: return q4_count(input);
        case QueryType::Q5: return q5_reads(input);
        case QueryType::Q6: return q6_count(input);
        case QueryType::Q7: return q7_positions(input);
    }
    throw InternalError("unknown query type");
}

bool QuerySession::flags_clear() const noexcept {
    auto none = [](const std::vector<bool>& v) {
        return std::find(v.begin(), v.end(), true) == v.end();
    };
    return none(occurrence_flags_) && none(single_flags_);
}

}  // namespace pgsa

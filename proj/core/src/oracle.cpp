#include "pgsa/oracle.hpp"

#include "pgsa/errors.hpp"

namespace pgsa {

OracleIndex::OracleIndex(const ReadSet& reads, uint32_t k) : k_(k) {
    if (k == 0) return;
    const uint32_t m = reads.read_length();
    for (uint32_t r = 0; r < reads.count(); ++r) {
        std::string_view read = reads.read(r);
        for (uint32_t pos = 0; pos + k <= m; ++pos)
            occurrences_[std::string(read.substr(pos, k))].push_back({r + 1, pos});
    }
}

const OccurrenceList* OracleIndex::find(std::string_view f) const {
    auto it = occurrences_.find(std::string(f));
    return it == occurrences_.end() ? nullptr : &it->second;
}

OccurrenceList OracleIndex::q3(std::string_view f) const {
    const OccurrenceList* occ = find(f);
    return occ ? *occ : OccurrenceList{};
}

ReadList OracleIndex::q1(std::string_view f) const {
    ReadList out;
    const OccurrenceList* occ = find(f);
    if (!occ) return out;
    for (const auto& o : *occ)
        if (out.empty() || out.back() != o.read_id) out.push_back(o.read_id);
    return out;
}

OccurrenceList OracleIndex::q7(std::string_view f) const {
    OccurrenceList out;
    const OccurrenceList* occ = find(f);
    if (!occ) return out;
    for (size_t i = 0; i < occ->size();) {
        size_t j = i;
        while (j < occ->size() && (*occ)[j].read_id == (*occ)[i].read_id) ++j;
        if (j - i == 1) out.push_back((*occ)[i]);
        i = j;
    }
    return out;
}

ReadList OracleIndex::q5(std::string_view f) const {
    ReadList out;
    for (const auto& o : q7(f)) out.push_back(o.read_id);
    return out;
}

QueryResult oracle_query(const ReadSet& reads, QueryType type,
                         const QueryInput& input) {
    std::string f;
    if (const auto* pat = std::get_if<PatternInput>(&input)) {
        f = pat->symbols;
    } else {
        const auto& pos = std::get<PositionalInput>(input);
        if (pos.read_id < 1 || pos.read_id > reads.count())
            throw UnknownReadId("read ID " + std::to_string(pos.read_id) +
                                " outside 1.." + std::to_string(reads.count()));
        if (uint64_t(pos.start) + pos.length > reads.read_length())
            throw PositionOutOfRange(
                "window [" + std::to_string(pos.start) + ", " +
                std::to_string(uint64_t(pos.start) + pos.length) +
                ") exceeds read length " + std::to_string(reads.read_length()));
        f = reads.read(pos.read_id - 1).substr(pos.start, pos.length);
    }
    // canonical uppercase, with symbol validation
    const Alphabet& alpha = reads.alphabet();
    for (char& c : f) c = alpha.symbol(alpha.code(c));

    OracleIndex oracle(reads, static_cast<uint32_t>(f.size()));
    switch (type) {
        case QueryType::Q1: return oracle.q1(f);
        case QueryType::Q2: return oracle.q2(f);
        case QueryType::Q3: return oracle.q3(f);
        case QueryType::Q4: return oracle.q4(f);
        case QueryType::Q5: return oracle.q5(f);
        case QueryType::Q6: return oracle.q6(f);
        case QueryType::Q7: return oracle.q7(f);
    }
    throw InternalError("unknown query type");
}

}  // namespace pgsa

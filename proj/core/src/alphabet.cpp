#include "pgsa/alphabet.hpp"

namespace pgsa {

Alphabet Alphabet::with_size(int size) {
    if (size != 4 && size != 5)
        throw ConfigError("alphabet size must be 4 or 5, got " + std::to_string(size));
    return Alphabet(size);
}

PackingScheme PackingScheme::for_sparsity(int alphabet_size, int symbols_per_unit) {
    if (alphabet_size != 4 && alphabet_size != 5)
        throw IncompatibleSparsity("alphabet size must be 4 or 5, got " +
                                   std::to_string(alphabet_size));
    if (symbols_per_unit < 1 || symbols_per_unit > 6)
        throw IncompatibleSparsity("sparsity must be in [1, 6], got " +
                                   std::to_string(symbols_per_unit));
    PackingScheme s;
    s.alphabet_size = static_cast<uint8_t>(alphabet_size);
    s.symbols_per_unit = static_cast<uint8_t>(symbols_per_unit);
    s.pow[0] = 1;
    for (int i = 1; i <= 6; ++i)
        s.pow[i] = s.pow[i - 1] * static_cast<uint32_t>(alphabet_size);
    s.unit_range = s.pow[symbols_per_unit];
    s.unit_width = (s.unit_range <= 256) ? 1 : 2;
    return s;
}

PackedUnit pack_codes(const uint8_t* codes, size_t n, const PackingScheme& scheme) {
    PackedUnit unit = 0;
    for (size_t i = 0; i < n; ++i)
        unit += codes[i] * scheme.pow[scheme.symbols_per_unit - 1 - i];
    return unit;
}

PackedUnit pack(std::string_view symbols, const Alphabet& alphabet,
                const PackingScheme& scheme) {
    if (symbols.empty() || symbols.size() > scheme.symbols_per_unit)
        throw ConfigError("pack expects 1.." +
                          std::to_string(scheme.symbols_per_unit) +
                          " symbols, got " + std::to_string(symbols.size()));
    PackedUnit unit = 0;
    for (size_t i = 0; i < symbols.size(); ++i)
        unit += alphabet.code(symbols[i]) * scheme.pow[scheme.symbols_per_unit - 1 - i];
    return unit;
}

std::string unpack(PackedUnit unit, const Alphabet& alphabet,
                   const PackingScheme& scheme) {
    if (unit >= scheme.unit_range)
        throw CorruptUnit("unit value " + std::to_string(unit) +
                          " out of range " + std::to_string(scheme.unit_range));
    std::string out(scheme.symbols_per_unit, '\0');
    for (int i = 0; i < scheme.symbols_per_unit; ++i) {
        uint8_t code = static_cast<uint8_t>(
            (unit / scheme.pow[scheme.symbols_per_unit - 1 - i]) % scheme.alphabet_size);
        out[i] = alphabet.symbol(code);
    }
    return out;
}

PackedSequence PackedSequence::from_text(std::string_view text, const Alphabet& alphabet,
                                         const PackingScheme& scheme) {
    PackedSequence seq(alphabet, scheme);
    seq.n_symbols_ = text.size();
    const int spu = scheme.symbols_per_unit;
    const size_t units = (text.size() + spu - 1) / spu;
    seq.bytes_.assign(units * scheme.unit_width, 0);
    for (size_t u = 0; u < units; ++u) {
        PackedUnit v = 0;
        const size_t base = u * spu;
        const size_t len = std::min<size_t>(spu, text.size() - base);
        for (size_t i = 0; i < len; ++i)
            v += alphabet.code(text[base + i]) * scheme.pow[spu - 1 - i];
        uint8_t* b = seq.bytes_.data() + u * scheme.unit_width;
        b[0] = static_cast<uint8_t>(v & 0xFF);
        if (scheme.unit_width == 2) b[1] = static_cast<uint8_t>(v >> 8);
    }
    return seq;
}

PackedSequence PackedSequence::from_bytes(std::vector<uint8_t> bytes, size_t n_symbols,
                                          Alphabet alphabet, PackingScheme scheme) {
    const int spu = scheme.symbols_per_unit;
    const size_t units = (n_symbols + spu - 1) / spu;
    if (bytes.size() != units * scheme.unit_width)
        throw SectionLengthMismatch(
            "packed sequence has " + std::to_string(bytes.size()) +
            " bytes, expected " + std::to_string(units * scheme.unit_width));
    PackedSequence seq(alphabet, scheme);
    seq.bytes_ = std::move(bytes);
    seq.n_symbols_ = n_symbols;
    for (size_t u = 0; u < units; ++u)
        if (seq.unit(u) >= scheme.unit_range)
            throw CorruptUnit("packed unit " + std::to_string(u) + " out of range");
    return seq;
}

std::string PackedSequence::decode(size_t begin, size_t len) const {
    std::string out(len, '\0');
    for (size_t i = 0; i < len; ++i) out[i] = symbol_at(begin + i);
    return out;
}

}  // namespace pgsa

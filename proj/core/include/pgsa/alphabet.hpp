#ifndef PGSA_ALPHABET_HPP
#define PGSA_ALPHABET_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pgsa/errors.hpp"

namespace pgsa {

namespace detail {
inline constexpr std::array<int8_t, 256> kSymbolCode5 = [] {
    std::array<int8_t, 256> t{};
    for (auto& v : t) v = -1;
    t['A'] = t['a'] = 0;
    t['C'] = t['c'] = 1;
    t['G'] = t['g'] = 2;
    t['N'] = t['n'] = 3;
    t['T'] = t['t'] = 4;
    return t;
}();
}  // namespace detail

/// DNA alphabet over ACGT (size 4) or ACGNT (size 5).
///
/// Symbol codes follow ASCII order (A<C<G<N<T), so comparing codes is the
/// same as comparing symbols. The 4-letter alphabet is used when no N occurs
/// in the input.
class Alphabet {
  public:
    static constexpr int kMaxSize = 5;

    static Alphabet dna4() { return Alphabet(4); }
    static Alphabet dna5() { return Alphabet(5); }
    static Alphabet with_size(int size);

    int size() const noexcept { return size_; }

    /// Symbols in code order, e.g. "ACGT" or "ACGNT".
    std::string_view symbols() const noexcept {
        return size_ == 4 ? std::string_view(kSymbols4) : std::string_view(kSymbols5);
    }

    bool contains(char c) const noexcept { return code_or_negative(c) >= 0; }

    /// Code of a symbol, in [0, size). Throws InvalidSymbol otherwise.
    uint8_t code(char c) const {
        int v = code_or_negative(c);
        if (v < 0)
            throw InvalidSymbol(std::string("symbol '") + c +
                                "' is not in the " +
                                std::to_string(size_) + "-letter alphabet");
        return static_cast<uint8_t>(v);
    }

    /// Code of a symbol or -1 when the symbol is outside the alphabet.
    int code_or_negative(char c) const noexcept {
        int v = detail::kSymbolCode5[static_cast<unsigned char>(c)];
        if (size_ == 4) {
            if (v == kCodeN4) return -1;           // N invalid in DNA4
            if (v > kCodeN4) return v - 1;         // T: 4 -> 3
        }
        return v;
    }

    char symbol(uint8_t code) const {
        if (code >= size_)
            throw InvalidSymbol("code " + std::to_string(code) +
                                " out of range for alphabet size " +
                                std::to_string(size_));
        return size_ == 4 ? kSymbols4[code] : kSymbols5[code];
    }

    bool operator==(const Alphabet& other) const noexcept = default;

  private:
    explicit Alphabet(int size) : size_(size) {}

    static constexpr const char* kSymbols4 = "ACGT";
    static constexpr const char* kSymbols5 = "ACGNT";
    static constexpr int kCodeN4 = 3;  // position of N in ACGNT

    int size_;
};

/// How symbols are grouped into fixed-width integer units.
///
/// The suffix-array sparsity s fixes the grouping: one unit holds exactly s
/// symbols. Units are base-size positional numbers with the first symbol in
/// the most significant digit, so unit-wise integer comparison of full groups
/// equals lexicographic comparison of the symbol groups.
struct PackingScheme {
    uint8_t alphabet_size;    // 4 or 5
    uint8_t symbols_per_unit; // 1..6
    uint8_t unit_width;       // bytes per unit, 1 or 2
    uint32_t unit_range;      // size^symbols_per_unit
    std::array<uint32_t, 7> pow;  // pow[i] = size^i

    /// Scheme for `symbols_per_unit` grouped symbols; unit width is the
    /// smallest of 1 or 2 bytes that fits size^symbols_per_unit values.
    /// Throws IncompatibleSparsity outside the supported table.
    static PackingScheme for_sparsity(int alphabet_size, int symbols_per_unit);

    bool operator==(const PackingScheme&) const = default;
};

using PackedUnit = uint32_t;  // holds any 1- or 2-byte unit value

/// Packs up to symbols_per_unit symbols into one unit. Missing trailing
/// symbols are treated as code 0.
PackedUnit pack(std::string_view symbols, const Alphabet& alphabet,
                const PackingScheme& scheme);

/// Same, over pre-validated symbol codes.
PackedUnit pack_codes(const uint8_t* codes, size_t n, const PackingScheme& scheme);

/// Inverse of pack; returns exactly symbols_per_unit symbols (zero-code
/// padded). Throws CorruptUnit when the unit is out of range.
std::string unpack(PackedUnit unit, const Alphabet& alphabet,
                   const PackingScheme& scheme);

/// A symbol sequence packed into fixed-width units.
///
/// Group extraction at any unit boundary is O(1); trailing positions of the
/// last unit beyond size() are zero-code padding.
class PackedSequence {
  public:
    PackedSequence() = default;
    PackedSequence(Alphabet alphabet, PackingScheme scheme)
        : alphabet_(alphabet), scheme_(scheme) {}

    static PackedSequence from_text(std::string_view text, const Alphabet& alphabet,
                                    const PackingScheme& scheme);
    /// Reconstructs a sequence from raw unit bytes (little-endian units).
    static PackedSequence from_bytes(std::vector<uint8_t> bytes, size_t n_symbols,
                                     Alphabet alphabet, PackingScheme scheme);

    size_t size() const noexcept { return n_symbols_; }
    size_t unit_count() const noexcept {
        return bytes_.size() / scheme_.unit_width;
    }
    size_t byte_size() const noexcept { return bytes_.size(); }
    const std::vector<uint8_t>& bytes() const noexcept { return bytes_; }
    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const PackingScheme& scheme() const noexcept { return scheme_; }

    PackedUnit unit(size_t i) const noexcept {
        const uint8_t* b = bytes_.data() + i * scheme_.unit_width;
        PackedUnit v = b[0];
        if (scheme_.unit_width == 2) v |= PackedUnit(b[1]) << 8;
        return v;
    }

    /// Code of the symbol at `pos`.
    uint8_t code_at(size_t pos) const noexcept {
        const int spu = scheme_.symbols_per_unit;
        PackedUnit u = unit(pos / spu);
        return static_cast<uint8_t>(
            (u / scheme_.pow[spu - 1 - pos % spu]) % scheme_.alphabet_size);
    }

    char symbol_at(size_t pos) const { return alphabet_.symbol(code_at(pos)); }

    /// Decodes symbols [begin, begin+len) back to text.
    std::string decode(size_t begin, size_t len) const;

  private:
    Alphabet alphabet_ = Alphabet::dna4();
    PackingScheme scheme_{};
    std::vector<uint8_t> bytes_;
    size_t n_symbols_ = 0;
};

}  // namespace pgsa

#endif  // PGSA_ALPHABET_HPP

#ifndef PGSA_READ_SET_HPP
#define PGSA_READ_SET_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pgsa/alphabet.hpp"
#include "pgsa/errors.hpp"

namespace pgsa {

/// What to do when input reads differ in length.
enum class LengthPolicy : uint8_t {
    Reject,     // unequal lengths are an error
    TrimToMin,  // truncate every read to the shortest length present
};

// In-read offsets must fit the 1- or 2-byte suffix-array field.
inline constexpr uint32_t kMaxReadLength = 65535;

/// An immutable collection of q reads, each exactly m symbols, over ACGT or
/// ACGNT. Original read IDs are 1-based throughout the library; storage
/// indices are 0-based.
class ReadSet {
  public:
    /// Validates, normalizes to uppercase, applies the length policy and
    /// picks the alphabet (4 letters iff no N occurs anywhere).
    static ReadSet from_sequences(std::vector<std::string> sequences,
                                  LengthPolicy policy = LengthPolicy::Reject);

    uint32_t count() const noexcept { return q_; }                 // q
    uint32_t read_length() const noexcept { return m_; }           // m
    const Alphabet& alphabet() const noexcept { return alphabet_; }

    /// 0-based access; read(id - 1) for a 1-based original read ID.
    std::string_view read(uint32_t index) const noexcept {
        return std::string_view(data_).substr(size_t(index) * m_, m_);
    }

    std::string_view flat() const noexcept { return data_; }

  private:
    ReadSet(std::string data, uint32_t q, uint32_t m, Alphabet alphabet)
        : data_(std::move(data)), q_(q), m_(m), alphabet_(alphabet) {}

    std::string data_;  // q*m symbols, row-major
    uint32_t q_ = 0;
    uint32_t m_ = 0;
    Alphabet alphabet_ = Alphabet::dna4();
};

}  // namespace pgsa

#endif  // PGSA_READ_SET_HPP

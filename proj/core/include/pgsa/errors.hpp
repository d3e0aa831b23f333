#ifndef PGSA_ERRORS_HPP
#define PGSA_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pgsa {

// Coarse classification used by callers (the CLI maps these to exit codes).
enum class ErrorKind : uint8_t {
    Usage,     // bad parameters or configuration
    Data,      // malformed or inconsistent input data
    Internal,  // violated internal invariant
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message),
          kind_(kind),
          name_(std::move(name)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }

  private:
    ErrorKind kind_;
    std::string name_;
};

#define PGSA_DEFINE_ERROR(NAME, KIND)                             \
    class NAME : public Error {                                   \
      public:                                                     \
        explicit NAME(const std::string& message)                 \
            : Error(ErrorKind::KIND, #NAME, message) {}           \
    }

PGSA_DEFINE_ERROR(InvalidSymbol, Data);
PGSA_DEFINE_ERROR(CorruptUnit, Data);
PGSA_DEFINE_ERROR(ParseError, Data);
PGSA_DEFINE_ERROR(LengthMismatch, Data);
PGSA_DEFINE_ERROR(IncompatibleSparsity, Usage);
PGSA_DEFINE_ERROR(ConfigError, Usage);
PGSA_DEFINE_ERROR(PatternTooShort, Data);
PGSA_DEFINE_ERROR(PositionOutOfRange, Data);
PGSA_DEFINE_ERROR(UnknownReadId, Data);
PGSA_DEFINE_ERROR(BadMagic, Data);
PGSA_DEFINE_ERROR(UnsupportedVersion, Data);
PGSA_DEFINE_ERROR(SectionLengthMismatch, Data);
PGSA_DEFINE_ERROR(ChecksumMismatch, Data);
PGSA_DEFINE_ERROR(IoError, Data);
PGSA_DEFINE_ERROR(InternalError, Internal);

#undef PGSA_DEFINE_ERROR

}  // namespace pgsa

#endif  // PGSA_ERRORS_HPP

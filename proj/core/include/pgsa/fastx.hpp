#ifndef PGSA_FASTX_HPP
#define PGSA_FASTX_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "pgsa/read_set.hpp"

namespace pgsa {

enum class FastxFormat : uint8_t { Auto, Fasta, Fastq };

/// Parses a FASTA or FASTQ stream into raw sequences, in file order.
/// Auto-detection looks at the first non-empty line ('>' vs '@').
/// Multi-line FASTA records are concatenated; FASTQ quality lines are
/// checked for length and discarded.
std::vector<std::string> parse_fastx(std::istream& in,
                                     FastxFormat format = FastxFormat::Auto);

/// Loads one stream into a validated equal-length ReadSet.
ReadSet load_reads(std::istream& in, FastxFormat format = FastxFormat::Auto,
                   LengthPolicy policy = LengthPolicy::Reject);

/// Loads one or more files, concatenated in argument order. Files ending in
/// gzip magic bytes are transparently decompressed when zlib support is
/// compiled in.
ReadSet load_read_files(const std::vector<std::string>& paths,
                        FastxFormat format = FastxFormat::Auto,
                        LengthPolicy policy = LengthPolicy::Reject);

/// True when this build can read gzip-compressed inputs.
bool gzip_supported() noexcept;

}  // namespace pgsa

#endif  // PGSA_FASTX_HPP

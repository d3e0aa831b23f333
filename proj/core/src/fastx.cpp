#include "pgsa/fastx.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#ifdef PGSA_HAVE_ZLIB
#include <zlib.h>
#endif

namespace pgsa {

namespace {

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string> parse_fasta(std::istream& in) {
    std::vector<std::string> reads;
    std::string line;
    size_t line_no = 0;
    bool in_record = false;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        if (line[0] == '>') {
            reads.emplace_back();
            in_record = true;
        } else {
            if (!in_record)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": sequence data before any FASTA header");
            reads.back() += line;
        }
    }
    return reads;
}

std::vector<std::string> parse_fastq(std::istream& in) {
    std::vector<std::string> reads;
    std::string header, seq, plus, qual;
    size_t line_no = 0;
    while (std::getline(in, header)) {
        ++line_no;
        strip_cr(header);
        if (header.empty()) continue;  // tolerate trailing blank lines
        if (header[0] != '@')
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected '@' record header");
        if (!std::getline(in, seq))
            throw ParseError("line " + std::to_string(line_no + 1) +
                             ": truncated record, missing sequence");
        if (!std::getline(in, plus))
            throw ParseError("line " + std::to_string(line_no + 2) +
                             ": truncated record, missing '+' separator");
        if (!std::getline(in, qual))
            throw ParseError("line " + std::to_string(line_no + 3) +
                             ": truncated record, missing quality");
        strip_cr(seq);
        strip_cr(plus);
        strip_cr(qual);
        if (plus.empty() || plus[0] != '+')
            throw ParseError("line " + std::to_string(line_no + 2) +
                             ": expected '+' separator");
        if (qual.size() != seq.size())
            throw ParseError("line " + std::to_string(line_no + 3) +
                             ": quality length " + std::to_string(qual.size()) +
                             " differs from sequence length " +
                             std::to_string(seq.size()));
        line_no += 3;
        reads.push_back(std::move(seq));
    }
    return reads;
}

}  // namespace

std::vector<std::string> parse_fastx(std::istream& in, FastxFormat format) {
    if (format == FastxFormat::Auto) {
        int c = in.peek();
        if (c == std::char_traits<char>::eof())
            throw ParseError("input is empty");
        format = (c == '>') ? FastxFormat::Fasta : FastxFormat::Fastq;
    }
    return format == FastxFormat::Fasta ? parse_fasta(in) : parse_fastq(in);
}

ReadSet load_reads(std::istream& in, FastxFormat format, LengthPolicy policy) {
    return ReadSet::from_sequences(parse_fastx(in, format), policy);
}

bool gzip_supported() noexcept {
#ifdef PGSA_HAVE_ZLIB
    return true;
#else
    return false;
#endif
}

namespace {

bool has_gzip_magic(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    char magic[2] = {0, 0};
    f.read(magic, 2);
    return f.gcount() == 2 && static_cast<unsigned char>(magic[0]) == 0x1f &&
           static_cast<unsigned char>(magic[1]) == 0x8b;
}

#ifdef PGSA_HAVE_ZLIB
std::string gunzip_file(const std::string& path) {
    gzFile gz = gzopen(path.c_str(), "rb");
    if (!gz) throw IoError("cannot open '" + path + "'");
    std::string out;
    char buf[1 << 16];
    int n;
    while ((n = gzread(gz, buf, sizeof(buf))) > 0) out.append(buf, size_t(n));
    bool ok = (n == 0);
    gzclose(gz);
    if (!ok) throw ParseError("gzip decompression failed for '" + path + "'");
    return out;
}
#endif

}  // namespace

ReadSet load_read_files(const std::vector<std::string>& paths, FastxFormat format,
                        LengthPolicy policy) {
    if (paths.empty()) throw ParseError("no input files given");
    std::vector<std::string> all;
    for (const auto& path : paths) {
        std::vector<std::string> part;
        if (has_gzip_magic(path)) {
#ifdef PGSA_HAVE_ZLIB
            std::istringstream in(gunzip_file(path));
            part = parse_fastx(in, format);
#else
            throw ParseError("'" + path + "' is gzip-compressed but this build "
                             "has no zlib support");
#endif
        } else {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw IoError("cannot open '" + path + "'");
            part = parse_fastx(in, format);
        }
        all.insert(all.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return ReadSet::from_sequences(std::move(all), policy);
}

}  // namespace pgsa

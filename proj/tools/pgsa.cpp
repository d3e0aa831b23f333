// pgsa: build, query and inspect pseudogenome suffix-array indexes of
// fixed-length read collections.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgsa/errors.hpp"
#include "pgsa/fastx.hpp"
#include "pgsa/index_io.hpp"
#include "pgsa/oracle.hpp"
#include "pgsa/query.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

pgsa::CacheLevels parse_cache_level(const std::string& text, uint64_t pg_length) {
    if (text == "auto") return pgsa::CacheLevels::auto_for(pg_length);
    if (text == "none") return pgsa::CacheLevels::none();
    int level = -1;
    try {
        size_t used = 0;
        level = std::stoi(text, &used);
        if (used != text.size()) level = -1;
    } catch (const std::exception&) {
        level = -1;
    }
    if (level < 0 || level > 13)
        throw CLI::ValidationError("--cache-level",
                                   "expected auto, none or an integer in 0..13");
    if (level <= 11)
        return pgsa::CacheLevels{uint8_t(level), false, false};
    return pgsa::CacheLevels{11, true, level == 13};
}

// ---------------------------------------------------------------- build ----

struct BuildArgs {
    std::vector<std::string> inputs;
    std::string output;
    int sparsity = 4;
    std::string cache_level = "auto";
    uint32_t repetitive_threshold = pgsa::kDefaultRepetitiveThreshold;
    std::string length_policy = "reject";
    std::string format = "auto";
};

int run_build(const BuildArgs& args) {
    using clock = std::chrono::steady_clock;
    const pgsa::FastxFormat format = args.format == "fasta" ? pgsa::FastxFormat::Fasta
                                     : args.format == "fastq" ? pgsa::FastxFormat::Fastq
                                                              : pgsa::FastxFormat::Auto;
    const pgsa::LengthPolicy policy = args.length_policy == "trim-to-min"
                                          ? pgsa::LengthPolicy::TrimToMin
                                          : pgsa::LengthPolicy::Reject;

    auto t0 = clock::now();
    pgsa::ReadSet reads = pgsa::load_read_files(args.inputs, format, policy);
    double t_parse = seconds_since(t0);

    t0 = clock::now();
    pgsa::Pseudogenome pg = pgsa::build_pseudogenome(reads);
    double t_pg = seconds_since(t0);

    t0 = clock::now();
    pgsa::ReadArray read_array = pgsa::build_read_array(pg, args.repetitive_threshold);
    pgsa::SparseSuffixIndex sa =
        pgsa::SparseSuffixIndex::build(pg, read_array, args.sparsity);
    pgsa::PackedSequence packed = pgsa::PackedSequence::from_text(
        pg.text, pg.alphabet,
        pgsa::PackingScheme::for_sparsity(pg.alphabet.size(), args.sparsity));
    double t_sa = seconds_since(t0);

    t0 = clock::now();
    pgsa::CacheLevels levels = parse_cache_level(args.cache_level, pg.length());
    pgsa::CountCache cache;
    if (!levels.empty()) cache = pgsa::build_cache(pg, levels);
    double t_cache = seconds_since(t0);

    pgsa::Index index = pgsa::Index::from_parts(
        pg.alphabet, reads.read_length(), args.sparsity, args.repetitive_threshold,
        std::move(packed), std::move(read_array), std::move(sa), std::move(cache));

    t0 = clock::now();
    uint64_t written = pgsa::save_index_file(index, args.output);
    double t_save = seconds_since(t0);

    const pgsa::SizeModel model = pgsa::size_model_of(index);
    const double ratio = double(index.pg_length()) /
                         (double(index.read_count()) * index.read_length());
    std::cout << "input: q=" << index.read_count() << " m=" << index.read_length()
              << " alphabet=" << index.alphabet().size() << "\n"
              << "pseudogenome: p=" << index.pg_length() << " ratio=" << ratio
              << "\n"
              << "sections[bytes]: pg=" << model.pg_bytes
              << " read_array=" << model.read_array_bytes << " sa=" << model.sa_bytes
              << " lut=" << model.cache_bytes << " total=" << model.total() << "\n"
              << "times[s]: parse=" << t_parse << " pgbuild=" << t_pg
              << " saindex=" << t_sa << " cache=" << t_cache << " save=" << t_save
              << "\n"
              << "index: " << args.output << " (" << written << " bytes)\n";
    return kExitOk;
}

// ---------------------------------------------------------------- query ----

struct QueryArgs {
    std::string index_path;
    std::string type;
    std::string kmer;
    std::string at;
    std::string batch;
    std::string format = "tsv";
    bool oracle = false;
};

pgsa::QueryType parse_type(const std::string& text) {
    if (text.size() == 2 && (text[0] == 'q' || text[0] == 'Q') && text[1] >= '1' &&
        text[1] <= '7')
        return static_cast<pgsa::QueryType>(text[1] - '0');
    throw CLI::ValidationError("--type", "expected q1..q7");
}

// READ:POS:LEN (all decimal) is positional; anything else is a k-mer.
std::optional<pgsa::PositionalInput> parse_positional(const std::string& token) {
    uint64_t v[3] = {0, 0, 0};
    size_t field = 0, digits = 0;
    for (char c : token) {
        if (c == ':') {
            if (digits == 0 || field == 2) return std::nullopt;
            ++field;
            digits = 0;
        } else if (c >= '0' && c <= '9') {
            v[field] = std::min<uint64_t>(v[field] * 10 + uint64_t(c - '0'),
                                          UINT32_MAX);
            ++digits;
        } else {
            return std::nullopt;
        }
    }
    if (field != 2 || digits == 0) return std::nullopt;
    return pgsa::PositionalInput{uint32_t(v[0]), uint32_t(v[1]), uint32_t(v[2])};
}

pgsa::QueryInput make_input(const std::string& token) {
    if (auto positional = parse_positional(token)) return *positional;
    return pgsa::PatternInput{token};
}

std::string payload_tsv(const pgsa::QueryResult& result) {
    std::ostringstream out;
    if (const auto* count = std::get_if<uint64_t>(&result)) {
        out << *count;
    } else if (const auto* reads = std::get_if<pgsa::ReadList>(&result)) {
        for (size_t i = 0; i < reads->size(); ++i)
            out << (i ? "," : "") << (*reads)[i];
    } else {
        const auto& occs = std::get<pgsa::OccurrenceList>(result);
        for (size_t i = 0; i < occs.size(); ++i)
            out << (i ? "," : "") << occs[i].read_id << ":" << occs[i].pos;
    }
    return out.str();
}

json payload_json(const pgsa::QueryResult& result) {
    if (const auto* count = std::get_if<uint64_t>(&result)) return *count;
    if (const auto* reads = std::get_if<pgsa::ReadList>(&result)) return *reads;
    json arr = json::array();
    for (const auto& occ : std::get<pgsa::OccurrenceList>(result))
        arr.push_back({{"read", occ.read_id}, {"pos", occ.pos}});
    return arr;
}

bool results_equal(const pgsa::QueryResult& a, const pgsa::QueryResult& b) {
    auto normalize = [](pgsa::QueryResult r) {
        if (auto* reads = std::get_if<pgsa::ReadList>(&r))
            std::sort(reads->begin(), reads->end());
        if (auto* occs = std::get_if<pgsa::OccurrenceList>(&r))
            std::sort(occs->begin(), occs->end());
        return r;
    };
    return normalize(a) == normalize(b);
}

struct Record {
    std::string query;
    pgsa::QueryResult result;
    std::string error;        // error name + message when the query failed
    std::string oracle_note;  // "ok" / "mismatch:..." under --oracle
};

Record run_one(pgsa::QuerySession& session, pgsa::QueryType type,
               const std::string& token, const pgsa::ReadSet* oracle_reads) {
    Record rec;
    rec.query = token;
    try {
        pgsa::QueryInput input = make_input(token);
        rec.result = session.run(type, input);
        if (oracle_reads) {
            pgsa::QueryResult expect = pgsa::oracle_query(*oracle_reads, type, input);
            rec.oracle_note = results_equal(rec.result, expect)
                                  ? "ok"
                                  : "mismatch:" + payload_tsv(expect);
        }
    } catch (const pgsa::Error& e) {
        rec.error = e.what();
    }
    return rec;
}

int run_query(const QueryArgs& args) {
    const pgsa::QueryType type = parse_type(args.type);
    pgsa::Index index = pgsa::load_index_file(args.index_path);

    std::optional<pgsa::ReadSet> oracle_reads;
    if (args.oracle) oracle_reads = index.reconstruct_reads();
    const pgsa::ReadSet* oracle_ptr = oracle_reads ? &*oracle_reads : nullptr;

    std::vector<std::string> tokens;
    if (!args.batch.empty()) {
        std::ifstream in(args.batch);
        if (!in) throw pgsa::IoError("cannot open batch file '" + args.batch + "'");
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            tokens.push_back(line);
        }
    } else if (!args.kmer.empty()) {
        tokens.push_back(args.kmer);
    } else {
        tokens.push_back(args.at);
    }

    std::vector<Record> records(tokens.size());
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (const char* cap = std::getenv("PGIDX_THREADS")) {
        unsigned limit = unsigned(std::strtoul(cap, nullptr, 10));
        if (limit >= 1) workers = std::min(workers, limit);
    }
    workers = unsigned(std::min<size_t>(workers, tokens.size()));

    if (workers <= 1) {
        pgsa::QuerySession session(index);
        for (size_t i = 0; i < tokens.size(); ++i)
            records[i] = run_one(session, type, tokens[i], oracle_ptr);
    } else {
        // Workers share the immutable index, one session each; records keep
        // input order no matter how lines are scheduled.
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                pgsa::QuerySession session(index);
                for (size_t i = next.fetch_add(1); i < tokens.size();
                     i = next.fetch_add(1))
                    records[i] = run_one(session, type, tokens[i], oracle_ptr);
            });
        }
        for (auto& t : pool) t.join();
    }

    // Batch mode reports failures as per-line records; a failing single
    // query is a global failure.
    if (args.batch.empty() && !records[0].error.empty()) {
        std::cerr << "error: " << records[0].error << "\n";
        return kExitData;
    }

    bool mismatch = false;
    for (const auto& rec : records)
        if (!rec.oracle_note.empty() && rec.oracle_note != "ok") mismatch = true;

    if (args.format == "json") {
        json out = json::array();
        for (const auto& rec : records) {
            json obj{{"query", rec.query}, {"type", args.type}};
            if (!rec.error.empty()) {
                obj["error"] = rec.error;
            } else {
                obj["result"] = payload_json(rec.result);
            }
            if (!rec.oracle_note.empty()) obj["oracle"] = rec.oracle_note;
            out.push_back(std::move(obj));
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& rec : records) {
            std::cout << rec.query << "\t" << args.type << "\t";
            if (!rec.error.empty()) {
                std::cout << "error:" << rec.error;
            } else {
                std::cout << payload_tsv(rec.result);
            }
            if (!rec.oracle_note.empty()) std::cout << "\t" << rec.oracle_note;
            std::cout << "\n";
        }
    }
    return mismatch ? kExitInternal : kExitOk;
}

// ---------------------------------------------------------------- stats ----

int run_stats(const std::string& index_path) {
    pgsa::Index index = pgsa::load_index_file(index_path);
    const pgsa::SizeModel model = pgsa::size_model_of(index);
    auto row = [](const char* name, uint64_t bytes) {
        char line[128];
        std::snprintf(line, sizeof(line), "%s\t%llu\t%.2f\n", name,
                      (unsigned long long)bytes, double(bytes) / 1e6);
        std::cout << line;
    };
    std::cout << "component\tbytes\tMB\n";
    row("PG", model.pg_bytes);
    row("RPG", model.read_array_bytes);
    row("SA", model.sa_bytes);
    row("LUT", model.cache_bytes);
    row("total", model.total());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudogenome suffix-array index for fixed-length reads"};
    app.require_subcommand(1);

    BuildArgs build_args;
    CLI::App* build = app.add_subcommand("build", "build an index from reads");
    build->add_option("inputs", build_args.inputs, "FASTA/FASTQ input files")
        ->required()
        ->expected(-1);
    build->add_option("-o,--output", build_args.output, "index file to write")
        ->required();
    build->add_option("-s,--sparsity", build_args.sparsity,
                      "suffix-array sparsity (1..6)")
        ->check(CLI::Range(1, 6));
    build->add_option("--cache-level", build_args.cache_level,
                      "count cache: auto, none or max cached k (0..13)");
    build->add_option("--repetitive-threshold", build_args.repetitive_threshold,
                      "window length for the repetitive-read flag")
        ->check(CLI::Range(1, 65535));
    build->add_option("--length-policy", build_args.length_policy,
                      "unequal read lengths: reject or trim-to-min")
        ->check(CLI::IsMember({"reject", "trim-to-min"}));
    build->add_option("--format", build_args.format, "input format")
        ->check(CLI::IsMember({"auto", "fasta", "fastq"}));

    QueryArgs query_args;
    CLI::App* query = app.add_subcommand("query", "run Q1..Q7 against an index");
    query->add_option("index", query_args.index_path, "index file")->required();
    query->add_option("--type", query_args.type, "query type q1..q7")->required();
    auto* opt_kmer = query->add_option("--kmer", query_args.kmer, "query string");
    auto* opt_at = query->add_option(
        "--at", query_args.at, "positional query READ:POS:LEN (1-based read ID)");
    auto* opt_batch =
        query->add_option("--batch", query_args.batch, "file with one query per line");
    opt_kmer->excludes(opt_at)->excludes(opt_batch);
    opt_at->excludes(opt_batch);
    query->add_option("--format", query_args.format, "output format")
        ->check(CLI::IsMember({"tsv", "json"}));
    query->add_flag("--oracle", query_args.oracle,
                    "recheck every answer against the brute-force reference")
        ->group("");  // debugging aid, hidden from help

    std::string stats_path;
    CLI::App* stats = app.add_subcommand("stats", "print component sizes");
    stats->add_option("index", stats_path, "index file")->required();

    try {
        app.parse(argc, argv);
        if (build->parsed()) return run_build(build_args);
        if (query->parsed()) {
            if (query_args.kmer.empty() && query_args.at.empty() &&
                query_args.batch.empty())
                throw CLI::RequiredError("--kmer, --at or --batch");
            return run_query(query_args);
        }
        if (stats->parsed()) return run_stats(stats_path);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: Usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const pgsa::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case pgsa::ErrorKind::Usage: return kExitUsage;
            case pgsa::ErrorKind::Data: return kExitData;
            case pgsa::ErrorKind::Internal: return kExitInternal;
        }
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << "\n";
        return kExitInternal;
    }
}

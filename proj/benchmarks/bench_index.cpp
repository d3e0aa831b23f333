#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "pgsa/index_io.hpp"
#include "pgsa/query.hpp"

using namespace pgsa;

namespace {

ReadSet synthetic_reads(uint32_t q, uint32_t m, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::string genome(200'000, 'A');
    for (auto& c : genome) c = "ACGT"[rng() & 3];
    std::vector<std::string> reads;
    reads.reserve(q);
    for (uint32_t i = 0; i < q; ++i) {
        size_t at = rng() % (genome.size() - m);
        reads.push_back(genome.substr(at, m));
    }
    return ReadSet::from_sequences(std::move(reads));
}

const ReadSet& bench_reads() {
    static ReadSet rs = synthetic_reads(20'000, 100, 42);
    return rs;
}

}  // namespace

static void BM_BuildPseudogenome(benchmark::State& state) {
    ReadSet rs = synthetic_reads(uint32_t(state.range(0)), 100, 7);
    for (auto _ : state) {
        Pseudogenome pg = build_pseudogenome(rs);
        benchmark::DoNotOptimize(pg.text.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildPseudogenome)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_BuildIndex(benchmark::State& state) {
    const ReadSet& rs = bench_reads();
    const int s = int(state.range(0));
    for (auto _ : state) {
        Index idx = Index::build(rs, {.sparsity = s, .cache = CacheLevels::none()});
        benchmark::DoNotOptimize(idx.pg_length());
    }
}
BENCHMARK(BM_BuildIndex)->DenseRange(1, 6)->Unit(benchmark::kMillisecond);

static void BM_Q1Pattern(benchmark::State& state) {
    const ReadSet& rs = bench_reads();
    static Index idx1 = Index::build(rs, {.sparsity = 1, .cache = CacheLevels::none()});
    static Index idx4 = Index::build(rs, {.sparsity = 4, .cache = CacheLevels::none()});
    Index& idx = state.range(0) == 1 ? idx1 : idx4;
    QuerySession session(idx);
    std::mt19937_64 rng(11);
    std::vector<QueryInput> inputs;
    for (int i = 0; i < 256; ++i) {
        uint32_t read_id = 1 + uint32_t(rng() % rs.count());
        inputs.push_back(PositionalInput{read_id, uint32_t(rng() % 80), 20});
    }
    size_t i = 0, found = 0;
    for (auto _ : state) {
        found += session.q1_reads(inputs[i++ & 255]).size();
        benchmark::DoNotOptimize(found);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Q1Pattern)->Arg(1)->Arg(4);

static void BM_Q4Count(benchmark::State& state) {
    const ReadSet& rs = bench_reads();
    static Index cached =
        Index::build(rs, {.sparsity = 2, .cache = CacheLevels{8, false, false}});
    static Index plain =
        Index::build(rs, {.sparsity = 2, .cache = CacheLevels::none()});
    Index& idx = state.range(0) ? cached : plain;
    QuerySession session(idx);
    std::mt19937_64 rng(13);
    std::vector<QueryInput> inputs;
    for (int i = 0; i < 256; ++i) {
        uint32_t read_id = 1 + uint32_t(rng() % rs.count());
        inputs.push_back(PositionalInput{read_id, uint32_t(rng() % 90), 8});
    }
    size_t i = 0;
    uint64_t total = 0;
    for (auto _ : state) {
        total += session.q4_count(inputs[i++ & 255]);
        benchmark::DoNotOptimize(total);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Q4Count)->Arg(0)->Arg(1);

static void BM_PackSequence(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::string text(1'000'000, 'A');
    for (auto& c : text) c = "ACGT"[rng() & 3];
    auto scheme = PackingScheme::for_sparsity(4, int(state.range(0)));
    Alphabet alpha = Alphabet::dna4();
    for (auto _ : state) {
        auto packed = PackedSequence::from_text(text, alpha, scheme);
        benchmark::DoNotOptimize(packed.bytes().data());
    }
    state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(text.size()));
}
BENCHMARK(BM_PackSequence)->Arg(1)->Arg(4)->Arg(6);

BENCHMARK_MAIN();

// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "oracles/generators.hpp"
#include "tarc/kernels.hpp"

namespace {

const tarc::FeatureExtractor& extractor() {
    static const tarc::FeatureExtractor fx(tarc::FeatureResources::load(TARC_DATA_DIR));
    return fx;
}

const std::vector<std::string>& posts() {
    static const auto texts = [] {
        gen::Source g(1);
        std::vector<std::string> v;
        for (int i = 0; i < 2000; ++i) v.push_back(gen::kilobyte_text(g));
        return v;
    }();
    return texts;
}

struct TaInput {
    std::vector<tarc::Conversation> convs;
    tarc::ScoreTable table;
};

const TaInput& ta_input() {
    static const TaInput in = [] {
        gen::Source g(2);
        TaInput t;
        for (int i = 0; i < 20000; ++i) {
            tarc::Conversation c;
            c.submission_id = "s" + std::to_string(i);
            for (int k = 0; k < 8; ++k) {
                c.comment_ids.push_back(c.submission_id + "_" + std::to_string(k));
                t.table.entries[c.comment_ids.back()] = {{"toxicity", g.uniform()}, {"insult", g.uniform()}};
            }
            t.convs.push_back(std::move(c));
        }
        return t;
    }();
    return in;
}

void BM_ExtractSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(tarc::extract_features_serial(extractor(), posts()));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(posts().size()));
}

void BM_ExtractParallel(benchmark::State& state) {
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(tarc::extract_features_parallel(extractor(), posts(), threads));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(posts().size()));
}

void BM_TaSerial(benchmark::State& state) {
    const auto& in = ta_input();
    for (auto _ : state) benchmark::DoNotOptimize(tarc::compute_ta_serial(in.convs, in.table, {}));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(in.convs.size()));
}

void BM_TaParallel(benchmark::State& state) {
    const auto& in = ta_input();
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(tarc::compute_ta_parallel(in.convs, in.table, {}, threads));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(in.convs.size()));
}

}  // namespace

BENCHMARK(BM_ExtractSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExtractParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TaSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TaParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

#include "tarc/kernels.hpp"

#include <exception>

#include <omp.h>

namespace tarc {

namespace {

template <class Out, class F>
std::vector<Out> map_parallel(std::size_t n, int threads, F&& f) {
    std::vector<Out> out(n);
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16) num_threads(effective_threads(threads))
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            out[k] = f(k);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace

int effective_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

std::vector<FeatureVector> extract_features_serial(const FeatureExtractor& fx, std::span<const std::string> texts) {
    std::vector<FeatureVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(fx.extract(t));
    return out;
}

std::vector<FeatureVector> extract_features_parallel(const FeatureExtractor& fx, std::span<const std::string> texts,
                                                     int threads) {
    return map_parallel<FeatureVector>(texts.size(), threads, [&](std::size_t i) { return fx.extract(texts[i]); });
}

std::vector<std::string> preprocess_serial(std::span<const std::string> texts) {
    std::vector<std::string> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(preprocess_text(t));
    return out;
}

std::vector<std::string> preprocess_parallel(std::span<const std::string> texts, int threads) {
    return map_parallel<std::string>(texts.size(), threads, [&](std::size_t i) { return preprocess_text(texts[i]); });
}

std::vector<TaRecord> compute_ta_serial(std::span<const Conversation> convs, const ScoreTable& table,
                                        const TaOptions& options) {
    std::vector<TaRecord> out;
    out.reserve(convs.size());
    for (const auto& c : convs) out.push_back(compute_ta(c, table, options));
    return out;
}

std::vector<TaRecord> compute_ta_parallel(std::span<const Conversation> convs, const ScoreTable& table,
                                          const TaOptions& options, int threads) {
    return map_parallel<TaRecord>(convs.size(), threads,
                                  [&](std::size_t i) { return compute_ta(convs[i], table, options); });
}

}  // namespace tarc

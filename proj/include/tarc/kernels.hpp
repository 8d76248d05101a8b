#pragma once

// Per-post batch kernels. Each has a serial reference and an OpenMP version
// that must produce identical output; the serial one is what tests compare
// against. An exception in the parallel version is rethrown for the lowest
// failing index, as the serial loop would.

#include <span>
#include <string>
#include <vector>

#include "tarc/corpus.hpp"
#include "tarc/features.hpp"
#include "tarc/scoring.hpp"

namespace tarc {

std::vector<FeatureVector> extract_features_serial(const FeatureExtractor& fx, std::span<const std::string> texts);
/// threads <= 0 uses the OpenMP default.
std::vector<FeatureVector> extract_features_parallel(const FeatureExtractor& fx, std::span<const std::string> texts,
                                                     int threads = 0);

std::vector<std::string> preprocess_serial(std::span<const std::string> texts);
std::vector<std::string> preprocess_parallel(std::span<const std::string> texts, int threads = 0);

std::vector<TaRecord> compute_ta_serial(std::span<const Conversation> convs, const ScoreTable& table,
                                        const TaOptions& options);
std::vector<TaRecord> compute_ta_parallel(std::span<const Conversation> convs, const ScoreTable& table,
                                          const TaOptions& options, int threads = 0);

/// Threads OpenMP would use for `threads` (<= 0 meaning the default).
int effective_threads(int threads);

}  // namespace tarc

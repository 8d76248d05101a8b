#include <catch_amalgamated.hpp>

#include "oracles/generators.hpp"
#include "tarc/error.hpp"
#include "tarc/kernels.hpp"

using namespace tarc;

namespace {

const FeatureExtractor& extractor() {
    static const FeatureExtractor fx(FeatureResources::load(TARC_DATA_DIR));
    return fx;
}

std::vector<Conversation> conversations(gen::Source& g, ScoreTable& table, std::size_t n) {
    std::vector<Conversation> out;
    for (std::size_t i = 0; i < n; ++i) {
        Conversation c;
        c.submission_id = "s" + std::to_string(i);
        for (int k = 0, m = g.integer(5, 10); k < m; ++k) {
            c.comment_ids.push_back(c.submission_id + "_" + std::to_string(k));
            c.comment_texts.emplace_back("text");
            table.entries[c.comment_ids.back()] = {{"toxicity", g.uniform()}, {"insult", g.uniform()}};
        }
        out.push_back(std::move(c));
    }
    return out;
}

bool same(const TaRecord& a, const TaRecord& b) {
    return a.submission_id == b.submission_id && a.ta_mean == b.ta_mean && a.ta_ratio == b.ta_ratio &&
           a.n_toxic == b.n_toxic && a.comment_toxicities == b.comment_toxicities;
}

}  // namespace

TEST_CASE("parallel feature extraction equals the serial loop") {
    gen::Source g(12);
    std::vector<std::string> texts;
    for (int i = 0; i < 120; ++i) texts.push_back(gen::random_text(g, g.integer(0, 60)));
    texts.emplace_back("");
    const auto serial = extract_features_serial(extractor(), texts);
    for (int threads : {1, 2, 4}) {
        const auto par = extract_features_parallel(extractor(), texts, threads);
        REQUIRE(par.size() == serial.size());
        for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i] == serial[i]);
    }
}

TEST_CASE("parallel preprocessing equals the serial loop") {
    std::vector<std::string> texts{"a &amp; b", "see http://x.y now", "  spaced  out ", ""};
    for (int i = 0; i < 100; ++i) texts.push_back("line " + std::to_string(i) + " &gt; www.q.r");
    CHECK(preprocess_parallel(texts, 3) == preprocess_serial(texts));
}

TEST_CASE("parallel TA equals the serial loop") {
    gen::Source g(5);
    ScoreTable table;
    const auto convs = conversations(g, table, 200);
    const TaOptions opt;
    const auto serial = compute_ta_serial(convs, table, opt);
    for (int threads : {1, 2, 4}) {
        const auto par = compute_ta_parallel(convs, table, opt, threads);
        REQUIRE(par.size() == serial.size());
        for (std::size_t i = 0; i < par.size(); ++i) CHECK(same(par[i], serial[i]));
    }
}

TEST_CASE("parallel TA rethrows the error of the lowest failing conversation") {
    gen::Source g(6);
    ScoreTable table;
    const auto convs = conversations(g, table, 64);
    table.entries.erase(convs[17].comment_ids[0]);
    table.entries.erase(convs[50].comment_ids[0]);
    std::string serial_msg, parallel_msg;
    try {
        compute_ta_serial(convs, table, {});
    } catch (const DataError& e) {
        serial_msg = e.what();
    }
    try {
        compute_ta_parallel(convs, table, {}, 4);
    } catch (const DataError& e) {
        parallel_msg = e.what();
    }
    CHECK(serial_msg.find(convs[17].comment_ids[0]) != std::string::npos);
    CHECK(parallel_msg == serial_msg);
}

TEST_CASE("thread count resolution") {
    CHECK(effective_threads(3) == 3);
    CHECK(effective_threads(0) >= 1);
}

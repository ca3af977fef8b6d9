#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "isolab/corpus.hpp"
#include "isolab/dataset.hpp"
#include "isolab/errors.hpp"
#include "isolab/eval.hpp"
#include "isolab/hash.hpp"
#include "isolab/isomorphism.hpp"
#include "isolab/report.hpp"
#include "oracles.hpp"

using namespace isolab;

namespace {

TransformSpec spec_of(TransformKind kind) {
    TransformSpec s;
    s.kind = kind;
    return s;
}

// Ten pairwise non-isomorphic 6-node graph pairs plus ten augmented copies.
PairDataset synthetic() {
    std::mt19937_64 rng(101);
    std::vector<Graph> graphs;
    std::set<std::string> seen;
    while (graphs.size() < 20) {
        auto g = oracle::random_graph(6, 0.5, rng);
        if (seen.insert(oracle::canonical_form(g)).second) graphs.push_back(std::move(g));
    }
    auto ds = pairs_from_sequence(graphs, "synthetic");
    add_iso_pairs(ds, 10, 5);
    return ds;
}

Embedder perfect() {
    Embedder e;
    e.name = "oracle";
    e.exact = [](const Graph& g) {
        Hasher h(1);
        for (char c : oracle::canonical_form(g)) h.add(static_cast<std::uint64_t>(c));
        return h.finish();
    };
    return e;
}

Embedder constant() {
    Embedder e;
    e.name = "constant";
    e.approximate = [](const Graph&) { return Embedding{0.5, 0.5}; };
    return e;
}

}  // namespace

TEST_CASE("augmentation") {
    const auto c6 = generate(Family::cycle, {.n = 6});
    const auto ds = augment_with_iso_pairs({c6}, 1, 9);
    REQUIRE(ds.pairs.size() == 1);
    CHECK(ds.pairs[0].isomorphic);
    CHECK(ds.pairs[0].origin == "augmented");
    CHECK(ds.graphs.size() == 2);
    CHECK(are_isomorphic(ds.graphs[0], ds.graphs[1]).isomorphic);

    const auto again = augment_with_iso_pairs({c6}, 1, 9);
    CHECK(again.graphs == ds.graphs);

    std::vector<Graph> many;
    for (std::size_t n = 3; n < 23; ++n) many.push_back(generate(Family::cycle, {.n = n}));
    const auto big = augment_with_iso_pairs(many, 10, 1);
    std::set<std::size_t> firsts;
    for (const auto& p : big.pairs) {
        firsts.insert(p.first);
        CHECK(p.first < 20);
        CHECK(p.second >= 20);
    }
    CHECK(firsts.size() == 10);
    const auto other = augment_with_iso_pairs(many, 10, 2);
    const bool differs = other.pairs[0].first != big.pairs[0].first || other.pairs[1].first != big.pairs[1].first;
    CHECK(differs);

    CHECK_THROWS_AS(augment_with_iso_pairs({c6}, 2, 1), ContractError);
    CHECK_THROWS_AS(augment_with_iso_pairs({Graph()}, 1, 1), ContractError);
}

TEST_CASE("pairing a sequence") {
    const auto c6 = generate(Family::cycle, {.n = 6});
    const auto t2 = generate(Family::disjoint_cycles, {.n = 3, .copies = 2});
    const auto ds = pairs_from_sequence({c6, t2, c6}, "file");
    CHECK(ds.pairs.size() == 1);
    CHECK(ds.pairs[0].verified);
    CHECK(ds.warnings.size() == 1);
    CHECK_THROWS_AS(pairs_from_sequence({c6, c6}, "file"), ContractError);

    auto big = pairs_from_sequence({generate(Family::cycle, {.n = 17}), generate(Family::path, {.n = 17})}, "x");
    CHECK_FALSE(big.pairs[0].verified);
    CHECK(big.count_unverified() == 1);
}

TEST_CASE("categories") {
    std::vector<Graph> graphs;
    for (std::size_t n = 3; n < 13; ++n) graphs.push_back(generate(Family::cycle, {.n = n}));
    auto ds = pairs_from_sequence(graphs, "file");
    assign_categories(ds, "Basics:2,Regular:3");
    CHECK(ds.pairs[0].origin == "Basics");
    CHECK(ds.pairs[2].origin == "Regular");
    CHECK(ds.pairs[4].origin == "Regular");
    CHECK_THROWS_AS(assign_categories(ds, "A:6"), ContractError);
    CHECK_THROWS_AS(assign_categories(ds, "A6"), ContractError);
}

TEST_CASE("clustering") {
    const std::vector<Embedding> chain{{0.0, 0.0}, {0.8e-5, 0.0}, {1.6e-5, 0.0}, {5.0, 5.0}, {5.0, 5.0 + 2e-5}};
    const auto c = cluster_embeddings(chain, 1e-5);
    CHECK(c == std::vector<std::size_t>{0, 0, 0, 1, 2});
    CHECK(ecc(c) == 3);

    std::vector<Embedding> far;
    for (int i = 0; i < 30; ++i) far.push_back({i * 1.0, -i * 1.0});
    CHECK(ecc(cluster_embeddings(far, 1e-5)) == 30);
    std::vector<Embedding> near;
    for (int i = 0; i < 30; ++i) near.push_back({i * 1e-7, 0.3});
    CHECK(ecc(cluster_embeddings(near, 1e-5)) == 1);

    // Close in coordinate 0 but far elsewhere.
    const std::vector<Embedding> split{{1.0, 0.0}, {1.0, 1.0}};
    CHECK(ecc(cluster_embeddings(split, 1e-5)) == 2);
    CHECK_THROWS_AS(cluster_embeddings(std::vector<Embedding>{{1.0}, {1.0, 2.0}}, 1e-5), ContractError);
    CHECK(cluster_embeddings(std::vector<Embedding>{}, 1e-5).empty());
}

TEST_CASE("clustering agrees with brute-force single linkage") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1e-4);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Embedding> pts(40);
        for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
        const auto c = cluster_embeddings(pts, 1e-5 * (1 + trial % 3));
        const double eps = 1e-5 * (1 + trial % 3);
        // Transitive closure of the eps-graph by repeated relaxation.
        std::vector<std::size_t> label(40);
        std::iota(label.begin(), label.end(), std::size_t{0});
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i = 0; i < 40; ++i) {
                for (std::size_t j = 0; j < 40; ++j) {
                    double d = 0;
                    for (int k = 0; k < 3; ++k) d = std::max(d, std::fabs(pts[i][k] - pts[j][k]));
                    if (d <= eps && label[j] < label[i]) {
                        label[i] = label[j];
                        changed = true;
                    }
                }
            }
        }
        for (std::size_t i = 0; i < 40; ++i) {
            for (std::size_t j = 0; j < 40; ++j) {
                const bool same = c[i] == c[j];
                CHECK(same == (label[i] == label[j]));
            }
        }
    }
}

TEST_CASE("metric arithmetic on the synthetic dataset") {
    const auto ds = synthetic();
    CHECK(ds.pairs.size() == 20);
    CHECK(ds.count_isomorphic() == 10);
    const auto base = spec_of(TransformKind::base);

    const auto good = evaluate_pairs(ds, base, perfect());
    CHECK(good.fp == 0);
    CHECK(good.fn == 0);
    CHECK(good.ecc == 20);  // 20 distinct classes; the ten copies join their originals
    CHECK(good.pairs == 20);

    const auto flat = evaluate_pairs(ds, base, constant());
    CHECK(flat.ecc == 1);
    CHECK(flat.fp == 0);
    CHECK(flat.fn == 10);

    const auto wl = evaluate_pairs(ds, base, wl_embedder(1));
    CHECK(wl.fp == 0);
    CHECK(wl.fn <= 10);
}

TEST_CASE("hard pairs under 1-WL") {
    const auto c6 = generate(Family::cycle, {.n = 6});
    const auto t2 = generate(Family::disjoint_cycles, {.n = 3, .copies = 2});
    const auto ds = pairs_from_sequence({c6, t2}, "x");
    CHECK(evaluate_pairs(ds, spec_of(TransformKind::base), wl_embedder(1)).fn == 1);
    CHECK(evaluate_pairs(ds, spec_of(TransformKind::distance_encoding), wl_embedder(1)).fn == 0);
}

TEST_CASE("failing graphs exclude their pairs") {
    auto ds = pairs_from_sequence({generate(Family::cycle, {.n = 5}), generate(Family::path, {.n = 5})}, "x");
    ds.add_graph(Graph());
    ds.add_graph(generate(Family::cycle, {.n = 4}));
    ds.pairs.push_back({2, 3, false, "y", true});
    const auto row = evaluate_pairs(ds, spec_of(TransformKind::degree), wl_embedder(1));
    CHECK(row.pairs == 1);
    CHECK(row.excluded == 1);
    REQUIRE(row.errors.size() == 1);
    CHECK(row.errors[0].rfind("graph 2:", 0) == 0);

    const auto rows = evaluate_by_origin(ds, spec_of(TransformKind::degree), wl_embedder(1));
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].origin == "x");
    CHECK(rows[1].pairs == 1);
    CHECK(rows[1].ecc == 2);
    CHECK(rows[2].excluded == 1);
    CHECK(rows[2].ecc == 1);
}

TEST_CASE("thread count does not change results") {
    std::vector<Graph> graphs;
    std::mt19937_64 rng(4);
    for (int i = 0; i < 30; ++i) graphs.push_back(oracle::random_graph(12, 0.3, rng));
    auto ds = augment_with_iso_pairs(graphs, 15, 2);
    for (auto kind : {TransformKind::base, TransformKind::graph_encoding}) {
        const auto a = evaluate_pairs(ds, spec_of(kind), model_embedder(Arch::gin, 1), {.threads = 1});
        const auto b = evaluate_pairs(ds, spec_of(kind), model_embedder(Arch::gin, 1), {.threads = 4});
        CHECK(a.ecc == b.ecc);
        CHECK(a.fp == b.fp);
        CHECK(a.fn == b.fn);
    }
}

TEST_CASE("report formats") {
    ReportRow row;
    row.transform = spec_of(TransformKind::degree);
    row.embedder = "wl1";
    row.ecc = 3;
    row.fn = 1;
    row.pairs = 4;
    const std::vector<ReportRow> one{row};
    CHECK(report_table(one, ReportFormat::csv) ==
          "method,embedder,ecc,fn,fp,pairs,excluded,seconds\nDegree,wl1,3,1,0,4,0,0.000\n");

    ReportRow base = row;
    base.transform = spec_of(TransformKind::base);
    ReportRow custom = row;
    custom.transform = parse_transform_spec("graph_encoding:k=2");
    const std::vector<ReportRow> rows{custom, row, base};
    const auto csv = report_table(rows, ReportFormat::csv, {{"seed", "7"}});
    std::istringstream lines(csv);
    std::string line;
    std::vector<std::string> got;
    while (std::getline(lines, line)) got.push_back(line);
    REQUIRE(got.size() == 5);
    CHECK(got[0] == "# seed=7");
    CHECK(got[2].rfind("Base,", 0) == 0);
    CHECK(got[3].rfind("Degree,", 0) == 0);
    CHECK(got[4].rfind("\"Graph Encoding [graph_encoding:k=2,sign=raw]\",", 0) == 0);

    const auto md = report_table(rows, ReportFormat::md);
    CHECK(md.find("| Method") != std::string::npos);
    CHECK(md.find("| Base ") != std::string::npos);

    const auto jsonl = report_table(rows, ReportFormat::jsonl, {{"seed", "7"}});
    std::istringstream js(jsonl);
    std::getline(js, line);
    CHECK(nlohmann::json::parse(line)["meta"]["seed"] == "7");
    std::getline(js, line);
    const auto obj = nlohmann::ordered_json::parse(line);
    std::vector<std::string> keys;
    for (auto it = obj.begin(); it != obj.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"method", "embedder", "ecc", "fn", "fp", "pairs", "excluded", "seconds"});

    ReportRow sub = row;
    sub.origin = "Basics";
    sub.pairs = 60;
    const std::vector<ReportRow> breakdown{row, sub};
    CHECK(report_table(breakdown, ReportFormat::csv).find("# origin=Basics(60)\n") != std::string::npos);
    CHECK(report_table(breakdown, ReportFormat::jsonl).find("\"origin\":\"Basics\"") != std::string::npos);

    CHECK_THROWS_AS(parse_report_format("xml"), ContractError);
}

#include "isolab/corpus.hpp"

#include <array>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "isolab/errors.hpp"
#include "isolab/io.hpp"
#include "isolab/random.hpp"
#include "isolab/wl.hpp"

namespace isolab {

namespace {

// Shrikhande graph: Cayley graph of Z4 x Z4 (node 4a + b) with connection set
// {+-(0,1), +-(1,0), +-(1,1)}.
constexpr std::array<Edge, 48> kShrikhandeEdges = {{
    {0, 1},   {0, 3},   {0, 4},   {0, 5},   {0, 12},  {0, 15},  {1, 2},   {1, 5},
    {1, 6},   {1, 12},  {1, 13},  {2, 3},   {2, 6},   {2, 7},   {2, 13},  {2, 14},
    {3, 4},   {3, 7},   {3, 14},  {3, 15},  {4, 5},   {4, 7},   {4, 8},   {4, 9},
    {5, 6},   {5, 9},   {5, 10},  {6, 7},   {6, 10},  {6, 11},  {7, 8},   {7, 11},
    {8, 9},   {8, 11},  {8, 12},  {8, 13},  {9, 10},  {9, 13},  {9, 14},  {10, 11},
    {10, 14}, {10, 15}, {11, 12}, {11, 15}, {12, 13}, {12, 15}, {13, 14}, {14, 15},
}};

constexpr std::array<Family, 8> kFamilies = {
    Family::cycle,       Family::path,    Family::star,       Family::complete,
    Family::disjoint_cycles, Family::erdos_renyi, Family::rook4x4, Family::shrikhande,
};

void require(bool ok, const std::string& what) {
    if (!ok) throw ContractError(what);
}

void cycle_edges(std::size_t n, std::size_t offset, std::vector<Edge>& edges) {
    for (std::size_t i = 0; i < n; ++i) {
        edges.push_back({static_cast<NodeId>(offset + i), static_cast<NodeId>(offset + (i + 1) % n)});
    }
}

}  // namespace

std::string_view family_token(Family family) {
    switch (family) {
        case Family::cycle: return "cycle";
        case Family::path: return "path";
        case Family::star: return "star";
        case Family::complete: return "complete";
        case Family::disjoint_cycles: return "disjoint_cycles";
        case Family::erdos_renyi: return "erdos_renyi";
        case Family::rook4x4: return "rook4x4";
        case Family::shrikhande: return "shrikhande";
    }
    return "?";
}

Family parse_family(std::string_view token) {
    for (auto f : kFamilies) {
        if (family_token(f) == token) return f;
    }
    throw ContractError("unknown graph family '" + std::string(token) + "'");
}

Graph generate(Family family, const GeneratorParams& params, std::uint64_t seed) {
    const std::size_t n = params.n;
    std::vector<Edge> edges;
    switch (family) {
        case Family::cycle:
            require(n >= 3, "cycle requires n >= 3");
            cycle_edges(n, 0, edges);
            return Graph(n, std::move(edges));
        case Family::path:
            require(n >= 1, "path requires n >= 1");
            for (std::size_t i = 0; i + 1 < n; ++i) {
                edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(i + 1)});
            }
            return Graph(n, std::move(edges));
        case Family::star:
            require(n >= 1, "star requires n >= 1");
            for (std::size_t i = 1; i < n; ++i) edges.push_back({0, static_cast<NodeId>(i)});
            return Graph(n, std::move(edges));
        case Family::complete:
            require(n >= 1, "complete requires n >= 1");
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
                }
            }
            return Graph(n, std::move(edges));
        case Family::disjoint_cycles:
            require(n >= 3, "disjoint_cycles requires cycle length n >= 3");
            require(params.copies >= 1, "disjoint_cycles requires copies >= 1");
            for (std::size_t c = 0; c < params.copies; ++c) cycle_edges(n, c * n, edges);
            return Graph(n * params.copies, std::move(edges));
        case Family::erdos_renyi: {
            require(params.p >= 0.0 && params.p <= 1.0, "erdos_renyi requires 0 <= p <= 1");
            Rng rng(seed);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (rng.uniform01() < params.p) {
                        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
                    }
                }
            }
            return Graph(n, std::move(edges));
        }
        case Family::rook4x4:
            for (NodeId i = 0; i < 16; ++i) {
                for (NodeId j = i + 1; j < 16; ++j) {
                    if (i / 4 == j / 4 || i % 4 == j % 4) edges.push_back({i, j});
                }
            }
            return Graph(16, std::move(edges));
        case Family::shrikhande:
            return Graph(16, std::vector<Edge>(kShrikhandeEdges.begin(), kShrikhandeEdges.end()));
    }
    throw ContractError("unhandled family");
}

std::optional<SrgParameters> srg_parameters(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n < 2) return std::nullopt;
    const std::size_t k = g.degree(0);
    std::optional<std::size_t> lambda;
    std::optional<std::size_t> mu;
    for (NodeId v = 0; v < n; ++v) {
        if (g.degree(v) != k) return std::nullopt;
    }
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            std::size_t common = 0;
            for (NodeId w : g.neighbors(u)) common += g.has_edge(v, w) ? 1 : 0;
            auto& slot = g.has_edge(u, v) ? lambda : mu;
            if (slot && *slot != common) return std::nullopt;
            slot = common;
        }
    }
    return SrgParameters{n, k, lambda.value_or(0), mu.value_or(0)};
}

std::string CorpusManifest::to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        j.push_back({{"name", e.name},
                     {"first", e.first},
                     {"second", e.second},
                     {"expectations", e.expectations}});
    }
    return nlohmann::ordered_json{{"entries", j}}.dump(2) + "\n";
}

CorpusManifest hard_pair_manifest() {
    CorpusManifest m;
    m.entries.push_back({"C6 vs 2C3", "cycle(n=6)", "disjoint_cycles(n=3,copies=2)",
                         {"non-isomorphic", "1-WL-indistinguishable", "2-WL-indistinguishable"}});
    m.entries.push_back({"C8 vs 2C4", "cycle(n=8)", "disjoint_cycles(n=4,copies=2)",
                         {"non-isomorphic", "1-WL-indistinguishable", "2-WL-indistinguishable"}});
    m.entries.push_back({"rook4x4 vs Shrikhande", "rook4x4", "shrikhande",
                         {"non-isomorphic", "srg(16,6,2,2)", "1-WL-indistinguishable",
                          "2-WL-indistinguishable", "3-WL-indistinguishable"}});
    m.entries.push_back({"K4 vs pi(K4)", "complete(n=4)", "complete(n=4) relabeled (2,0,3,1)",
                         {"isomorphic"}});
    return m;
}

std::vector<std::string> verify_manifest(const CorpusManifest& manifest, const PairDataset& ds) {
    std::vector<std::string> failures;
    if (manifest.entries.size() != ds.pairs.size()) {
        failures.push_back("manifest has " + std::to_string(manifest.entries.size()) +
                           " entries for " + std::to_string(ds.pairs.size()) + " pairs");
        return failures;
    }
    for (std::size_t i = 0; i < ds.pairs.size(); ++i) {
        const auto& entry = manifest.entries[i];
        const Graph& a = ds.graphs[ds.pairs[i].first];
        const Graph& b = ds.graphs[ds.pairs[i].second];
        for (const auto& expect : entry.expectations) {
            bool ok = false;
            if (expect == "isomorphic" || expect == "non-isomorphic") {
                const bool iso = are_isomorphic(a, b).isomorphic;
                ok = iso == (expect == "isomorphic") && ds.pairs[i].isomorphic == iso;
            } else if (expect == "1-WL-indistinguishable") {
                ok = !distinguishes(wl1_signature(a), wl1_signature(b));
            } else if (expect == "2-WL-indistinguishable" || expect == "3-WL-indistinguishable") {
                const unsigned k = expect[0] == '2' ? 2 : 3;
                ok = !distinguishes(wlk_signature(a, k), wlk_signature(b, k));
            } else if (expect.starts_with("srg(")) {
                const auto pa = srg_parameters(a);
                const auto pb = srg_parameters(b);
                if (pa && pb && *pa == *pb) {
                    const std::string text = "srg(" + std::to_string(pa->n) + "," + std::to_string(pa->k) +
                                             "," + std::to_string(pa->lambda) + "," +
                                             std::to_string(pa->mu) + ")";
                    ok = text == expect;
                }
            } else {
                failures.push_back(entry.name + ": unknown expectation '" + expect + "'");
                continue;
            }
            if (!ok) failures.push_back(entry.name + ": expectation '" + expect + "' failed");
        }
    }
    return failures;
}

PairDataset hard_pair_library() {
    PairDataset ds;
    auto add = [&](Graph a, Graph b, bool iso, const char* origin) {
        const auto i = ds.add_graph(std::move(a));
        const auto j = ds.add_graph(std::move(b));
        ds.pairs.push_back({i, j, iso, origin, true});
    };
    add(generate(Family::cycle, {.n = 6}), generate(Family::disjoint_cycles, {.n = 3, .copies = 2}),
        false, "1-WL-hard");
    add(generate(Family::cycle, {.n = 8}), generate(Family::disjoint_cycles, {.n = 4, .copies = 2}),
        false, "1-WL-hard");
    add(generate(Family::rook4x4), generate(Family::shrikhande), false, "SRG");
    const Graph k4 = generate(Family::complete, {.n = 4});
    add(k4, apply_permutation(k4, Permutation({2, 0, 3, 1})), true, "control");

    const auto failures = verify_manifest(hard_pair_manifest(), ds);
    if (!failures.empty()) {
        std::string msg = "hard-pair library integrity check failed:";
        for (const auto& f : failures) msg += " " + f + ";";
        throw CorpusIntegrityError(msg);
    }
    return ds;
}

FileFormat parse_file_format(std::string_view token) {
    if (token == "graph6" || token == "g6") return FileFormat::graph6;
    if (token == "edge_list" || token == "edgelist") return FileFormat::edge_list;
    throw ContractError("unknown input format '" + std::string(token) + "' (graph6, edge_list)");
}

std::vector<Graph> parse_dataset(std::string_view text, FileFormat format) {
    if (format == FileFormat::edge_list) return parse_edge_list_file(text);
    std::vector<Graph> graphs;
    std::size_t line = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line;
        std::string_view row = text.substr(start, end - start);
        while (!row.empty() && (row.back() == '\r' || row.back() == ' ')) row.remove_suffix(1);
        if (!row.empty()) {
            try {
                graphs.push_back(parse_graph6(row));
            } catch (const ParseError& e) {
                throw ParseError("line " + std::to_string(line) + ": " + e.what(), line);
            }
        }
        start = end + 1;
    }
    return graphs;
}

std::vector<Graph> load_dataset(const std::filesystem::path& path, FileFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dataset(buffer.str(), format);
}

}  // namespace isolab

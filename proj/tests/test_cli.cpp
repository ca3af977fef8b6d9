#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "isolab/corpus.hpp"
#include "isolab/io.hpp"
#include "isolab/isomorphism.hpp"

using namespace isolab;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> table_rows(const std::string& csv) {
    std::vector<std::string> rows;
    for (const auto& l : lines(csv)) {
        if (!l.empty() && l[0] != '#' && l.rfind("method,", 0) != 0) rows.push_back(l);
    }
    return rows;
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string f; std::getline(in, f, sep);) out.push_back(f);
    return out;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() : path(std::filesystem::temp_directory_path() / "isolab_cli_test") {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
};

}  // namespace

TEST_CASE("transform: virtual node on K3 gives K4") {
    TempDir dir;
    const auto in = dir.write("k3.g6", "Bw\n");
    const auto r = run({"transform", "--input", in, "--transform", "virtual_node"});
    REQUIRE(r.code == 0);
    const auto g = parse_edge_list(r.out);
    CHECK(g.node_count() == 4);
    CHECK(g.edge_count() == 6);
    CHECK(r.err.find("nodes 3 -> 4") != std::string::npos);

    const auto out = (dir.path / "k4.el").string();
    const auto w = run({"transform", "--input", in, "--transform", "virtual_node", "--out", out});
    REQUIRE(w.code == 0);
    CHECK(w.out.find("edges 3 -> 6") != std::string::npos);
    std::ifstream file(out);
    std::stringstream text;
    text << file.rdbuf();
    CHECK(parse_edge_list(text.str()) == g);
}

TEST_CASE("transform: degree over a multi-graph file") {
    TempDir dir;
    const auto c6 = generate(Family::cycle, {.n = 6});
    const auto t2 = generate(Family::disjoint_cycles, {.n = 3, .copies = 2});
    const auto in = dir.write("pair.el", write_edge_list(c6) + "\n" + write_edge_list(t2));
    const auto r = run({"transform", "--input", in, "--transform", "degree"});
    REQUIRE(r.code == 0);
    const auto graphs = parse_dataset(r.out, FileFormat::edge_list);
    REQUIRE(graphs.size() == 2);
    CHECK(graphs[0].feature_width() == 2);
    CHECK(graphs[1].feature_row(0)[1] == 2.0);
}

TEST_CASE("transform: errors") {
    TempDir dir;
    const auto in = dir.write("k3.g6", "Bw\n");
    const auto bad = run({"transform", "--input", in, "--transform", "centrality:foo"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("valid kinds") != std::string::npos);
    CHECK(bad.err.find("distance_encoding") != std::string::npos);

    CHECK(run({"transform", "--input", in}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"transform", "--input", (dir.path / "none.g6").string(), "--transform", "base"}).code == 2);

    const auto broken = dir.write("broken.g6", "Bw\nB~~\n");
    const auto out = (dir.path / "never.el").string();
    const auto r = run({"transform", "--input", broken, "--transform", "base", "--out", out});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(out));
    CHECK_FALSE(std::filesystem::exists(out + ".partial"));

    // Eigenvector centrality without enough iterations fails per graph.
    const auto p7 = dir.write("p7.el", write_edge_list(generate(Family::path, {.n = 7})));
    const auto ev = run({"transform", "--input", p7, "--transform", "eigenvector:max_iter=1", "--out", out});
    CHECK(ev.code == 2);
    CHECK(ev.err.find("graph 0") != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(out));
}

TEST_CASE("wl verdicts on the hard pairs") {
    const auto base = run({"wl", "--input", "@hard-pairs", "--k", "1"});
    REQUIRE(base.code == 0);
    const auto rows = table_rows(base.out);
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 1; i < 5; ++i) CHECK(split(rows[i])[3] == "not_distinguished");

    const auto de = run({"wl", "--input", "@hard-pairs", "--k", "1", "--transform", "distance_encoding"});
    REQUIRE(de.code == 0);
    const auto de_rows = table_rows(de.out);
    CHECK(split(de_rows[1])[3] == "distinguished");
    CHECK(split(de_rows[2])[3] == "distinguished");
    CHECK(split(de_rows[3])[3] == "not_distinguished");
    CHECK(split(de_rows[4])[3] == "not_distinguished");

    const auto k3 = run({"wl", "--input", "@hard-pairs", "--k", "3"});
    REQUIRE(k3.code == 0);
    CHECK(split(table_rows(k3.out)[3])[3] == "not_distinguished");

    CHECK(run({"wl", "--input", "@hard-pairs", "--k", "4"}).code == 1);

    const auto budget = run({"wl", "--input", "@hard-pairs", "--k", "3", "--budget", "1000"});
    CHECK(budget.code == 0);
    CHECK(split(table_rows(budget.out)[1])[3] == "error");
    CHECK(budget.err.find("pair 0") != std::string::npos);
}

TEST_CASE("evaluate over the hard pairs") {
    const auto r = run({"evaluate", "--input", "@hard-pairs"});
    REQUIRE(r.code == 0);
    const auto rows = table_rows(r.out);
    REQUIRE(rows.size() == 10);
    const auto base = split(rows[0]);
    CHECK(base[0] == "Base");
    CHECK(base[2] == "4");  // ecc
    CHECK(base[3] == "3");  // fn
    CHECK(base[4] == "0");  // fp
    CHECK(r.out.find("# pairs=4") != std::string::npos);

    const auto aug = run({"evaluate", "--input", "@hard-pairs", "--augment", "4", "--seed-data", "9"});
    REQUIRE(aug.code == 0);
    for (const auto& row : table_rows(aug.out)) {
        const auto f = split(row);
        if (f[0].rfind("\"Graph Encoding", 0) == 0 || f[0].rfind("Graph Encoding", 0) == 0) continue;
        CHECK_MESSAGE(f[4] == "0", row);
    }
}

TEST_CASE("evaluate output formats and determinism") {
    const std::vector<std::string> args = {"evaluate",  "--input",    "@hard-pairs", "--embedder", "wl1",
                                           "--embedder", "gin",       "--augment",   "2",          "--emit",
                                           "jsonl",      "--seed-model", "3"};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto ls = lines(a.out);
    REQUIRE(ls.size() == 21);
    const auto meta = nlohmann::json::parse(ls[0]);
    for (const char* key : {"tool", "version", "input", "seed_data", "seed_model", "augment", "eps", "quant_eps",
                            "pairs", "unverified"}) {
        CHECK_MESSAGE(meta["meta"].contains(key), key);
    }
    const auto row = nlohmann::json::parse(ls[1]);
    for (const char* key : {"method", "embedder", "ecc", "fn", "fp", "pairs", "excluded", "seconds"}) {
        CHECK_MESSAGE(row.contains(key), key);
    }

    const auto md = run({"evaluate", "--input", "@hard-pairs", "--transform", "degree", "--emit", "md",
                         "--categories", "cycles:2,srg:1,control:1"});
    REQUIRE(md.code == 0);
    CHECK(md.out.find("| Degree") != std::string::npos);
    CHECK(md.out.find("cycles(2)") != std::string::npos);

    CHECK(run({"evaluate", "--input", "@hard-pairs", "--emit", "xml"}).code == 1);
    CHECK(run({"evaluate", "--input", "@hard-pairs", "--embedder", "gcn"}).code == 1);
    CHECK(run({"evaluate", "--input", "@hard-pairs", "--categories", "a:9"}).code == 1);
}

TEST_CASE("evaluate reports per-graph failures inline") {
    const auto r = run({"evaluate", "--input", "@hard-pairs", "--transform", "base", "--embedder", "wl3",
                        "--budget", "100000"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("# error: Base / wl3") != std::string::npos);
    CHECK(r.err.find("error: Base / wl3") != std::string::npos);
    const auto row = split(table_rows(r.out)[0]);
    CHECK(row[6] != "0");
}

TEST_CASE("evaluate rejects bad input files") {
    TempDir dir;
    const auto odd = dir.write("odd.g6", "Bw\nBw\nBw\n");
    CHECK(run({"evaluate", "--input", odd}).code == 2);
    const auto iso = dir.write("iso.g6", "Bw\nBw\n");
    CHECK(run({"evaluate", "--input", iso}).code == 2);
    const auto ok = dir.write("ok.txt", write_edge_list(generate(Family::cycle, {.n = 6})) + "\n" +
                                            write_edge_list(generate(Family::disjoint_cycles, {.n = 3, .copies = 2})));
    const auto r = run({"evaluate", "--input", ok, "--transform", "closeness"});
    REQUIRE(r.code == 0);
    CHECK(split(table_rows(r.out)[0])[3] == "0");
}

TEST_CASE("corpus command") {
    const auto m = run({"corpus", "--manifest"});
    REQUIRE(m.code == 0);
    CHECK(nlohmann::json::parse(m.out)["entries"].size() == 4);

    const auto g = run({"corpus", "--family", "shrikhande", "--emit", "graph6"});
    REQUIRE(g.code == 0);
    const auto shrik = parse_graph6(lines(g.out).at(0));
    CHECK(are_isomorphic(shrik, generate(Family::shrikhande)).isomorphic);

    const auto list = run({"corpus"});
    REQUIRE(list.code == 0);
    CHECK(lines(list.out).size() == 4);
    CHECK(run({"corpus", "--family", "cycle", "--n", "2"}).code == 1);
    CHECK(run({"--version"}).code == 0);
}

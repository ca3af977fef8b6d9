#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "isolab/corpus.hpp"
#include "isolab/dataset.hpp"
#include "isolab/errors.hpp"
#include "isolab/eval.hpp"
#include "isolab/io.hpp"
#include "isolab/report.hpp"
#include "isolab/transforms.hpp"
#include "isolab/wl.hpp"

namespace isolab::cli {

namespace {

constexpr const char* kHardPairs = "@hard-pairs";
constexpr std::size_t kErrorsShownPerCell = 5;

// Raised for configuration problems detected after flag parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised for bad input data; carries the exit code 2 path.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string input;
    std::string format;
    std::vector<std::string> transforms;
    std::vector<std::string> embedders;
    unsigned k = 1;
    std::optional<double> eps;
    double quant_eps = kDefaultQuantEps;
    std::uint64_t seed_data = 0;
    std::uint64_t seed_model = 0;
    std::size_t augment = 0;
    std::string out;
    std::string emit = "csv";
    std::string categories;
    bool breakdown = false;
    bool timing = false;
    unsigned threads = 1;
    std::uint64_t budget = WLkOptions{}.budget;

    // corpus
    bool manifest = false;
    std::string family;
    std::size_t n = 0;
    std::size_t copies = 2;
    double p = 0.5;
    std::uint64_t seed = 0;
};

std::string format_double(double x) {
    std::ostringstream s;
    s << x;
    return s.str();
}

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

FileFormat input_format(const Config& c) {
    if (!c.format.empty()) return parse_file_format(c.format);
    const auto ext = std::filesystem::path(c.input).extension().string();
    return ext == ".g6" || ext == ".graph6" ? FileFormat::graph6 : FileFormat::edge_list;
}

std::vector<Graph> read_graphs(const Config& c) {
    const auto format = input_format(c);
    try {
        return load_dataset(c.input, format);
    } catch (const ParseError& e) {
        throw DataError(c.input + ": " + e.what());
    } catch (const Error& e) {
        throw DataError(e.what());
    }
}

PairDataset read_pairs(const Config& c, std::ostream& err) {
    PairDataset ds;
    if (c.input == kHardPairs) {
        ds = hard_pair_library();
    } else {
        auto graphs = read_graphs(c);
        try {
            ds = pairs_from_sequence(std::move(graphs), std::filesystem::path(c.input).stem().string());
        } catch (const Error& e) {
            throw DataError(c.input + ": " + e.what());
        }
    }
    for (const auto& w : ds.warnings) err << "warning: " << w << "\n";
    if (!c.categories.empty()) {
        try {
            assign_categories(ds, c.categories);
        } catch (const ContractError& e) {
            throw UsageError(e.what());
        }
    }
    if (c.augment > 0) {
        try {
            add_iso_pairs(ds, c.augment, c.seed_data);
        } catch (const ContractError& e) {
            throw UsageError(std::string("--augment: ") + e.what());
        }
    }
    return ds;
}

std::vector<TransformSpec> parse_transforms(const std::vector<std::string>& tokens, bool all_by_default) {
    std::vector<TransformSpec> specs;
    try {
        for (const auto& t : tokens) specs.push_back(parse_transform_spec(t));
    } catch (const ContractError& e) {
        throw UsageError(std::string("--transform: ") + e.what());
    }
    if (specs.empty()) {
        if (all_by_default) {
            for (auto kind : kAllTransformKinds) {
                TransformSpec s;
                s.kind = kind;
                specs.push_back(s);
            }
        } else {
            specs.emplace_back();
        }
    }
    return specs;
}

Embedder make_embedder(const std::string& name, const Config& c) {
    if (name == "wl1") return wl_embedder(1, c.quant_eps, c.budget);
    if (name == "wl2") return wl_embedder(2, c.quant_eps, c.budget);
    if (name == "wl3") return wl_embedder(3, c.quant_eps, c.budget);
    if (name == "gin") return model_embedder(Arch::gin, c.seed_model);
    if (name == "pna") return model_embedder(Arch::pna, c.seed_model);
    if (name == "ds") return model_embedder(Arch::ds, c.seed_model);
    throw UsageError("--embedder: unknown embedder '" + name + "' (wl1, wl2, wl3, gin, pna, ds)");
}

// Writes the whole text or nothing: a temporary file is renamed into place.
void emit_output(const std::string& text, const Config& c, std::ostream& out) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    const std::filesystem::path target(c.out);
    auto tmp = target;
    tmp += ".partial";
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        file << text;
        if (!file) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw DataError("cannot write " + c.out);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw DataError("cannot write " + c.out);
    }
}

int cmd_transform(const Config& c, std::ostream& out, std::ostream& err) {
    if (c.transforms.size() > 1) throw UsageError("transform takes exactly one --transform");
    const auto spec = parse_transforms(c.transforms, false).front();
    const auto graphs = read_graphs(c);
    std::string text;
    std::ostringstream deltas;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        Graph t;
        try {
            t = apply_transform(spec, graphs[i]);
        } catch (const Error& e) {
            throw DataError("graph " + std::to_string(i) + ": " + e.what());
        }
        if (i) text += "\n";
        text += write_edge_list(t);
        const auto& g = graphs[i];
        deltas << "graph " << i << ": nodes " << g.node_count() << " -> " << t.node_count() << ", edges "
               << g.edge_count() << " -> " << t.edge_count() << ", features " << g.feature_width() << " -> "
               << t.feature_width() << "\n";
    }
    emit_output(text, c, out);
    (c.out.empty() ? err : out) << deltas.str();
    return kOk;
}

int cmd_wl(const Config& c, std::ostream& out, std::ostream& err) {
    if (c.k < 1 || c.k > 3) throw UsageError("--k must be 1, 2 or 3");
    if (c.transforms.size() > 1) throw UsageError("wl takes at most one --transform");
    const double eps = c.eps.value_or(kDefaultQuantEps);
    if (!(eps > 0)) throw UsageError("--eps must be positive");
    const auto spec = parse_transforms(c.transforms, false).front();
    const auto ds = read_pairs(c, err);

    auto signature = [&](const Graph& g) {
        const auto t = apply_transform(spec, g);
        return c.k == 1 ? wl1_signature(t, eps) : wlk_signature(t, c.k, {eps, c.budget});
    };

    std::string text;
    text += "# tool=isolab\n# version=" + std::string(kVersion) + "\n# command=wl\n";
    text += "# input=" + c.input + "\n# transform=" + to_token(spec) + "\n# k=" + std::to_string(c.k) +
            "\n# eps=" + format_double(eps) + "\n";
    text += "pair,origin,truth,verdict,rounds_first,rounds_second\n";
    for (std::size_t i = 0; i < ds.pairs.size(); ++i) {
        const auto& pair = ds.pairs[i];
        text += std::to_string(i) + "," + pair.origin + "," +
                (pair.isomorphic ? "isomorphic" : "non-isomorphic") + ",";
        try {
            const auto a = signature(ds.graphs[pair.first]);
            const auto b = signature(ds.graphs[pair.second]);
            text += std::string(distinguishes(a, b) ? "distinguished" : "not_distinguished") + "," +
                    std::to_string(a.rounds) + "," + std::to_string(b.rounds) + "\n";
        } catch (const Error& e) {
            text += "error,,\n";
            err << "pair " << i << ": " << e.what() << "\n";
        }
    }
    emit_output(text, c, out);
    return kOk;
}

int cmd_evaluate(const Config& c, std::ostream& out, std::ostream& err) {
    const auto format = [&] {
        try {
            return parse_report_format(c.emit);
        } catch (const ContractError& e) {
            throw UsageError(std::string("--emit: ") + e.what());
        }
    }();
    const auto specs = parse_transforms(c.transforms, true);
    std::vector<Embedder> embedders;
    const auto names = c.embedders.empty() ? std::vector<std::string>{"wl1"} : c.embedders;
    for (const auto& name : names) embedders.push_back(make_embedder(name, c));
    EvalOptions options;
    options.cluster_eps = c.eps.value_or(options.cluster_eps);
    options.threads = std::max(1U, c.threads);
    options.timing = c.timing;
    if (!(options.cluster_eps > 0)) throw UsageError("--eps must be positive");
    if (!(c.quant_eps > 0)) throw UsageError("--quant-eps must be positive");

    const auto ds = read_pairs(c, err);
    const bool breakdown = c.breakdown || !c.categories.empty();

    std::vector<ReportRow> rows;
    std::vector<std::string> failures;
    for (const auto& spec : specs) {
        for (const auto& embedder : embedders) {
            auto cell = breakdown ? evaluate_by_origin(ds, spec, embedder, options)
                                  : std::vector<ReportRow>{evaluate_pairs(ds, spec, embedder, options)};
            const auto& errors = cell.front().errors;
            for (std::size_t i = 0; i < errors.size() && i < kErrorsShownPerCell; ++i) {
                failures.push_back(method_label(spec) + " / " + embedder.name + ": " + errors[i]);
            }
            if (errors.size() > kErrorsShownPerCell) {
                failures.push_back(method_label(spec) + " / " + embedder.name + ": " +
                                   std::to_string(errors.size() - kErrorsShownPerCell) + " more graph errors");
            }
            for (auto& row : cell) rows.push_back(std::move(row));
        }
    }

    std::vector<std::string> spec_tokens;
    for (const auto& s : specs) spec_tokens.push_back(to_token(s));
    ReportMetadata meta = {
        {"tool", "isolab"},
        {"version", kVersion},
        {"command", "evaluate"},
        {"input", c.input},
        {"format", c.input == kHardPairs ? "builtin" : (input_format(c) == FileFormat::graph6 ? "graph6" : "edge_list")},
        {"transforms", join(spec_tokens, " ")},
        {"embedders", join(names, " ")},
        {"seed_data", std::to_string(c.seed_data)},
        {"seed_model", std::to_string(c.seed_model)},
        {"augment", std::to_string(c.augment)},
        {"eps", format_double(options.cluster_eps)},
        {"quant_eps", format_double(c.quant_eps)},
        {"wl_budget", std::to_string(c.budget)},
        {"categories", c.categories},
        {"graphs", std::to_string(ds.graphs.size())},
        {"pairs", std::to_string(ds.pairs.size())},
        {"isomorphic_pairs", std::to_string(ds.count_isomorphic())},
        {"unverified", std::to_string(ds.count_unverified())},
    };
    std::string text = report_table(rows, format, meta);
    for (const auto& f : failures) {
        if (format != ReportFormat::jsonl) text += "# error: " + f + "\n";
        err << "error: " << f << "\n";
    }
    emit_output(text, c, out);
    return kOk;
}

int cmd_corpus(const Config& c, std::ostream& out, std::ostream&) {
    if (!c.family.empty()) {
        Family family;
        Graph g;
        try {
            family = parse_family(c.family);
            g = generate(family, {c.n, c.copies, c.p}, c.seed);
        } catch (const ContractError& e) {
            throw UsageError(e.what());
        }
        if (c.emit == "graph6") {
            emit_output(write_graph6(g) + "\n", c, out);
        } else if (c.emit == "edge_list" || c.emit == "csv") {
            emit_output(write_edge_list(g), c, out);
        } else {
            throw UsageError("--emit for corpus must be graph6 or edge_list");
        }
        return kOk;
    }
    // Building the library re-verifies every manifest expectation.
    const auto ds = hard_pair_library();
    if (c.manifest) {
        emit_output(hard_pair_manifest().to_json(), c, out);
        return kOk;
    }
    std::string text;
    const auto manifest = hard_pair_manifest();
    for (std::size_t i = 0; i < ds.pairs.size(); ++i) {
        const auto& e = manifest.entries[i];
        text += e.name + ": " + write_graph6(ds.graphs[ds.pairs[i].first]) + " " +
                write_graph6(ds.graphs[ds.pairs[i].second]) + " [" + join(e.expectations, ", ") + "] verified\n";
    }
    emit_output(text, c, out);
    return kOk;
}

void add_input_options(CLI::App* cmd, Config& c) {
    cmd->add_option("--input", c.input, "Graph file, or @hard-pairs for the bundled pairs")->required();
    cmd->add_option("--format", c.format, "graph6 or edge_list (default: from extension)");
    cmd->add_option("--out", c.out, "Write the result to this file instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Isomorphism-preserving graph transforms and expressivity measurements", "isolab"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    auto* transform = app.add_subcommand("transform", "Apply one transform to every graph of a file");
    add_input_options(transform, c);
    transform->add_option("--transform", c.transforms, "Transform spec, e.g. degree or graph_encoding:k=4")
        ->required();

    auto* wl = app.add_subcommand("wl", "Per-pair WL verdicts");
    add_input_options(wl, c);
    wl->add_option("--k", c.k, "1 for color refinement, 2 or 3 for oblivious k-WL");
    wl->add_option("--eps", c.eps, "Feature quantization step");
    wl->add_option("--transform", c.transforms, "Transform applied before hashing");
    wl->add_option("--seed-data", c.seed_data, "Seed for --augment");
    wl->add_option("--augment", c.augment, "Add this many isomorphic pairs");
    wl->add_option("--categories", c.categories, "Name:count,... labels for consecutive pairs");
    wl->add_option("--budget", c.budget, "k-WL work limit per round");

    auto* evaluate = app.add_subcommand("evaluate", "ECC / FN / FP table over methods and embedders");
    add_input_options(evaluate, c);
    evaluate->add_option("--transform", c.transforms, "Transform spec (repeatable; default all)");
    evaluate->add_option("--embedder", c.embedders, "wl1, wl2, wl3, gin, pna or ds (repeatable)");
    evaluate->add_option("--eps", c.eps, "Clustering tolerance for model embeddings");
    evaluate->add_option("--quant-eps", c.quant_eps, "Feature quantization step for WL");
    evaluate->add_option("--seed-data", c.seed_data, "Seed for --augment");
    evaluate->add_option("--seed-model", c.seed_model, "Seed for model weights");
    evaluate->add_option("--augment", c.augment, "Add this many isomorphic pairs");
    evaluate->add_option("--emit", c.emit, "csv, md or jsonl");
    evaluate->add_option("--categories", c.categories, "Name:count,... labels for consecutive pairs");
    evaluate->add_flag("--breakdown", c.breakdown, "Add one section per pair origin");
    evaluate->add_flag("--timing", c.timing, "Fill the seconds column (breaks byte-identical output)");
    evaluate->add_option("--threads", c.threads, "Worker threads");
    evaluate->add_option("--budget", c.budget, "k-WL work limit per round");

    auto* corpus = app.add_subcommand("corpus", "Bundled hard pairs and graph generators");
    corpus->add_flag("--manifest", c.manifest, "Print the hard-pair manifest as JSON");
    corpus->add_option("--family", c.family, "Generate one graph of this family");
    corpus->add_option("--n", c.n, "Node count (cycle length for disjoint_cycles)");
    corpus->add_option("--copies", c.copies, "Copies for disjoint_cycles");
    corpus->add_option("--p", c.p, "Edge probability for erdos_renyi");
    corpus->add_option("--seed", c.seed, "Seed for erdos_renyi");
    corpus->add_option("--emit", c.emit, "graph6 or edge_list")->default_str("edge_list");
    corpus->add_option("--out", c.out, "Write the result to this file instead of stdout");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*transform) return cmd_transform(c, out, err);
        if (*wl) return cmd_wl(c, out, err);
        if (*evaluate) return cmd_evaluate(c, out, err);
        if (*corpus) {
            if (!corpus->count("--emit")) c.emit = "edge_list";
            return cmd_corpus(c, out, err);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return kData;
    } catch (const CorpusIntegrityError& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}

}  // namespace isolab::cli

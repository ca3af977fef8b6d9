#include "isolab/transforms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "isolab/centrality.hpp"
#include "isolab/errors.hpp"
#include "isolab/spectral.hpp"

namespace isolab {

namespace {

constexpr double kSignZero = 1e-7;

void require_nodes(const Graph& g, TransformKind kind) {
    if (g.node_count() == 0) {
        throw ContractError(std::string(kind_token(kind)) + " requires at least one node");
    }
}

std::string valid_kinds() {
    std::string out;
    for (auto kind : kAllTransformKinds) {
        if (!out.empty()) out += ", ";
        out += kind_token(kind);
    }
    return out;
}

std::size_t parse_count(std::string_view key, std::string_view value) {
    std::size_t x = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ContractError("transform parameter " + std::string(key) + " expects an integer, got '" +
                            std::string(value) + "'");
    }
    return x;
}

double parse_positive(std::string_view key, std::string_view value) {
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ContractError("transform parameter " + std::string(key) + " expects a number, got '" +
                            std::string(value) + "'");
    }
    return x;
}

void negate(std::span<double> v) {
    for (double& x : v) x = -x;
}

// Node weights that depend neither on labels nor on eigenvector signs:
// constant, degree, and the squares of the non-trivial eigenvectors.
std::vector<std::vector<double>> sign_free_weights(const Graph& g, const SymmetricEigen& eig) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<double>> w;
    w.emplace_back(n, 1.0);
    auto& deg = w.emplace_back(n);
    for (NodeId v = 0; v < n; ++v) deg[v] = double(g.degree(v));
    for (std::size_t j = 1; j < n; ++j) {
        auto& sq = w.emplace_back(n);
        const auto u = eig.vector(j);
        for (std::size_t i = 0; i < n; ++i) sq[i] = u[i] * u[i];
    }
    return w;
}

bool orient(std::span<double> v, double stat) {
    if (std::fabs(stat) <= kSignZero) return false;
    if (stat < 0.0) negate(v);
    return true;
}

// Every statistic below is unchanged by node relabeling and flips sign with
// v, so the first clearly non-zero one pins the sign. With `ref` given (an
// already oriented vector) the statistics are mixed ones. Returns false when
// all vanish, e.g. when an automorphism negates v (and ref with it).
bool fix_sign_by_moments(std::span<double> v, std::span<const double> ref, const Graph& g,
                         const std::vector<std::vector<double>>& weights) {
    const std::size_t n = v.size();
    const bool mixed = !ref.empty();
    static constexpr std::pair<int, int> kSelf[] = {{0, 1}, {0, 3}, {0, 5}, {0, 7}, {0, 9}};
    static constexpr std::pair<int, int> kMixed[] = {{1, 1}, {1, 3}, {3, 1}, {3, 3}};
    const auto powers = mixed ? std::span<const std::pair<int, int>>(kMixed)
                              : std::span<const std::pair<int, int>>(kSelf);
    for (const auto& r : weights) {
        for (auto [a, b] : powers) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                sum += r[i] * (mixed ? std::pow(ref[i], a) : 1.0) * std::pow(v[i], b);
            }
            if (orient(v, sum)) return true;
        }
    }
    double edge_sum = 0.0;
    for (const auto& e : g.edges()) {
        edge_sum += mixed ? ref[e.u] * v[e.v] + ref[e.v] * v[e.u]
                          : v[e.u] * v[e.v] * v[e.v] + v[e.v] * v[e.u] * v[e.u];
    }
    return orient(v, edge_sum);
}

void fix_sign_by_first_entry(std::span<double> v) {
    for (double x : v) {
        if (std::fabs(x) > kSignZero) {
            if (x < 0.0) negate(v);
            return;
        }
    }
}

}  // namespace

void TransformSpec::validate() const {
    if (k < 1) throw ContractError("graph_encoding k must be >= 1");
    if (radius < 1) throw ContractError("subgraph_extraction radius must be >= 1");
    if (d_max < 1) throw ContractError("distance_encoding d_max must be >= 1");
    if (!(power_tol > 0.0)) throw ContractError("power iteration tolerance must be positive");
    if (power_max_iter < 1) throw ContractError("power iteration max_iter must be >= 1");
}

std::string_view kind_token(TransformKind kind) {
    switch (kind) {
        case TransformKind::base: return "base";
        case TransformKind::virtual_node: return "virtual_node";
        case TransformKind::degree: return "degree";
        case TransformKind::closeness: return "closeness";
        case TransformKind::betweenness: return "betweenness";
        case TransformKind::eigenvector: return "eigenvector";
        case TransformKind::distance_encoding: return "distance_encoding";
        case TransformKind::graph_encoding: return "graph_encoding";
        case TransformKind::subgraph_extraction: return "subgraph_extraction";
        case TransformKind::extra_node: return "extra_node";
    }
    return "?";
}

std::string_view display_name(TransformKind kind) {
    switch (kind) {
        case TransformKind::base: return "Base";
        case TransformKind::virtual_node: return "Virtual Node";
        case TransformKind::degree: return "Degree";
        case TransformKind::closeness: return "Closeness";
        case TransformKind::betweenness: return "Betweenness";
        case TransformKind::eigenvector: return "Eigenvector";
        case TransformKind::distance_encoding: return "Distance Encoding";
        case TransformKind::graph_encoding: return "Graph Encoding";
        case TransformKind::subgraph_extraction: return "Subgraph Extraction";
        case TransformKind::extra_node: return "Extra Node";
    }
    return "?";
}

std::string_view sign_mode_token(SignMode mode) {
    return mode == SignMode::raw ? "raw" : "first_nonzero_positive";
}

TransformSpec parse_transform_spec(std::string_view token) {
    TransformSpec spec;
    const auto colon = token.find(':');
    const std::string_view name = token.substr(0, colon);
    bool found = false;
    for (auto kind : kAllTransformKinds) {
        if (kind_token(kind) == name) {
            spec.kind = kind;
            found = true;
        }
    }
    if (!found) {
        throw ContractError("unknown transform '" + std::string(name) + "'; valid kinds: " + valid_kinds());
    }
    if (colon != std::string_view::npos) {
        std::string_view rest = token.substr(colon + 1);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = rest.substr(0, comma);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            const auto eq = item.find('=');
            if (eq == std::string_view::npos) {
                throw ContractError("transform parameter '" + std::string(item) +
                                    "' must be key=value; valid kinds: " + valid_kinds());
            }
            const auto key = item.substr(0, eq);
            const auto value = item.substr(eq + 1);
            if (key == "k") {
                spec.k = parse_count(key, value);
            } else if (key == "radius") {
                spec.radius = parse_count(key, value);
            } else if (key == "d_max" || key == "dmax") {
                spec.d_max = parse_count(key, value);
            } else if (key == "max_iter") {
                spec.power_max_iter = parse_count(key, value);
            } else if (key == "tol") {
                spec.power_tol = parse_positive(key, value);
            } else if (key == "sign") {
                if (value == "raw") {
                    spec.sign_mode = SignMode::raw;
                } else if (value == "first_nonzero_positive") {
                    spec.sign_mode = SignMode::first_nonzero_positive;
                } else {
                    throw ContractError("sign must be raw or first_nonzero_positive, got '" +
                                        std::string(value) + "'");
                }
            } else {
                throw ContractError("unknown transform parameter '" + std::string(key) +
                                    "' (k, radius, d_max, sign, tol, max_iter)");
            }
        }
    }
    spec.validate();
    return spec;
}

std::string to_token(const TransformSpec& spec) {
    std::string out(kind_token(spec.kind));
    switch (spec.kind) {
        case TransformKind::eigenvector: {
            char buf[32];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, spec.power_tol);
            out += ":tol=" + std::string(buf, ptr) + ",max_iter=" + std::to_string(spec.power_max_iter);
            break;
        }
        case TransformKind::distance_encoding:
            out += ":d_max=" + std::to_string(spec.d_max);
            break;
        case TransformKind::graph_encoding:
            out += ":k=" + std::to_string(spec.k) + ",sign=" + std::string(sign_mode_token(spec.sign_mode));
            break;
        case TransformKind::subgraph_extraction:
            out += ":radius=" + std::to_string(spec.radius);
            break;
        default:
            break;
    }
    return out;
}

Graph virtual_node(const Graph& g) {
    const std::size_t n = g.node_count();
    const std::size_t d = g.feature_width();
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    for (NodeId v = 0; v < n; ++v) edges.push_back({v, static_cast<NodeId>(n)});
    std::vector<double> features(g.features().begin(), g.features().end());
    features.insert(features.end(), d, 1.0);
    return Graph(n + 1, std::move(edges), std::move(features), d);
}

Graph centrality_augment(const Graph& g, Centrality measure, const TransformSpec& spec) {
    spec.validate();
    std::vector<double> column;
    switch (measure) {
        case Centrality::degree: column = degree_centrality(g); break;
        case Centrality::closeness: column = closeness_centrality(g); break;
        case Centrality::betweenness: column = betweenness_centrality(g); break;
        case Centrality::eigenvector:
            column = eigenvector_centrality(g, spec.power_tol, spec.power_max_iter);
            break;
    }
    return g.with_appended_columns(column, 1);
}

Graph distance_encoding(const Graph& g, const TransformSpec& spec) {
    spec.validate();
    require_nodes(g, TransformKind::distance_encoding);
    const std::size_t n = g.node_count();
    const std::size_t width = spec.d_max + 1;
    std::vector<double> block(n * width, 0.0);
    for (NodeId v = 0; v < n; ++v) {
        for (std::size_t d : bfs_distances(g, v)) {
            if (d == 0 || d == kUnreachable) continue;
            const std::size_t bucket = std::min(d, spec.d_max + 1) - 1;
            block[v * width + bucket] += 1.0;
        }
    }
    return g.with_appended_columns(block, width);
}

Graph graph_encoding(const Graph& g, const TransformSpec& spec) {
    spec.validate();
    require_nodes(g, TransformKind::graph_encoding);
    const std::size_t n = g.node_count();
    const auto eig = jacobi_eigen(normalized_laplacian(g), n);
    std::vector<double> block(n * spec.k, 0.0);
    const std::size_t used = std::min(spec.k, n - 1);
    std::vector<std::vector<double>> vecs;
    for (std::size_t j = 0; j < used; ++j) {
        auto src = eig.vector(j + 1);
        vecs.emplace_back(src.begin(), src.end());
    }
    if (spec.sign_mode == SignMode::first_nonzero_positive) {
        // Vectors left ambiguous on their own are oriented against vectors
        // already oriented; only what remains goes to the first-entry rule.
        const auto weights = sign_free_weights(g, eig);
        std::vector<bool> oriented(used, false);
        for (std::size_t j = 0; j < used; ++j) oriented[j] = fix_sign_by_moments(vecs[j], {}, g, weights);
        for (std::size_t j = 0; j < used; ++j) {
            if (oriented[j]) continue;
            for (std::size_t r = 0; r < used && !oriented[j]; ++r) {
                if (oriented[r]) oriented[j] = fix_sign_by_moments(vecs[j], vecs[r], g, weights);
            }
            if (!oriented[j]) fix_sign_by_first_entry(vecs[j]);
            oriented[j] = true;
        }
    }
    for (std::size_t j = 0; j < used; ++j) {
        for (std::size_t v = 0; v < n; ++v) block[v * spec.k + j] = vecs[j][v];
    }
    return g.with_appended_columns(block, spec.k);
}

Graph subgraph_extraction(const Graph& g, const TransformSpec& spec) {
    spec.validate();
    require_nodes(g, TransformKind::subgraph_extraction);
    const std::size_t n = g.node_count();
    std::vector<double> block(n * 2, 0.0);
    for (NodeId v = 0; v < n; ++v) {
        const auto dist = bfs_distances(g, v);
        std::size_t nodes = 0;
        std::size_t edges = 0;
        for (NodeId u = 0; u < n; ++u) {
            if (dist[u] > spec.radius) continue;
            ++nodes;
            for (NodeId w : g.neighbors(u)) {
                if (w > u && dist[w] <= spec.radius) ++edges;
            }
        }
        block[v * 2] = static_cast<double>(nodes);
        block[v * 2 + 1] = static_cast<double>(edges);
    }
    return g.with_appended_columns(block, 2);
}

Graph extra_node(const Graph& g) {
    const std::size_t n = g.node_count();
    const std::size_t m = g.edge_count();
    const std::size_t d = g.feature_width();
    std::vector<Edge> edges;
    edges.reserve(2 * m);
    NodeId fresh = static_cast<NodeId>(n);
    for (const auto& e : g.edges()) {
        edges.push_back({e.u, fresh});
        edges.push_back({e.v, fresh});
        ++fresh;
    }
    std::vector<double> features(g.features().begin(), g.features().end());
    features.insert(features.end(), m * d, 1.0);
    return Graph(n + m, std::move(edges), std::move(features), d);
}

Graph apply_transform(const TransformSpec& spec, const Graph& g) {
    spec.validate();
    switch (spec.kind) {
        case TransformKind::base: return g;
        case TransformKind::virtual_node: return virtual_node(g);
        case TransformKind::degree: return centrality_augment(g, Centrality::degree, spec);
        case TransformKind::closeness: return centrality_augment(g, Centrality::closeness, spec);
        case TransformKind::betweenness: return centrality_augment(g, Centrality::betweenness, spec);
        case TransformKind::eigenvector: return centrality_augment(g, Centrality::eigenvector, spec);
        case TransformKind::distance_encoding: return distance_encoding(g, spec);
        case TransformKind::graph_encoding: return graph_encoding(g, spec);
        case TransformKind::subgraph_extraction: return subgraph_extraction(g, spec);
        case TransformKind::extra_node: return extra_node(g);
    }
    throw ContractError("unhandled transform kind");
}

}  // namespace isolab

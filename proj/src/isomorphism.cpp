#include "isolab/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "isolab/errors.hpp"

namespace isolab {

namespace {

using Color = std::uint32_t;

// Colors of g's nodes at [0, n) and h's nodes at [n, 2n).
struct Coloring {
    std::vector<Color> color;
    std::size_t classes = 0;
};

class Matcher {
public:
    Matcher(const Graph& g, const Graph& h) : g_(g), h_(h), n_(g.node_count()) {}

    std::optional<Permutation> run(Coloring start) {
        if (!refine(start)) return std::nullopt;
        return search(start);
    }

private:
    const Graph& graph_of(std::size_t x) const { return x < n_ ? g_ : h_; }
    NodeId local(std::size_t x) const { return static_cast<NodeId>(x < n_ ? x : x - n_); }

    // Equal class sizes in both graphs is necessary for an isomorphism to exist.
    bool balanced(const Coloring& c) const {
        std::vector<std::ptrdiff_t> balance(c.classes, 0);
        for (std::size_t x = 0; x < n_; ++x) ++balance[c.color[x]];
        for (std::size_t x = n_; x < 2 * n_; ++x) --balance[c.color[x]];
        return std::all_of(balance.begin(), balance.end(), [](auto b) { return b == 0; });
    }

    // Joint 1-WL refinement with canonical (sorted-signature) color ids.
    bool refine(Coloring& c) const {
        const std::size_t total = 2 * n_;
        std::vector<std::vector<Color>> signature(total);
        std::vector<std::size_t> order(total);
        while (true) {
            if (!balanced(c)) return false;
            for (std::size_t x = 0; x < total; ++x) {
                auto& sig = signature[x];
                sig.clear();
                sig.push_back(c.color[x]);
                const std::size_t offset = x < n_ ? 0 : n_;
                for (NodeId u : graph_of(x).neighbors(local(x))) sig.push_back(c.color[offset + u]);
                std::sort(sig.begin() + 1, sig.end());
            }
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return signature[a] < signature[b]; });
            Color next = 0;
            for (std::size_t i = 0; i < total; ++i) {
                if (i > 0 && signature[order[i]] != signature[order[i - 1]]) ++next;
                c.color[order[i]] = next;
            }
            const std::size_t classes = total == 0 ? 0 : next + 1;
            const bool stable = classes == c.classes;
            c.classes = classes;
            if (stable) return balanced(c);
        }
    }

    std::optional<Permutation> search(const Coloring& c) {
        if (c.classes == n_) return discrete_mapping(c);

        std::vector<std::size_t> size(c.classes, 0);
        for (std::size_t x = 0; x < n_; ++x) ++size[c.color[x]];
        Color target = 0;
        std::size_t best = n_ + 1;
        for (Color col = 0; col < c.classes; ++col) {
            if (size[col] > 1 && size[col] < best) {
                best = size[col];
                target = col;
            }
        }
        std::size_t v = 0;
        while (c.color[v] != target) ++v;

        for (std::size_t w = n_; w < 2 * n_; ++w) {
            if (c.color[w] != target) continue;
            Coloring branch = c;
            const auto fresh = static_cast<Color>(c.classes);
            branch.color[v] = fresh;
            branch.color[w] = fresh;
            branch.classes = c.classes + 1;
            if (!refine(branch)) continue;
            if (auto found = search(branch)) return found;
        }
        return std::nullopt;
    }

    std::optional<Permutation> discrete_mapping(const Coloring& c) const {
        std::vector<NodeId> h_of_color(n_);
        for (std::size_t x = n_; x < 2 * n_; ++x) h_of_color[c.color[x]] = local(x);
        std::vector<NodeId> mapping(n_);
        for (std::size_t x = 0; x < n_; ++x) mapping[x] = h_of_color[c.color[x]];
        for (const auto& e : g_.edges()) {
            if (!h_.has_edge(mapping[e.u], mapping[e.v])) return std::nullopt;
        }
        return Permutation(std::move(mapping));
    }

    const Graph& g_;
    const Graph& h_;
    std::size_t n_;
};

}  // namespace

IsoVerdict are_isomorphic(const Graph& g, const Graph& h, const IsoOptions& options) {
    if (!options.structure_only && g.feature_width() != h.feature_width()) {
        throw ContractError("feature widths differ (" + std::to_string(g.feature_width()) + " vs " +
                            std::to_string(h.feature_width()) + ")");
    }
    const std::size_t n = g.node_count();
    if (std::max(n, h.node_count()) > options.max_nodes) {
        throw ResourceError("isomorphism check limited to " + std::to_string(options.max_nodes) +
                            " nodes, got " + std::to_string(std::max(n, h.node_count())));
    }
    if (n != h.node_count() || g.edge_count() != h.edge_count()) return {};
    if (n == 0) return {true, Permutation::identity(0)};

    Coloring start;
    start.color.assign(2 * n, 0);
    if (options.structure_only) {
        start.classes = 1;
    } else {
        const auto qg = quantize_features(g, options.eps);
        const auto qh = quantize_features(h, options.eps);
        std::map<std::vector<std::int64_t>, Color> ids;
        for (const auto* q : {&qg, &qh}) {
            for (std::size_t v = 0; v < n; ++v) {
                auto row = q->row(v);
                ids.try_emplace(std::vector<std::int64_t>(row.begin(), row.end()), 0);
            }
        }
        Color next = 0;
        for (auto& [row, id] : ids) id = next++;
        for (std::size_t v = 0; v < n; ++v) {
            auto rg = qg.row(v);
            auto rh = qh.row(v);
            start.color[v] = ids.at(std::vector<std::int64_t>(rg.begin(), rg.end()));
            start.color[n + v] = ids.at(std::vector<std::int64_t>(rh.begin(), rh.end()));
        }
        start.classes = ids.size();
    }

    Matcher matcher(g, h);
    if (auto witness = matcher.run(std::move(start))) return {true, std::move(witness)};
    return {};
}

}  // namespace isolab

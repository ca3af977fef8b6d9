#include "isolab/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "isolab/errors.hpp"
#include "isolab/random.hpp"

namespace isolab {

std::size_t PairDataset::add_graph(Graph g) {
    graphs.push_back(std::move(g));
    return graphs.size() - 1;
}

std::size_t PairDataset::count_isomorphic() const {
    return static_cast<std::size_t>(
        std::count_if(pairs.begin(), pairs.end(), [](const GraphPair& p) { return p.isomorphic; }));
}

std::size_t PairDataset::count_unverified() const {
    return static_cast<std::size_t>(
        std::count_if(pairs.begin(), pairs.end(), [](const GraphPair& p) { return !p.verified; }));
}

PairDataset pairs_from_sequence(std::vector<Graph> graphs, std::string_view origin) {
    PairDataset ds;
    ds.graphs = std::move(graphs);
    const std::size_t count = ds.graphs.size() / 2;
    for (std::size_t i = 0; i < count; ++i) {
        GraphPair pair{2 * i, 2 * i + 1, false, std::string(origin), false};
        const Graph& a = ds.graphs[pair.first];
        const Graph& b = ds.graphs[pair.second];
        if (std::max(a.node_count(), b.node_count()) <= kVerifyMaxNodes) {
            const bool iso = a.feature_width() == b.feature_width() && are_isomorphic(a, b).isomorphic;
            if (iso) {
                throw ContractError("pair " + std::to_string(i) +
                                    " is labelled non-isomorphic but the graphs are isomorphic");
            }
            pair.verified = true;
        }
        ds.pairs.push_back(std::move(pair));
    }
    if (ds.graphs.size() % 2 != 0) {
        ds.warnings.push_back("odd graph count " + std::to_string(ds.graphs.size()) +
                              ": last graph is not part of any pair");
    }
    return ds;
}

void add_iso_pairs(PairDataset& ds, std::size_t count, std::uint64_t seed) {
    const std::size_t pool = ds.graphs.size();
    if (count > pool) {
        throw ContractError("cannot sample " + std::to_string(count) + " graphs from a pool of " +
                            std::to_string(pool));
    }
    Rng rng(seed);
    std::vector<std::size_t> index(pool);
    std::iota(index.begin(), index.end(), std::size_t{0});
    // Partial Fisher-Yates: the first `count` slots become the sample.
    for (std::size_t i = 0; i < count; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(pool - i));
        std::swap(index[i], index[j]);
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (ds.graphs[index[i]].node_count() == 0) throw ContractError("cannot augment with an empty graph");
    }
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t src = index[i];
        const std::size_t n = ds.graphs[src].node_count();
        const auto perm = random_permutation(n, rng);
        const std::size_t copy = ds.add_graph(apply_permutation(ds.graphs[src], perm));
        ds.pairs.push_back({src, copy, true, "augmented", true});
    }
    ds.seed = seed;
}

PairDataset augment_with_iso_pairs(std::vector<Graph> graphs, std::size_t count, std::uint64_t seed) {
    PairDataset ds;
    ds.graphs = std::move(graphs);
    add_iso_pairs(ds, count, seed);
    return ds;
}

void assign_categories(PairDataset& ds, std::string_view categories) {
    std::size_t next = 0;
    while (!categories.empty()) {
        const auto comma = categories.find(',');
        const auto item = categories.substr(0, comma);
        categories = comma == std::string_view::npos ? std::string_view{} : categories.substr(comma + 1);
        const auto colon = item.rfind(':');
        if (colon == std::string_view::npos) {
            throw ContractError("category '" + std::string(item) + "' must be Name:count");
        }
        const auto name = item.substr(0, colon);
        const auto digits = item.substr(colon + 1);
        std::size_t count = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), count);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || name.empty()) {
            throw ContractError("category '" + std::string(item) + "' must be Name:count");
        }
        if (next + count > ds.pairs.size()) {
            throw ContractError("categories cover more pairs than the dataset has (" +
                                std::to_string(ds.pairs.size()) + ")");
        }
        for (std::size_t i = 0; i < count; ++i) ds.pairs[next++].origin = std::string(name);
    }
}

}  // namespace isolab

#include "isolab/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <thread>

#include "isolab/errors.hpp"

namespace isolab {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

double linf(const Embedding& a, const Embedding& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

// Per pool graph: class id, or nullopt when transform/embedding failed.
struct Classification {
    std::vector<std::optional<std::size_t>> klass;
    std::vector<std::string> errors;  // "graph i: message", in index order
    double seconds = 0.0;
};

Classification classify(const PairDataset& ds, const TransformSpec& transform,
                        const Embedder& embedder, const EvalOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t total = ds.graphs.size();
    std::vector<std::optional<ColorKey>> keys(total);
    std::vector<std::optional<Embedding>> vectors(total);
    std::vector<std::string> failure(total);

    auto work = [&](std::size_t i) {
        try {
            const Graph g = apply_transform(transform, ds.graphs[i]);
            if (embedder.is_exact()) {
                keys[i] = embedder.exact(g);
            } else {
                vectors[i] = embedder.approximate(g);
            }
        } catch (const Error& e) {
            failure[i] = e.what();
        }
    };

    const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(total)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < total; ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < total; i += threads) work(i);
            });
        }
        for (auto& th : pool) th.join();
    }

    Classification out;
    out.klass.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        if (!failure[i].empty()) out.errors.push_back("graph " + std::to_string(i) + ": " + failure[i]);
    }

    if (embedder.is_exact()) {
        std::map<ColorKey, std::size_t> ids;
        for (std::size_t i = 0; i < total; ++i) {
            if (!keys[i]) continue;
            auto [it, inserted] = ids.try_emplace(*keys[i], ids.size());
            out.klass[i] = it->second;
        }
    } else {
        std::vector<Embedding> ok;
        std::vector<std::size_t> where;
        for (std::size_t i = 0; i < total; ++i) {
            if (!vectors[i]) continue;
            ok.push_back(std::move(*vectors[i]));
            where.push_back(i);
        }
        const auto classes = cluster_embeddings(ok, options.cluster_eps);
        for (std::size_t j = 0; j < where.size(); ++j) out.klass[where[j]] = classes[j];
    }
    if (options.timing) {
        out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return out;
}

ReportRow score(const PairDataset& ds, const Classification& c, const TransformSpec& transform,
                const Embedder& embedder, const std::string* origin) {
    ReportRow row;
    row.transform = transform;
    row.embedder = embedder.name;
    row.seconds = c.seconds;
    row.errors = c.errors;

    std::vector<bool> counted(ds.graphs.size(), origin == nullptr);
    for (const auto& pair : ds.pairs) {
        if (origin != nullptr && pair.origin != *origin) continue;
        counted[pair.first] = counted[pair.second] = true;
        if (!pair.verified) ++row.unverified;
        const auto& a = c.klass[pair.first];
        const auto& b = c.klass[pair.second];
        if (!a || !b) {
            ++row.excluded;
            continue;
        }
        ++row.pairs;
        const bool same = *a == *b;
        if (pair.isomorphic && !same) ++row.fp;
        if (!pair.isomorphic && same) ++row.fn;
    }
    std::vector<std::size_t> classes;
    for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
        if (counted[i] && c.klass[i]) classes.push_back(*c.klass[i]);
    }
    row.ecc = ecc(classes);
    if (origin != nullptr) row.origin = *origin;
    return row;
}

}  // namespace

Embedder wl_embedder(unsigned k, double quant_eps, std::uint64_t budget) {
    if (k < 1 || k > 3) throw ContractError("WL embedder supports k = 1, 2, 3");
    Embedder e;
    e.name = "wl" + std::to_string(k);
    if (k == 1) {
        e.exact = [quant_eps](const Graph& g) { return wl1_signature(g, quant_eps).digest; };
    } else {
        e.exact = [k, quant_eps, budget](const Graph& g) {
            return wlk_signature(g, k, WLkOptions{quant_eps, budget}).digest;
        };
    }
    return e;
}

Embedder model_embedder(Arch arch, std::uint64_t seed) {
    Embedder e;
    e.name = std::string(arch_token(arch));
    e.approximate = [arch, seed](const Graph& g) {
        return forward(init_model(arch, g.feature_width(), seed), g);
    };
    return e;
}

std::vector<std::size_t> cluster_embeddings(std::span<const Embedding> embeddings, double eps) {
    const std::size_t n = embeddings.size();
    if (n == 0) return {};
    const std::size_t dim = embeddings[0].size();
    for (const auto& e : embeddings) {
        if (e.size() != dim) throw ContractError("embeddings have different dimensions");
    }
    DisjointSets sets(n);
    if (dim == 0) {
        for (std::size_t i = 1; i < n; ++i) sets.unite(0, i);
    } else {
        // Sweep along coordinate 0: only pairs within eps there can be within eps overall.
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return embeddings[a][0] < embeddings[b][0];
        });
        for (std::size_t i = 0; i < n; ++i) {
            const auto& a = embeddings[order[i]];
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto& b = embeddings[order[j]];
                if (b[0] - a[0] > eps) break;
                if (linf(a, b) <= eps) sets.unite(order[i], order[j]);
            }
        }
    }
    std::vector<std::size_t> classes(n);
    std::map<std::size_t, std::size_t> ids;
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = ids.try_emplace(sets.find(i), ids.size());
        classes[i] = it->second;
    }
    return classes;
}

std::size_t ecc(std::span<const std::size_t> classes) {
    std::vector<std::size_t> sorted(classes.begin(), classes.end());
    std::sort(sorted.begin(), sorted.end());
    return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

ReportRow evaluate_pairs(const PairDataset& ds, const TransformSpec& transform,
                         const Embedder& embedder, const EvalOptions& options) {
    transform.validate();
    const auto c = classify(ds, transform, embedder, options);
    return score(ds, c, transform, embedder, nullptr);
}

std::vector<ReportRow> evaluate_by_origin(const PairDataset& ds, const TransformSpec& transform,
                                          const Embedder& embedder, const EvalOptions& options) {
    transform.validate();
    const auto c = classify(ds, transform, embedder, options);
    std::vector<ReportRow> rows{score(ds, c, transform, embedder, nullptr)};
    std::vector<std::string> origins;
    for (const auto& pair : ds.pairs) {
        if (std::find(origins.begin(), origins.end(), pair.origin) == origins.end()) {
            origins.push_back(pair.origin);
        }
    }
    for (const auto& origin : origins) rows.push_back(score(ds, c, transform, embedder, &origin));
    return rows;
}

}  // namespace isolab

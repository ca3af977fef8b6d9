#include "isolab/centrality.hpp"

#include <cmath>
#include <queue>
#include <string>

#include "isolab/errors.hpp"

namespace isolab {

namespace {

void require_nodes(const Graph& g, const char* what) {
    if (g.node_count() == 0) throw ContractError(std::string(what) + " requires at least one node");
}

}  // namespace

std::vector<std::size_t> bfs_distances(const Graph& g, NodeId source) {
    std::vector<std::size_t> dist(g.node_count(), kUnreachable);
    std::queue<NodeId> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        const NodeId v = frontier.front();
        frontier.pop();
        for (NodeId u : g.neighbors(v)) {
            if (dist[u] == kUnreachable) {
                dist[u] = dist[v] + 1;
                frontier.push(u);
            }
        }
    }
    return dist;
}

std::vector<double> degree_centrality(const Graph& g) {
    require_nodes(g, "degree centrality");
    std::vector<double> out(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) out[v] = static_cast<double>(g.degree(v));
    return out;
}

std::vector<double> closeness_centrality(const Graph& g) {
    require_nodes(g, "closeness centrality");
    const std::size_t n = g.node_count();
    std::vector<double> out(n, 0.0);
    if (n == 1) return out;
    for (NodeId v = 0; v < n; ++v) {
        std::size_t reachable = 0;
        std::size_t total = 0;
        for (std::size_t d : bfs_distances(g, v)) {
            if (d == kUnreachable) continue;
            ++reachable;
            total += d;
        }
        if (total == 0) continue;
        const double r1 = static_cast<double>(reachable - 1);
        out[v] = (r1 / static_cast<double>(n - 1)) * (r1 / static_cast<double>(total));
    }
    return out;
}

std::vector<double> betweenness_centrality(const Graph& g) {
    require_nodes(g, "betweenness centrality");
    const std::size_t n = g.node_count();
    std::vector<double> score(n, 0.0);

    std::vector<std::size_t> dist(n);
    std::vector<double> sigma(n);
    std::vector<double> delta(n);
    std::vector<std::vector<NodeId>> preds(n);
    std::vector<NodeId> stack;
    std::queue<NodeId> frontier;

    for (NodeId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), kUnreachable);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();
        stack.clear();

        dist[s] = 0;
        sigma[s] = 1.0;
        frontier.push(s);
        while (!frontier.empty()) {
            const NodeId v = frontier.front();
            frontier.pop();
            stack.push_back(v);
            for (NodeId w : g.neighbors(v)) {
                if (dist[w] == kUnreachable) {
                    dist[w] = dist[v] + 1;
                    frontier.push(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }
        while (!stack.empty()) {
            const NodeId w = stack.back();
            stack.pop_back();
            for (NodeId v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) score[w] += delta[w];
        }
    }
    // Every unordered pair was counted from both endpoints.
    for (double& x : score) x /= 2.0;
    return score;
}

std::vector<double> eigenvector_centrality(const Graph& g, double tol, std::size_t max_iter) {
    require_nodes(g, "eigenvector centrality");
    if (!(tol > 0.0)) throw ContractError("power iteration tolerance must be positive");
    const std::size_t n = g.node_count();
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n);
    double gap = 0.0;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        for (NodeId v = 0; v < n; ++v) {
            double acc = x[v];
            for (NodeId u : g.neighbors(v)) acc += x[u];
            next[v] = acc;
        }
        double norm = 0.0;
        for (double y : next) norm += y * y;
        norm = std::sqrt(norm);
        gap = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            next[v] /= norm;
            gap = std::max(gap, std::fabs(next[v] - x[v]));
        }
        x.swap(next);
        if (gap < tol) return x;
    }
    throw ConvergenceError("eigenvector centrality did not converge in " + std::to_string(max_iter) +
                           " iterations (iterate gap " + std::to_string(gap) + ")");
}

}  // namespace isolab

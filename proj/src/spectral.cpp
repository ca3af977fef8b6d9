#include "isolab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "isolab/errors.hpp"

namespace isolab {

namespace {

double max_off_diagonal(const std::vector<double>& a, std::size_t n) {
    double m = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) m = std::max(m, std::fabs(a[p * n + q]));
    }
    return m;
}

}  // namespace

SymmetricEigen jacobi_eigen(std::vector<double> a, std::size_t n, double tol,
                            std::size_t max_sweeps) {
    if (a.size() != n * n) throw ContractError("matrix is not n x n");

    std::vector<double> v(n * n, 0.0);  // row-major, columns are eigenvectors
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    std::size_t sweeps = 0;
    double off = max_off_diagonal(a, n);
    while (off > tol) {
        if (sweeps == max_sweeps) {
            throw ConvergenceError("Jacobi did not converge in " + std::to_string(max_sweeps) +
                                   " sweeps (off-diagonal " + std::to_string(off) + ")");
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a[r * n + p];
                    const double arq = a[r * n + q];
                    const double np = c * arp - s * arq;
                    const double nq = s * arp + c * arq;
                    a[r * n + p] = a[p * n + r] = np;
                    a[r * n + q] = a[q * n + r] = nq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = a[q * n + p] = 0.0;

                for (std::size_t r = 0; r < n; ++r) {
                    const double vrp = v[r * n + p];
                    const double vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
        ++sweeps;
        off = max_off_diagonal(a, n);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

    SymmetricEigen out;
    out.n = n;
    out.sweeps = sweeps;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t col = order[j];
        out.values[j] = a[col * n + col];
        for (std::size_t r = 0; r < n; ++r) out.vectors[j * n + r] = v[r * n + col];
    }
    return out;
}

std::vector<double> normalized_laplacian(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> inv_sqrt(n, 0.0);
    for (NodeId v = 0; v < n; ++v) {
        if (g.degree(v) > 0) inv_sqrt[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
    }
    std::vector<double> l(n * n, 0.0);
    for (std::size_t v = 0; v < n; ++v) l[v * n + v] = 1.0;
    for (const auto& e : g.edges()) {
        const double w = -inv_sqrt[e.u] * inv_sqrt[e.v];
        l[std::size_t{e.u} * n + e.v] = w;
        l[std::size_t{e.v} * n + e.u] = w;
    }
    return l;
}

}  // namespace isolab

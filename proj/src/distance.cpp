#include "finsler/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace finsler {

namespace {

struct Edge {
    int to;
    double w;
};

std::vector<std::vector<Edge>> build_graph(const MetricModel& m, const Mesh& mesh) {
    static const int offsets2d[8][2] = {{1, 0}, {-1, 0}, {0, 1},  {0, -1},
                                        {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    int n = mesh.num_nodes();
    std::vector<std::vector<Edge>> adj(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) {
        auto ij = mesh.coords_of(u);
        Vec xu = mesh.coord(u);
        int degree = mesh.dim == 1 ? 2 : 8;
        adj[static_cast<size_t>(u)].reserve(static_cast<size_t>(degree));
        for (int e = 0; e < degree; ++e) {
            int di = mesh.dim == 1 ? (e == 0 ? 1 : -1) : offsets2d[e][0];
            int dj = mesh.dim == 1 ? 0 : offsets2d[e][1];
            int v = mesh.index(ij[0] + di, ij[1] + dj);
            Vec dx = Vec::zero(mesh.dim);
            dx[0] = di * mesh.spacing(0);
            if (mesh.dim == 2) dx[1] = dj * mesh.spacing(1);
            Vec xm = m.chart().wrap(xu + 0.5 * dx);
            adj[static_cast<size_t>(u)].push_back({v, m.norm(xm, dx)});
        }
    }
    return adj;
}

std::vector<double> dijkstra(const std::vector<std::vector<Edge>>& adj, int source) {
    int n = static_cast<int>(adj.size());
    std::vector<double> dist(static_cast<size_t>(n), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[static_cast<size_t>(source)] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[static_cast<size_t>(u)]) continue;
        for (const Edge& e : adj[static_cast<size_t>(u)]) {
            double nd = d + e.w;
            if (nd < dist[static_cast<size_t>(e.to)]) {
                dist[static_cast<size_t>(e.to)] = nd;
                pq.push({nd, e.to});
            }
        }
    }
    return dist;
}

std::vector<int> stratified_sources(const Mesh& mesh, int min_sources) {
    std::vector<int> sources;
    if (mesh.dim == 1) {
        int count = std::min(min_sources, mesh.n[0]);
        for (int k = 0; k < count; ++k) sources.push_back(mesh.index(k * mesh.n[0] / count));
    } else {
        int per_axis = 1;
        while (per_axis * per_axis < min_sources) ++per_axis;
        per_axis = std::min({per_axis, mesh.n[0], mesh.n[1]});
        for (int a = 0; a < per_axis; ++a)
            for (int b = 0; b < per_axis; ++b)
                sources.push_back(mesh.index(a * mesh.n[0] / per_axis, b * mesh.n[1] / per_axis));
    }
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    return sources;
}

double graph_diameter(const MetricModel& m, const Mesh& mesh, int min_sources, int* used) {
    auto adj = build_graph(m, mesh);
    auto sources = stratified_sources(mesh, min_sources);
    if (used) *used = static_cast<int>(sources.size());
    double diam = 0;
    for (int s : sources) {
        auto dist = dijkstra(adj, s);
        for (double d : dist) diam = std::max(diam, d);
    }
    return diam;
}

}  // namespace

std::vector<double> distance_map(const MetricModel& m, const Mesh& mesh, int source) {
    return dijkstra(build_graph(m, mesh), source);
}

DiameterEstimate diameter_estimate(const MetricModel& m, const Mesh& mesh, int min_sources) {
    DiameterEstimate est;
    est.coarse = graph_diameter(m, mesh, min_sources, &est.sources);
    Mesh fine = mesh;
    for (int d = 0; d < mesh.dim; ++d) fine.n[d] *= 2;
    est.fine = graph_diameter(m, fine, min_sources, nullptr);
    est.extrapolated = est.fine + (est.fine - est.coarse);
    return est;
}

}  // namespace finsler

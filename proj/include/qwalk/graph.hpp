#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

using Edge = std::pair<int, int>;

/// Undirected simple graph with a canonical edge ordering.
///
/// Edges are stored as (u, v) with u < v, sorted lexicographically; the sort
/// position of an edge is its index 0..m-1 in every matrix built downstream
/// (incidence columns, line-graph vertices, Q-graph edge-vertices). Instances
/// are immutable after construction and safe to share across threads.
class Graph {
public:
    Graph(int n, std::vector<Edge> edge_list) : n_(n) {
        if (n < 0) throw input_error("graph: negative vertex count");
        for (auto& [u, v] : edge_list) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw input_error("graph: vertex out of range in edge (" + std::to_string(u) +
                                  ", " + std::to_string(v) + ")");
            if (u == v) throw input_error("graph: self-loop at vertex " + std::to_string(u));
            if (u > v) std::swap(u, v);
        }
        std::sort(edge_list.begin(), edge_list.end());
        if (std::adjacent_find(edge_list.begin(), edge_list.end()) != edge_list.end())
            throw input_error("graph: duplicate edge");
        edges_ = std::move(edge_list);
        adjacency_ = Eigen::MatrixXi::Zero(n, n);
        degrees_.assign(n, 0);
        for (const auto& [u, v] : edges_) {
            adjacency_(u, v) = adjacency_(v, u) = 1;
            ++degrees_[u];
            ++degrees_[v];
        }
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Eigen::MatrixXi& adjacency() const { return adjacency_; }
    int degree(int v) const { return degrees_.at(v); }
    bool has_edge(int u, int v) const {
        return u >= 0 && v >= 0 && u < n_ && v < n_ && adjacency_(u, v) != 0;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> degrees_;
    Eigen::MatrixXi adjacency_;
};

inline Graph from_edge_list(int n, std::vector<Edge> pairs) { return Graph(n, std::move(pairs)); }

/// Vertex-edge incidence matrix R: R(i, j) = 1 iff vertex i is an endpoint of
/// edge j. Columns follow the canonical edge order, so R R^T = Q_G and
/// R^T R - 2I is the adjacency matrix of the line graph.
struct IncidenceMatrix {
    Eigen::MatrixXi entries;  // n x m
};

inline IncidenceMatrix incidence(const Graph& g) {
    Eigen::MatrixXi R = Eigen::MatrixXi::Zero(g.vertex_count(), g.edge_count());
    for (int j = 0; j < g.edge_count(); ++j) {
        R(g.edges()[j].first, j) = 1;
        R(g.edges()[j].second, j) = 1;
    }
    return {std::move(R)};
}

/// Signless Laplacian Q = A + D, exact integer arithmetic.
inline Eigen::MatrixXi signless_laplacian(const Graph& g) {
    Eigen::MatrixXi Q = g.adjacency();
    for (int v = 0; v < g.vertex_count(); ++v) Q(v, v) += g.degree(v);
    return Q;
}

namespace detail {
inline bool edges_adjacent(const Edge& a, const Edge& b) {
    return a.first == b.first || a.first == b.second || a.second == b.first ||
           a.second == b.second;
}
}  // namespace detail

/// Line graph: one vertex per edge of g (canonical order), adjacent iff the
/// underlying edges share an endpoint.
inline Graph line_graph(const Graph& g) {
    const int m = g.edge_count();
    std::vector<Edge> edges;
    for (int j = 0; j < m; ++j)
        for (int k = j + 1; k < m; ++k)
            if (detail::edges_adjacent(g.edges()[j], g.edges()[k])) edges.emplace_back(j, k);
    return Graph(m, std::move(edges));
}

/// Q-graph of g together with the vertex-role map. Vertices 0..n-1 are the
/// original vertices of g; vertex n+j is the new vertex placed on edge j.
struct QGraph {
    Graph graph;
    int base_vertex_count = 0;
    std::vector<Edge> base_edges;  // edge-vertex n+j sits on base_edges[j]

    bool is_edge_vertex(int v) const { return v >= base_vertex_count; }
    std::string vertex_label(int v) const {
        if (!is_edge_vertex(v)) return "v" + std::to_string(v);
        const Edge& e = base_edges[v - base_vertex_count];
        return "e(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
    }
};

inline bool is_connected(const Graph& g);

inline QGraph q_graph(const Graph& g) {
    const int n = g.vertex_count(), m = g.edge_count();
    if (m == 0) throw precondition_error("q_graph: graph has no edges");
    if (!is_connected(g)) throw precondition_error("q_graph: graph is not connected");
    std::vector<Edge> edges;
    for (int j = 0; j < m; ++j) {
        edges.emplace_back(g.edges()[j].first, n + j);
        edges.emplace_back(g.edges()[j].second, n + j);
        for (int k = j + 1; k < m; ++k)
            if (detail::edges_adjacent(g.edges()[j], g.edges()[k]))
                edges.emplace_back(n + j, n + k);
    }
    return {Graph(n + m, std::move(edges)), n, g.edges()};
}

/// Degree/bipartiteness report. For a bipartite graph the two colour classes
/// are listed in ascending vertex order, the class of vertex 0 first.
struct RegularityInfo {
    bool is_regular = false;
    int degree = -1;  // meaningful only when is_regular
    bool is_bipartite = false;
    std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartition;
};

inline RegularityInfo regularity(const Graph& g) {
    const int n = g.vertex_count();
    RegularityInfo info;
    info.is_regular = n > 0;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) != g.degree(0)) info.is_regular = false;
    if (info.is_regular && n > 0) info.degree = g.degree(0);

    // BFS 2-colouring over every component
    std::vector<int> colour(n, -1);
    bool bipartite = true;
    std::vector<int> queue;
    for (int start = 0; start < n && bipartite; ++start) {
        if (colour[start] != -1) continue;
        colour[start] = 0;
        queue.assign(1, start);
        for (std::size_t head = 0; head < queue.size() && bipartite; ++head) {
            const int v = queue[head];
            for (int w = 0; w < n; ++w) {
                if (!g.adjacency()(v, w)) continue;
                if (colour[w] == -1) {
                    colour[w] = 1 - colour[v];
                    queue.push_back(w);
                } else if (colour[w] == colour[v]) {
                    bipartite = false;
                    break;
                }
            }
        }
    }
    info.is_bipartite = bipartite;
    if (bipartite) {
        std::pair<std::vector<int>, std::vector<int>> parts;
        for (int v = 0; v < n; ++v)
            (colour[v] == 0 ? parts.first : parts.second).push_back(v);
        info.bipartition = std::move(parts);
    }
    return info;
}

inline bool is_connected(const Graph& g) {
    const int n = g.vertex_count();
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (int w = 0; w < n; ++w)
            if (g.adjacency()(queue[head], w) && !seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
    return std::find(seen.begin(), seen.end(), 0) == seen.end();
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

namespace detail {

inline Graph hypercube(int d) {
    if (d < 1) throw input_error("generate: hypercube requires d >= 1");
    const int n = 1 << d;
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v)
        for (int bit = 0; bit < d; ++bit)
            if (int w = v ^ (1 << bit); w > v) edges.emplace_back(v, w);
    return Graph(n, std::move(edges));
}

// Complete graph on 2m vertices minus the perfect matching {(i, i+m)}.
inline Graph cocktail(int m) {
    if (m < 2) throw input_error("generate: cocktail requires m >= 2");
    const int n = 2 * m;
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (v - u != m) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

// Even-Hamming-weight elements of Z_2^{2d} (ascending as integers), adjacent
// iff their Hamming distance is exactly two.
inline Graph halved_hypercube(int d) {
    if (d < 1) throw input_error("generate: halved_hypercube requires d >= 1");
    std::vector<int> words;
    for (int w = 0; w < (1 << (2 * d)); ++w)
        if (__builtin_popcount(static_cast<unsigned>(w)) % 2 == 0) words.push_back(w);
    const int n = static_cast<int>(words.size());
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (__builtin_popcount(static_cast<unsigned>(words[u] ^ words[v])) == 2)
                edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

inline Graph cycle(int n) {
    if (n < 3) throw input_error("generate: cycle requires n >= 3");
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    edges.emplace_back(0, n - 1);
    return Graph(n, std::move(edges));
}

inline Graph path(int n) {
    if (n < 2) throw input_error("generate: path requires n >= 2");
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph(n, std::move(edges));
}

inline Graph complete(int n) {
    if (n < 2) throw input_error("generate: complete requires n >= 2");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

}  // namespace detail

inline Graph generate(const std::string& family, int parameter) {
    if (family == "hypercube") return detail::hypercube(parameter);
    if (family == "cocktail") return detail::cocktail(parameter);
    if (family == "halved_hypercube") return detail::halved_hypercube(parameter);
    if (family == "cycle") return detail::cycle(parameter);
    if (family == "path") return detail::path(parameter);
    if (family == "complete") return detail::complete(parameter);
    throw input_error("generate: unknown family '" + family + "'");
}

}  // namespace qwalk

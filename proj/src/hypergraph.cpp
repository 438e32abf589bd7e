#include "hyperindex/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "hyperindex/errors.hpp"

namespace hyperindex {

UniformHypergraph::UniformHypergraph(int m, int n, std::vector<Edge> edges)
    : m_(m), n_(n), edges_(std::move(edges)) {
    for (Edge& e : edges_)
        std::sort(e.begin(), e.end());
    std::sort(edges_.begin(), edges_.end());
}

ValidationResult validate(const UniformHypergraph& g) {
    if (g.uniformity() < 2)
        return {false, "uniformity must be at least 2"};
    if (g.vertex_count() < 1)
        return {false, "vertex count must be at least 1"};
    const auto& edges = g.edges();
    for (std::size_t idx = 0; idx < edges.size(); ++idx) {
        const Edge& e = edges[idx];
        if (static_cast<int>(e.size()) != g.uniformity())
            return {false, "edge " + std::to_string(idx + 1) + " does not have " +
                               std::to_string(g.uniformity()) + " vertices"};
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 1 || e[i] > g.vertex_count())
                return {false, "edge " + std::to_string(idx + 1) + " has label " +
                                   std::to_string(e[i]) + " outside [1, " +
                                   std::to_string(g.vertex_count()) + "]"};
            if (i > 0 && e[i] == e[i - 1])
                return {false, "edge " + std::to_string(idx + 1) + " repeats vertex " +
                                   std::to_string(e[i])};
        }
        if (idx > 0 && e == edges[idx - 1])
            return {false, "duplicate edge at position " + std::to_string(idx + 1)};
    }
    return {true, {}};
}

void require_valid(const UniformHypergraph& g) {
    ValidationResult v = validate(g);
    if (!v.ok)
        throw DomainError("invalid hypergraph: " + v.message);
}

bool is_connected(const UniformHypergraph& g) {
    require_valid(g);
    const int n = g.vertex_count();
    const int k = g.edge_count();
    // BFS over the bipartite vertex-edge graph: nodes 0..n-1 are vertices,
    // n..n+k-1 are edges.
    std::vector<std::vector<int>> adj(n + k);
    for (int e = 0; e < k; ++e)
        for (Vertex v : g.edges()[e]) {
            adj[v - 1].push_back(n + e);
            adj[n + e].push_back(v - 1);
        }
    std::vector<char> seen(n + k, 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (int w : adj[queue[head]])
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
    return queue.size() == static_cast<std::size_t>(n + k);
}

ZmMatrix incidence_from_edges(const std::vector<Edge>& edges, int n, Modulus m) {
    ZmMatrix b(edges.size(), n, m);
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (Vertex v : edges[i])
            b.set(i, v - 1, 1);
    return b;
}

ZmMatrix incidence_matrix(const UniformHypergraph& g) {
    require_valid(g);
    return incidence_from_edges(g.edges(), g.vertex_count(), Modulus(g.uniformity()));
}

namespace {

void require_coalescence_operand(const UniformHypergraph& g, Vertex v, const char* which) {
    require_valid(g);
    if (!is_connected(g))
        throw DomainError(std::string(which) + " operand of coalesce is disconnected");
    if (g.vertex_count() < 2)
        throw DomainError(std::string(which) + " operand of coalesce is trivial");
    if (v < 1 || v > g.vertex_count())
        throw DomainError(std::string(which) + " coalescence vertex out of range");
}

} // namespace

std::vector<Edge> coalescence_edges(const UniformHypergraph& g1, Vertex v1,
                                    const UniformHypergraph& g2, Vertex v2) {
    require_coalescence_operand(g1, v1, "first");
    require_coalescence_operand(g2, v2, "second");
    if (g1.uniformity() != g2.uniformity())
        throw DomainError("coalesce: mismatched uniformities");

    const int n1 = g1.vertex_count();
    std::vector<Edge> edges = g1.edges();
    for (const Edge& e : g2.edges()) {
        Edge mapped;
        mapped.reserve(e.size());
        for (Vertex v : e)
            mapped.push_back(v == v2 ? v1 : n1 + v - (v > v2 ? 1 : 0));
        edges.push_back(std::move(mapped));
    }
    return edges;
}

UniformHypergraph coalesce(const UniformHypergraph& g1, Vertex v1,
                           const UniformHypergraph& g2, Vertex v2) {
    std::vector<Edge> edges = coalescence_edges(g1, v1, g2, v2);
    UniformHypergraph g(g1.uniformity(), g1.vertex_count() + g2.vertex_count() - 1,
                        std::move(edges));
    require_valid(g);
    return g;
}

std::vector<Edge> cartesian_product_edges(const UniformHypergraph& g1,
                                          const UniformHypergraph& g2) {
    require_valid(g1);
    require_valid(g2);
    if (g1.uniformity() != g2.uniformity())
        throw DomainError("cartesian_product: mismatched uniformities");

    const int n1 = g1.vertex_count(), n2 = g2.vertex_count();
    auto grid = [n2](Vertex i, Vertex j) { return (i - 1) * n2 + j; };
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n1) * g2.edge_count() +
                  static_cast<std::size_t>(g1.edge_count()) * n2);
    for (Vertex u = 1; u <= n1; ++u)
        for (const Edge& f : g2.edges()) {
            Edge edge;
            edge.reserve(f.size());
            for (Vertex j : f)
                edge.push_back(grid(u, j));
            edges.push_back(std::move(edge));
        }
    for (const Edge& e : g1.edges())
        for (Vertex v = 1; v <= n2; ++v) {
            Edge edge;
            edge.reserve(e.size());
            for (Vertex i : e)
                edge.push_back(grid(i, v));
            edges.push_back(std::move(edge));
        }
    return edges;
}

UniformHypergraph cartesian_product(const UniformHypergraph& g1, const UniformHypergraph& g2) {
    std::vector<Edge> edges = cartesian_product_edges(g1, g2);
    UniformHypergraph g(g1.uniformity(), g1.vertex_count() * g2.vertex_count(),
                        std::move(edges));
    require_valid(g);
    return g;
}

UniformHypergraph cartesian_product_n(std::span<const UniformHypergraph> factors) {
    if (factors.empty())
        throw DomainError("cartesian_product_n: no factors");
    UniformHypergraph acc = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i)
        acc = cartesian_product(acc, factors[i]);
    return acc;
}

namespace {

// Biconnected components of the bipartite incidence graph, iterative Tarjan.
// Components are reported as sets of hyperedge ids; articulation points among
// the vertex nodes are the hypergraph's cut vertices.
struct BipartiteBcc {
    std::vector<std::vector<int>> components; // hyperedge ids per component
    std::vector<char> articulation;           // over vertex nodes only

    BipartiteBcc(const UniformHypergraph& g) {
        const int n = g.vertex_count();
        const int k = g.edge_count();
        const int total = n + k;
        std::vector<std::vector<int>> adj(total);
        for (int e = 0; e < k; ++e)
            for (Vertex v : g.edges()[e]) {
                adj[v - 1].push_back(n + e);
                adj[n + e].push_back(v - 1);
            }
        articulation.assign(n, 0);
        std::vector<int> disc(total, -1), low(total, 0), next_child(total, 0), parent(total, -1);
        std::vector<std::pair<int, int>> edge_stack;
        int timer = 0;
        std::vector<int> stack;

        for (int root = 0; root < total; ++root) {
            if (disc[root] != -1)
                continue;
            int root_children = 0;
            stack.push_back(root);
            disc[root] = low[root] = timer++;
            while (!stack.empty()) {
                int u = stack.back();
                if (next_child[u] < static_cast<int>(adj[u].size())) {
                    int w = adj[u][next_child[u]++];
                    if (disc[w] == -1) {
                        parent[w] = u;
                        if (u == root)
                            ++root_children;
                        edge_stack.emplace_back(u, w);
                        disc[w] = low[w] = timer++;
                        stack.push_back(w);
                    } else if (w != parent[u] && disc[w] < disc[u]) {
                        edge_stack.emplace_back(u, w);
                        low[u] = std::min(low[u], disc[w]);
                    }
                } else {
                    stack.pop_back();
                    int p = parent[u];
                    if (p == -1)
                        continue;
                    low[p] = std::min(low[p], low[u]);
                    if (low[u] >= disc[p]) {
                        // Pop one biconnected component ending at tree edge (p, u).
                        std::vector<int> hyperedges;
                        while (true) {
                            auto [a, b] = edge_stack.back();
                            edge_stack.pop_back();
                            if (a >= n)
                                hyperedges.push_back(a - n);
                            if (b >= n)
                                hyperedges.push_back(b - n);
                            if (a == p && b == u)
                                break;
                        }
                        std::sort(hyperedges.begin(), hyperedges.end());
                        hyperedges.erase(std::unique(hyperedges.begin(), hyperedges.end()),
                                         hyperedges.end());
                        components.push_back(std::move(hyperedges));
                        if (p < n && (p != root || root_children > 1))
                            articulation[p] = 1;
                    }
                }
            }
        }
    }
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

BlockDecomposition blocks(const UniformHypergraph& g) {
    require_valid(g);
    if (!is_connected(g))
        throw DomainError("blocks: hypergraph is disconnected");
    BlockDecomposition out;
    const int k = g.edge_count();
    if (k == 0)
        return out;

    BipartiteBcc bcc(g);
    // A hyperedge's incidences may be split across several bipartite
    // components (pendant vertices form bridges); components sharing a
    // hyperedge belong to the same block, since edge nodes are never cut
    // vertices of the hypergraph.
    UnionFind uf(static_cast<int>(bcc.components.size()));
    std::vector<int> first_component(k, -1);
    for (std::size_t c = 0; c < bcc.components.size(); ++c)
        for (int e : bcc.components[c]) {
            if (first_component[e] == -1)
                first_component[e] = static_cast<int>(c);
            else
                uf.unite(static_cast<int>(c), first_component[e]);
        }

    std::vector<std::vector<int>> groups; // hyperedge ids per block
    std::vector<int> group_of_root(bcc.components.size(), -1);
    std::vector<char> edge_seen(k, 0);
    for (int e = 0; e < k; ++e) { // edge order makes block order deterministic
        if (edge_seen[e])
            continue;
        int root = uf.find(first_component[e]);
        if (group_of_root[root] == -1) {
            group_of_root[root] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        for (std::size_t c = 0; c < bcc.components.size(); ++c) {
            if (uf.find(static_cast<int>(c)) != root)
                continue;
            for (int e2 : bcc.components[c])
                if (!edge_seen[e2]) {
                    edge_seen[e2] = 1;
                    groups[group_of_root[root]].push_back(e2);
                }
        }
    }

    for (std::vector<int>& group : groups) {
        std::sort(group.begin(), group.end());
        std::set<Vertex> verts;
        for (int e : group)
            verts.insert(g.edges()[e].begin(), g.edges()[e].end());
        std::vector<Vertex> vertex_map(verts.begin(), verts.end());
        std::vector<int> local(g.vertex_count() + 1, 0);
        for (std::size_t i = 0; i < vertex_map.size(); ++i)
            local[vertex_map[i]] = static_cast<int>(i) + 1;
        std::vector<Edge> edges;
        edges.reserve(group.size());
        for (int e : group) {
            Edge mapped;
            for (Vertex v : g.edges()[e])
                mapped.push_back(local[v]);
            edges.push_back(std::move(mapped));
        }
        UniformHypergraph block(g.uniformity(), static_cast<int>(vertex_map.size()),
                                std::move(edges));
        require_valid(block);
        out.blocks.push_back({std::move(block), std::move(vertex_map)});
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (bcc.articulation[v])
            out.cut_vertices.push_back(v + 1);
    return out;
}

namespace {

void require_uniformity(int m) {
    if (m < 2)
        throw DomainError("generator: uniformity must be at least 2");
}

} // namespace

UniformHypergraph single_edge(int m) {
    require_uniformity(m);
    Edge e(m);
    std::iota(e.begin(), e.end(), 1);
    return UniformHypergraph(m, m, {e});
}

UniformHypergraph path_hypertree(int m, int edge_count) {
    require_uniformity(m);
    if (edge_count < 1)
        throw DomainError("path_hypertree: edge count must be at least 1");
    std::vector<Edge> edges;
    for (int i = 0; i < edge_count; ++i) {
        Edge e(m);
        std::iota(e.begin(), e.end(), i * (m - 1) + 1);
        edges.push_back(std::move(e));
    }
    return UniformHypergraph(m, edge_count * (m - 1) + 1, std::move(edges));
}

UniformHypergraph random_hypertree(int m, int edge_count, std::uint64_t seed) {
    require_uniformity(m);
    if (edge_count < 1)
        throw DomainError("random_hypertree: edge count must be at least 1");
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    Edge first(m);
    std::iota(first.begin(), first.end(), 1);
    edges.push_back(std::move(first));
    int n = m;
    for (int i = 1; i < edge_count; ++i) {
        // Attach at a uniformly random existing vertex.
        Vertex attach = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n)) + 1;
        Edge e{attach};
        for (int j = 0; j < m - 1; ++j)
            e.push_back(++n);
        edges.push_back(std::move(e));
    }
    return UniformHypergraph(m, n, std::move(edges));
}

UniformHypergraph complete_hypergraph(int m, int n) {
    require_uniformity(m);
    if (n < m + 1)
        throw DomainError("complete: need at least m + 1 vertices");
    std::vector<Edge> edges;
    Edge pick(m);
    std::iota(pick.begin(), pick.end(), 1);
    while (true) {
        edges.push_back(pick);
        // next m-combination of 1..n in lexicographic order
        int i = m - 1;
        while (i >= 0 && pick[i] == n - (m - 1 - i))
            --i;
        if (i < 0)
            break;
        ++pick[i];
        for (int j = i + 1; j < m; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return UniformHypergraph(m, n, std::move(edges));
}

UniformHypergraph loose_cycle(int m, int edge_count) {
    require_uniformity(m);
    if (edge_count < 2 || edge_count * (m - 1) < 3)
        throw DomainError("loose_cycle: need s >= 2 edges and s*(m-1) >= 3 vertices");
    const int n = edge_count * (m - 1);
    std::vector<Edge> edges;
    for (int i = 0; i < edge_count; ++i) {
        Edge e;
        int anchor = i * (m - 1) + 1;
        int next_anchor = (i + 1) % edge_count * (m - 1) + 1;
        e.push_back(anchor);
        for (int j = 1; j <= m - 2; ++j)
            e.push_back(anchor + j);
        e.push_back(next_anchor);
        edges.push_back(std::move(e));
    }
    return UniformHypergraph(m, n, std::move(edges));
}

UniformHypergraph generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
    case GeneratorKind::single_edge:
        return single_edge(spec.m);
    case GeneratorKind::path_hypertree:
        return path_hypertree(spec.m, spec.edges);
    case GeneratorKind::random_hypertree:
        return random_hypertree(spec.m, spec.edges, spec.seed);
    case GeneratorKind::complete:
        return complete_hypergraph(spec.m, spec.vertices);
    case GeneratorKind::loose_cycle:
        return loose_cycle(spec.m, spec.edges);
    }
    throw DomainError("generate: unknown generator kind");
}

} // namespace hyperindex

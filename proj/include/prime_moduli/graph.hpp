#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prime_moduli/config.hpp"

namespace prime_moduli {

/* A graph in the half-edge formalism: a quadruple (V, H, r, i) with r the
   root map and i a fixed-point-free involution pairing half-edges into
   edges. Ids are dense integers; instances are immutable after validation. */
struct Graph {
    int num_vertices = 0;
    std::vector<int> root;       /* half-edge -> vertex */
    std::vector<int> involution; /* half-edge -> partner half-edge */

    int num_half_edges() const { return static_cast<int>(root.size()); }
    int num_edges() const { return num_half_edges() / 2; }

    /* Edges as sorted pairs (h, involution(h)) with h < involution(h),
       listed by their smaller half-edge; the edge id is the list index. */
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (int h = 0; h < num_half_edges(); ++h)
            if (h < involution[h])
                e.emplace_back(h, involution[h]);
        return e;
    }

    int valence(int v) const {
        int d = 0;
        for (int x : root)
            if (x == v)
                ++d;
        return d;
    }

    std::vector<int> half_edges_at(int v) const {
        std::vector<int> hs;
        for (int h = 0; h < num_half_edges(); ++h)
            if (root[h] == v)
                hs.push_back(h);
        return hs;
    }

    bool connected() const {
        if (num_vertices == 0)
            return false;
        std::vector<char> seen(num_vertices, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int found = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int h = 0; h < num_half_edges(); ++h) {
                if (root[h] != v)
                    continue;
                int w = root[involution[h]];
                if (!seen[w]) {
                    seen[w] = 1;
                    ++found;
                    stack.push_back(w);
                }
            }
        }
        return found == num_vertices;
    }

    int first_betti_number() const { return num_edges() - num_vertices + 1; }

    void validate() const {
        int n = num_half_edges();
        if (n % 2 != 0)
            throw invalid_input("odd number of half-edges");
        if (static_cast<int>(involution.size()) != n)
            throw invalid_input("involution size mismatch");
        for (int h = 0; h < n; ++h) {
            if (root[h] < 0 || root[h] >= num_vertices)
                throw invalid_input("root out of range");
            int p = involution[h];
            if (p < 0 || p >= n)
                throw invalid_input("involution out of range");
            if (p == h)
                throw invalid_input("involution has a fixed point");
            if (involution[p] != h)
                throw invalid_input("involution is not an involution");
        }
    }

    bool operator==(const Graph& o) const {
        return num_vertices == o.num_vertices && root == o.root && involution == o.involution;
    }
    bool operator<(const Graph& o) const {
        return std::tie(num_vertices, root, involution) <
               std::tie(o.num_vertices, o.root, o.involution);
    }
};

/* An object of Gr_{g,n}: a connected rank-g graph with an injective marking
   of n vertices such that every unmarked vertex is at least trivalent. */
struct MarkedGraph {
    Graph graph;
    int genus = 0;
    std::vector<int> marking; /* marking[i-1] = vertex carrying label i */

    int n_marks() const { return static_cast<int>(marking.size()); }

    bool is_marked(int v) const {
        return std::find(marking.begin(), marking.end(), v) != marking.end();
    }

    void validate() const {
        graph.validate();
        if (!graph.connected())
            throw invalid_input("graph is not connected");
        if (graph.first_betti_number() != genus)
            throw invalid_input("first Betti number does not match genus");
        std::set<int> seen;
        for (int v : marking) {
            if (v < 0 || v >= graph.num_vertices)
                throw invalid_input("marking out of range");
            if (!seen.insert(v).second)
                throw invalid_input("marking is not injective");
        }
        for (int v = 0; v < graph.num_vertices; ++v)
            if (!is_marked(v) && graph.valence(v) < 3)
                throw invalid_input("unmarked vertex of valence < 3");
    }

    bool operator==(const MarkedGraph& o) const {
        return genus == o.genus && marking == o.marking && graph == o.graph;
    }
    bool operator<(const MarkedGraph& o) const {
        return std::tie(genus, marking, graph) < std::tie(o.genus, o.marking, o.graph);
    }
};

using GraphRef = std::shared_ptr<const MarkedGraph>;

inline GraphRef make_graph_ref(MarkedGraph g) {
    g.validate();
    return std::make_shared<const MarkedGraph>(std::move(g));
}

/* An edge is redundant if deleting it splits the graph into two components,
   one of which carries no marked vertex. (Loops never split anything.) */
inline bool edge_is_redundant(const MarkedGraph& mg, int edge_id) {
    auto es = mg.graph.edges();
    auto [h, hd] = es[edge_id];
    int u = mg.graph.root[h], w = mg.graph.root[hd];
    if (u == w)
        return false;
    /* component of u in the graph minus this edge */
    std::vector<char> seen(mg.graph.num_vertices, 0);
    std::vector<int> stack{u};
    seen[u] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int x = 0; x < mg.graph.num_half_edges(); ++x) {
            if (mg.graph.root[x] != v || x == h || x == hd)
                continue;
            int y = mg.graph.root[mg.graph.involution[x]];
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
        }
    }
    if (seen[w])
        return false; /* still connected: not separating */
    bool side_u_marked = false, side_w_marked = false;
    for (int v : mg.marking)
        (seen[v] ? side_u_marked : side_w_marked) = true;
    return !side_u_marked || !side_w_marked;
}

inline bool has_redundant_edge(const MarkedGraph& mg) {
    for (int e = 0; e < mg.graph.num_edges(); ++e)
        if (edge_is_redundant(mg, e))
            return true;
    return false;
}

/* Builds a graph from per-edge endpoint pairs; half-edges 2k, 2k+1 belong to
   edge k with roots (u_k, v_k). */
inline Graph graph_from_edge_list(int num_vertices, const std::vector<std::pair<int, int>>& ends) {
    Graph g;
    g.num_vertices = num_vertices;
    for (auto [u, v] : ends) {
        int h = g.num_half_edges();
        g.root.push_back(u);
        g.root.push_back(v);
        g.involution.push_back(h + 1);
        g.involution.push_back(h);
    }
    g.validate();
    return g;
}

/* Built-in genus-2 graphs of the extended example. */
inline GraphRef builtin_theta() {
    MarkedGraph mg;
    mg.graph = graph_from_edge_list(2, {{0, 1}, {0, 1}, {0, 1}});
    mg.genus = 2;
    return make_graph_ref(std::move(mg));
}

inline GraphRef builtin_rose2() {
    MarkedGraph mg;
    mg.graph = graph_from_edge_list(1, {{0, 0}, {0, 0}});
    mg.genus = 2;
    return make_graph_ref(std::move(mg));
}

inline GraphRef builtin_graph(const std::string& name) {
    if (name == "theta")
        return builtin_theta();
    if (name == "rose2")
        return builtin_rose2();
    throw invalid_input("unknown built-in graph: " + name);
}

} // namespace prime_moduli

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "prime_moduli/graph.hpp"

namespace prime_moduli {

/* Multiplicity matrix: mult[u][v] = number of edges between u and v for
   u != v, and mult[v][v] = number of loops at v. */
inline std::vector<std::vector<int>> multiplicity_matrix(const Graph& g) {
    std::vector<std::vector<int>> m(g.num_vertices, std::vector<int>(g.num_vertices, 0));
    for (auto [h, hd] : g.edges()) {
        int u = g.root[h], v = g.root[hd];
        if (u == v)
            m[u][u] += 1;
        else {
            m[u][v] += 1;
            m[v][u] += 1;
        }
    }
    return m;
}

namespace detail {

/* Column-major upper-triangular adjacency encoding: for k = 0..V-1 the cells
   (0,k), (1,k), ..., (k,k). Assigning vertices to positions one at a time
   reveals exactly one new column, so prefixes can be compared during the
   search for the lexicographically minimal encoding. */
struct CanonSearch {
    const std::vector<std::vector<int>>& mult;
    int num_vertices;
    int num_marked;
    std::vector<int> assigned;  /* position -> original vertex */
    std::vector<char> used;     /* original vertex -> bool */
    std::vector<int> best;      /* best full encoding so far */
    std::vector<int> best_perm; /* position -> original vertex for best */
    std::vector<int> current;   /* current partial encoding */

    void run() {
        extend();
    }

    void extend() {
        int pos = static_cast<int>(assigned.size());
        if (pos == num_vertices) {
            if (best.empty() || current < best) {
                best = current;
                best_perm = assigned;
            }
            return;
        }
        for (int v = 0; v < num_vertices; ++v) {
            if (used[v])
                continue;
            std::size_t mark = current.size();
            for (int i = 0; i < pos; ++i)
                current.push_back(mult[assigned[i]][v]);
            current.push_back(mult[v][v]);
            /* prune only when the whole current prefix already exceeds the
               best encoding lexicographically */
            bool keep = true;
            if (!best.empty()) {
                int cmp = 0;
                for (std::size_t i = 0; i < current.size(); ++i) {
                    if (current[i] != best[i]) {
                        cmp = current[i] < best[i] ? -1 : 1;
                        break;
                    }
                }
                keep = cmp <= 0;
            }
            if (keep) {
                used[v] = 1;
                assigned.push_back(v);
                extend();
                assigned.pop_back();
                used[v] = 0;
            }
            current.resize(mark);
        }
    }
};

} // namespace detail

struct Canonical {
    MarkedGraph graph;           /* the canonical representative */
    std::vector<int> vertex_map; /* original vertex -> canonical vertex */
    std::vector<int> half_map;   /* original half-edge -> canonical half-edge */
};

/* Canonical labelling. Marked vertices are pinned to positions 0..n-1 in
   marking order (isomorphisms of marked graphs fix the marking pointwise);
   unmarked vertices are assigned the positions that minimise the adjacency
   encoding. Half-edge ids are then rebuilt densely from the sorted edge
   cells, so equal canonical graphs are bit-identical. */
inline Canonical canonical_form(const MarkedGraph& mg) {
    const Graph& g = mg.graph;
    int V = g.num_vertices;
    int n = mg.n_marks();
    auto mult = multiplicity_matrix(g);

    detail::CanonSearch search{mult, V, n, {}, std::vector<char>(V, 0), {}, {}, {}};
    for (int i = 0; i < n; ++i) {
        search.assigned.push_back(mg.marking[i]);
        search.used[mg.marking[i]] = 1;
        for (int j = 0; j < i; ++j)
            search.current.push_back(mult[mg.marking[j]][mg.marking[i]]);
        search.current.push_back(mult[mg.marking[i]][mg.marking[i]]);
    }
    search.run();

    const std::vector<int>& pos_to_orig = search.best_perm;
    std::vector<int> orig_to_pos(V);
    for (int p = 0; p < V; ++p)
        orig_to_pos[pos_to_orig[p]] = p;

    /* canonical edge list: cells in row-major order over positions */
    std::vector<std::pair<int, int>> ends;
    /* original edges grouped by canonical cell, ordered by smaller half id */
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> cell_edges;
    for (auto [h, hd] : g.edges()) {
        int a = orig_to_pos[g.root[h]], b = orig_to_pos[g.root[hd]];
        if (a > b)
            std::swap(a, b);
        cell_edges[{a, b}].push_back({h, hd});
    }
    std::vector<int> half_map(g.num_half_edges(), -1);
    for (auto& [cell, list] : cell_edges) {
        for (auto [h, hd] : list) {
            int k = static_cast<int>(ends.size());
            ends.push_back(cell);
            /* fresh halves 2k, 2k+1 with roots (cell.first, cell.second) */
            int a = orig_to_pos[g.root[h]];
            if (cell.first == cell.second) {
                half_map[std::min(h, hd)] = 2 * k;
                half_map[std::max(h, hd)] = 2 * k + 1;
            } else if (a == cell.first) {
                half_map[h] = 2 * k;
                half_map[hd] = 2 * k + 1;
            } else {
                half_map[h] = 2 * k + 1;
                half_map[hd] = 2 * k;
            }
        }
    }

    Canonical result;
    result.graph.graph = graph_from_edge_list(V, ends);
    result.graph.genus = mg.genus;
    result.graph.marking.resize(n);
    for (int i = 0; i < n; ++i)
        result.graph.marking[i] = i;
    result.graph.validate();
    result.vertex_map = orig_to_pos;
    result.half_map = half_map;
    return result;
}

inline bool is_isomorphic(const MarkedGraph& a, const MarkedGraph& b) {
    if (a.genus != b.genus || a.n_marks() != b.n_marks() ||
        a.graph.num_vertices != b.graph.num_vertices ||
        a.graph.num_half_edges() != b.graph.num_half_edges())
        return false;
    return canonical_form(a).graph == canonical_form(b).graph;
}

} // namespace prime_moduli

#pragma once

#include <set>
#include <vector>

#include "prime_moduli/canonical.hpp"
#include "prime_moduli/graph.hpp"

namespace prime_moduli {

namespace detail {

/* Backtracking generator for connected multigraphs with a prescribed number
   of edges: fills the upper triangle of the multiplicity matrix row by row.
   Vertices 0..n-1 carry the markings (any valence), the rest must end up at
   least trivalent. Among unmarked vertices the finished valences are forced
   to be non-increasing, which discards many relabellings up front; the
   survivors are still deduplicated through canonical_form by the caller. */
struct GraphGen {
    int V, E, n;
    long cap;
    std::vector<std::vector<int>>& mult;
    std::vector<int>& degree;
    int placed = 0;
    long emitted = 0;
    std::vector<std::vector<std::vector<int>>>& out;

    void add_one(int i, int j) {
        if (i == j) {
            mult[i][i] += 1;
            degree[i] += 2;
        } else {
            mult[i][j] += 1;
            mult[j][i] += 1;
            degree[i] += 1;
            degree[j] += 1;
        }
        placed += 1;
    }

    void remove_one(int i, int j) {
        if (i == j) {
            mult[i][i] -= 1;
            degree[i] -= 2;
        } else {
            mult[i][j] -= 1;
            mult[j][i] -= 1;
            degree[i] -= 1;
            degree[j] -= 1;
        }
        placed -= 1;
    }

    void fill(int i, int j) {
        if (i == V) {
            if (placed == E)
                emit();
            return;
        }
        if (j == V) {
            /* row i complete: degree[i] is final */
            if (i >= n && degree[i] < 3)
                return;
            if (i > n && degree[i - 1] < degree[i])
                return; /* enforce sorted unmarked valences */
            /* feasibility: remaining minimum degree demand vs. edge supply */
            int remaining = E - placed;
            int deficit = 0;
            for (int v = i + 1; v < V; ++v)
                if (v >= n && degree[v] < 3)
                    deficit += 3 - degree[v];
            if (deficit > 2 * remaining)
                return;
            fill(i + 1, i + 1);
            return;
        }
        int room = E - placed;
        fill(i, j + 1); /* multiplicity 0 */
        for (int m = 1; m <= room; ++m) {
            add_one(i, j);
            fill(i, j + 1);
        }
        for (int m = 1; m <= room; ++m)
            remove_one(i, j);
    }

    void emit() {
        /* connectivity over the multiplicity matrix */
        std::vector<char> seen(V, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int found = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < V; ++w)
                if (!seen[w] && mult[v][w] > 0) {
                    seen[w] = 1;
                    ++found;
                    stack.push_back(w);
                }
        }
        if (found != V)
            return;
        if (++emitted > cap)
            throw resource_cap("graph enumeration exceeded the configured cap");
        out.push_back(mult);
    }
};

inline MarkedGraph graph_from_multiplicity(const std::vector<std::vector<int>>& mult, int g,
                                           int n) {
    int V = static_cast<int>(mult.size());
    std::vector<std::pair<int, int>> ends;
    for (int i = 0; i < V; ++i)
        for (int j = i; j < V; ++j)
            for (int m = 0; m < mult[i][j]; ++m)
                ends.push_back({i, j});
    MarkedGraph mg;
    mg.graph = graph_from_edge_list(V, ends);
    mg.genus = g;
    for (int i = 0; i < n; ++i)
        mg.marking.push_back(i);
    return mg;
}

} // namespace detail

/* All isomorphism classes of Gr_{g,n} (canonical representatives), bounded
   by the edge-count window (g-1)+n <= |E| <= 3(g-1)+2n. With no_redundant,
   restricts to the homotopy-final subcategory Gr^nr. */
inline std::vector<GraphRef> enumerate_graphs(int g, int n, bool no_redundant,
                                              const Config& cfg = default_config()) {
    if (g < 0 || n < 0 || g + n < 1)
        throw invalid_input("enumerate_graphs requires g >= 0, n >= 0, g + n >= 1");
    int e_lo = std::max(1, (g - 1) + n);
    int e_hi = 3 * (g - 1) + 2 * n;
    std::set<MarkedGraph> found;
    std::vector<GraphRef> result;
    for (int E = e_lo; E <= e_hi; ++E) {
        int V = E - g + 1;
        if (V < std::max(1, n))
            continue;
        std::vector<std::vector<std::vector<int>>> raw;
        std::vector<std::vector<int>> mult(V, std::vector<int>(V, 0));
        std::vector<int> degree(V, 0);
        detail::GraphGen gen{V, E, n, cfg.iso_class_cap * 64, mult, degree, 0, 0, raw};
        gen.fill(0, 0);
        std::vector<MarkedGraph> canon_batch;
        for (auto& m : raw) {
            MarkedGraph mg = detail::graph_from_multiplicity(m, g, n);
            if (no_redundant && has_redundant_edge(mg))
                continue;
            canon_batch.push_back(canonical_form(mg).graph);
        }
        std::sort(canon_batch.begin(), canon_batch.end());
        for (auto& cg : canon_batch) {
            if (found.insert(cg).second) {
                if (static_cast<long>(found.size()) > cfg.iso_class_cap)
                    throw resource_cap("isomorphism class count exceeded the configured cap");
                result.push_back(std::make_shared<const MarkedGraph>(cg));
            }
        }
    }
    return result;
}

} // namespace prime_moduli

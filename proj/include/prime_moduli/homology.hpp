#pragma once

#include <vector>

#include "prime_moduli/graph.hpp"
#include "prime_moduli/linalg.hpp"
#include "prime_moduli/morphism.hpp"

namespace prime_moduli {

/* Relative cellular homology data of (Gamma, sigma). C_1 has one generator
   per edge, oriented by the smaller half-edge h (so [e] = [h] = -[h^dagger]
   and the boundary is d[e] = r(h) - r(h^dagger)); C_0 is spanned by the
   unmarked vertices (marked ones are quotiented away). */
struct RelativeHomology {
    Mat boundary;                 /* rows: unmarked vertices, cols: edges */
    std::vector<int> row_vertex;  /* row index -> vertex id */
    std::vector<Vec> cycle_basis; /* each: coefficient vector over edges */
    std::vector<int> tree_edges;  /* the deterministic spanning tree */
    /* lifting data: how each basis vector was produced */
    struct Provenance {
        enum Kind { fundamental_cycle, marked_path } kind;
        int edge = -1; /* the non-tree edge for fundamental cycles */
        int mark = -1; /* marked index i for the path sigma(1) -> sigma(i) */
    };
    std::vector<Provenance> provenance;

    int rank() const { return static_cast<int>(cycle_basis.size()); }
};

namespace detail {

/* BFS spanning tree from vertex 0, edges explored in id order. Returns for
   each vertex the (parent vertex, edge id, +1/-1 orientation of the edge as
   traversed parent -> vertex) or edge -1 at the base point. */
struct SpanningTree {
    std::vector<int> parent, via_edge, direction;
    std::vector<int> tree_edges;
};

inline SpanningTree spanning_tree(const Graph& g) {
    auto es = g.edges();
    SpanningTree t;
    t.parent.assign(g.num_vertices, -1);
    t.via_edge.assign(g.num_vertices, -1);
    t.direction.assign(g.num_vertices, 0);
    std::vector<char> seen(g.num_vertices, 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (int e = 0; e < static_cast<int>(es.size()); ++e) {
            auto [h, hd] = es[e];
            int a = g.root[h], b = g.root[hd];
            int w = -1, dir = 0;
            if (a == v && !seen[b]) {
                w = b;
                dir = +1; /* traversed tail -> head: +[e] */
            } else if (b == v && !seen[a]) {
                w = a;
                dir = -1;
            }
            if (w >= 0) {
                seen[w] = 1;
                t.parent[w] = v;
                t.via_edge[w] = e;
                t.direction[w] = dir;
                t.tree_edges.push_back(e);
                queue.push_back(w);
            }
        }
    }
    return t;
}

/* Signed edge vector of the tree path from a to b. */
inline Vec tree_path(const Graph& g, const SpanningTree& t, int a, int b) {
    Vec path(g.num_edges(), Rat(0));
    /* walk both to the root, collecting signed steps, then cancel */
    auto walk = [&](int v, int sign) {
        while (t.via_edge[v] != -1) {
            /* step parent -> v has orientation t.direction[v]; walking v ->
               parent contributes the negative of that */
            path[t.via_edge[v]] += Rat(-sign * t.direction[v]);
            v = t.parent[v];
        }
    };
    /* path(a -> b) = walk(a -> root) + walk(root -> b) */
    walk(a, +1);
    walk(b, -1);
    return path;
}

} // namespace detail

/* Boundary matrix and a deterministic basis of ker d = H_1(Gamma, sigma):
   fundamental cycles of the BFS spanning tree and, when n >= 2, the tree
   paths from sigma(1) to the other marked vertices. For a non-loop non-tree
   edge e the cycle is tree_path(tail -> head) - [e]; for a loop it is [e].
   (These orientation choices reproduce the basis used for Theta and R_2 in
   the genus-2 example.) */
inline RelativeHomology relative_homology(const GraphRef& mg) {
    const Graph& g = mg->graph;
    auto es = g.edges();
    RelativeHomology out;
    for (int v = 0; v < g.num_vertices; ++v)
        if (!mg->is_marked(v))
            out.row_vertex.push_back(v);
    std::vector<int> vrow(g.num_vertices, -1);
    for (std::size_t r = 0; r < out.row_vertex.size(); ++r)
        vrow[out.row_vertex[r]] = static_cast<int>(r);
    out.boundary = Mat(out.row_vertex.size(), es.size());
    for (int e = 0; e < static_cast<int>(es.size()); ++e) {
        auto [h, hd] = es[e];
        if (vrow[g.root[h]] >= 0)
            out.boundary(vrow[g.root[h]], e) += 1;
        if (vrow[g.root[hd]] >= 0)
            out.boundary(vrow[g.root[hd]], e) -= 1;
    }
    auto tree = detail::spanning_tree(g);
    out.tree_edges = tree.tree_edges;
    std::vector<char> in_tree(es.size(), 0);
    for (int e : tree.tree_edges)
        in_tree[e] = 1;
    for (int e = 0; e < static_cast<int>(es.size()); ++e) {
        if (in_tree[e])
            continue;
        auto [h, hd] = es[e];
        int tail = g.root[h], head = g.root[hd];
        Vec cycle;
        if (tail == head) {
            cycle.assign(es.size(), Rat(0));
            cycle[e] = 1;
        } else {
            cycle = detail::tree_path(g, tree, tail, head);
            cycle[e] -= 1;
        }
        out.cycle_basis.push_back(std::move(cycle));
        out.provenance.push_back({RelativeHomology::Provenance::fundamental_cycle, e, -1});
    }
    for (int i = 1; i < mg->n_marks(); ++i) {
        Vec path = detail::tree_path(g, tree, mg->marking[0], mg->marking[i]);
        out.cycle_basis.push_back(std::move(path));
        out.provenance.push_back({RelativeHomology::Provenance::marked_path, -1, i + 1});
    }
    return out;
}

/* Chain-level pushforward on C_1: collapsed edges die, surviving edges map
   with the sign comparing the chosen orientations. */
inline Mat chain_map_c1(const GraphMorphism& f) {
    const Graph& s = f.source->graph;
    const Graph& t = f.target->graph;
    auto src_edges = s.edges();
    auto tgt_edges = t.edges();
    std::vector<int> positive_half(t.num_half_edges(), 0);
    std::map<int, int> half_to_edge;
    for (int e = 0; e < static_cast<int>(tgt_edges.size()); ++e) {
        half_to_edge[tgt_edges[e].first] = e;
        half_to_edge[tgt_edges[e].second] = e;
    }
    Mat m(tgt_edges.size(), src_edges.size());
    for (int e = 0; e < static_cast<int>(src_edges.size()); ++e) {
        int h = src_edges[e].first; /* positive orientation of e */
        if (f.half_collapsed(h))
            continue;
        int y = f.half_to_half(h);
        int te = half_to_edge.at(y);
        m(te, e) = (y == tgt_edges[te].first) ? 1 : -1;
    }
    return m;
}

/* Matrix of f_*: H_1(source, sigma) -> H_1(target, sigma) in the chosen
   cycle bases. */
inline Mat h1_pushforward(const GraphMorphism& f, const RelativeHomology& src,
                          const RelativeHomology& tgt) {
    Mat c1 = chain_map_c1(f);
    Mat basis_tgt(tgt.boundary.cols, tgt.cycle_basis.size());
    for (std::size_t j = 0; j < tgt.cycle_basis.size(); ++j)
        for (std::size_t i = 0; i < tgt.boundary.cols; ++i)
            basis_tgt(i, j) = tgt.cycle_basis[j][i];
    Mat m(tgt.cycle_basis.size(), src.cycle_basis.size());
    for (std::size_t j = 0; j < src.cycle_basis.size(); ++j) {
        Vec image = mat_apply(c1, src.cycle_basis[j]);
        auto x = solve(basis_tgt, image);
        if (!x)
            throw error("h1_pushforward: image cycle not in the target cycle space");
        for (std::size_t i = 0; i < x->size(); ++i)
            m(i, j) = (*x)[i];
    }
    return m;
}

} // namespace prime_moduli

#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "prime_moduli/canonical.hpp"
#include "prime_moduli/graph.hpp"

namespace prime_moduli {

/* A morphism of marked graphs: vertices map to vertices; a half-edge maps
   either to a half-edge (compatibly with root and involution) or, when its
   edge is collapsed, to the image vertex of its root. half_image stores a
   half-edge id >= 0 or -(v+1) for "collapsed to vertex v". */
struct GraphMorphism {
    GraphRef source, target;
    std::vector<int> vertex_image;
    std::vector<int> half_image;

    static int encode_vertex(int v) { return -(v + 1); }
    bool half_collapsed(int h) const { return half_image[h] < 0; }
    int half_to_half(int h) const { return half_image[h]; }
    int half_to_vertex(int h) const { return -half_image[h] - 1; }

    bool same_maps(const GraphMorphism& o) const {
        return vertex_image == o.vertex_image && half_image == o.half_image;
    }

    bool is_identity() const {
        for (int v = 0; v < source->graph.num_vertices; ++v)
            if (vertex_image[v] != v)
                return false;
        for (int h = 0; h < source->graph.num_half_edges(); ++h)
            if (half_image[h] != h)
                return false;
        return source.get() == target.get() || *source == *target;
    }

    std::vector<int> collapsed_edges() const {
        std::vector<int> out;
        auto es = source->graph.edges();
        for (int e = 0; e < static_cast<int>(es.size()); ++e)
            if (half_collapsed(es[e].first))
                out.push_back(e);
        return out;
    }

    bool is_isomorphism() const {
        return source->graph.num_edges() == target->graph.num_edges();
    }

    void validate() const;
};

inline GraphMorphism identity_morphism(const GraphRef& g) {
    GraphMorphism f;
    f.source = g;
    f.target = g;
    f.vertex_image.resize(g->graph.num_vertices);
    std::iota(f.vertex_image.begin(), f.vertex_image.end(), 0);
    f.half_image.resize(g->graph.num_half_edges());
    std::iota(f.half_image.begin(), f.half_image.end(), 0);
    return f;
}

/* Inverse of an isomorphism (all half-edges survive). */
inline GraphMorphism inverse_isomorphism(const GraphMorphism& m) {
    GraphMorphism inv;
    inv.source = m.target;
    inv.target = m.source;
    inv.vertex_image.resize(m.vertex_image.size());
    for (std::size_t v = 0; v < m.vertex_image.size(); ++v)
        inv.vertex_image[m.vertex_image[v]] = static_cast<int>(v);
    inv.half_image.resize(m.half_image.size());
    for (std::size_t h = 0; h < m.half_image.size(); ++h) {
        if (m.half_image[h] < 0)
            throw invalid_input("inverse_isomorphism: morphism collapses edges");
        inv.half_image[m.half_image[h]] = static_cast<int>(h);
    }
    return inv;
}

inline GraphMorphism compose(const GraphMorphism& g, const GraphMorphism& f) {
    /* g after f */
    if (!(*f.target == *g.source))
        throw invalid_input("compose: target/source mismatch");
    GraphMorphism h;
    h.source = f.source;
    h.target = g.target;
    h.vertex_image.resize(f.vertex_image.size());
    for (std::size_t v = 0; v < f.vertex_image.size(); ++v)
        h.vertex_image[v] = g.vertex_image[f.vertex_image[v]];
    h.half_image.resize(f.half_image.size());
    for (std::size_t x = 0; x < f.half_image.size(); ++x) {
        if (f.half_collapsed(x))
            h.half_image[x] = GraphMorphism::encode_vertex(g.vertex_image[f.half_to_vertex(x)]);
        else
            h.half_image[x] = g.half_image[f.half_to_half(x)];
    }
    return h;
}

inline void GraphMorphism::validate() const {
    const Graph& s = source->graph;
    const Graph& t = target->graph;
    if (static_cast<int>(vertex_image.size()) != s.num_vertices ||
        static_cast<int>(half_image.size()) != s.num_half_edges())
        throw invalid_input("morphism: size mismatch");
    for (int v = 0; v < s.num_vertices; ++v)
        if (vertex_image[v] < 0 || vertex_image[v] >= t.num_vertices)
            throw invalid_input("morphism: vertex image out of range");
    for (int i = 0; i < source->n_marks(); ++i)
        if (vertex_image[source->marking[i]] != target->marking[i])
            throw invalid_input("morphism: marking not preserved");
    std::vector<int> half_preimage(t.num_half_edges(), -1);
    for (int h = 0; h < s.num_half_edges(); ++h) {
        if (!half_collapsed(h)) {
            int y = half_to_half(h);
            if (y < 0 || y >= t.num_half_edges())
                throw invalid_input("morphism: half-edge image out of range");
            if (half_collapsed(s.involution[h]) || half_to_half(s.involution[h]) != t.involution[y])
                throw invalid_input("morphism: involution not preserved");
            if (t.root[y] != vertex_image[s.root[h]])
                throw invalid_input("morphism: root not preserved");
            if (half_preimage[y] != -1)
                throw invalid_input("morphism: half-edge preimage is not a single half-edge");
            half_preimage[y] = h;
        } else {
            if (half_to_vertex(h) != vertex_image[s.root[h]])
                throw invalid_input("morphism: collapsed half-edge not sent to its root image");
            if (half_collapsed(s.involution[h]) == false)
                throw invalid_input("morphism: edge collapsed on one side only");
            if (half_to_vertex(s.involution[h]) != half_to_vertex(h))
                throw invalid_input("morphism: collapsed edge endpoints map to distinct vertices");
        }
    }
    for (int y = 0; y < t.num_half_edges(); ++y)
        if (half_preimage[y] == -1)
            throw invalid_input("morphism: some half-edge has no preimage");
    /* preimage of every target vertex must be a tree */
    for (int w = 0; w < t.num_vertices; ++w) {
        std::vector<int> verts;
        for (int v = 0; v < s.num_vertices; ++v)
            if (vertex_image[v] == w)
                verts.push_back(v);
        if (verts.empty())
            throw invalid_input("morphism: vertex with empty preimage");
        int internal_edges = 0;
        for (auto [h, hd] : s.edges())
            if (half_collapsed(h) && half_to_vertex(h) == w)
                ++internal_edges;
        if (internal_edges != static_cast<int>(verts.size()) - 1)
            throw invalid_input("morphism: vertex preimage is not a tree (edge count)");
        /* connectivity of the preimage through collapsed edges */
        std::map<int, int> index;
        for (std::size_t i = 0; i < verts.size(); ++i)
            index[verts[i]] = static_cast<int>(i);
        std::vector<char> seen(verts.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int found = 1;
        while (!stack.empty()) {
            int vi = stack.back();
            stack.pop_back();
            int v = verts[vi];
            for (int h = 0; h < s.num_half_edges(); ++h) {
                if (s.root[h] != v || !half_collapsed(h) || half_to_vertex(h) != w)
                    continue;
                int u = s.root[s.involution[h]];
                auto it = index.find(u);
                if (it != index.end() && !seen[it->second]) {
                    seen[it->second] = 1;
                    ++found;
                    stack.push_back(it->second);
                }
            }
        }
        if (found != static_cast<int>(verts.size()))
            throw invalid_input("morphism: vertex preimage is not connected");
    }
}

/* ------------------------------------------------------------------ */
/* Edge contraction                                                    */
/* ------------------------------------------------------------------ */

/* Contracts the edge subset F (which must be a forest whose trees contain at
   most one marked vertex each) and returns the quotient together with the
   collapse morphism. */
inline std::pair<GraphRef, GraphMorphism> contract_edges(const GraphRef& mg,
                                                         const std::vector<int>& edge_set) {
    const Graph& g = mg->graph;
    auto es = g.edges();
    std::vector<char> in_f(es.size(), 0);
    for (int e : edge_set) {
        if (e < 0 || e >= static_cast<int>(es.size()))
            throw invalid_input("contract_edges: edge id out of range");
        in_f[e] = 1;
    }
    /* union-find over vertices; loops and cycles in F are rejected */
    std::vector<int> parent(g.num_vertices);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t e = 0; e < es.size(); ++e) {
        if (!in_f[e])
            continue;
        int u = find(g.root[es[e].first]);
        int v = find(g.root[es[e].second]);
        if (u == v)
            throw invalid_input("contract_edges: not a forest");
        parent[u] = v;
    }
    /* at most one marked vertex per tree */
    std::map<int, int> tree_mark;
    for (int v : mg->marking) {
        int r = find(v);
        if (tree_mark.count(r))
            throw invalid_input("contract_edges: marking conflict (two marks in one tree)");
        tree_mark[r] = v;
    }
    /* quotient vertex ids: dense, ordered by least original vertex */
    std::vector<int> least(g.num_vertices, -1);
    for (int v = 0; v < g.num_vertices; ++v) {
        int r = find(v);
        if (least[r] == -1 || v < least[r])
            least[r] = v;
    }
    std::vector<int> reps;
    for (int v = 0; v < g.num_vertices; ++v)
        if (find(v) == v)
            reps.push_back(v);
    std::sort(reps.begin(), reps.end(), [&](int a, int b) { return least[a] < least[b]; });
    std::map<int, int> rep_to_new;
    for (std::size_t i = 0; i < reps.size(); ++i)
        rep_to_new[reps[i]] = static_cast<int>(i);
    std::vector<int> vmap(g.num_vertices);
    for (int v = 0; v < g.num_vertices; ++v)
        vmap[v] = rep_to_new[find(v)];

    /* surviving half-edges keep their relative order */
    std::vector<int> hmap(g.num_half_edges(), -1);
    Graph q;
    q.num_vertices = static_cast<int>(reps.size());
    for (int h = 0; h < g.num_half_edges(); ++h) {
        bool collapsed = false;
        for (std::size_t e = 0; e < es.size(); ++e)
            if (in_f[e] && (es[e].first == h || es[e].second == h))
                collapsed = true;
        if (!collapsed) {
            hmap[h] = static_cast<int>(q.root.size());
            q.root.push_back(vmap[g.root[h]]);
            q.involution.push_back(-1);
        }
    }
    for (int h = 0; h < g.num_half_edges(); ++h)
        if (hmap[h] >= 0)
            q.involution[hmap[h]] = hmap[g.involution[h]];

    MarkedGraph quotient;
    quotient.graph = std::move(q);
    quotient.genus = mg->genus;
    quotient.marking.resize(mg->n_marks());
    for (int i = 0; i < mg->n_marks(); ++i)
        quotient.marking[i] = vmap[mg->marking[i]];
    /* validated post hoc: rejects valence violations on unmarked vertices */
    try {
        quotient.validate();
    } catch (const invalid_input& e) {
        throw invalid_input(std::string("contract_edges: invalid quotient: ") + e.what());
    }
    GraphRef qref = std::make_shared<const MarkedGraph>(std::move(quotient));

    GraphMorphism collapse;
    collapse.source = mg;
    collapse.target = qref;
    collapse.vertex_image = vmap;
    collapse.half_image.resize(g.num_half_edges());
    for (int h = 0; h < g.num_half_edges(); ++h)
        collapse.half_image[h] =
            hmap[h] >= 0 ? hmap[h] : GraphMorphism::encode_vertex(vmap[g.root[h]]);
    return {qref, collapse};
}

/* ------------------------------------------------------------------ */
/* Automorphisms                                                       */
/* ------------------------------------------------------------------ */

namespace detail {

inline void vertex_permutations(const MarkedGraph& mg, std::vector<std::vector<int>>& out) {
    const Graph& g = mg.graph;
    int V = g.num_vertices;
    auto mult = multiplicity_matrix(g);
    std::vector<int> unmarked;
    for (int v = 0; v < V; ++v)
        if (!mg.is_marked(v))
            unmarked.push_back(v);
    std::vector<int> perm(V, -1);
    for (int v : mg.marking)
        perm[v] = v;
    std::vector<char> used(V, 0);
    for (int v : mg.marking)
        used[v] = 1;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == unmarked.size()) {
            out.push_back(perm);
            return;
        }
        int v = unmarked[k];
        for (int w : unmarked) {
            if (used[w])
                continue;
            if (mult[v][v] != mult[w][w] || g.valence(v) != g.valence(w))
                continue;
            bool ok = true;
            for (int u = 0; u < V && ok; ++u)
                if (perm[u] >= 0 && mult[v][u] != mult[w][perm[u]])
                    ok = false;
            if (!ok)
                continue;
            perm[v] = w;
            used[w] = 1;
            rec(k + 1);
            perm[v] = -1;
            used[w] = 0;
        }
    };
    rec(0);
}

} // namespace detail

/* The full automorphism group, deterministically ordered: a vertex
   permutation preserving multiplicities and markings, one bijection per
   parallel-edge family, and one bijection-with-flips per loop family. */
inline std::vector<GraphMorphism> automorphisms(const GraphRef& mg) {
    const Graph& g = mg->graph;
    auto es = g.edges();
    std::vector<std::vector<int>> vperms;
    detail::vertex_permutations(*mg, vperms);

    /* edge families keyed by their (sorted) endpoint pair */
    std::map<std::pair<int, int>, std::vector<int>> family;
    for (int e = 0; e < static_cast<int>(es.size()); ++e) {
        int u = g.root[es[e].first], v = g.root[es[e].second];
        family[{std::min(u, v), std::max(u, v)}].push_back(e);
    }

    std::vector<GraphMorphism> out;
    for (const auto& vp : vperms) {
        /* for each family, all bijections onto the image family */
        std::vector<std::pair<std::vector<int>, std::vector<int>>> fams;
        bool feasible = true;
        for (auto& [key, list] : family) {
            auto [u, v] = key;
            std::pair<int, int> ikey{std::min(vp[u], vp[v]), std::max(vp[u], vp[v])};
            auto it = family.find(ikey);
            if (it == family.end() || it->second.size() != list.size()) {
                feasible = false;
                break;
            }
            fams.push_back({list, it->second});
        }
        if (!feasible)
            continue;
        /* iterate: per family a permutation; per loop additionally 2^m flips */
        std::function<void(std::size_t, GraphMorphism&)> rec = [&](std::size_t fi,
                                                                   GraphMorphism& m) {
            if (fi == fams.size()) {
                out.push_back(m);
                return;
            }
            const auto& [src_list, dst_list] = fams[fi];
            std::vector<int> idx(src_list.size());
            std::iota(idx.begin(), idx.end(), 0);
            std::vector<int> assign(src_list.size());
            std::sort(idx.begin(), idx.end());
            std::vector<int> p = idx;
            do {
                bool is_loop = g.root[es[src_list[0]].first] == g.root[es[src_list[0]].second];
                int flips_max = is_loop ? (1 << src_list.size()) : 1;
                for (int flips = 0; flips < flips_max; ++flips) {
                    /* assign half-edge images for this family */
                    std::vector<std::pair<int, int>> saved;
                    for (std::size_t k = 0; k < src_list.size(); ++k) {
                        auto [h, hd] = es[src_list[k]];
                        auto [y, yd] = es[dst_list[p[k]]];
                        int a, b;
                        if (is_loop) {
                            bool flip = (flips >> k) & 1;
                            a = flip ? yd : y;
                            b = flip ? y : yd;
                        } else {
                            /* match roots through the vertex permutation */
                            if (vp[g.root[h]] == g.root[y]) {
                                a = y;
                                b = yd;
                            } else {
                                a = yd;
                                b = y;
                            }
                        }
                        saved.push_back({h, m.half_image[h]});
                        saved.push_back({hd, m.half_image[hd]});
                        m.half_image[h] = a;
                        m.half_image[hd] = b;
                    }
                    rec(fi + 1, m);
                    for (auto [h, old] : saved)
                        m.half_image[h] = old;
                }
            } while (std::next_permutation(p.begin(), p.end()));
        };
        GraphMorphism m;
        m.source = mg;
        m.target = mg;
        m.vertex_image = vp;
        m.half_image.assign(g.num_half_edges(), -1);
        rec(0, m);
    }
    for (auto& m : out)
        m.validate();
    return out;
}

/* ------------------------------------------------------------------ */
/* Isomorphisms and hom sets                                           */
/* ------------------------------------------------------------------ */

/* One isomorphism a -> b obtained through the canonical forms, or nullopt. */
inline std::optional<GraphMorphism> some_isomorphism(const GraphRef& a, const GraphRef& b) {
    Canonical ca = canonical_form(*a);
    Canonical cb = canonical_form(*b);
    if (!(ca.graph == cb.graph))
        return std::nullopt;
    /* phi = cb^{-1} o ca */
    GraphMorphism f;
    f.source = a;
    f.target = b;
    std::vector<int> inv_v(cb.vertex_map.size());
    for (std::size_t v = 0; v < cb.vertex_map.size(); ++v)
        inv_v[cb.vertex_map[v]] = static_cast<int>(v);
    std::vector<int> inv_h(cb.half_map.size());
    for (std::size_t h = 0; h < cb.half_map.size(); ++h)
        inv_h[cb.half_map[h]] = static_cast<int>(h);
    f.vertex_image.resize(a->graph.num_vertices);
    for (int v = 0; v < a->graph.num_vertices; ++v)
        f.vertex_image[v] = inv_v[ca.vertex_map[v]];
    f.half_image.resize(a->graph.num_half_edges());
    for (int h = 0; h < a->graph.num_half_edges(); ++h)
        f.half_image[h] = inv_h[ca.half_map[h]];
    f.validate();
    return f;
}

/* All morphisms source -> target. Every morphism factors uniquely as the
   collapse of a forest followed by an isomorphism, so we enumerate forests
   whose quotient is isomorphic to the target and post-compose with the
   target's automorphism group. */
inline std::vector<GraphMorphism> hom_set(const GraphRef& source, const GraphRef& target) {
    if (source->genus != target->genus || source->n_marks() != target->n_marks())
        throw invalid_input("hom_set: graphs from different Gr_{g,n}");
    std::vector<GraphMorphism> out;
    int E1 = source->graph.num_edges();
    int E2 = target->graph.num_edges();
    if (E1 < E2)
        return out;
    auto auts = automorphisms(target);
    auto es = source->graph.edges();
    int drop = E1 - E2;
    /* iterate subsets of size `drop` */
    std::vector<int> subset;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(subset.size()) == drop) {
            std::pair<GraphRef, GraphMorphism> contraction{nullptr, GraphMorphism{}};
            try {
                contraction = contract_edges(source, subset);
            } catch (const invalid_input&) {
                return; /* not a forest / marking conflict */
            }
            auto iso = some_isomorphism(contraction.first, target);
            if (!iso)
                return;
            GraphMorphism base = compose(*iso, contraction.second);
            for (const auto& a : auts)
                out.push_back(compose(a, base));
            return;
        }
        for (int e = start; e < static_cast<int>(es.size()); ++e) {
            subset.push_back(e);
            rec(e + 1);
            subset.pop_back();
        }
    };
    rec(0);
    for (auto& m : out)
        m.validate();
    return out;
}

/* ------------------------------------------------------------------ */
/* Tripod pullback                                                     */
/* ------------------------------------------------------------------ */

using Triple = std::array<int, 3>;

/* For a target triple (i,j,k) at a vertex v, finds the unique source triple
   at the branch vertex of the tripod joining the preimage half-edges inside
   the tree f^{-1}(v). */
inline Triple tripod_pullback(const GraphMorphism& f, const Triple& t) {
    const Graph& s = f.source->graph;
    const Graph& tg = f.target->graph;
    int v = tg.root[t[0]];
    if (tg.root[t[1]] != v || tg.root[t[2]] != v || t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
        throw invalid_input("tripod_pullback: not a tripod triple");
    /* preimage half-edges and their roots */
    Triple pre{-1, -1, -1};
    for (int h = 0; h < s.num_half_edges(); ++h)
        if (!f.half_collapsed(h))
            for (int c = 0; c < 3; ++c)
                if (f.half_to_half(h) == t[c])
                    pre[c] = h;
    for (int c = 0; c < 3; ++c)
        if (pre[c] < 0)
            throw invalid_input("tripod_pullback: missing preimage half-edge");
    /* the tree f^{-1}(v): vertices mapping to v, edges collapsed onto v */
    std::vector<int> verts;
    for (int u = 0; u < s.num_vertices; ++u)
        if (f.vertex_image[u] == v)
            verts.push_back(u);
    /* parent pointers (vertex -> the half-edge at it leading towards root0) */
    int root0 = s.root[pre[0]];
    std::map<int, std::pair<int, int>> up; /* vertex -> (parent vertex, half at vertex) */
    std::vector<int> order{root0};
    std::set<int> seen{root0};
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
        int u = order[qi];
        for (int h = 0; h < s.num_half_edges(); ++h) {
            if (s.root[h] != u || !f.half_collapsed(h) || f.half_to_vertex(h) != v)
                continue;
            int w = s.root[s.involution[h]];
            if (seen.insert(w).second) {
                up[w] = {u, s.involution[h]}; /* half at w pointing to u */
                order.push_back(w);
            }
        }
    }
    /* path from a vertex towards root0 as a vertex list */
    auto path_to_root = [&](int u) {
        std::vector<int> p{u};
        while (u != root0) {
            u = up[u].first;
            p.push_back(u);
        }
        return p;
    };
    std::map<int, int> depth;
    for (int u : order) /* BFS order: parents precede children */
        depth[u] = (u == root0) ? 0 : depth[up[u].first] + 1;
    /* median of three vertices in a tree: the deepest of the pairwise meets
       towards root0 */
    auto meet = [&](int a, int b) {
        std::vector<int> pa = path_to_root(a);
        std::set<int> sa(pa.begin(), pa.end());
        for (int u : path_to_root(b))
            if (sa.count(u))
                return u;
        return root0;
    };
    int r0 = root0, r1 = s.root[pre[1]], r2 = s.root[pre[2]];
    int median = meet(r0, r1);
    for (int cand : {meet(r0, r2), meet(r1, r2)})
        if (depth[cand] > depth[median])
            median = cand;

    /* legs: at the median, the half-edge pointing towards each preimage */
    auto leg = [&](int c) {
        int rc = s.root[pre[c]];
        if (rc == median)
            return pre[c];
        std::vector<int> prc = path_to_root(rc);
        if (std::find(prc.begin(), prc.end(), median) != prc.end()) {
            /* median is an ancestor of rc: walk up to the child below it */
            int u = rc;
            while (up[u].first != median)
                u = up[u].first;
            return s.involution[up[u].second];
        }
        /* otherwise the leg leaves the median towards root0 */
        return up[median].second;
    };
    return Triple{leg(0), leg(1), leg(2)};
}

/* All target tripod triples mapped through f; functorial in f. */
inline std::map<Triple, Triple> tripod_pullback_map(const GraphMorphism& f) {
    std::map<Triple, Triple> out;
    const Graph& tg = f.target->graph;
    for (int v = 0; v < tg.num_vertices; ++v) {
        auto hs = tg.half_edges_at(v);
        for (int a : hs)
            for (int b : hs)
                for (int c : hs) {
                    if (a == b || b == c || a == c)
                        continue;
                    Triple t{a, b, c};
                    out[t] = tripod_pullback(f, t);
                }
    }
    return out;
}

} // namespace prime_moduli

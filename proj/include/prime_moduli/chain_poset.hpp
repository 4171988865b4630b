#pragma once

#include <map>
#include <optional>
#include <vector>

#include "prime_moduli/enumerate.hpp"
#include "prime_moduli/morphism.hpp"

namespace prime_moduli {

/* A chain of composable non-isomorphisms between canonical representatives.
   Length 0 is a bare object. */
struct Chain {
    GraphRef object;
    std::vector<GraphMorphism> morphisms;

    int length() const { return static_cast<int>(morphisms.size()); }
    GraphRef object_at(int i) const { return i == 0 ? object : morphisms[i - 1].target; }
    GraphRef last_object() const { return object_at(length()); }
};

/* The composite of the morphisms between positions a and b (a <= b). */
inline GraphMorphism chain_composite(const Chain& c, int a, int b) {
    GraphMorphism g = identity_morphism(c.object_at(a));
    for (int i = a + 1; i <= b; ++i)
        g = compose(c.morphisms[i - 1], g);
    return g;
}

/* The subchain retaining the positions in S (sorted), with composites as
   morphisms. Objects in a chain have strictly decreasing edge counts, so S
   is determined by the object sequence of the subchain. */
inline Chain chain_subchain(const Chain& c, const std::vector<int>& s) {
    Chain sub;
    sub.object = c.object_at(s[0]);
    for (std::size_t i = 1; i < s.size(); ++i)
        sub.morphisms.push_back(chain_composite(c, s[i - 1], s[i]));
    return sub;
}

using ChainAut = std::vector<GraphMorphism>; /* one automorphism per object */

/* All chain isomorphisms c1 -> c2 (natural isomorphisms of chains with the
   same object sequence). The tuple is determined by its first component
   because every morphism is an epimorphism, so the search fixes alpha_0 and
   propagates. With c1 == c2 this is the chain's automorphism group. */
inline std::vector<ChainAut> chain_isomorphisms(
    const Chain& c1, const Chain& c2,
    const std::map<const MarkedGraph*, std::vector<GraphMorphism>>& auts) {
    std::vector<ChainAut> result;
    if (c1.length() != c2.length())
        return result;
    for (int i = 0; i <= c1.length(); ++i)
        if (!(*c1.object_at(i) == *c2.object_at(i)))
            return result;
    const auto& aut0 = auts.at(c1.object.get());
    for (const auto& a0 : aut0) {
        ChainAut tuple{a0};
        bool ok = true;
        for (int i = 1; i <= c1.length() && ok; ++i) {
            GraphMorphism want = compose(c2.morphisms[i - 1], tuple.back());
            const auto& auti = auts.at(c1.object_at(i).get());
            bool found = false;
            for (const auto& ai : auti) {
                if (compose(ai, c1.morphisms[i - 1]).same_maps(want)) {
                    tuple.push_back(ai);
                    found = true;
                    break;
                }
            }
            ok = found;
        }
        if (ok)
            result.push_back(std::move(tuple));
    }
    return result;
}

inline bool chains_isomorphic(const Chain& c1, const Chain& c2,
                              const std::map<const MarkedGraph*, std::vector<GraphMorphism>>& auts) {
    if (c1.length() != c2.length())
        return false;
    for (int i = 0; i <= c1.length(); ++i)
        if (!(*c1.object_at(i) == *c2.object_at(i)))
            return false;
    return !chain_isomorphisms(c1, c2, auts).empty();
}

/* The finite poset of isomorphism classes of chains of non-isomorphisms in
   Gr_{g,n}, ordered by refinement: a chain is below every chain obtained
   from it by composing adjacent morphisms and/or dropping endpoints (the
   nerve face maps). Stabilizers are recorded through their faithful image
   in Aut(first object). */
struct ChainPosetElement {
    Chain chain;
    std::vector<ChainAut> stabilizer_tuples;
    std::vector<GraphMorphism> stabilizer; /* alpha_0 components */
};

struct ChainPoset {
    int g = 0, n = 0;
    std::vector<GraphRef> objects;
    std::map<const MarkedGraph*, std::vector<GraphMorphism>> automorphism_cache;
    std::vector<ChainPosetElement> elements;
    std::vector<std::vector<char>> below; /* below[x][y]: x strictly finer than y */
    int depth = 0;

    /* For x < y, the subchain positions of rep(x) realising class y. */
    std::optional<std::vector<int>> subchain_positions(int x, int y) const {
        const Chain& cx = elements[x].chain;
        const Chain& cy = elements[y].chain;
        if (cy.length() >= cx.length() && x != y)
            return std::nullopt;
        std::vector<int> s;
        int i = 0;
        for (int j = 0; j <= cy.length(); ++j) {
            while (i <= cx.length() && !(*cx.object_at(i) == *cy.object_at(j)))
                ++i;
            if (i > cx.length())
                return std::nullopt;
            s.push_back(i);
            ++i;
        }
        return s;
    }
};

inline ChainPoset chain_poset(int g, int n, bool no_redundant,
                              const Config& cfg = default_config()) {
    ChainPoset P;
    P.g = g;
    P.n = n;
    P.objects = enumerate_graphs(g, n, no_redundant, cfg);
    for (const auto& obj : P.objects)
        P.automorphism_cache[obj.get()] = automorphisms(obj);

    /* hom sets between distinct objects (non-isomorphisms decrease edges) */
    std::map<std::pair<const MarkedGraph*, const MarkedGraph*>, std::vector<GraphMorphism>> homs;
    for (const auto& a : P.objects)
        for (const auto& b : P.objects)
            if (a->graph.num_edges() > b->graph.num_edges())
                homs[{a.get(), b.get()}] = hom_set(a, b);

    /* length 0: one element per object, stabilizer = Aut */
    for (const auto& obj : P.objects) {
        ChainPosetElement el;
        el.chain.object = obj;
        for (const auto& a : P.automorphism_cache[obj.get()]) {
            el.stabilizer_tuples.push_back({a});
            el.stabilizer.push_back(a);
        }
        P.elements.push_back(std::move(el));
    }

    /* longer chains by extension at the target end */
    int depth_bound = 2 * (g - 1) + n;
    std::size_t level_begin = 0, level_end = P.elements.size();
    for (int len = 1; len <= std::max(depth_bound, 0); ++len) {
        for (std::size_t ei = level_begin; ei < level_end; ++ei) {
            /* copy, since P.elements grows below */
            const Chain base = P.elements[ei].chain;
            const auto base_tuples = P.elements[ei].stabilizer_tuples;
            GraphRef last = base.last_object();
            for (const auto& target : P.objects) {
                if (target->graph.num_edges() >= last->graph.num_edges())
                    continue;
                auto it = homs.find({last.get(), target.get()});
                if (it == homs.end() || it->second.empty())
                    continue;
                const auto& tgt_auts = P.automorphism_cache[target.get()];
                /* keyed index of the hom set for orbit marking */
                std::map<std::pair<std::vector<int>, std::vector<int>>, std::size_t> index;
                for (std::size_t fi = 0; fi < it->second.size(); ++fi)
                    index[{it->second[fi].vertex_image, it->second[fi].half_image}] = fi;
                std::vector<char> classified(it->second.size(), 0);
                for (std::size_t fi = 0; fi < it->second.size(); ++fi) {
                    if (classified[fi])
                        continue;
                    const GraphMorphism& f = it->second[fi];
                    /* mark the (Stab(base) x Aut(target))-orbit of f and
                       collect the stabilizer of the extended chain: pairs
                       with b o f o a^{-1} = f */
                    ChainPosetElement el;
                    el.chain = base;
                    el.chain.morphisms.push_back(f);
                    for (const auto& tup : base_tuples) {
                        GraphMorphism f_ainv = compose(f, inverse_isomorphism(tup.back()));
                        for (const auto& b : tgt_auts) {
                            GraphMorphism orbit = compose(b, f_ainv);
                            classified[index.at({orbit.vertex_image, orbit.half_image})] = 1;
                            if (orbit.same_maps(f)) {
                                ChainAut ext = tup;
                                ext.push_back(b);
                                el.stabilizer_tuples.push_back(std::move(ext));
                            }
                        }
                    }
                    for (const auto& tup : el.stabilizer_tuples)
                        el.stabilizer.push_back(tup[0]);
                    P.elements.push_back(std::move(el));
                    if (static_cast<long>(P.elements.size()) > cfg.iso_class_cap)
                        throw resource_cap("chain poset exceeded the configured cap");
                }
            }
        }
        level_begin = level_end;
        level_end = P.elements.size();
        if (level_begin == level_end)
            break;
    }

    /* strict order: x < y iff rep(y) is isomorphic to a subchain of rep(x) */
    std::size_t N = P.elements.size();
    P.below.assign(N, std::vector<char>(N, 0));
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y) {
            if (x == y || P.elements[y].chain.length() >= P.elements[x].chain.length())
                continue;
            auto s = P.subchain_positions(static_cast<int>(x), static_cast<int>(y));
            if (!s)
                continue;
            Chain sub = chain_subchain(P.elements[x].chain, *s);
            if (chains_isomorphic(P.elements[y].chain, sub, P.automorphism_cache))
                P.below[x][y] = 1;
        }
    P.depth = 0;
    for (const auto& el : P.elements)
        P.depth = std::max(P.depth, el.chain.length());
    return P;
}

} // namespace prime_moduli

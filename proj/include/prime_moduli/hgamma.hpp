#pragma once

#include <optional>
#include <vector>

#include "prime_moduli/homology.hpp"
#include "prime_moduli/morphism.hpp"
#include "prime_moduli/presentation.hpp"

namespace prime_moduli {

/* Formal graded dimension data for the configuration spaces of the prime
   factors at marked vertices (n > 0 only): factor i is a dimension vector
   indexed by degree. No ring structure and no induced maps are modelled. */
using FactorData = std::vector<std::vector<long>>;

/* The graded ring attached to a marked graph: odd generators b_a of degree
   3 for the chosen basis of H_1(Gamma, sigma), even generators c_t of
   degree 2 for the reduced tripod triples (i,j,m_v) at unmarked vertices,
   and for n = 0 a class delta with (c_t)^2 = delta for every triple
   (eliminated internally as the square of the last reduced generator). */
struct HGammaRing {
    GraphRef graph;
    PresRef pres;
    std::vector<Triple> gen_triples; /* reduced triple of each even generator */
    RelativeHomology homology;       /* beta basis and lifting data */
    std::optional<FactorData> prime_factors;

    int n_marks() const { return graph->n_marks(); }
    bool has_delta() const { return n_marks() == 0; }

    int triple_vertex(const Triple& t) const {
        const Graph& g = graph->graph;
        int v = g.root[t[0]];
        if (g.root[t[1]] != v || g.root[t[2]] != v || t[0] == t[1] || t[1] == t[2] ||
            t[0] == t[2])
            throw invalid_input("hgamma: not a tripod triple");
        return v;
    }

    int gen_index(const Triple& sorted) const {
        for (std::size_t k = 0; k < gen_triples.size(); ++k)
            if (gen_triples[k] == sorted)
                return static_cast<int>(k);
        return -1;
    }

    /* Linear expansion of c_{(i,j,k)} into the reduced generators via
       antisymmetry and the per-vertex 4-point relation. */
    Poly expand(Triple t) const {
        int v = triple_vertex(t);
        if (graph->is_marked(v))
            throw invalid_input("hgamma: triples at marked vertices carry no classes");
        int sign = 1;
        auto& a = t[0];
        auto& b = t[1];
        auto& c = t[2];
        if (a > b) {
            std::swap(a, b);
            sign = -sign;
        }
        if (b > c) {
            std::swap(b, c);
            sign = -sign;
        }
        if (a > b) {
            std::swap(a, b);
            sign = -sign;
        }
        auto hs = graph->graph.half_edges_at(v);
        int m = *std::max_element(hs.begin(), hs.end());
        std::size_t ng = pres->n_even();
        auto gen = [&](int p, int q) {
            int idx = gen_index(Triple{p, q, m});
            if (idx < 0)
                throw error("hgamma: missing reduced generator");
            Mono mono = mono_one(ng);
            mono[idx] = 1;
            return mono;
        };
        std::vector<Term> terms;
        if (c == m) {
            terms.push_back({gen(a, b), Rat(sign)});
        } else {
            terms.push_back({gen(a, b), Rat(sign)});
            terms.push_back({gen(b, c), Rat(sign)});
            terms.push_back({gen(a, c), Rat(-sign)});
        }
        return Poly(std::move(terms), pres->order);
    }

    RingElement class_element(const Triple& t) const {
        return RingElement::from_poly(pres, expand(t));
    }

    RingElement beta(std::size_t a) const { return RingElement::odd_gen(pres, a); }

    RingElement delta() const {
        if (!has_delta())
            return RingElement::zero(pres);
        if (pres->n_even() == 0)
            throw error("hgamma: no tripod classes on this graph"); /* impossible for n=0 */
        return RingElement::even_gen(pres, pres->n_even() - 1).pow(2);
    }
};

inline HGammaRing build_ring(const GraphRef& mg,
                             std::optional<FactorData> prime_factors = std::nullopt,
                             const Config& cfg = default_config()) {
    mg->validate();
    HGammaRing ring;
    ring.graph = mg;
    ring.homology = relative_homology(mg);
    if (prime_factors) {
        if (static_cast<int>(prime_factors->size()) != mg->n_marks())
            throw invalid_input("build_ring: one factor dimension vector per marked vertex");
        for (const auto& f : *prime_factors) {
            if (f.empty() || f[0] != 1)
                throw invalid_input("build_ring: factor series must start with rank 1");
            for (long r : f)
                if (r < 0)
                    throw invalid_input("build_ring: negative factor rank");
        }
        ring.prime_factors = std::move(prime_factors);
    }

    std::vector<GenInfo> even;
    int counter = 1;
    for (int v = 0; v < mg->graph.num_vertices; ++v) {
        if (mg->is_marked(v))
            continue;
        auto hs = mg->graph.half_edges_at(v);
        int m = *std::max_element(hs.begin(), hs.end());
        for (std::size_t i = 0; i < hs.size(); ++i)
            for (std::size_t j = i + 1; j < hs.size(); ++j) {
                if (hs[i] == m || hs[j] == m)
                    continue;
                ring.gen_triples.push_back(Triple{hs[i], hs[j], m});
                even.push_back({"c" + std::to_string(counter++), 2});
            }
    }
    std::vector<GenInfo> odd;
    for (int a = 0; a < ring.homology.rank(); ++a)
        odd.push_back({"b" + std::to_string(a + 1), 3});

    MonoOrder order;
    for (const auto& g : even)
        order.degrees.push_back(g.degree);
    ring.pres = GradedPresentation::make(even, odd, {}, cfg);

    /* relations: for every sorted triple t at an unmarked vertex,
       (c_t)^2 = delta (n = 0, delta the square of the last reduced
       generator) or (c_t)^2 = 0 (n > 0) */
    std::vector<Poly> rels;
    const bool with_delta = ring.has_delta();
    Poly ref_sq;
    if (with_delta && !even.empty()) {
        Mono m = mono_one(even.size());
        m[even.size() - 1] = 2;
        ref_sq = Poly::monomial(std::move(m));
    }
    for (int v = 0; v < mg->graph.num_vertices; ++v) {
        if (mg->is_marked(v))
            continue;
        auto hs = mg->graph.half_edges_at(v);
        for (std::size_t i = 0; i < hs.size(); ++i)
            for (std::size_t j = i + 1; j < hs.size(); ++j)
                for (std::size_t k = j + 1; k < hs.size(); ++k) {
                    Poly l = ring.expand(Triple{hs[i], hs[j], hs[k]});
                    Poly sq = l.times(l, order);
                    if (with_delta)
                        sq.add_scaled(ref_sq, Rat(-1), order);
                    if (!sq.is_zero())
                        rels.push_back(std::move(sq));
                }
    }
    ring.pres = GradedPresentation::make(even, odd, std::move(rels), cfg);
    return ring;
}

/* Betti table of the ring; for n > 0 the opaque factor series are convolved
   in, and requesting this without factor data is an error. */
inline BettiTable hgamma_betti(const HGammaRing& ring, int max_degree) {
    BettiTable base = betti(ring.pres, max_degree);
    if (ring.n_marks() == 0)
        return base;
    if (!ring.prime_factors)
        throw invalid_input(
            "hgamma_betti: missing factor data for the marked vertices (n > 0)");
    for (const auto& f : *ring.prime_factors) {
        BettiTable conv;
        conv.truncation = max_degree;
        for (int d = 0; d <= max_degree; ++d) {
            long total = 0;
            for (int k = 0; k <= d && k < static_cast<int>(f.size()); ++k)
                total += f[k] * base.rank(d - k);
            if (total)
                conv.ranks[d] = total;
        }
        base = std::move(conv);
    }
    return base;
}

/* The ring automorphism attached to a graph automorphism: c_t maps to
   c_{phi(t)} (normalised through the expansion) and the beta classes move
   by the pushforward on the homology basis. */
inline RingMap aut_action(const HGammaRing& ring, const GraphMorphism& phi) {
    if (!(*phi.source == *ring.graph) || !(*phi.target == *ring.graph) || !phi.is_isomorphism())
        throw invalid_input("aut_action: not an automorphism of the ring's graph");
    RingMap m;
    m.source = ring.pres;
    m.target = ring.pres;
    for (const auto& t : ring.gen_triples) {
        Triple image{phi.half_to_half(t[0]), phi.half_to_half(t[1]), phi.half_to_half(t[2])};
        m.even_images.push_back(ring.class_element(image));
    }
    Mat push = h1_pushforward(phi, ring.homology, ring.homology);
    for (int a = 0; a < ring.homology.rank(); ++a) {
        RingElement img = RingElement::zero(ring.pres);
        for (int j = 0; j < ring.homology.rank(); ++j)
            if (push(j, a) != 0)
                img.add_scaled(ring.beta(j), push(j, a));
        m.odd_images.push_back(img);
    }
    m.verify();
    return m;
}

/* The contravariant ring map induced by a graph morphism f: source ->
   target, from build_ring(target) to build_ring(source): c-generators pull
   back along the tripod map, beta classes through the inverse of the H_1
   pushforward (n = 0 only: for n > 0 the degree-3 splitting is not
   canonical, so beta-functoriality is disabled). */
inline RingMap induced_map(const HGammaRing& target_ring, const HGammaRing& source_ring,
                           const GraphMorphism& f) {
    if (!(*f.source == *source_ring.graph) || !(*f.target == *target_ring.graph))
        throw invalid_input("induced_map: morphism does not match the rings");
    if (source_ring.n_marks() > 0)
        throw invalid_input("induced_map: beta-functoriality is only defined for n = 0");
    RingMap m;
    m.source = target_ring.pres;
    m.target = source_ring.pres;
    for (const auto& t : target_ring.gen_triples)
        m.even_images.push_back(source_ring.class_element(tripod_pullback(f, t)));
    Mat push = h1_pushforward(f, source_ring.homology, target_ring.homology);
    /* columns of push^{-1}: the source beta expressing each target beta */
    std::size_t r = target_ring.homology.rank();
    for (std::size_t b = 0; b < r; ++b) {
        Vec e(r, Rat(0));
        e[b] = 1;
        auto x = solve(push, e);
        if (!x)
            throw error("induced_map: H_1 pushforward is not invertible");
        RingElement img = RingElement::zero(source_ring.pres);
        for (std::size_t j = 0; j < r; ++j)
            if ((*x)[j] != 0)
                img.add_scaled(source_ring.beta(j), (*x)[j]);
        m.odd_images.push_back(img);
    }
    m.verify(); /* a violation here would be an implementation bug */
    return m;
}

} // namespace prime_moduli

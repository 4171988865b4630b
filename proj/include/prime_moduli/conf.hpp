#pragma once

#include <vector>

#include "prime_moduli/presentation.hpp"

namespace prime_moduli {

enum class ConfVariant { plain, so4 };

inline ConfVariant conf_variant_from_string(const std::string& s) {
    if (s == "plain")
        return ConfVariant::plain;
    if (s == "so4")
        return ConfVariant::so4;
    throw invalid_input("unknown variant: " + s + " (expected plain or so4)");
}

/* The cohomology presentations of the configuration space of d points in
   the 3-sphere (plain) and of its homotopy quotient by SO(4).

   Generators are reduced up front exactly as in the proofs: only classes
   w_ij^d (resp. c_ij^d) with 1 <= i < j <= d-1 survive, every other index
   triple being rewritten through antisymmetry and the 4-point relation. In
   the so4 variant delta is eliminated as the square of the last generator
   c_{d-2,d-1}; for d <= 2 no triples exist and delta stays an explicit
   degree-4 generator. */
struct ConfRing {
    int d = 0;
    ConfVariant variant = ConfVariant::plain;
    PresRef pres;
    std::vector<std::pair<int, int>> pairs; /* 1-based (i,j), lex ascending */

    bool has_alpha() const { return variant == ConfVariant::plain && d >= 1; }
    bool has_explicit_delta() const { return variant == ConfVariant::so4 && pairs.empty(); }

    int pair_index(int i, int j) const {
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (pairs[k] == std::make_pair(i, j))
                return static_cast<int>(k);
        throw invalid_input("conf ring: no such generator pair");
    }

    /* Linear expansion of w_ij^k (all indices distinct, in 1..d) into the
       reduced generators. */
    Poly expand(int i, int j, int k) const {
        if (i == j || j == k || i == k || i < 1 || j < 1 || k < 1 || i > d || j > d || k > d)
            throw invalid_input("conf ring: indices must be distinct and in range");
        int sign = 1;
        int a = i, b = j, c = k;
        /* sort (a,b,c) by the sign representation */
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
        std::size_t ng = pres->n_even();
        auto gen = [&](int p, int q) {
            Mono m = mono_one(ng);
            m[pair_index(p, q)] = 1;
            return m;
        };
        std::vector<Term> terms;
        if (c == d) {
            terms.push_back({gen(a, b), Rat(sign)});
        } else {
            /* w_ab^c = w_ab^d + w_bc^d + w_ca^d and w_ca^d = -w_ac^d */
            terms.push_back({gen(a, b), Rat(sign)});
            terms.push_back({gen(b, c), Rat(sign)});
            terms.push_back({gen(a, c), Rat(-sign)});
        }
        return Poly(std::move(terms), pres->order);
    }

    RingElement class_element(int i, int j, int k) const {
        return RingElement::from_poly(pres, expand(i, j, k));
    }

    RingElement alpha() const {
        if (!has_alpha())
            throw invalid_input("conf ring: no alpha class in this variant");
        return RingElement::odd_gen(pres, 0);
    }

    RingElement delta() const {
        if (variant != ConfVariant::so4)
            throw invalid_input("conf ring: delta lives in the so4 variant");
        if (has_explicit_delta())
            return RingElement::even_gen(pres, 0);
        return RingElement::even_gen(pres, pres->n_even() - 1).pow(2);
    }
};

inline ConfRing conf_ring(int d, ConfVariant variant, const Config& cfg = default_config()) {
    if (d < 0)
        throw invalid_input("conf_ring: d must be nonnegative");
    if (d > 12)
        throw resource_cap("conf_ring: d exceeds the supported range");
    ConfRing ring;
    ring.d = d;
    ring.variant = variant;
    for (int i = 1; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            ring.pairs.push_back({i, j});

    std::vector<GenInfo> even;
    std::vector<GenInfo> odd;
    const char* stem = variant == ConfVariant::plain ? "w" : "c";
    for (auto [i, j] : ring.pairs)
        even.push_back({stem + std::to_string(i) + "_" + std::to_string(j), 2});
    if (variant == ConfVariant::so4 && ring.pairs.empty())
        even.push_back({"delta", 4});
    if (variant == ConfVariant::plain && d >= 1)
        odd.push_back({"alpha", 3});

    /* build a throwaway presentation first so expand() can run, then the
       real one with the mechanically generated relations */
    MonoOrder order;
    for (const auto& g : even)
        order.degrees.push_back(g.degree);
    ring.pres = GradedPresentation::make(even, odd, {}, cfg);

    std::vector<Poly> rels;
    if (!ring.pairs.empty()) {
        Poly ref_sq;
        if (variant == ConfVariant::so4) {
            Poly z = ring.expand(d - 2, d - 1, d);
            ref_sq = z.times(z, order);
        }
        for (int a = 1; a <= d; ++a)
            for (int b = a + 1; b <= d; ++b)
                for (int c = b + 1; c <= d; ++c) {
                    Poly l = ring.expand(a, b, c);
                    Poly sq = l.times(l, order);
                    if (variant == ConfVariant::so4)
                        sq.add_scaled(ref_sq, Rat(-1), order);
                    if (!sq.is_zero())
                        rels.push_back(std::move(sq));
                }
    }
    ring.pres = GradedPresentation::make(even, odd, std::move(rels), cfg);
    return ring;
}

/* The symmetric-group action: permuting indices, with antisymmetry signs
   absorbed by the expansion. perm is 1-based (perm[i-1] = image of i). */
inline RingMap sym_action(const ConfRing& ring, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != ring.d)
        throw invalid_input("sym_action: permutation size mismatch");
    std::vector<char> seen(ring.d + 1, 0);
    for (int v : perm) {
        if (v < 1 || v > ring.d || seen[v])
            throw invalid_input("sym_action: not a permutation");
        seen[v] = 1;
    }
    RingMap m;
    m.source = ring.pres;
    m.target = ring.pres;
    if (ring.has_explicit_delta()) {
        m.even_images.push_back(RingElement::even_gen(ring.pres, 0));
    } else {
        for (auto [i, j] : ring.pairs)
            m.even_images.push_back(ring.class_element(perm[i - 1], perm[j - 1], perm[ring.d - 1]));
    }
    if (ring.has_alpha())
        m.odd_images.push_back(ring.alpha());
    m.verify();
    return m;
}

/* The map induced by forgetting points: S (1-based, ascending) picks the
   surviving points, giving a ring map conf_ring(|S|) -> conf_ring(d) by
   relabelling generator indices along the inclusion. */
inline RingMap forget_points(const ConfRing& big, const std::vector<int>& s,
                             const Config& cfg = default_config()) {
    for (std::size_t t = 0; t < s.size(); ++t) {
        if (s[t] < 1 || s[t] > big.d)
            throw invalid_input("forget_points: index out of range");
        if (t > 0 && s[t] <= s[t - 1])
            throw invalid_input("forget_points: indices must be strictly increasing");
    }
    ConfRing small = conf_ring(static_cast<int>(s.size()), big.variant, cfg);
    RingMap m;
    m.source = small.pres;
    m.target = big.pres;
    if (small.has_explicit_delta()) {
        m.even_images.push_back(big.delta());
    } else {
        for (auto [i, j] : small.pairs)
            m.even_images.push_back(big.class_element(s[i - 1], s[j - 1], s[small.d - 1]));
    }
    if (small.has_alpha())
        m.odd_images.push_back(big.alpha());
    m.verify();
    return m;
}

} // namespace prime_moduli

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prime_moduli/hgamma.hpp"
#include "prime_moduli/presentation.hpp"

namespace prime_moduli {

/* A finite group of verified ring automorphisms with its composition table.
   Element 0 is always the identity. */
struct RingAction {
    PresRef ring;
    std::vector<RingMap> elements;
    std::vector<std::vector<int>> table; /* table[i][j] = index of i after j */

    std::size_t order() const { return elements.size(); }
};

inline int find_map_index(const std::vector<RingMap>& maps, const RingMap& m) {
    for (std::size_t i = 0; i < maps.size(); ++i)
        if (maps_equal(maps[i], m))
            return static_cast<int>(i);
    return -1;
}

inline RingAction make_ring_action(PresRef ring, std::vector<RingMap> maps) {
    RingAction a;
    a.ring = std::move(ring);
    a.elements = std::move(maps);
    int id = -1;
    for (std::size_t i = 0; i < a.elements.size(); ++i) {
        a.elements[i].verify();
        if (maps_equal(a.elements[i], identity_map(a.ring)))
            id = static_cast<int>(i);
    }
    if (id < 0)
        throw invalid_input("ring action: missing identity");
    std::swap(a.elements[0], a.elements[id]);
    a.table.assign(a.order(), std::vector<int>(a.order(), -1));
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j) {
            int k = find_map_index(a.elements, compose_maps(a.elements[i], a.elements[j]));
            if (k < 0)
                throw invalid_input("ring action: not closed under composition");
            a.table[i][j] = k;
        }
    /* inverses: every row of the table is a permutation hitting 0 */
    for (std::size_t i = 0; i < a.order(); ++i) {
        bool has_inverse = false;
        for (std::size_t j = 0; j < a.order(); ++j)
            if (a.table[i][j] == 0)
                has_inverse = true;
        if (!has_inverse)
            throw invalid_input("ring action: missing inverse");
    }
    return a;
}

/* The action of a set of graph automorphisms on the ring of the graph. */
inline RingAction graph_ring_action(const HGammaRing& ring,
                                    const std::vector<GraphMorphism>& automorphism_list) {
    std::vector<RingMap> maps;
    for (const auto& phi : automorphism_list)
        maps.push_back(aut_action(ring, phi));
    return make_ring_action(ring.pres, std::move(maps));
}

/* The Reynolds projector (1/|G|) sum_g g on the degree-d graded basis. */
inline Mat reynolds_matrix(const RingAction& a, int d) {
    std::size_t n = graded_basis(a.ring, d).size();
    Mat p(n, n);
    for (const auto& g : a.elements) {
        Mat m = map_matrix(g, d);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                p(i, j) += m(i, j);
    }
    Rat inv = Rat(1, static_cast<long>(a.order()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            p(i, j) *= inv;
    return p;
}

/* Basis of the invariant subspace in ambient coordinates (columns). */
inline Mat invariant_basis(const RingAction& a, int d) {
    Mat p = reynolds_matrix(a, d);
    auto pivots = column_space_pivots(p);
    Mat b(p.rows, pivots.size());
    for (std::size_t j = 0; j < pivots.size(); ++j)
        for (std::size_t i = 0; i < p.rows; ++i)
            b(i, j) = p(i, pivots[j]);
    return b;
}

inline BettiTable invariant_betti(const RingAction& a, int max_degree) {
    BettiTable t;
    t.truncation = max_degree;
    for (int d = 0; d <= max_degree; ++d) {
        Mat p = reynolds_matrix(a, d);
        long r = static_cast<long>(rank(std::move(p)));
        if (r)
            t.ranks[d] = r;
    }
    return t;
}

/* Confirms that each expression is fixed by the whole group and that the
   monomials in the expressions span the invariants in every degree <= D. */
struct InvariantGeneratorReport {
    std::vector<int> gen_degrees;
    std::map<int, long> spanned_dims;
};

inline InvariantGeneratorReport check_invariant_generators(const RingAction& a,
                                                           const std::vector<RingElement>& gens,
                                                           int max_degree) {
    InvariantGeneratorReport report;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        if (!gens[k].is_homogeneous())
            throw invalid_input("check_invariant_generators: expression not homogeneous");
        report.gen_degrees.push_back(gens[k].degree());
        for (std::size_t gi = 0; gi < a.order(); ++gi)
            if (!(a.elements[gi].apply(gens[k]) == gens[k]))
                throw non_invariant("expression #" + std::to_string(k + 1) +
                                    " moves under group element #" + std::to_string(gi));
    }
    /* enumerate monomials in the expressions per degree */
    for (int d = 1; d <= max_degree; ++d) {
        auto basis = graded_basis(a.ring, d);
        Mat inv = invariant_basis(a, d);
        std::vector<Vec> vectors;
        std::vector<int> exps(gens.size(), 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t k, int remaining) {
            if (remaining == 0) {
                RingElement prod = RingElement::one(a.ring);
                for (std::size_t i = 0; i < gens.size(); ++i)
                    for (int e = 0; e < exps[i]; ++e)
                        prod = prod.times(gens[i]);
                if (!prod.is_zero())
                    vectors.push_back(element_coordinates(prod, basis));
                return;
            }
            if (k == gens.size())
                return;
            int dg = report.gen_degrees[k];
            int emax = remaining / dg;
            if (dg % 2 == 1)
                emax = std::min(emax, 1); /* odd-degree expressions square to zero */
            for (int e = 0; e <= emax; ++e) {
                exps[k] = e;
                rec(k + 1, remaining - e * dg);
            }
            exps[k] = 0;
        };
        rec(0, d);
        Mat span(basis.size(), vectors.size());
        for (std::size_t j = 0; j < vectors.size(); ++j)
            for (std::size_t i = 0; i < basis.size(); ++i)
                span(i, j) = vectors[j][i];
        std::size_t got = rank(span);
        std::size_t want = inv.cols;
        report.spanned_dims[d] = static_cast<long>(got);
        if (got != want)
            throw span_gap("invariant subspace not spanned in degree " + std::to_string(d));
    }
    return report;
}

/* Searches for a correspondence witnessing that m intertwines the actions:
   for each target element b, a source element a with b o m = m o a. */
inline std::optional<std::vector<int>> find_correspondence(const RingMap& m,
                                                           const RingAction& src,
                                                           const RingAction& tgt) {
    std::vector<int> corr;
    for (const auto& b : tgt.elements) {
        RingMap lhs = compose_maps(b, m);
        int found = -1;
        for (std::size_t j = 0; j < src.order(); ++j)
            if (maps_equal(lhs, compose_maps(m, src.elements[j]))) {
                found = static_cast<int>(j);
                break;
            }
        if (found < 0)
            return std::nullopt;
        corr.push_back(found);
    }
    return corr;
}

/* Matrices of the map restricted to the invariant subspaces, one per degree
   0..D; the correspondence (one source element per target element) is
   verified first. */
inline std::vector<Mat> equivariant_map_on_invariants(const RingMap& m, const RingAction& src,
                                                      const RingAction& tgt,
                                                      const std::vector<int>& correspondence,
                                                      int max_degree) {
    if (correspondence.size() != tgt.order())
        throw intertwining_violation("correspondence must list one source element per "
                                     "target element");
    for (std::size_t i = 0; i < tgt.order(); ++i) {
        int j = correspondence[i];
        if (j < 0 || j >= static_cast<int>(src.order()))
            throw intertwining_violation("correspondence index out of range");
        if (!maps_equal(compose_maps(tgt.elements[i], m), compose_maps(m, src.elements[j])))
            throw intertwining_violation("map fails to intertwine target element #" +
                                         std::to_string(i));
    }
    std::vector<Mat> out;
    for (int d = 0; d <= max_degree; ++d) {
        Mat u = invariant_basis(src, d);
        Mat v = invariant_basis(tgt, d);
        Mat amb = map_matrix(m, d);
        Mat img = mat_mul(amb, u);
        Mat x(v.cols, u.cols);
        for (std::size_t j = 0; j < u.cols; ++j) {
            Vec col(img.rows);
            for (std::size_t i = 0; i < img.rows; ++i)
                col[i] = img(i, j);
            auto sol = solve(v, col);
            if (!sol)
                throw intertwining_violation(
                    "image of an invariant is not invariant in degree " + std::to_string(d));
            for (std::size_t i = 0; i < v.cols; ++i)
                x(i, j) = (*sol)[i];
        }
        out.push_back(std::move(x));
    }
    return out;
}

} // namespace prime_moduli

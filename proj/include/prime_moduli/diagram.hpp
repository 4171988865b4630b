#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prime_moduli/chain_poset.hpp"
#include "prime_moduli/invariants.hpp"

namespace prime_moduli {

/* A functor of graded vector spaces on (the opposite of) a finite poset:
   per element a dimension in each degree, and for every strict order pair
   x < y a degree-preserving matrix F(y) -> F(x). For diagrams built from
   cohomology this is the restriction "towards finer chains". */
struct Diagram {
    ChainPoset poset;
    int max_degree = 0;
    std::vector<std::vector<long>> dims; /* [element][degree] */
    std::map<std::pair<int, int>, std::vector<Mat>> maps;

    long dim(int element, int q) const { return dims[element][q]; }

    const Mat& map_at(int x, int y, int q) const { return maps.at({x, y})[q]; }

    /* functoriality: for x < y < z the two routes agree in every degree */
    void validate() const {
        std::size_t n = poset.elements.size();
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                if (!poset.below[x][y])
                    continue;
                for (std::size_t z = 0; z < n; ++z) {
                    if (!poset.below[y][z])
                        continue;
                    if (!poset.below[x][z])
                        throw error("diagram: order is not transitive");
                    for (int q = 0; q <= max_degree; ++q) {
                        Mat composite = mat_mul(map_at(static_cast<int>(x), static_cast<int>(y), q),
                                                map_at(static_cast<int>(y), static_cast<int>(z), q));
                        if (!(composite == map_at(static_cast<int>(x), static_cast<int>(z), q)))
                            throw error("diagram: restriction maps do not commute");
                    }
                }
            }
    }
};

/* Ranks of the derived limits lim^p in each degree q. */
struct LimTable {
    int depth = 0;
    int max_degree = 0;
    std::map<std::pair<int, int>, long> ranks;

    long rank(int p, int q) const {
        auto it = ranks.find({p, q});
        return it == ranks.end() ? 0 : it->second;
    }
};

namespace detail {

/* strictly increasing flags (x_0 < x_1 < ... < x_p) of poset elements */
inline std::vector<std::vector<std::vector<int>>> poset_flags(const ChainPoset& poset) {
    std::size_t n = poset.elements.size();
    std::vector<std::vector<std::vector<int>>> flags;
    flags.push_back({});
    for (std::size_t x = 0; x < n; ++x)
        flags[0].push_back({static_cast<int>(x)});
    while (true) {
        const auto& prev = flags.back();
        std::vector<std::vector<int>> next;
        for (const auto& f : prev)
            for (std::size_t y = 0; y < n; ++y)
                if (poset.below[f.back()][y]) {
                    auto g = f;
                    g.push_back(static_cast<int>(y));
                    next.push_back(std::move(g));
                }
        if (next.empty())
            break;
        flags.push_back(std::move(next));
    }
    return flags;
}

} // namespace detail

/* Derived limits over the finite poset, computed from the cochain complex
   of the nondegenerate nerve: C^p = (+) over flags x_0 < ... < x_p of the
   value at the flag's minimum, with the alternating-sum differential whose
   0th face applies the restriction F(x_1) -> F(x_0). lim^0 is the ordinary
   (inverse) limit. */
inline LimTable derived_limits(const Diagram& dg, int max_degree) {
    LimTable t;
    t.max_degree = std::min(max_degree, dg.max_degree);
    auto flags = detail::poset_flags(dg.poset);
    t.depth = static_cast<int>(flags.size()) - 1;
    /* face lookup tables */
    std::vector<std::map<std::vector<int>, std::size_t>> flag_index(flags.size());
    for (std::size_t p = 0; p < flags.size(); ++p)
        for (std::size_t fi = 0; fi < flags[p].size(); ++fi)
            flag_index[p][flags[p][fi]] = fi;
    for (int q = 0; q <= t.max_degree; ++q) {
        /* dimensions and offsets of C^p */
        std::vector<std::vector<long>> offsets(flags.size());
        std::vector<long> total(flags.size(), 0);
        for (std::size_t p = 0; p < flags.size(); ++p) {
            for (const auto& f : flags[p]) {
                offsets[p].push_back(total[p]);
                total[p] += dg.dim(f[0], q);
            }
        }
        /* differentials d_p : C^p -> C^{p+1}, assembled sparsely by column */
        std::vector<long> rank_d(flags.size(), 0);
        for (std::size_t p = 0; p + 1 < flags.size(); ++p) {
            std::vector<SparseCol> cols(total[p]);
            for (std::size_t fi = 0; fi < flags[p + 1].size(); ++fi) {
                const auto& f = flags[p + 1][fi];
                long row0 = offsets[p + 1][fi];
                for (std::size_t drop = 0; drop < f.size(); ++drop) {
                    std::vector<int> face;
                    for (std::size_t i = 0; i < f.size(); ++i)
                        if (i != drop)
                            face.push_back(f[i]);
                    long col0 = offsets[p][flag_index[p].at(face)];
                    Rat sign(drop % 2 == 0 ? 1 : -1);
                    if (drop == 0) {
                        const Mat& r = dg.map_at(f[0], f[1], q);
                        for (std::size_t i = 0; i < r.rows; ++i)
                            for (std::size_t j = 0; j < r.cols; ++j)
                                if (r(i, j) != 0) {
                                    Rat& cell = cols[col0 + j][row0 + i];
                                    cell += sign * r(i, j);
                                    if (cell == 0)
                                        cols[col0 + j].erase(row0 + i);
                                }
                    } else {
                        for (long i = 0; i < dg.dim(f[0], q); ++i) {
                            Rat& cell = cols[col0 + i][row0 + i];
                            cell += sign;
                            if (cell == 0)
                                cols[col0 + i].erase(row0 + i);
                        }
                    }
                }
            }
            rank_d[p] = static_cast<long>(sparse_rank(std::move(cols)));
        }
        /* lim^p = ker d_p / im d_{p-1} */
        for (std::size_t p = 0; p < flags.size(); ++p) {
            long kernel = total[p] - (p + 1 < flags.size() ? rank_d[p] : 0);
            long image = p == 0 ? 0 : rank_d[p - 1];
            long lim = kernel - image;
            if (lim)
                t.ranks[{static_cast<int>(p), q}] = lim;
        }
    }
    return t;
}

/* ------------------------------------------------------------------ */
/* The Slominska diagram of invariant subspaces                        */
/* ------------------------------------------------------------------ */

/* The rationalised two-step reduction: on each chain class the value is the
   stabilizer-invariant part of the ring of the first object (homotopy
   quotients by finite groups contribute invariants rationally), and the
   restriction towards a coarser chain composes the pullback along the
   dropped/composed morphisms with an identification of representatives. */
struct SlominskaDiagram {
    Diagram diagram;
    std::vector<HGammaRing> object_rings;      /* parallel to poset.objects */
    std::vector<std::vector<Mat>> value_bases; /* [element][q]: ambient basis */
    std::vector<int> element_object;           /* element -> object index */
};

inline SlominskaDiagram slominska_diagram(int g, int n, int max_degree,
                                          std::optional<FactorData> factors = std::nullopt,
                                          const Config& cfg = default_config()) {
    if (g == 1 && n == 0)
        throw invalid_input("slominska_diagram: g = 1, n = 0 is the excluded case "
                            "(the underlying manifold would be S^1 x S^2)");
    SlominskaDiagram out;
    ChainPoset poset = chain_poset(g, n, true, cfg);
    if (n > 0 && poset.elements.size() != 1)
        throw invalid_input("slominska_diagram: for n > 0 only one-object categories are "
                            "supported (the degree-3 splitting is not canonical)");
    if (n == 0 && factors)
        throw invalid_input("slominska_diagram: factor data is only meaningful for n > 0");

    std::map<const MarkedGraph*, int> object_index;
    for (std::size_t i = 0; i < poset.objects.size(); ++i) {
        object_index[poset.objects[i].get()] = static_cast<int>(i);
        out.object_rings.push_back(build_ring(poset.objects[i], n > 0 ? factors : std::nullopt,
                                              cfg));
    }

    /* cached matrices of aut_action per (object, automorphism, degree) */
    std::map<const MarkedGraph*, std::vector<RingMap>> aut_maps;
    for (std::size_t i = 0; i < poset.objects.size(); ++i) {
        const auto& auts = poset.automorphism_cache.at(poset.objects[i].get());
        std::vector<RingMap> maps;
        for (const auto& phi : auts)
            maps.push_back(aut_action(out.object_rings[i], phi));
        aut_maps[poset.objects[i].get()] = std::move(maps);
    }
    std::map<std::tuple<int, int, int>, Mat> matrix_cache;
    auto aut_matrix = [&](int obj, const GraphMorphism& phi, int q) -> const Mat& {
        const auto& auts = poset.automorphism_cache.at(poset.objects[obj].get());
        int idx = -1;
        for (std::size_t k = 0; k < auts.size(); ++k)
            if (auts[k].same_maps(phi))
                idx = static_cast<int>(k);
        if (idx < 0)
            throw error("slominska_diagram: automorphism not in the cached group");
        auto key = std::make_tuple(obj, idx, q);
        auto it = matrix_cache.find(key);
        if (it == matrix_cache.end())
            it = matrix_cache.emplace(key, map_matrix(aut_maps[poset.objects[obj].get()][idx], q))
                     .first;
        return it->second;
    };

    /* values: invariant bases per element and degree */
    std::size_t n_elements = poset.elements.size();
    out.element_object.resize(n_elements);
    out.value_bases.resize(n_elements);
    Diagram dg;
    dg.max_degree = max_degree;
    dg.dims.assign(n_elements, std::vector<long>(max_degree + 1, 0));
    for (std::size_t e = 0; e < n_elements; ++e) {
        const auto& el = poset.elements[e];
        int obj = object_index.at(el.chain.object.get());
        out.element_object[e] = obj;
        for (int q = 0; q <= max_degree; ++q) {
            std::size_t nb = graded_basis(out.object_rings[obj].pres, q).size();
            Mat p(nb, nb);
            for (const auto& phi : el.stabilizer) {
                const Mat& m = aut_matrix(obj, phi, q);
                for (std::size_t i = 0; i < nb; ++i)
                    for (std::size_t j = 0; j < nb; ++j)
                        p(i, j) += m(i, j);
            }
            Rat inv(1, static_cast<long>(el.stabilizer.size()));
            for (std::size_t i = 0; i < nb; ++i)
                for (std::size_t j = 0; j < nb; ++j)
                    p(i, j) *= inv;
            auto pivots = column_space_pivots(p);
            Mat basis(nb, pivots.size());
            for (std::size_t j = 0; j < pivots.size(); ++j)
                for (std::size_t i = 0; i < nb; ++i)
                    basis(i, j) = p(i, pivots[j]);
            out.value_bases[e].push_back(basis);
            dg.dims[e][q] = static_cast<long>(basis.cols);
        }
        /* opaque prime factors contribute by convolution (n > 0: the poset
           is a single point, so there are no maps to build) */
        if (n > 0 && factors) {
            for (const auto& f : *factors) {
                std::vector<long> conv(max_degree + 1, 0);
                for (int q = 0; q <= max_degree; ++q)
                    for (int k = 0; k <= q && k < static_cast<int>(f.size()); ++k)
                        conv[q] += f[k] * dg.dims[e][q - k];
                dg.dims[e] = std::move(conv);
            }
        }
    }

    /* restriction maps for every strict pair x < y */
    for (std::size_t x = 0; x < n_elements; ++x)
        for (std::size_t y = 0; y < n_elements; ++y) {
            if (!poset.below[x][y])
                continue;
            auto s = poset.subchain_positions(static_cast<int>(x), static_cast<int>(y));
            if (!s)
                throw error("slominska_diagram: order without subchain witness");
            Chain sub = chain_subchain(poset.elements[x].chain, *s);
            auto isos = chain_isomorphisms(poset.elements[y].chain, sub,
                                           poset.automorphism_cache);
            if (isos.empty())
                throw error("slominska_diagram: missing chain isomorphism");
            const GraphMorphism& alpha0 = isos.front()[0];
            /* ring map: A(alpha0) then pullback along the composite into the
               first object of x */
            int obj_x = out.element_object[x];
            int obj_y = out.element_object[y];
            GraphMorphism composite =
                chain_composite(poset.elements[x].chain, 0, (*s)[0]);
            RingMap pull = induced_map(out.object_rings[obj_y], out.object_rings[obj_x],
                                       composite);
            RingMap transport = aut_action(out.object_rings[obj_y], alpha0);
            RingMap full = compose_maps(pull, transport);
            std::vector<Mat> per_degree;
            for (int q = 0; q <= max_degree; ++q) {
                Mat amb = map_matrix(full, q);
                Mat img = mat_mul(amb, out.value_bases[y][q]);
                const Mat& bx = out.value_bases[x][q];
                Mat restricted(bx.cols, img.cols);
                for (std::size_t j = 0; j < img.cols; ++j) {
                    Vec col(img.rows);
                    for (std::size_t i = 0; i < img.rows; ++i)
                        col[i] = img(i, j);
                    auto sol = solve(bx, col);
                    if (!sol)
                        throw error("slominska_diagram: restriction leaves the invariant "
                                    "subspace");
                    for (std::size_t i = 0; i < bx.cols; ++i)
                        restricted(i, j) = (*sol)[i];
                }
                per_degree.push_back(std::move(restricted));
            }
            dg.maps[{static_cast<int>(x), static_cast<int>(y)}] = std::move(per_degree);
        }

    dg.poset = std::move(poset);
    dg.validate();
    out.diagram = std::move(dg);
    return out;
}

/* ------------------------------------------------------------------ */
/* The genus-2 assembly                                                */
/* ------------------------------------------------------------------ */

struct U2Report {
    BettiTable betti;
    bool lim1_zero = false;
    bool pi_star_iso = false;
    std::vector<std::pair<std::string, bool>> relations_checked;
    std::vector<std::string> generators;
    LimTable lims;
};

/* Runs the full genus-2 pipeline: the three-element diagram, its derived
   limits, the isomorphism check on the collapse map, and the product
   relations of the named generators, all inside the theta ring. */
inline U2Report assemble_u2(int max_degree, const Config& cfg = default_config()) {
    if (max_degree < 8)
        throw invalid_input("assemble_u2: requires max degree >= 8");
    U2Report report;
    SlominskaDiagram sd = slominska_diagram(2, 0, max_degree, std::nullopt, cfg);
    const ChainPoset& poset = sd.diagram.poset;
    report.lims = derived_limits(sd.diagram, max_degree);

    /* identify the three elements */
    int theta_el = -1, rose_el = -1, chain_el = -1;
    for (std::size_t e = 0; e < poset.elements.size(); ++e) {
        const auto& el = poset.elements[e];
        if (el.chain.length() == 1)
            chain_el = static_cast<int>(e);
        else if (el.chain.object->graph.num_edges() == 3)
            theta_el = static_cast<int>(e);
        else
            rose_el = static_cast<int>(e);
    }
    if (theta_el < 0 || rose_el < 0 || chain_el < 0)
        throw error("assemble_u2: unexpected genus-2 poset");

    report.betti.truncation = max_degree;
    report.lim1_zero = true;
    for (int q = 0; q <= max_degree; ++q) {
        long b = report.lims.rank(0, q);
        if (b)
            report.betti.ranks[q] = b;
        for (int p = 1; p <= report.lims.depth; ++p)
            if (report.lims.rank(p, q))
                report.lim1_zero = false;
    }

    /* the collapse map restricts to an isomorphism of invariant subspaces */
    report.pi_star_iso = true;
    for (int q = 0; q <= max_degree; ++q) {
        const Mat& m = sd.diagram.map_at(chain_el, rose_el, q);
        if (m.rows != m.cols || rank(m) != m.rows)
            report.pi_star_iso = false;
    }

    /* named generators and their product relations, inside the theta ring.
       The presentation labels follow the Q[gamma1,gamma2,eps] form: eps sits
       in the same wedge summand as u1^2, so the vanishing products pair eps
       and gamma1 := u2^2. */
    const HGammaRing& theta = sd.object_rings[sd.element_object[theta_el]];
    RingElement c1 = RingElement::even_gen(theta.pres, 0);
    RingElement c2 = RingElement::even_gen(theta.pres, 1);
    RingElement u1 = c1.plus(c2).scaled(Rat(1, 2));
    RingElement u2 = c1.minus(c2).scaled(Rat(1, 2));
    RingElement gamma1 = u2.pow(2);
    RingElement gamma2 = u1.pow(2);
    RingElement eps = theta.beta(0).times(theta.beta(1)).times(u1);
    report.generators = {
        "gamma1 = u2^2 (degree 4), u2 = (c1 - c2)/2",
        "gamma2 = u1^2 (degree 4), u1 = (c1 + c2)/2",
        "eps = b1*b2*u1 (degree 8)",
    };
    report.relations_checked = {
        {"eps^2 = 0", eps.times(eps).is_zero()},
        {"gamma1*gamma2 = 0", gamma1.times(gamma2).is_zero()},
        {"gamma1*eps = 0", gamma1.times(eps).is_zero()},
    };
    /* the non-relation: gamma2^k eps realises the third class in degree
       4k + 8, so it must not vanish */
    if (gamma2.times(eps).is_zero())
        throw error("assemble_u2: gamma2*eps vanished unexpectedly");

    /* the limit is identified with the invariants of the full automorphism
       group of theta: same dimensions in every degree */
    for (int q = 0; q <= max_degree; ++q)
        if (report.lims.rank(0, q) != sd.diagram.dim(theta_el, q))
            throw error("assemble_u2: limit does not match the invariant subring");
    return report;
}

} // namespace prime_moduli

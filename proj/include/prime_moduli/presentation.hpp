#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "prime_moduli/groebner.hpp"
#include "prime_moduli/linalg.hpp"
#include "prime_moduli/poly.hpp"

namespace prime_moduli {

struct GenInfo {
    std::string name;
    int degree;
};

/* A graded-commutative Q-algebra presented by even polynomial generators,
   odd exterior generators, and homogeneous relations among the even ones.
   Odd generators implicitly satisfy x^2 = 0 and Koszul commutation, so they
   never enter the Groebner machinery. Immutable after construction. */
class GradedPresentation {
  public:
    std::vector<GenInfo> even_gens;
    std::vector<GenInfo> odd_gens;
    std::vector<Poly> relations;
    MonoOrder order;
    std::vector<Poly> groebner_basis;

    static std::shared_ptr<const GradedPresentation>
    make(std::vector<GenInfo> even, std::vector<GenInfo> odd, std::vector<Poly> rels,
         const Config& cfg = default_config()) {
        auto p = std::make_shared<GradedPresentation>();
        p->even_gens = std::move(even);
        p->odd_gens = std::move(odd);
        for (const auto& g : p->even_gens) {
            if (g.degree <= 0 || g.degree % 2 != 0)
                throw invalid_input("even generator must have positive even degree: " + g.name);
            p->order.degrees.push_back(g.degree);
        }
        for (const auto& g : p->odd_gens)
            if (g.degree <= 0 || g.degree % 2 != 1)
                throw invalid_input("odd generator must have positive odd degree: " + g.name);
        if (p->odd_gens.size() > 31)
            throw resource_cap("too many odd generators");
        p->relations = std::move(rels);
        for (const auto& r : p->relations)
            if (!r.is_zero() && !r.is_homogeneous(p->order))
                throw invalid_input("relations must be homogeneous");
        p->groebner_basis = buchberger(p->relations, p->order, cfg.groebner_pair_cap);
        return p;
    }

    std::size_t n_even() const { return even_gens.size(); }
    std::size_t n_odd() const { return odd_gens.size(); }

    int odd_mask_degree(std::uint32_t mask) const {
        int d = 0;
        for (std::size_t i = 0; i < odd_gens.size(); ++i)
            if (mask & (1u << i))
                d += odd_gens[i].degree;
        return d;
    }

    std::vector<std::string> even_names() const {
        std::vector<std::string> n;
        for (const auto& g : even_gens)
            n.push_back(g.name);
        return n;
    }

    Poly normal_form_poly(const Poly& p) const { return reduce(p, groebner_basis, order); }
};

using PresRef = std::shared_ptr<const GradedPresentation>;

/* Sign of moving the odd monomial `b` past the odd monomial `a` when forming
   a*b in increasing-index normal form: (-1)^{inversions}. */
inline int koszul_sign(std::uint32_t a, std::uint32_t b) {
    int inversions = 0;
    for (int i = 0; i < 32; ++i) {
        if (!(b & (1u << i)))
            continue;
        /* count members of a with index > i */
        std::uint32_t higher = a & ~((1u << (i + 1)) - 1);
        inversions += std::popcount(higher);
    }
    return inversions % 2 == 0 ? 1 : -1;
}

/* An element in normal form: a map (squarefree odd monomial -> reduced even
   polynomial). Zero is the empty map. */
class RingElement {
  public:
    PresRef pres;
    std::map<std::uint32_t, Poly> parts;

    RingElement() = default;
    explicit RingElement(PresRef p) : pres(std::move(p)) {}

    static RingElement zero(PresRef p) { return RingElement(std::move(p)); }

    static RingElement from_poly(PresRef p, const Poly& poly) {
        RingElement e(p);
        Poly nf = p->normal_form_poly(poly);
        if (!nf.is_zero())
            e.parts[0] = std::move(nf);
        return e;
    }

    static RingElement one(PresRef p) {
        return from_poly(p, Poly::constant(Rat(1), p->n_even()));
    }

    static RingElement even_gen(PresRef p, std::size_t i) {
        Mono m = mono_one(p->n_even());
        m[i] = 1;
        return from_poly(p, Poly::monomial(std::move(m)));
    }

    static RingElement odd_gen(PresRef p, std::size_t i) {
        RingElement e(p);
        e.parts[1u << i] = Poly::constant(Rat(1), p->n_even());
        return e;
    }

    bool is_zero() const { return parts.empty(); }

    /* degree of a homogeneous element; -1 for zero */
    int degree() const {
        if (parts.empty())
            return -1;
        const auto& [mask, poly] = *parts.begin();
        return pres->odd_mask_degree(mask) + poly.degree(pres->order);
    }

    bool is_homogeneous() const {
        int d = degree();
        for (const auto& [mask, poly] : parts) {
            if (!poly.is_homogeneous(pres->order))
                return false;
            if (pres->odd_mask_degree(mask) + poly.degree(pres->order) != d)
                return false;
        }
        return true;
    }

    RingElement& add_scaled(const RingElement& o, const Rat& c) {
        for (const auto& [mask, poly] : o.parts) {
            auto it = parts.find(mask);
            if (it == parts.end()) {
                Poly scaled = poly.scaled(c);
                if (!scaled.is_zero())
                    parts[mask] = std::move(scaled);
            } else {
                it->second.add_scaled(poly, c, pres->order);
                if (it->second.is_zero())
                    parts.erase(it);
            }
        }
        return *this;
    }

    RingElement plus(const RingElement& o) const {
        RingElement r = *this;
        r.add_scaled(o, Rat(1));
        return r;
    }

    RingElement minus(const RingElement& o) const {
        RingElement r = *this;
        r.add_scaled(o, Rat(-1));
        return r;
    }

    RingElement scaled(const Rat& c) const {
        RingElement r(pres);
        if (c == 0)
            return r;
        for (const auto& [mask, poly] : parts)
            r.parts[mask] = poly.scaled(c);
        return r;
    }

    RingElement times(const RingElement& o) const {
        RingElement r(pres);
        for (const auto& [m1, p1] : parts)
            for (const auto& [m2, p2] : o.parts) {
                if (m1 & m2)
                    continue; /* odd generators square to zero */
                Rat sign(koszul_sign(m1, m2));
                Poly prod = pres->normal_form_poly(p1.times(p2, pres->order));
                if (prod.is_zero())
                    continue;
                std::uint32_t mask = m1 | m2;
                auto it = r.parts.find(mask);
                if (it == r.parts.end()) {
                    Poly scaled = prod.scaled(sign);
                    r.parts[mask] = std::move(scaled);
                } else {
                    it->second.add_scaled(prod, sign, pres->order);
                    if (it->second.is_zero())
                        r.parts.erase(it);
                }
            }
        return r;
    }

    RingElement pow(int k) const {
        RingElement r = one(pres);
        for (int i = 0; i < k; ++i)
            r = r.times(*this);
        return r;
    }

    bool operator==(const RingElement& o) const { return parts == o.parts; }

    std::string to_string() const {
        if (parts.empty())
            return "0";
        std::string s;
        auto names = pres->even_names();
        for (const auto& [mask, poly] : parts) {
            std::string odd;
            for (std::size_t i = 0; i < pres->n_odd(); ++i)
                if (mask & (1u << i)) {
                    if (!odd.empty())
                        odd += "*";
                    odd += pres->odd_gens[i].name;
                }
            if (!s.empty())
                s += " + ";
            if (odd.empty())
                s += poly_to_string(poly, names);
            else
                s += "(" + poly_to_string(poly, names) + ")*" + odd;
        }
        return s;
    }
};

inline bool poly_equal(const Poly& a, const Poly& b) { return a == b; }

/* normal_form: the element-level reduction (idempotent, linear, and zero
   exactly on the ideal). Elements constructed through the API are already
   in normal form; this re-normalises arbitrary part data. */
inline RingElement normal_form(const RingElement& e) {
    RingElement r(e.pres);
    for (const auto& [mask, poly] : e.parts) {
        Poly nf = e.pres->normal_form_poly(poly);
        if (!nf.is_zero())
            r.parts[mask] = std::move(nf);
    }
    return r;
}

/* ------------------------------------------------------------------ */
/* Graded bases and Betti tables                                       */
/* ------------------------------------------------------------------ */

struct BasisMonomial {
    std::uint32_t odd_mask;
    Mono even_mono;
};

/* Q-basis of the degree-d piece: products (squarefree odd monomial) x
   (standard even monomial), odd masks ascending, even monomials descending
   in the monomial order. */
inline std::vector<BasisMonomial> graded_basis(const PresRef& p, int d) {
    std::vector<BasisMonomial> out;
    for (std::uint32_t mask = 0; mask < (1u << p->n_odd()); ++mask) {
        int od = p->odd_mask_degree(mask);
        if (od > d)
            continue;
        for (auto& m : standard_monomials(p->groebner_basis, p->order, d - od))
            out.push_back({mask, std::move(m)});
    }
    /* keep all odd-mask blocks together, masks ascending */
    std::stable_sort(out.begin(), out.end(),
                     [](const BasisMonomial& a, const BasisMonomial& b) {
                         return a.odd_mask < b.odd_mask;
                     });
    return out;
}

inline RingElement basis_element(const PresRef& p, const BasisMonomial& bm) {
    RingElement e(p);
    e.parts[bm.odd_mask] = Poly::monomial(bm.even_mono);
    return e;
}

/* Coordinates of a normal-form element in the degree-d graded basis. */
inline Vec element_coordinates(const RingElement& e, const std::vector<BasisMonomial>& basis) {
    std::map<std::pair<std::uint32_t, Mono>, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i)
        index[{basis[i].odd_mask, basis[i].even_mono}] = i;
    Vec v(basis.size(), Rat(0));
    for (const auto& [mask, poly] : e.parts)
        for (const auto& t : poly.terms()) {
            auto it = index.find({mask, t.mono});
            if (it == index.end())
                throw error("element_coordinates: monomial outside the graded basis");
            v[it->second] = t.coeff;
        }
    return v;
}

struct BettiTable {
    int truncation = 0;
    std::map<int, long> ranks;

    long rank(int d) const {
        auto it = ranks.find(d);
        return it == ranks.end() ? 0 : it->second;
    }

    bool operator==(const BettiTable& o) const {
        if (truncation != o.truncation)
            return false;
        for (int d = 0; d <= truncation; ++d)
            if (rank(d) != o.rank(d))
                return false;
        return true;
    }
};

inline BettiTable betti(const PresRef& p, int max_degree) {
    BettiTable t;
    t.truncation = max_degree;
    for (int d = 0; d <= max_degree; ++d) {
        long r = static_cast<long>(graded_basis(p, d).size());
        if (r)
            t.ranks[d] = r;
    }
    return t;
}

/* Per-degree injectivity of multiplication by a fixed homogeneous even
   element (rank of the multiplication matrix). */
inline std::map<int, bool> is_injective_multiplication(const PresRef& p, const RingElement& x,
                                                       int max_degree) {
    if (!x.is_homogeneous())
        throw invalid_input("is_injective_multiplication: element not homogeneous");
    std::map<int, bool> out;
    int dx = x.degree();
    for (int d = 0; d <= max_degree; ++d) {
        auto src = graded_basis(p, d);
        if (src.empty()) {
            out[d] = true;
            continue;
        }
        if (x.is_zero()) {
            out[d] = false;
            continue;
        }
        auto dst = graded_basis(p, d + dx);
        Mat m(dst.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            RingElement prod = basis_element(p, src[j]).times(x);
            Vec col = element_coordinates(prod, dst);
            for (std::size_t i = 0; i < dst.size(); ++i)
                m(i, j) = col[i];
        }
        out[d] = rank(m) == src.size();
    }
    return out;
}

/* ------------------------------------------------------------------ */
/* Ring maps                                                           */
/* ------------------------------------------------------------------ */

/* A degree-preserving algebra homomorphism given on generators. */
struct RingMap {
    PresRef source, target;
    std::vector<RingElement> even_images;
    std::vector<RingElement> odd_images;

    RingElement apply(const RingElement& e) const {
        RingElement out = RingElement::zero(target);
        for (const auto& [mask, poly] : e.parts) {
            /* image of the odd monomial, factors in increasing index order */
            RingElement odd_part = RingElement::one(target);
            for (std::size_t i = 0; i < source->n_odd(); ++i)
                if (mask & (1u << i))
                    odd_part = odd_part.times(odd_images[i]);
            for (const auto& t : poly.terms()) {
                RingElement term = odd_part.scaled(t.coeff);
                for (std::size_t i = 0; i < source->n_even(); ++i)
                    for (int k = 0; k < t.mono[i]; ++k)
                        term = term.times(even_images[i]);
                out.add_scaled(term, Rat(1));
            }
        }
        return out;
    }

    /* Checks degrees, parities, and that every source relation maps to zero. */
    void verify() const {
        if (even_images.size() != source->n_even() || odd_images.size() != source->n_odd())
            throw invalid_input("ring map: image count mismatch");
        for (std::size_t i = 0; i < even_images.size(); ++i) {
            const auto& im = even_images[i];
            if (im.is_zero())
                continue;
            if (!im.is_homogeneous() || im.degree() != source->even_gens[i].degree)
                throw invalid_input("ring map: degree mismatch on " + source->even_gens[i].name);
            for (const auto& [mask, poly] : im.parts)
                if (target->odd_mask_degree(mask) % 2 != 0)
                    throw invalid_input("ring map: even generator with odd image");
        }
        for (std::size_t i = 0; i < odd_images.size(); ++i) {
            const auto& im = odd_images[i];
            if (im.is_zero())
                continue;
            if (!im.is_homogeneous() || im.degree() != source->odd_gens[i].degree)
                throw invalid_input("ring map: degree mismatch on " + source->odd_gens[i].name);
            for (const auto& [mask, poly] : im.parts)
                if (target->odd_mask_degree(mask) % 2 != 1)
                    throw invalid_input("ring map: odd generator with even image");
        }
        for (const auto& r : source->relations) {
            /* apply the raw relation polynomial (not its normal form, which
               is zero by construction) */
            RingElement raw(source);
            if (!r.is_zero())
                raw.parts[0] = r;
            if (!apply(raw).is_zero())
                throw relation_violation("ring map does not kill the relation " +
                                         poly_to_string(r, source->even_names()));
        }
    }
};

inline RingMap identity_map(const PresRef& p) {
    RingMap m;
    m.source = p;
    m.target = p;
    for (std::size_t i = 0; i < p->n_even(); ++i)
        m.even_images.push_back(RingElement::even_gen(p, i));
    for (std::size_t i = 0; i < p->n_odd(); ++i)
        m.odd_images.push_back(RingElement::odd_gen(p, i));
    return m;
}

inline RingMap compose_maps(const RingMap& g, const RingMap& f) {
    if (f.target->n_even() != g.source->n_even() || f.target->n_odd() != g.source->n_odd())
        throw invalid_input("compose_maps: presentations do not match");
    RingMap h;
    h.source = f.source;
    h.target = g.target;
    for (const auto& im : f.even_images)
        h.even_images.push_back(g.apply(im));
    for (const auto& im : f.odd_images)
        h.odd_images.push_back(g.apply(im));
    return h;
}

inline bool maps_equal(const RingMap& a, const RingMap& b) {
    if (a.even_images.size() != b.even_images.size() ||
        a.odd_images.size() != b.odd_images.size())
        return false;
    for (std::size_t i = 0; i < a.even_images.size(); ++i)
        if (!(a.even_images[i] == b.even_images[i]))
            return false;
    for (std::size_t i = 0; i < a.odd_images.size(); ++i)
        if (!(a.odd_images[i] == b.odd_images[i]))
            return false;
    return true;
}

/* Matrix of a ring map between the degree-d graded bases. */
inline Mat map_matrix(const RingMap& m, int d) {
    auto src = graded_basis(m.source, d);
    auto dst = graded_basis(m.target, d);
    Mat out(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        Vec col = element_coordinates(m.apply(basis_element(m.source, src[j])), dst);
        for (std::size_t i = 0; i < dst.size(); ++i)
            out(i, j) = col[i];
    }
    return out;
}

} // namespace prime_moduli

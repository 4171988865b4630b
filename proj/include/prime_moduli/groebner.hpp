#pragma once

#include <functional>
#include <vector>

#include "prime_moduli/config.hpp"
#include "prime_moduli/poly.hpp"

namespace prime_moduli {

/* Full reduction modulo a list of polynomials: the remainder contains no
   term divisible by any leading monomial. Reduction always picks the first
   divisor in list order, so results are deterministic. */
inline Poly reduce(Poly p, const std::vector<Poly>& basis, const MonoOrder& order) {
    Poly remainder;
    while (!p.is_zero()) {
        bool reduced = false;
        const Term& lt = p.leading();
        for (const Poly& g : basis) {
            if (g.is_zero())
                continue;
            if (mono_divides(g.leading().mono, lt.mono)) {
                Rat factor = lt.coeff / g.leading().coeff;
                p.add_scaled(g.times_term(mono_div(lt.mono, g.leading().mono), Rat(1)), -factor,
                             order);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            remainder.add_scaled(Poly::monomial(lt.mono, lt.coeff), Rat(1), order);
            Poly drop = Poly::monomial(lt.mono, lt.coeff);
            p.add_scaled(drop, Rat(-1), order);
        }
    }
    return remainder;
}

inline Poly s_polynomial(const Poly& f, const Poly& g, const MonoOrder& order) {
    Mono l = mono_lcm(f.leading().mono, g.leading().mono);
    Poly a = f.times_term(mono_div(l, f.leading().mono), Rat(1) / f.leading().coeff);
    Poly b = g.times_term(mono_div(l, g.leading().mono), Rat(1) / g.leading().coeff);
    a.add_scaled(b, Rat(-1), order);
    return a;
}

/* Buchberger's algorithm with the product (coprimality) criterion, followed
   by minimalisation and interreduction. The result is the reduced Groebner
   basis, monic and sorted by leading monomial, hence unique for the ideal
   and order. */
inline std::vector<Poly> buchberger(const std::vector<Poly>& generators, const MonoOrder& order,
                                    long pair_cap = default_config().groebner_pair_cap) {
    std::vector<Poly> g;
    for (const auto& f : generators)
        if (!f.is_zero())
            g.push_back(f);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    auto push_pairs = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i)
            pairs.push_back({i, k});
    };
    for (std::size_t k = 0; k < g.size(); ++k)
        push_pairs(k);
    long processed = 0;
    while (!pairs.empty()) {
        auto [i, j] = pairs.back();
        pairs.pop_back();
        if (++processed > pair_cap)
            throw resource_cap("Groebner pair budget exhausted");
        const Mono& mi = g[i].leading().mono;
        const Mono& mj = g[j].leading().mono;
        /* product criterion: coprime leading monomials reduce to zero */
        bool coprime = true;
        for (std::size_t t = 0; t < mi.size(); ++t)
            if (mi[t] > 0 && mj[t] > 0)
                coprime = false;
        if (coprime)
            continue;
        Poly r = reduce(s_polynomial(g[i], g[j], order), g, order);
        if (!r.is_zero()) {
            g.push_back(r);
            push_pairs(g.size() - 1);
        }
    }
    /* minimalise: drop elements whose leading monomial is divisible by
       another's */
    std::vector<Poly> minimal;
    std::sort(g.begin(), g.end(), [&](const Poly& a, const Poly& b) {
        return order.compare(a.leading().mono, b.leading().mono) < 0;
    });
    for (const auto& f : g) {
        bool dominated = false;
        for (const auto& h : minimal)
            if (mono_divides(h.leading().mono, f.leading().mono))
                dominated = true;
        if (!dominated)
            minimal.push_back(f);
    }
    /* interreduce and normalise to monic */
    std::vector<Poly> out;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i)
                others.push_back(minimal[j]);
        Poly r = reduce(minimal[i], others, order);
        if (!r.is_zero())
            out.push_back(r.scaled(Rat(1) / r.leading().coeff));
    }
    std::sort(out.begin(), out.end(), [&](const Poly& a, const Poly& b) {
        return order.compare(a.leading().mono, b.leading().mono) < 0;
    });
    return out;
}

/* The Buchberger criterion as a post-hoc assertion: every S-polynomial of
   the given set reduces to zero against it. */
inline bool passes_buchberger_criterion(const std::vector<Poly>& basis, const MonoOrder& order) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (!reduce(s_polynomial(basis[i], basis[j], order), basis, order).is_zero())
                return false;
    return true;
}

/* All monomials of exact weighted degree d not divisible by any leading
   monomial of the basis, in descending monomial order. */
inline std::vector<Mono> standard_monomials(const std::vector<Poly>& groebner_basis,
                                            const MonoOrder& order, int d) {
    std::vector<Mono> lts;
    for (const auto& g : groebner_basis)
        lts.push_back(g.leading().mono);
    std::size_t ngens = order.degrees.size();
    std::vector<Mono> out;
    Mono current = mono_one(ngens);
    auto blocked_now = [&]() {
        for (const auto& lt : lts)
            if (mono_divides(lt, current))
                return true;
        return false;
    };
    std::function<void(std::size_t, int)> rec = [&](std::size_t gen, int remaining) {
        if (remaining == 0) {
            if (!blocked_now())
                out.push_back(current);
            return;
        }
        if (gen == ngens)
            return;
        /* exponent 0 first, then increasing */
        rec(gen + 1, remaining);
        int dg = order.degrees[gen];
        int emax = remaining / dg;
        for (int e = 1; e <= emax; ++e) {
            current[gen] = e;
            bool blocked = false;
            for (const auto& lt : lts)
                if (mono_divides(lt, current)) {
                    blocked = true;
                    break;
                }
            if (!blocked)
                rec(gen + 1, remaining - e * dg);
            if (blocked)
                break; /* higher exponents stay divisible */
        }
        current[gen] = 0;
    };
    rec(0, d);
    std::sort(out.begin(), out.end(),
              [&](const Mono& a, const Mono& b) { return order.compare(a, b) > 0; });
    return out;
}

} // namespace prime_moduli

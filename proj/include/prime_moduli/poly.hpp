#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "prime_moduli/rational.hpp"

namespace prime_moduli {

/* Exponent vector over the even generators of a presentation. */
using Mono = std::vector<int>;

inline Mono mono_one(std::size_t ngens) { return Mono(ngens, 0); }

inline Mono mono_mul(const Mono& a, const Mono& b) {
    Mono c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = a[i] + b[i];
    return c;
}

inline bool mono_divides(const Mono& a, const Mono& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

inline Mono mono_div(const Mono& a, const Mono& b) {
    Mono c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = a[i] - b[i];
    return c;
}

inline Mono mono_lcm(const Mono& a, const Mono& b) {
    Mono c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = std::max(a[i], b[i]);
    return c;
}

inline bool mono_is_one(const Mono& m) {
    for (int e : m)
        if (e)
            return false;
    return true;
}

/* Graded lexicographic order: total weighted degree first, then lex with the
   earlier-listed generator counting as the larger one. */
struct MonoOrder {
    std::vector<int> degrees;

    int weighted_degree(const Mono& m) const {
        int d = 0;
        for (std::size_t i = 0; i < m.size(); ++i)
            d += m[i] * degrees[i];
        return d;
    }

    /* negative if a < b, zero if equal, positive if a > b */
    int compare(const Mono& a, const Mono& b) const {
        int da = weighted_degree(a), db = weighted_degree(b);
        if (da != db)
            return da < db ? -1 : 1;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i])
                return a[i] > b[i] ? 1 : -1;
        return 0;
    }
};

struct Term {
    Mono mono;
    Rat coeff;
};

/* A polynomial in the even generators: terms sorted descending, no zeros. */
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Term> terms, const MonoOrder& order) {
        terms_ = std::move(terms);
        normalize(order);
    }

    static Poly zero() { return Poly(); }

    static Poly constant(const Rat& c, std::size_t ngens) {
        Poly p;
        if (c != 0)
            p.terms_.push_back({mono_one(ngens), c});
        return p;
    }

    static Poly monomial(Mono m, Rat c = Rat(1)) {
        Poly p;
        if (c != 0)
            p.terms_.push_back({std::move(m), std::move(c)});
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& leading() const { return terms_.front(); }

    bool is_homogeneous(const MonoOrder& order) const {
        for (const auto& t : terms_)
            if (order.weighted_degree(t.mono) != order.weighted_degree(terms_.front().mono))
                return false;
        return true;
    }

    int degree(const MonoOrder& order) const {
        return is_zero() ? -1 : order.weighted_degree(terms_.front().mono);
    }

    Poly& add_scaled(const Poly& other, const Rat& c, const MonoOrder& order) {
        if (c == 0 || other.is_zero())
            return *this;
        std::vector<Term> merged;
        merged.reserve(terms_.size() + other.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() && j < other.terms_.size()) {
            int cmp = order.compare(terms_[i].mono, other.terms_[j].mono);
            if (cmp > 0)
                merged.push_back(std::move(terms_[i++]));
            else if (cmp < 0)
                merged.push_back({other.terms_[j].mono, c * other.terms_[j].coeff}), ++j;
            else {
                Rat s = terms_[i].coeff + c * other.terms_[j].coeff;
                if (s != 0)
                    merged.push_back({terms_[i].mono, std::move(s)});
                ++i;
                ++j;
            }
        }
        while (i < terms_.size())
            merged.push_back(std::move(terms_[i++]));
        while (j < other.terms_.size())
            merged.push_back({other.terms_[j].mono, c * other.terms_[j].coeff}), ++j;
        terms_ = std::move(merged);
        return *this;
    }

    Poly scaled(const Rat& c) const {
        Poly p;
        if (c == 0)
            return p;
        p.terms_ = terms_;
        for (auto& t : p.terms_)
            t.coeff *= c;
        return p;
    }

    /* multiply by a single term */
    Poly times_term(const Mono& m, const Rat& c) const {
        Poly p;
        if (c == 0)
            return p;
        p.terms_.reserve(terms_.size());
        for (const auto& t : terms_)
            p.terms_.push_back({mono_mul(t.mono, m), t.coeff * c});
        return p; /* order is preserved by multiplication with a fixed monomial */
    }

    Poly times(const Poly& other, const MonoOrder& order) const {
        Poly acc;
        for (const auto& t : other.terms_)
            acc.add_scaled(times_term(t.mono, Rat(1)), t.coeff, order);
        return acc;
    }

    bool operator==(const Poly& o) const {
        if (terms_.size() != o.terms_.size())
            return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff)
                return false;
        return true;
    }

  private:
    std::vector<Term> terms_;

    void normalize(const MonoOrder& order) {
        std::sort(terms_.begin(), terms_.end(), [&](const Term& x, const Term& y) {
            return order.compare(x.mono, y.mono) > 0;
        });
        std::vector<Term> out;
        for (auto& t : terms_) {
            if (t.coeff == 0)
                continue;
            if (!out.empty() && out.back().mono == t.mono)
                out.back().coeff += t.coeff;
            else
                out.push_back(std::move(t));
            if (!out.empty() && out.back().coeff == 0)
                out.pop_back();
        }
        terms_ = std::move(out);
    }
};

inline std::string mono_to_string(const Mono& m, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += names[i];
        if (m[i] > 1)
            s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

inline std::string poly_to_string(const Poly& p, const std::vector<std::string>& names) {
    if (p.is_zero())
        return "0";
    std::string s;
    for (const auto& t : p.terms()) {
        Rat c = t.coeff;
        if (s.empty()) {
            if (c < 0) {
                s += "-";
                c = -c;
            }
        } else {
            s += c < 0 ? " - " : " + ";
            if (c < 0)
                c = -c;
        }
        std::string ms = mono_to_string(t.mono, names);
        if (c != 1 || ms == "1") {
            s += rat_to_string(c);
            if (ms != "1")
                s += "*";
        }
        if (ms != "1")
            s += ms;
    }
    return s;
}

} // namespace prime_moduli

#pragma once

#include <json.hpp>

#include <string>

#include "prime_moduli/presentation.hpp"

namespace prime_moduli {

/* JSON element encoding: {monomial-string: "p/q"} with monomials written as
   gen^k products separated by '*' ("1" for the unit monomial). Odd
   generators appear with implicit exponent 1, in their listed order. */

inline nlohmann::ordered_json element_to_json(const RingElement& e) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    auto names = e.pres->even_names();
    for (const auto& [mask, poly] : e.parts) {
        std::string odd;
        for (std::size_t i = 0; i < e.pres->n_odd(); ++i)
            if (mask & (1u << i)) {
                if (!odd.empty())
                    odd += "*";
                odd += e.pres->odd_gens[i].name;
            }
        for (const auto& t : poly.terms()) {
            std::string mono = mono_to_string(t.mono, names);
            std::string key;
            if (odd.empty())
                key = mono;
            else if (mono == "1")
                key = odd;
            else
                key = odd + "*" + mono;
            j[key] = rat_to_string(t.coeff);
        }
    }
    return j;
}

/* Parses a monomial string into (odd mask, even exponent vector). */
inline std::pair<std::uint32_t, Mono> parse_monomial(const PresRef& p, const std::string& s) {
    std::uint32_t mask = 0;
    Mono mono = mono_one(p->n_even());
    if (s == "1" || s.empty())
        return {mask, mono};
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t star = s.find('*', pos);
        std::string factor = s.substr(pos, star == std::string::npos ? star : star - pos);
        pos = star == std::string::npos ? s.size() : star + 1;
        int exponent = 1;
        std::string name = factor;
        auto caret = factor.find('^');
        if (caret != std::string::npos) {
            name = factor.substr(0, caret);
            try {
                exponent = std::stoi(factor.substr(caret + 1));
            } catch (const std::exception&) {
                throw invalid_input("bad exponent in monomial: " + factor);
            }
            if (exponent < 0)
                throw invalid_input("negative exponent in monomial: " + factor);
        }
        bool found = false;
        for (std::size_t i = 0; i < p->n_even(); ++i)
            if (p->even_gens[i].name == name) {
                mono[i] += exponent;
                found = true;
                break;
            }
        if (!found)
            for (std::size_t i = 0; i < p->n_odd(); ++i)
                if (p->odd_gens[i].name == name) {
                    if (exponent > 1 || (mask & (1u << i)))
                        throw invalid_input("odd generator repeated in monomial: " + s);
                    if (exponent == 1)
                        mask |= 1u << i;
                    found = true;
                    break;
                }
        if (!found)
            throw invalid_input("unknown generator in monomial: " + name);
    }
    return {mask, mono};
}

inline RingElement element_from_json(const PresRef& p, const nlohmann::ordered_json& j) {
    RingElement e = RingElement::zero(p);
    for (auto& [key, value] : j.items()) {
        auto [mask, mono] = parse_monomial(p, key);
        RingElement term(p);
        term.parts[mask] = Poly::monomial(mono, rat_from_string(value.get<std::string>()));
        e.add_scaled(term, Rat(1));
    }
    return normal_form(e);
}

} // namespace prime_moduli

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

#include "prime_moduli/config.hpp"

namespace prime_moduli {

/* Exact rational scalar. cpp_rational keeps values in lowest terms with a
   positive denominator, which is exactly the Scalar invariant we need. */
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/* Serialise as "p/q" ("p" when q == 1), the wire format for all CLI output. */
inline std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1)
        os << "/" << denominator(r);
    return os.str();
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(BigInt(s));
        BigInt p(s.substr(0, slash));
        BigInt q(s.substr(slash + 1));
        if (q == 0)
            throw invalid_input("rational with zero denominator: " + s);
        return Rat(p, q);
    } catch (const std::exception&) {
        throw invalid_input("malformed rational: " + s);
    }
}

} // namespace prime_moduli

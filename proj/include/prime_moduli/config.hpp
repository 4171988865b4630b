#pragma once

#include <stdexcept>
#include <string>

namespace prime_moduli {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Bad user input: malformed graphs, out-of-range parameters, non-forests, ... */
struct invalid_input : error {
    using error::error;
};

/* A configured budget (iso classes, Groebner pairs, degree caps) was exhausted. */
struct resource_cap : error {
    using error::error;
};

/* A candidate ring map does not kill a defining relation of its source. */
struct relation_violation : error {
    using error::error;
};

/* check_invariant_generators: an expression moved under a group element. */
struct non_invariant : error {
    using error::error;
};

/* check_invariant_generators: the monomials in the given expressions do not
   span the invariant subspace in some degree. */
struct span_gap : error {
    using error::error;
};

/* equivariant_map_on_invariants: the map fails to intertwine the actions. */
struct intertwining_violation : error {
    using error::error;
};

struct Config {
    int max_degree = 24;
    long iso_class_cap = 20000;
    long groebner_pair_cap = 2000000;
    std::string output_format = "table"; /* "table" | "json" */
};

inline const Config& default_config() {
    static const Config cfg{};
    return cfg;
}

} // namespace prime_moduli

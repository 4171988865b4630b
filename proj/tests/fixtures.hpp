#pragma once

/* Shared test fixtures: small graphs and the explicit edge collapse
   pi: Theta -> R_2 of the genus-2 example. */

#include "prime_moduli/graph.hpp"
#include "prime_moduli/morphism.hpp"

namespace pm_fixtures {

using namespace prime_moduli;

inline GraphRef marked_loop() {
    /* the no-redundant-edge object of Gr_{1,1}: a loop at a marked vertex */
    MarkedGraph mg;
    mg.graph = graph_from_edge_list(1, {{0, 0}});
    mg.genus = 1;
    mg.marking = {0};
    return make_graph_ref(std::move(mg));
}

inline GraphRef single_edge_two_marks() {
    MarkedGraph mg;
    mg.graph = graph_from_edge_list(2, {{0, 1}});
    mg.genus = 0;
    mg.marking = {0, 1};
    return make_graph_ref(std::move(mg));
}

/* The collapse of the third edge of Theta in the labelling of the extended
   example, translated to the built-in half-edge ids: Theta has edges
   e0=(0,1), e1=(2,3), e2=(4,5) with even halves at vertex 0; R_2 has loops
   (0,1) and (2,3). e0 plays the collapsed edge; the half-edge images follow
   the worked example (h1 -> h2, h1' -> h1, h2 -> h4, h2' -> h3). */
inline GraphMorphism paper_pi() {
    GraphMorphism pi;
    pi.source = builtin_theta();
    pi.target = builtin_rose2();
    pi.vertex_image = {0, 0};
    pi.half_image = {GraphMorphism::encode_vertex(0), GraphMorphism::encode_vertex(0),
                     1, 0, 3, 2};
    pi.validate();
    return pi;
}

} // namespace pm_fixtures

#include <catch2/catch_amalgamated.hpp>

#include "prime_moduli/diagram.hpp"

#include "fixtures.hpp"
#include "ring_fixtures.hpp"

using namespace prime_moduli;
using namespace pm_ring_fixtures;

namespace {

/* hand-built poset with elements {0, 1, 2} and 0 < 1, 0 < 2 (a cospan
   F(1) -> F(0) <- F(2) after applying the contravariant values) */
ChainPoset cospan_poset() {
    ChainPoset p;
    p.elements.resize(3);
    p.below.assign(3, std::vector<char>(3, 0));
    p.below[0][1] = 1;
    p.below[0][2] = 1;
    p.depth = 1;
    return p;
}

Diagram constant_diagram(ChainPoset poset, int dims, int max_degree) {
    Diagram dg;
    dg.max_degree = max_degree;
    std::size_t n = poset.elements.size();
    dg.dims.assign(n, std::vector<long>(max_degree + 1, dims));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (poset.below[x][y])
                dg.maps[{static_cast<int>(x), static_cast<int>(y)}] =
                    std::vector<Mat>(max_degree + 1, Mat::identity(dims));
    dg.poset = std::move(poset);
    return dg;
}

} // namespace

TEST_CASE("derived limits over a point return the value") {
    ChainPoset point;
    point.elements.resize(1);
    point.below.assign(1, std::vector<char>(1, 0));
    Diagram dg;
    dg.max_degree = 3;
    dg.dims = {{2, 0, 5, 1}};
    dg.poset = point;
    LimTable t = derived_limits(dg, 3);
    CHECK(t.rank(0, 0) == 2);
    CHECK(t.rank(0, 1) == 0);
    CHECK(t.rank(0, 2) == 5);
    CHECK(t.rank(0, 3) == 1);
    for (int q = 0; q <= 3; ++q)
        CHECK(t.rank(1, q) == 0);
}

TEST_CASE("constant diagram on the genus-2 poset has vanishing higher limits") {
    auto poset = chain_poset(2, 0, true);
    Diagram dg = constant_diagram(poset, 1, 2);
    dg.validate();
    LimTable t = derived_limits(dg, 2);
    for (int q = 0; q <= 2; ++q) {
        CHECK(t.rank(0, q) == 1);
        for (int p = 1; p <= t.depth; ++p)
            CHECK(t.rank(p, q) == 0);
    }
}

TEST_CASE("cospan with one leg an isomorphism has lim^0 = A and lim^1 = 0") {
    /* F(1) = A of dim 2, F(2) = B of dim 3, F(0) = C of dim 3; the leg
       B -> C is an isomorphism, A -> C arbitrary */
    Diagram dg;
    dg.max_degree = 0;
    dg.poset = cospan_poset();
    dg.dims = {{3}, {2}, {3}};
    Mat a_to_c(3, 2);
    a_to_c(0, 0) = 1;
    a_to_c(2, 1) = 5;
    Mat b_to_c = Mat::identity(3);
    b_to_c(0, 2) = 7; /* still invertible */
    dg.maps[{0, 1}] = {a_to_c};
    dg.maps[{0, 2}] = {b_to_c};
    LimTable t = derived_limits(dg, 0);
    CHECK(t.rank(0, 0) == 2); /* lim^0 is isomorphic to A */
    CHECK(t.rank(1, 0) == 0);

    /* sanity: if both legs vanish, lim^0 = A + B and lim^1 = C */
    Diagram zero = dg;
    zero.maps[{0, 1}] = {Mat(3, 2)};
    zero.maps[{0, 2}] = {Mat(3, 3)};
    LimTable tz = derived_limits(zero, 0);
    CHECK(tz.rank(0, 0) == 5);
    CHECK(tz.rank(1, 0) == 3);
}

TEST_CASE("diagram validation rejects non-commuting restrictions") {
    /* chain 0 < 1 < 2 with mismatched composite */
    ChainPoset p;
    p.elements.resize(3);
    p.below.assign(3, std::vector<char>(3, 0));
    p.below[0][1] = p.below[1][2] = p.below[0][2] = 1;
    Diagram dg = constant_diagram(p, 1, 0);
    dg.maps[{0, 2}] = {Mat(1, 1)}; /* zero instead of identity */
    CHECK_THROWS_AS(dg.validate(), error);
}

TEST_CASE("the genus-2 diagram reproduces the Betti table of the theorem") {
    const int D = 24;
    SlominskaDiagram sd = slominska_diagram(2, 0, D);
    REQUIRE(sd.diagram.poset.elements.size() == 3);
    LimTable t = derived_limits(sd.diagram, D);
    for (int q = 0; q <= D; ++q) {
        long expect = 0;
        if (q == 0)
            expect = 1;
        else if (q == 4)
            expect = 2;
        else if (q > 4 && q % 4 == 0)
            expect = 3;
        INFO("degree " << q);
        CHECK(t.rank(0, q) == expect);
        CHECK(t.rank(1, q) == 0);
    }

    /* Mayer-Vietoris bookkeeping: 0 -> lim^0 -> A (+) B -> C -> lim^1 -> 0
       per degree, where A, B are the object values and C the chain value */
    int theta_el = -1, rose_el = -1, chain_el = -1;
    for (std::size_t e = 0; e < sd.diagram.poset.elements.size(); ++e) {
        const auto& el = sd.diagram.poset.elements[e];
        if (el.chain.length() == 1)
            chain_el = static_cast<int>(e);
        else if (el.chain.object->graph.num_edges() == 3)
            theta_el = static_cast<int>(e);
        else
            rose_el = static_cast<int>(e);
    }
    for (int q = 0; q <= D; ++q) {
        long a = sd.diagram.dim(theta_el, q);
        long b = sd.diagram.dim(rose_el, q);
        long c = sd.diagram.dim(chain_el, q);
        CHECK(t.rank(0, q) - a - b + c - t.rank(1, q) == 0);
    }
}

TEST_CASE("assemble_u2 certifies the headline computation") {
    U2Report r = assemble_u2(24);
    CHECK(r.lim1_zero);
    CHECK(r.pi_star_iso);
    for (const auto& [name, ok] : r.relations_checked) {
        INFO(name);
        CHECK(ok);
    }
    CHECK(r.betti.rank(0) == 1);
    CHECK(r.betti.rank(4) == 2);
    CHECK(r.betti.rank(8) == 3);
    CHECK(r.betti.rank(12) == 3);
    CHECK(r.betti.rank(5) == 0);
    CHECK(r.betti.rank(9) == 0);
    CHECK_THROWS_AS(assemble_u2(4), invalid_input);
}

TEST_CASE("the excluded and restricted parameter ranges are refused") {
    CHECK_THROWS_AS(slominska_diagram(1, 0, 4), invalid_input);
    /* factor data with n = 0 makes no sense */
    FactorData fd{{1}};
    CHECK_THROWS_AS(slominska_diagram(2, 0, 4, fd), invalid_input);
}

TEST_CASE("single-object diagram for two marked prime factors") {
    /* formal factors: H^*(Conf_1(P_i)) with some made-up dimensions */
    FactorData fd{{1, 0, 1}, {1, 0, 0, 2}};
    SlominskaDiagram sd = slominska_diagram(0, 2, 6, fd);
    REQUIRE(sd.diagram.poset.elements.size() == 1);
    /* the ring itself is Lambda(b1): dims 1,0,0,1 convolved with factors */
    LimTable t = derived_limits(sd.diagram, 6);
    /* (1 + t^3)(1 + t^2)(1 + 2 t^3) = 1 + t^2 + 3t^3 + 3t^5 + 2t^6 + ... */
    CHECK(t.rank(0, 0) == 1);
    CHECK(t.rank(0, 1) == 0);
    CHECK(t.rank(0, 2) == 1);
    CHECK(t.rank(0, 3) == 3);
    CHECK(t.rank(0, 5) == 3);
    CHECK(t.rank(0, 6) == 2);
    /* the odd rank matches the relative H_1 of the graph */
    const auto& ring = sd.object_rings[0];
    CHECK(ring.homology.rank() == 1);
    CHECK(ring.pres->n_odd() == 1);
}

TEST_CASE("genus-3 table is emitted with rank 1 in the corner") {
    const int D = 6;
    SlominskaDiagram sd = slominska_diagram(3, 0, D);
    LimTable t = derived_limits(sd.diagram, D);
    CHECK(t.rank(0, 0) == 1);
    /* the whole q = 0 row is the rational cohomology of the category, which
       vanishes in positive degrees for rank 3 */
    for (int p = 1; p <= t.depth; ++p)
        CHECK(t.rank(p, 0) == 0);
    CHECK(t.depth <= 2 * (3 - 1));
}

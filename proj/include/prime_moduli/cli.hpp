#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prime_moduli/conf.hpp"
#include "prime_moduli/diagram.hpp"
#include "prime_moduli/element_io.hpp"
#include "prime_moduli/enumerate.hpp"
#include "prime_moduli/json_io.hpp"

namespace prime_moduli::cli {

/* exit codes: 0 ok, 1 invalid input, 2 resource cap exhausted, 3 internal */

inline json betti_json(const BettiTable& t) {
    json j = json::object();
    for (int d = 0; d <= t.truncation; ++d)
        if (t.rank(d))
            j[std::to_string(d)] = t.rank(d);
    return j;
}

inline void print_betti_table(std::ostream& out, const BettiTable& t) {
    out << "degree rank\n";
    for (int d = 0; d <= t.truncation; ++d)
        if (t.rank(d))
            out << d << " " << t.rank(d) << "\n";
}

inline GraphRef load_graph(const std::string& spec_str) {
    if (spec_str == "theta" || spec_str == "rose2")
        return builtin_graph(spec_str);
    std::ifstream in(spec_str);
    if (!in)
        throw invalid_input("cannot open graph file: " + spec_str);
    json j;
    try {
        in >> j;
    } catch (const std::exception& ex) {
        throw invalid_input(std::string("graph file is not valid JSON: ") + ex.what());
    }
    return std::make_shared<const MarkedGraph>(graph_from_json(j));
}

/* the subgroup of Aut(theta) commuting with some collapse onto the rose */
inline std::vector<GraphMorphism> theta_collapse_stabilizer() {
    auto theta = builtin_theta();
    auto rose = builtin_rose2();
    auto pi = hom_set(theta, rose).front();
    std::vector<GraphMorphism> stab;
    for (const auto& a : automorphisms(theta))
        for (const auto& b : automorphisms(rose))
            if (compose(pi, a).same_maps(compose(b, pi))) {
                stab.push_back(a);
                break;
            }
    return stab;
}

inline std::vector<GraphMorphism> resolve_group(const GraphRef& g, const std::string& name) {
    if (name == "full" || name == "aut")
        return automorphisms(g);
    if (name == "trivial")
        return {identity_morphism(g)};
    if (name == "d8") {
        if (!is_isomorphic(*g, *builtin_rose2()))
            throw invalid_input("group d8 refers to the full automorphisms of rose2");
        return automorphisms(g);
    }
    if (name == "sym3xc2") {
        if (!is_isomorphic(*g, *builtin_theta()))
            throw invalid_input("group sym3xc2 refers to the full automorphisms of theta");
        return automorphisms(g);
    }
    if (name == "c2xc2") {
        if (!is_isomorphic(*g, *builtin_theta()))
            throw invalid_input("group c2xc2 is the collapse stabilizer inside Aut(theta)");
        return theta_collapse_stabilizer();
    }
    throw invalid_input("unknown group: " + name +
                        " (expected full, trivial, d8, sym3xc2, c2xc2)");
}

/* ------------------------------------------------------------------ */
/* subcommands                                                         */
/* ------------------------------------------------------------------ */

inline int cmd_graphs(int g, int n, bool no_redundant, const std::string& format,
                      std::ostream& out, const Config& cfg) {
    auto classes = enumerate_graphs(g, n, no_redundant, cfg);
    if (format == "json") {
        json j = json::array();
        for (const auto& c : classes) {
            json item = graph_to_json(*c);
            item["aut_order"] = automorphisms(c).size();
            item["edges"] = c->graph.num_edges();
            item["redundant_free"] = !has_redundant_edge(*c);
            j.push_back(std::move(item));
        }
        out << j.dump(2) << "\n";
    } else {
        out << "class vertices edges half_edges aut_order redundant_free\n";
        int i = 0;
        for (const auto& c : classes)
            out << i++ << " " << c->graph.num_vertices << " " << c->graph.num_edges() << " "
                << c->graph.num_half_edges() << " " << automorphisms(c).size() << " "
                << (has_redundant_edge(*c) ? "no" : "yes") << "\n";
        out << "total " << classes.size() << "\n";
    }
    return 0;
}

inline int cmd_conf_betti(int d, const std::string& variant, int max_degree,
                          const std::string& format, std::ostream& out, const Config& cfg) {
    auto ring = conf_ring(d, conf_variant_from_string(variant), cfg);
    BettiTable t = betti(ring.pres, max_degree);
    if (format == "json") {
        json j;
        j["d"] = d;
        j["variant"] = variant;
        j["max_degree"] = max_degree;
        j["betti"] = betti_json(t);
        out << j.dump(2) << "\n";
    } else {
        out << "Conf_" << d << "(S^3)" << (variant == "so4" ? " // SO(4)" : "") << "\n";
        print_betti_table(out, t);
    }
    return 0;
}

inline json hgamma_presentation_json(const HGammaRing& ring) {
    json j;
    j["even_gens"] = json::array();
    for (std::size_t i = 0; i < ring.pres->n_even(); ++i) {
        json gen;
        gen["name"] = ring.pres->even_gens[i].name;
        gen["degree"] = ring.pres->even_gens[i].degree;
        gen["triple"] = {ring.gen_triples[i][0], ring.gen_triples[i][1], ring.gen_triples[i][2]};
        gen["vertex"] = ring.graph->graph.root[ring.gen_triples[i][0]];
        j["even_gens"].push_back(std::move(gen));
    }
    j["odd_gens"] = json::array();
    for (std::size_t a = 0; a < ring.pres->n_odd(); ++a) {
        json gen;
        gen["name"] = ring.pres->odd_gens[a].name;
        gen["degree"] = ring.pres->odd_gens[a].degree;
        json cycle = json::object();
        for (std::size_t e = 0; e < ring.homology.cycle_basis[a].size(); ++e)
            if (ring.homology.cycle_basis[a][e] != 0)
                cycle[std::to_string(e)] = rat_to_string(ring.homology.cycle_basis[a][e]);
        gen["cycle"] = std::move(cycle);
        const auto& prov = ring.homology.provenance[a];
        if (prov.kind == RelativeHomology::Provenance::fundamental_cycle)
            gen["provenance"] = "fundamental cycle of non-tree edge " + std::to_string(prov.edge);
        else
            gen["provenance"] = "tree path from mark 1 to mark " + std::to_string(prov.mark);
        j["odd_gens"].push_back(std::move(gen));
    }
    j["relations"] = json::array();
    for (const auto& r : ring.pres->groebner_basis)
        j["relations"].push_back(poly_to_string(r, ring.pres->even_names()));
    if (ring.has_delta())
        j["delta"] = element_to_json(ring.delta());
    return j;
}

inline int cmd_hgamma(const std::string& graph_spec, int max_degree, bool as_json,
                      std::ostream& out, const Config& cfg) {
    GraphRef g = load_graph(graph_spec);
    HGammaRing ring = build_ring(g, std::nullopt, cfg);
    bool betti_ok = g->n_marks() == 0;
    if (as_json) {
        json j;
        j["graph"] = graph_to_json(*g);
        j["presentation"] = hgamma_presentation_json(ring);
        if (betti_ok)
            j["betti"] = betti_json(hgamma_betti(ring, max_degree));
        out << j.dump(2) << "\n";
    } else {
        out << "even generators:";
        for (std::size_t i = 0; i < ring.pres->n_even(); ++i)
            out << " " << ring.pres->even_gens[i].name << "=c(" << ring.gen_triples[i][0] << ","
                << ring.gen_triples[i][1] << "," << ring.gen_triples[i][2] << ")";
        out << "\nodd generators:";
        for (std::size_t a = 0; a < ring.pres->n_odd(); ++a)
            out << " " << ring.pres->odd_gens[a].name;
        out << "\nrelations:";
        for (const auto& r : ring.pres->groebner_basis)
            out << " [" << poly_to_string(r, ring.pres->even_names()) << "]";
        out << "\n";
        if (betti_ok)
            print_betti_table(out, hgamma_betti(ring, max_degree));
    }
    return 0;
}

inline int cmd_invariants(const std::string& graph_spec, const std::string& group, int max_degree,
                          const std::string& format, std::ostream& out, const Config& cfg) {
    GraphRef g = load_graph(graph_spec);
    HGammaRing ring = build_ring(g, std::nullopt, cfg);
    RingAction action = graph_ring_action(ring, resolve_group(g, group));
    BettiTable t = invariant_betti(action, max_degree);
    if (format == "json") {
        json j;
        j["graph"] = graph_spec;
        j["group"] = group;
        j["group_order"] = action.order();
        j["max_degree"] = max_degree;
        j["betti"] = betti_json(t);
        out << j.dump(2) << "\n";
    } else {
        out << "invariants of |G| = " << action.order() << " on the ring of " << graph_spec
            << "\n";
        print_betti_table(out, t);
    }
    return 0;
}

inline std::optional<FactorData> load_factors(const std::string& path) {
    if (path.empty())
        return std::nullopt;
    std::ifstream in(path);
    if (!in)
        throw invalid_input("cannot open factor file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& ex) {
        throw invalid_input(std::string("factor file is not valid JSON: ") + ex.what());
    }
    /* {"1": {"0": 1, "3": 2}, "2": {...}} - dims by degree per mark */
    FactorData fd;
    for (int i = 1; j.contains(std::to_string(i)); ++i) {
        std::vector<long> dims;
        for (auto& [deg, rank] : j.at(std::to_string(i)).items()) {
            int d = std::stoi(deg);
            if (d >= static_cast<int>(dims.size()))
                dims.resize(d + 1, 0);
            dims[d] = rank.get<long>();
        }
        fd.push_back(std::move(dims));
    }
    return fd;
}

inline int cmd_colimit(int g, int n, int max_degree, const std::string& format,
                       const std::string& factor_file, std::ostream& out, const Config& cfg) {
    if (g == 2 && n == 0) {
        U2Report r = assemble_u2(std::max(max_degree, 8), cfg);
        if (format == "json") {
            json j;
            j["betti"] = betti_json(r.betti);
            j["lim1_zero"] = r.lim1_zero;
            j["pi_star_iso"] = r.pi_star_iso;
            j["relations_checked"] = json::array();
            for (const auto& [name, ok] : r.relations_checked)
                j["relations_checked"].push_back({{"relation", name}, {"holds", ok}});
            j["generators"] = r.generators;
            j["max_degree"] = std::max(max_degree, 8);
            out << j.dump(2) << "\n";
        } else {
            out << "H^*(BDiff+((S^1xS^2)#2)) to degree " << std::max(max_degree, 8) << "\n";
            print_betti_table(out, r.betti);
            out << "lim^1 vanishes: " << (r.lim1_zero ? "yes" : "no") << "\n";
            out << "collapse map iso on invariants: " << (r.pi_star_iso ? "yes" : "no") << "\n";
            for (const auto& [name, ok] : r.relations_checked)
                out << "relation " << name << ": " << (ok ? "holds" : "FAILS") << "\n";
            for (const auto& s : r.generators)
                out << "generator " << s << "\n";
        }
        return 0;
    }
    /* general case: report the E_2 page only */
    SlominskaDiagram sd = slominska_diagram(g, n, max_degree, load_factors(factor_file), cfg);
    LimTable t = derived_limits(sd.diagram, max_degree);
    bool flag_higher = !(t.depth == 1 || sd.diagram.poset.elements.size() == 1);
    if (format == "json") {
        json j;
        j["g"] = g;
        j["n"] = n;
        j["max_degree"] = max_degree;
        json e2 = json::object();
        for (int p = 0; p <= t.depth; ++p) {
            json row = json::object();
            for (int q = 0; q <= max_degree; ++q)
                if (t.rank(p, q))
                    row[std::to_string(q)] = t.rank(p, q);
            e2[std::to_string(p)] = std::move(row);
        }
        j["e2"] = std::move(e2);
        if (flag_higher)
            j["higher_differentials"] = "not computed";
        out << j.dump(2) << "\n";
    } else {
        out << "E_2 page (lim^p of H^q) for g=" << g << ", n=" << n << "\n";
        for (int p = 0; p <= t.depth; ++p) {
            out << "p=" << p << ":";
            for (int q = 0; q <= max_degree; ++q)
                out << " " << t.rank(p, q);
            out << "\n";
        }
        if (flag_higher)
            out << "higher differentials not computed\n";
    }
    return 0;
}

/* ------------------------------------------------------------------ */
/* the verification suite                                              */
/* ------------------------------------------------------------------ */

inline int cmd_verify(int max_degree, const std::string& inject_fault, std::ostream& out,
                      const Config& cfg) {
    int failures = 0;
    auto report = [&](const std::string& name, bool ok) {
        if (name == inject_fault)
            ok = !ok; /* test hook: corrupt the expectation for this anchor */
        out << (ok ? "PASS " : "FAIL ") << name << "\n";
        if (!ok)
            ++failures;
    };
    int d_cap = std::max(max_degree, 8);

    auto theta = builtin_theta();
    auto rose = builtin_rose2();

    {
        auto classes = enumerate_graphs(2, 0, true, cfg);
        bool ok = classes.size() == 2;
        if (ok) {
            bool saw_theta = false, saw_rose = false;
            for (const auto& c : classes) {
                saw_theta |= is_isomorphic(*c, *theta);
                saw_rose |= is_isomorphic(*c, *rose);
            }
            ok = saw_theta && saw_rose;
        }
        report("gr-2-0-two-classes", ok);
        report("gr-1-1-two-classes", enumerate_graphs(1, 1, false, cfg).size() == 2);
        report("gr-0-2-one-class", enumerate_graphs(0, 2, false, cfg).size() == 1);
    }
    report("aut-theta-order-12", automorphisms(theta).size() == 12);
    report("aut-rose2-order-8", automorphisms(rose).size() == 8);
    {
        MarkedGraph loop;
        loop.graph = graph_from_edge_list(1, {{0, 0}});
        loop.genus = 1;
        loop.marking = {0};
        report("aut-marked-loop-order-2",
               automorphisms(make_graph_ref(std::move(loop))).size() == 2);
    }
    {
        auto [q, c] = contract_edges(theta, {0});
        report("collapse-theta-to-rose", is_isomorphic(*q, *rose));
        report("hom-theta-rose-24", hom_set(theta, rose).size() == 24);
        report("hom-rose-theta-empty", hom_set(rose, theta).empty());
    }
    {
        auto P = chain_poset(2, 0, true, cfg);
        bool ok = P.elements.size() == 3 && P.depth == 1;
        int stab4 = 0;
        for (const auto& el : P.elements)
            if (el.chain.length() == 1 && el.stabilizer.size() == 4)
                ++stab4;
        report("chain-poset-g2-pushout", ok && stab4 == 1);
    }
    {
        auto c3 = conf_ring(3, ConfVariant::so4, cfg);
        BettiTable t = betti(c3.pres, d_cap);
        bool ok = true;
        for (int d = 0; d <= d_cap; ++d)
            ok = ok && t.rank(d) == (d % 2 == 0 ? 1 : 0);
        report("conf3-so4-polynomial-on-euler", ok);

        auto c4 = conf_ring(4, ConfVariant::plain, cfg);
        RingElement fourpoint = c4.class_element(1, 2, 3)
                                    .minus(c4.class_element(1, 2, 4))
                                    .minus(c4.class_element(2, 3, 4))
                                    .minus(c4.class_element(3, 1, 4));
        report("conf4-four-point-relation", fourpoint.is_zero());
        report("conf2-h2-three-dimensional", graded_basis(c4.pres, 2).size() == 3);

        auto c3p = conf_ring(3, ConfVariant::plain, cfg);
        RingMap t12 = sym_action(c3p, {2, 1, 3});
        report("conf-sym-sign-representation",
               t12.apply(c3p.class_element(1, 2, 3)) ==
                   c3p.class_element(1, 2, 3).scaled(Rat(-1)));

        auto so4_4 = conf_ring(4, ConfVariant::so4, cfg);
        auto inj = is_injective_multiplication(so4_4.pres, so4_4.delta(), std::min(d_cap, 20));
        bool inj_ok = true;
        for (auto [deg, v] : inj)
            inj_ok = inj_ok && v;
        report("delta-not-a-zero-divisor", inj_ok);
    }
    HGammaRing theta_ring = build_ring(theta, std::nullopt, cfg);
    HGammaRing rose_ring = build_ring(rose, std::nullopt, cfg);
    {
        bool ok = theta_ring.pres->n_even() == 2 && theta_ring.pres->n_odd() == 2 &&
                  theta_ring.pres->groebner_basis.size() == 1;
        report("theta-ring-presentation", ok);
        bool rok = rose_ring.pres->n_even() == 3;
        for (int k = 1; k <= d_cap / 2; ++k)
            rok = rok && standard_monomials(rose_ring.pres->groebner_basis,
                                            rose_ring.pres->order, 2 * k)
                                 .size() == 3;
        report("rose-ring-three-per-even-degree", rok);
    }
    {
        GraphMorphism pi;
        pi.source = theta;
        pi.target = rose;
        pi.vertex_image = {0, 0};
        pi.half_image = {GraphMorphism::encode_vertex(0), GraphMorphism::encode_vertex(0),
                         1, 0, 3, 2};
        pi.validate();
        RingMap pistar = induced_map(rose_ring, theta_ring, pi);
        RingElement c1 = RingElement::even_gen(theta_ring.pres, 0);
        RingElement c2 = RingElement::even_gen(theta_ring.pres, 1);
        RingElement u1 = c1.plus(c2).scaled(Rat(1, 2));
        RingElement u2 = c1.minus(c2).scaled(Rat(1, 2));
        RingElement w = rose_ring.class_element(Triple{0, 1, 2})
                            .minus(rose_ring.class_element(Triple{0, 1, 3}))
                            .scaled(Rat(1, 2));
        RingElement z1 = rose_ring.class_element(Triple{0, 1, 2})
                             .plus(rose_ring.class_element(Triple{0, 1, 3}))
                             .scaled(Rat(1, 2));
        RingElement z2 = rose_ring.class_element(Triple{2, 3, 1})
                             .plus(rose_ring.class_element(Triple{2, 3, 0}))
                             .scaled(Rat(1, 2));
        bool ok = pistar.apply(w) == u1.scaled(Rat(-1)) && pistar.apply(z1) == u2 &&
                  pistar.apply(z2) == u2.scaled(Rat(-1)) &&
                  pistar.odd_images[0] == theta_ring.beta(0) &&
                  pistar.odd_images[1] == theta_ring.beta(1);
        report("collapse-pullback-generator-images", ok);
    }
    {
        RingAction full = graph_ring_action(theta_ring, automorphisms(theta));
        RingAction stab = graph_ring_action(theta_ring, theta_collapse_stabilizer());
        RingAction rose_full = graph_ring_action(rose_ring, automorphisms(rose));
        BettiTable tf = invariant_betti(full, d_cap);
        BettiTable ts = invariant_betti(stab, d_cap);
        BettiTable tr = invariant_betti(rose_full, d_cap);
        auto expect_full = [](int d) -> long {
            if (d == 0)
                return 1;
            if (d == 4)
                return 2;
            if (d > 4 && d % 4 == 0)
                return 3;
            return 0;
        };
        bool okf = true, oks = true, okr = true;
        for (int d = 0; d <= d_cap; ++d) {
            okf = okf && tf.rank(d) == expect_full(d);
            long es = expect_full(d) + ((d >= 5 && d % 4 == 1) ? 1 : 0);
            oks = oks && ts.rank(d) == es;
            okr = okr && tr.rank(d) == ts.rank(d);
        }
        report("invariants-sym3xc2-table", okf);
        report("invariants-c2xc2-table", oks);
        report("invariants-d8-matches-c2xc2", okr);
    }
    {
        U2Report r = assemble_u2(d_cap, cfg);
        bool rel_ok = true;
        for (const auto& [name, holds] : r.relations_checked)
            rel_ok = rel_ok && holds;
        report("u2-lim1-vanishes", r.lim1_zero);
        report("u2-collapse-iso-on-invariants", r.pi_star_iso);
        report("u2-presentation-relations", rel_ok);
        bool bet_ok = r.betti.rank(0) == 1 && r.betti.rank(4) == 2;
        for (int d = 5; d <= d_cap; ++d) {
            long expect = (d % 4 == 0) ? 3 : 0;
            bet_ok = bet_ok && r.betti.rank(d) == expect;
        }
        report("u2-betti-table", bet_ok);
    }
    out << (failures ? "FAILED" : "OK") << " (" << failures << " failing)\n";
    return failures ? 1 : 0;
}

/* ------------------------------------------------------------------ */
/* driver                                                              */
/* ------------------------------------------------------------------ */

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    Config cfg;
    if (const char* env = std::getenv("PRIME_MODULI_MAX_DEGREE"))
        try {
            cfg.max_degree = std::stoi(env);
        } catch (const std::exception&) {
            err << "invalid PRIME_MODULI_MAX_DEGREE\n";
            return 1;
        }

    CLI::App app{"exact rational cohomology of moduli of reducible 3-manifolds"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--iso-cap", cfg.iso_class_cap, "cap on enumerated isomorphism classes");
    app.add_option("--groebner-pair-cap", cfg.groebner_pair_cap,
                   "cap on processed Groebner S-pairs");

    auto* graphs = app.add_subcommand("graphs", "enumerate the graph category Gr_{g,n}");
    int g = 0, n = 0;
    bool no_redundant = false;
    std::string format = "table";
    graphs->add_option("--g", g, "first Betti number")->required();
    graphs->add_option("--n", n, "number of marked vertices")->required();
    graphs->add_flag("--no-redundant", no_redundant, "restrict to graphs without redundant edges");
    graphs->add_option("--format", format, "table or json");
    graphs->add_flag_callback("--json", [&format]() { format = "json"; }, "shorthand for --format json");

    auto* conf = app.add_subcommand("conf", "configuration-space cohomology ring");
    int conf_d = 0;
    std::string variant = "plain";
    int conf_betti = cfg.max_degree;
    conf->add_option("--d", conf_d, "number of points")->required();
    conf->add_option("--variant", variant, "plain or so4");
    conf->add_option("--betti", conf_betti, "Betti truncation degree");
    std::string conf_format = "table";
    conf->add_option("--format", conf_format, "table or json");
    conf->add_flag_callback("--json", [&conf_format]() { conf_format = "json"; },
                            "shorthand for --format json");

    auto* bet = app.add_subcommand("betti", "Betti table of a built-in ring");
    int bet_conf = -1;
    std::string bet_variant = "plain", bet_graph;
    int bet_max = cfg.max_degree;
    bet->add_option("--conf", bet_conf, "configuration ring on this many points");
    bet->add_option("--graph", bet_graph, "handle-attachment ring of this graph (n = 0)");
    bet->add_option("--variant", bet_variant, "plain or so4 (with --conf)");
    bet->add_option("--max-degree", bet_max, "truncation degree");
    std::string bet_format = "table";
    bet->add_option("--format", bet_format, "table or json");
    bet->add_flag_callback("--json", [&bet_format]() { bet_format = "json"; },
                           "shorthand for --format json");

    auto* hg = app.add_subcommand("hgamma", "handle-attachment cohomology ring of a graph");
    std::string hg_graph;
    int hg_betti = cfg.max_degree;
    bool hg_json = false;
    hg->add_option("--graph", hg_graph, "theta, rose2, or a graph JSON file")->required();
    hg->add_option("--betti", hg_betti, "Betti truncation degree");
    hg->add_flag("--json", hg_json, "emit JSON");

    auto* inv = app.add_subcommand("invariants", "invariant Betti table under a group action");
    std::string inv_graph, inv_group = "full";
    int inv_max = cfg.max_degree;
    std::string inv_format = "table";
    inv->add_option("--graph", inv_graph, "theta, rose2, or a graph JSON file")->required();
    inv->add_option("--group", inv_group, "full, trivial, d8, sym3xc2, c2xc2");
    inv->add_option("--max-degree", inv_max, "truncation degree");
    inv->add_option("--format", inv_format, "table or json");
    inv->add_flag_callback("--json", [&inv_format]() { inv_format = "json"; },
                           "shorthand for --format json");

    auto* col = app.add_subcommand("colimit", "assemble the derived limits over Gr_{g,n}");
    int col_g = 2, col_n = 0;
    int col_max = cfg.max_degree;
    std::string col_format = "table", col_factors;
    col->add_option("--g", col_g, "first Betti number")->required();
    col->add_option("--n", col_n, "number of marked vertices")->required();
    col->add_option("--max-degree", col_max, "truncation degree");
    col->add_option("--format", col_format, "table or json");
    col->add_option("--factors", col_factors, "JSON file of formal factor dimensions (n > 0)");
    col->add_flag_callback("--json", [&col_format]() { col_format = "json"; },
                           "shorthand for --format json");

    auto* ver = app.add_subcommand("verify", "run the built-in verification suite");
    int ver_max = cfg.max_degree;
    std::string ver_fault;
    ver->add_option("--max-degree", ver_max, "truncation degree for the table checks");
    ver->add_option("--inject-fault", ver_fault, "corrupt the named check (test hook)");

    std::vector<const char*> argv;
    std::string prog = "prime-moduli";
    argv.push_back(prog.c_str());
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            /* --help */
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 1;
    }

    try {
        if (graphs->parsed())
            return cmd_graphs(g, n, no_redundant, format, out, cfg);
        if (conf->parsed())
            return cmd_conf_betti(conf_d, variant, conf_betti, conf_format, out, cfg);
        if (bet->parsed()) {
            if ((bet_conf >= 0) == !bet_graph.empty())
                throw invalid_input("betti: give exactly one of --conf or --graph");
            if (bet_conf >= 0)
                return cmd_conf_betti(bet_conf, bet_variant, bet_max, bet_format, out, cfg);
            GraphRef gref = load_graph(bet_graph);
            BettiTable t = hgamma_betti(build_ring(gref, std::nullopt, cfg), bet_max);
            if (bet_format == "json") {
                json j;
                j["graph"] = bet_graph;
                j["max_degree"] = bet_max;
                j["betti"] = betti_json(t);
                out << j.dump(2) << "\n";
            } else {
                print_betti_table(out, t);
            }
            return 0;
        }
        if (hg->parsed())
            return cmd_hgamma(hg_graph, hg_betti, hg_json, out, cfg);
        if (inv->parsed())
            return cmd_invariants(inv_graph, inv_group, inv_max, inv_format, out, cfg);
        if (col->parsed())
            return cmd_colimit(col_g, col_n, col_max, col_format, col_factors, out, cfg);
        if (ver->parsed())
            return cmd_verify(ver_max, ver_fault, out, cfg);
        err << "no subcommand\n";
        return 1;
    } catch (const resource_cap& e) {
        err << "resource cap: " << e.what() << "\n";
        return 2;
    } catch (const invalid_input& e) {
        err << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace prime_moduli::cli

#pragma once

#include <json.hpp>

#include <map>
#include <string>

#include "prime_moduli/graph.hpp"

namespace prime_moduli {

using json = nlohmann::ordered_json;

/* Graph JSON schema:
   {"vertices":[int], "half_edges":[int], "root":{h:v}, "involution":{h:h},
    "marking":{i:v}}
   Arbitrary integer ids are accepted and densified by sorted order. */
inline json graph_to_json(const MarkedGraph& mg) {
    json j;
    j["vertices"] = json::array();
    for (int v = 0; v < mg.graph.num_vertices; ++v)
        j["vertices"].push_back(v);
    j["half_edges"] = json::array();
    for (int h = 0; h < mg.graph.num_half_edges(); ++h)
        j["half_edges"].push_back(h);
    j["root"] = json::object();
    for (int h = 0; h < mg.graph.num_half_edges(); ++h)
        j["root"][std::to_string(h)] = mg.graph.root[h];
    j["involution"] = json::object();
    for (int h = 0; h < mg.graph.num_half_edges(); ++h)
        j["involution"][std::to_string(h)] = mg.graph.involution[h];
    j["genus"] = mg.genus;
    j["marking"] = json::object();
    for (int i = 0; i < mg.n_marks(); ++i)
        j["marking"][std::to_string(i + 1)] = mg.marking[i];
    return j;
}

inline MarkedGraph graph_from_json(const json& j) {
    if (!j.contains("vertices") || !j.contains("half_edges") || !j.contains("root") ||
        !j.contains("involution"))
        throw invalid_input("graph JSON: missing field");
    std::vector<long> vids, hids;
    for (const auto& v : j.at("vertices"))
        vids.push_back(v.get<long>());
    for (const auto& h : j.at("half_edges"))
        hids.push_back(h.get<long>());
    std::sort(vids.begin(), vids.end());
    std::sort(hids.begin(), hids.end());
    std::map<long, int> vmap, hmap;
    for (std::size_t i = 0; i < vids.size(); ++i)
        if (!vmap.emplace(vids[i], static_cast<int>(i)).second)
            throw invalid_input("graph JSON: duplicate vertex id");
    for (std::size_t i = 0; i < hids.size(); ++i)
        if (!hmap.emplace(hids[i], static_cast<int>(i)).second)
            throw invalid_input("graph JSON: duplicate half-edge id");
    MarkedGraph mg;
    mg.graph.num_vertices = static_cast<int>(vids.size());
    mg.graph.root.assign(hids.size(), -1);
    mg.graph.involution.assign(hids.size(), -1);
    auto lookup = [](const std::map<long, int>& m, long key, const char* what) {
        auto it = m.find(key);
        if (it == m.end())
            throw invalid_input(std::string("graph JSON: unknown ") + what + " id");
        return it->second;
    };
    for (auto& [k, v] : j.at("root").items())
        mg.graph.root[lookup(hmap, std::stol(k), "half-edge")] =
            lookup(vmap, v.get<long>(), "vertex");
    for (auto& [k, v] : j.at("involution").items())
        mg.graph.involution[lookup(hmap, std::stol(k), "half-edge")] =
            lookup(hmap, v.get<long>(), "half-edge");
    for (int h = 0; h < mg.graph.num_half_edges(); ++h)
        if (mg.graph.root[h] < 0 || mg.graph.involution[h] < 0)
            throw invalid_input("graph JSON: root/involution not total");
    if (j.contains("marking")) {
        std::map<int, long> marks;
        for (auto& [k, v] : j.at("marking").items())
            marks[std::stoi(k)] = v.get<long>();
        int expect = 1;
        for (auto& [i, v] : marks) {
            if (i != expect++)
                throw invalid_input("graph JSON: marking labels must be 1..n");
            mg.marking.push_back(lookup(vmap, v, "vertex"));
        }
    }
    if (j.contains("genus"))
        mg.genus = j.at("genus").get<int>();
    else
        mg.genus = mg.graph.first_betti_number();
    mg.validate();
    return mg;
}

} // namespace prime_moduli

#include "caut/json_io.hpp"

namespace caut {

Json quiver_to_json(const Quiver& q) {
    Json j;
    j["n"] = q.n;
    j["b"] = q.b;
    return j;
}

Quiver quiver_from_json(const Json& j) {
    try {
        if (j.contains("arrows")) {
            int n = j.at("n").get<int>();
            std::vector<std::array<int, 3>> arrows;
            for (const auto& a : j.at("arrows")) {
                if (a.size() == 2)
                    arrows.push_back({a[0].get<int>(), a[1].get<int>(), 1});
                else
                    arrows.push_back({a[0].get<int>(), a[1].get<int>(), a[2].get<int>()});
            }
            return Quiver::from_arrows(n, arrows);
        }
        int n = j.at("n").get<int>();
        auto b = j.at("b").get<std::vector<std::vector<int>>>();
        return Quiver(n, b);
    } catch (const Json::exception& e) {
        throw input_error(std::string("malformed quiver JSON: ") + e.what());
    }
}

Json graph_to_json(const ExchangeGraph& g) {
    Json j;
    j["quiver"] = quiver_to_json(g.quiver);
    j["initial_key"] = g.initial_key;
    j["complete"] = g.complete;
    j["depth_reached"] = g.depth_reached;
    Json nodes = Json::object();
    for (const auto& [key, node] : g.nodes) {
        Json nj;
        Json cluster = Json::array();
        for (const auto& f : node.seed.cluster) cluster.push_back(f.to_string());
        nj["cluster"] = cluster;
        nj["b"] = node.seed.quiver.b;
        nj["depth"] = node.depth;
        nj["expanded"] = node.expanded;
        Json edges = Json::array();
        for (int k = 0; k < static_cast<int>(node.edges.size()); ++k) {
            const auto& e = node.edges[k];
            if (e.target.empty()) continue;
            Json ej;
            ej["k"] = k;
            ej["target"] = e.target;
            ej["align"] = e.align;
            edges.push_back(ej);
        }
        nj["edges"] = edges;
        nodes[key] = nj;
    }
    j["nodes"] = nodes;
    return j;
}

ExchangeGraph graph_from_json(const Json& j) {
    try {
        ExchangeGraph g;
        g.quiver = quiver_from_json(j.at("quiver"));
        g.initial_key = j.at("initial_key").get<std::string>();
        g.complete = j.at("complete").get<bool>();
        g.depth_reached = j.at("depth_reached").get<int>();
        int n = g.quiver.n;
        for (const auto& [key, nj] : j.at("nodes").items()) {
            ExchangeNode node;
            for (const auto& s : nj.at("cluster"))
                node.seed.cluster.push_back(parse_ratfn(s.get<std::string>(), n));
            node.seed.quiver = Quiver(n, nj.at("b").get<std::vector<std::vector<int>>>());
            node.depth = nj.at("depth").get<int>();
            node.expanded = nj.at("expanded").get<bool>();
            node.edges.resize(n);
            for (const auto& ej : nj.at("edges")) {
                int k = ej.at("k").get<int>();
                node.edges[k].target = ej.at("target").get<std::string>();
                node.edges[k].align = ej.at("align").get<std::vector<int>>();
            }
            g.nodes[key] = std::move(node);
        }
        return g;
    } catch (const Json::exception& e) {
        throw input_error(std::string("malformed graph JSON: ") + e.what());
    }
}

std::vector<RationalFn> images_from_json(const Json& j, int nvars) {
    try {
        std::vector<RationalFn> out;
        const Json& arr = j.is_object() && j.contains("images") ? j.at("images") : j;
        for (const auto& s : arr) out.push_back(parse_ratfn(s.get<std::string>(), nvars));
        return out;
    } catch (const Json::exception& e) {
        throw input_error(std::string("malformed images JSON: ") + e.what());
    }
}

Json images_to_json(const std::vector<RationalFn>& images) {
    Json arr = Json::array();
    for (const auto& f : images) arr.push_back(f.to_string());
    return arr;
}

Json aut_group_report(const AutGroup& gr, int order_bound) {
    Json j;
    j["order"] = gr.order();
    j["direct_order"] = gr.direct_order();
    j["index"] = gr.index_of_direct();
    GroupTable full{gr.table};
    GroupStructure fs = identify_group(full, order_bound);
    j["structure"] = fs.name;
    j["structure_matches"] = fs.matches;
    j["abelian"] = fs.abelian;
    // direct subgroup structure
    std::vector<int> pos(gr.order(), -1);
    for (int i = 0; i < gr.direct_order(); ++i) pos[gr.direct_indices[i]] = i;
    GroupTable direct;
    direct.table.assign(gr.direct_order(), std::vector<int>(gr.direct_order()));
    for (int i = 0; i < gr.direct_order(); ++i)
        for (int k = 0; k < gr.direct_order(); ++k)
            direct.table[i][k] = pos[gr.table[gr.direct_indices[i]][gr.direct_indices[k]]];
    GroupStructure ds = identify_group(direct, order_bound);
    j["direct_structure"] = ds.name;
    j["direct_structure_matches"] = ds.matches;
    if (gr.index_of_direct() == 2) {
        SemidirectReport rep = semidirect_check(gr);
        j["semidirect_splits"] = rep.splits;
        j["product_is_direct"] = rep.direct_product;
    }
    // generators: a small generating set as image lists
    Json gens = Json::array();
    {
        std::vector<int> closure = {0};
        std::set<int> have = {0};
        std::vector<int> chosen;
        while (static_cast<int>(have.size()) < gr.order()) {
            int next = -1;
            for (int i = 0; i < gr.order(); ++i)
                if (!have.count(i)) {
                    next = i;
                    break;
                }
            chosen.push_back(next);
            // close under multiplication
            std::vector<int> frontier = {next};
            have.insert(next);
            while (!frontier.empty()) {
                int x = frontier.back();
                frontier.pop_back();
                std::vector<int> known(have.begin(), have.end());
                for (int y : known) {
                    for (int z : {gr.table[x][y], gr.table[y][x]})
                        if (!have.count(z)) {
                            have.insert(z);
                            frontier.push_back(z);
                        }
                }
            }
        }
        for (int i : chosen) {
            Json gj;
            gj["images"] = images_to_json(gr.elements[i].images);
            gj["direction"] =
                gr.elements[i].direction == Direction::direct ? "direct" : "inverse";
            gens.push_back(gj);
        }
    }
    j["generators"] = gens;
    return j;
}

Json triangulation_to_json(const Triangulation& t) {
    Json j;
    Json surf;
    surf["genus"] = t.surface.genus;
    surf["boundary"] = t.surface.boundary;
    surf["punctures"] = t.surface.punctures;
    j["surface"] = surf;
    Json arcs = Json::array();
    for (const auto& a : t.arcs) arcs.push_back(a.to_string());
    j["arcs"] = arcs;
    Json faces = Json::array();
    for (const auto& f : t.faces) {
        Json fj = Json::array();
        for (const auto& sd : f.s) {
            if (sd.boundary)
                fj.push_back("b" + std::to_string(sd.idx));
            else
                fj.push_back(sd.idx);
        }
        faces.push_back(fj);
    }
    j["triangles"] = faces;
    Json sf = Json::array();
    for (const auto& [l, r] : t.self_folded) sf.push_back(Json::array({l, r}));
    j["self_folded"] = sf;
    j["boundary_segments"] = t.boundary_segment_count;
    return j;
}

Triangulation triangulation_from_json(const Json& j) {
    try {
        const Json& surf = j.at("surface");
        MarkedSurface s = make_surface(surf.at("genus").get<int>(),
                                       surf.at("boundary").get<std::vector<int>>(),
                                       surf.at("punctures").get<int>());
        int narcs = j.at("arcs").is_number() ? j.at("arcs").get<int>()
                                             : static_cast<int>(j.at("arcs").size());
        std::vector<Face> faces;
        for (const auto& fj : j.at("triangles")) {
            if (fj.size() != 3) throw input_error("triangle needs exactly three sides");
            Face f;
            for (int i = 0; i < 3; ++i) {
                if (fj[i].is_string()) {
                    std::string sdx = fj[i].get<std::string>();
                    if (sdx.empty() || sdx[0] != 'b')
                        throw input_error("boundary side labels look like \"b0\"");
                    f.s[i] = Side{true, std::stoi(sdx.substr(1))};
                } else {
                    f.s[i] = Side{false, fj[i].get<int>()};
                }
            }
            faces.push_back(f);
        }
        std::vector<std::pair<int, int>> sf;
        if (j.contains("self_folded"))
            for (const auto& p : j.at("self_folded"))
                sf.push_back({p[0].get<int>(), p[1].get<int>()});
        int nsegs = j.contains("boundary_segments") ? j.at("boundary_segments").get<int>()
                                                    : s.boundary_points();
        return abstract_triangulation(s, narcs, faces, sf, nsegs);
    } catch (const Json::exception& e) {
        throw input_error(std::string("malformed triangulation JSON: ") + e.what());
    }
}

} // namespace caut

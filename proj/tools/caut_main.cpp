#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "caut/json_io.hpp"

using namespace caut;

namespace {

// exit codes: 0 success, 2 malformed input, 3 incomplete/cap exceeded,
// 4 verification failure
constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitIncomplete = 3;
constexpr int kExitVerify = 4;

struct RunConfig {
    int node_cap = kDefaultNodeCap;
    int depth_cap = kDefaultDepthCap;
    int ball_depth = 16;
    int group_order_bound = kDefaultGroupOrderBound;
    std::string format = "json";
    std::string graph_path;
    std::string output_path;
};

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw input_error(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return j;
}

void emit(const RunConfig& cfg, const Json& j, const std::string& text_summary) {
    if (!cfg.output_path.empty()) {
        std::ofstream file(cfg.output_path);
        if (!file) throw input_error("cannot write " + cfg.output_path);
        file << j.dump(2) << "\n";
        if (cfg.format == "text" && !text_summary.empty()) std::cout << text_summary << "\n";
        return;
    }
    if (cfg.format == "text" && !text_summary.empty())
        std::cout << text_summary << "\n";
    else
        std::cout << j.dump(2) << "\n";
}

Quiver dynkin_quiver(const std::string& family, int rank) {
    std::vector<std::array<int, 3>> arrows;
    if (family == "A") {
        for (int i = 1; i < rank; ++i) arrows.push_back({i, i + 1, 1});
    } else if (family == "D") {
        if (rank < 4) throw input_error("D needs rank >= 4");
        arrows.push_back({1, 3, 1});
        arrows.push_back({2, 3, 1});
        for (int i = 3; i < rank; ++i) arrows.push_back({i, i + 1, 1});
    } else if (family == "E") {
        if (rank < 6 || rank > 8) throw input_error("E needs rank 6..8");
        for (int i = 1; i < rank - 1; ++i) arrows.push_back({i, i + 1, 1});
        arrows.push_back({3, rank, 1});
    } else {
        throw input_error("unknown family " + family);
    }
    return Quiver::from_arrows(rank, arrows);
}

Triangulation surface_by_name(const std::string& name) {
    auto bad = [&]() -> Triangulation {
        throw input_error("unknown surface '" + name +
                          "' (try polygon:<m>, annulus:<p>:<q>, disc:<c>:<punctures>, "
                          "figure2_left, figure2_right, torus, or a JSON file)");
    };
    if (name == "figure2_left") return figure2_left();
    if (name == "figure2_right") return figure2_right();
    if (name == "torus") return markov_torus();
    auto split = [&](const std::string& s) {
        std::vector<int> parts;
        size_t pos = 0;
        while (pos < s.size()) {
            size_t next = s.find(':', pos);
            if (next == std::string::npos) next = s.size();
            parts.push_back(std::stoi(s.substr(pos, next - pos)));
            pos = next + 1;
        }
        return parts;
    };
    try {
        if (name.rfind("polygon:", 0) == 0) return polygon_fan(split(name.substr(8)).at(0));
        if (name.rfind("annulus:", 0) == 0) {
            auto p = split(name.substr(8));
            return annulus_std(p.at(0), p.at(1));
        }
        if (name.rfind("disc:", 0) == 0) {
            auto p = split(name.substr(5));
            return punctured_disc_std(p.at(0), p.at(1));
        }
    } catch (const std::invalid_argument&) {
        return bad();
    } catch (const std::out_of_range&) {
        return bad();
    }
    // otherwise treat as a file
    std::ifstream probe(name);
    if (!probe) return bad();
    return triangulation_from_json(load_json(name));
}

// ---------------------------------------------------------------------------

int cmd_mutate(const RunConfig& cfg, const std::string& input, const std::vector<int>& seq) {
    Json j = load_json(input);
    if (j.contains("cluster")) {
        // seed file: {"cluster": [..], "b": [[..]]}
        Quiver q(static_cast<int>(j.at("cluster").size()),
                 j.at("b").get<std::vector<std::vector<int>>>());
        Seed s;
        s.quiver = q;
        for (const auto& v : j.at("cluster"))
            s.cluster.push_back(parse_ratfn(v.get<std::string>(), q.n));
        for (int k : seq) {
            if (k < 1 || k > q.n) throw input_error("mutation position out of range");
            s = mutate_seed(s, k - 1);
        }
        Json out;
        Json cl = Json::array();
        for (const auto& v : s.cluster) cl.push_back(v.to_string());
        out["cluster"] = cl;
        out["b"] = s.quiver.b;
        emit(cfg, out, "");
        return kExitOk;
    }
    Quiver q = quiver_from_json(j);
    for (int k : seq) {
        if (k < 1 || k > q.n) throw input_error("mutation position out of range");
        q = mutate_quiver(q, k - 1);
    }
    emit(cfg, quiver_to_json(q), q.to_string());
    return kExitOk;
}

int cmd_explore(const RunConfig& cfg, const std::string& input) {
    Quiver q = quiver_from_json(load_json(input));
    ExchangeGraph g = explore(q, cfg.node_cap, cfg.depth_cap);
    Json j = graph_to_json(g);
    emit(cfg, j,
         "clusters: " + std::to_string(g.nodes.size()) +
             (g.complete ? " (complete)" : " (incomplete)"));
    return g.complete ? kExitOk : kExitIncomplete;
}

int cmd_variables(const RunConfig& cfg) {
    if (cfg.graph_path.empty()) throw input_error("--graph is required");
    ExchangeGraph g = graph_from_json(load_json(cfg.graph_path));
    auto vars = cluster_variables(g);
    Json j;
    j["count"] = vars.size();
    j["complete"] = g.complete;
    Json arr = Json::array();
    for (const auto& v : vars) arr.push_back(v.to_string());
    j["variables"] = arr;
    emit(cfg, j, std::to_string(vars.size()) + " cluster variables");
    return g.complete ? kExitOk : kExitIncomplete;
}

int cmd_check(const RunConfig& cfg, const std::string& images_path) {
    if (cfg.graph_path.empty()) throw input_error("--graph is required");
    ExchangeGraph g = graph_from_json(load_json(cfg.graph_path));
    std::vector<RationalFn> images = images_from_json(load_json(images_path), g.quiver.n);
    Json j;
    try {
        ClusterAutomorphism f = check_cluster_automorphism(g, images);
        j["verdict"] = f.direction == Direction::direct ? "direct" : "inverse";
        j["certificate"] = f.certificate;
        j["target"] = f.target_key;
        emit(cfg, j, "cluster automorphism (" + std::string(j["verdict"]) + ")");
        return kExitOk;
    } catch (const no_quiver_iso_error& e) {
        j["verdict"] = "NoQuiverIso";
        j["image_quiver"] = quiver_to_json(e.image_quiver);
        emit(cfg, j, "not a cluster automorphism: no compatible quiver isomorphism");
        return kExitVerify;
    } catch (const not_a_cluster_error&) {
        j["verdict"] = "NotACluster";
        emit(cfg, j, "not a cluster automorphism: images do not form a cluster");
        return kExitVerify;
    } catch (const incomplete_graph_error&) {
        j["verdict"] = "Incomplete";
        emit(cfg, j, "undecidable within the explored graph");
        return kExitIncomplete;
    }
}

int cmd_aut(const RunConfig& cfg) {
    if (cfg.graph_path.empty()) throw input_error("--graph is required");
    ExchangeGraph g = graph_from_json(load_json(cfg.graph_path));
    if (!g.complete) {
        std::cerr << "aut requires a complete exchange graph\n";
        return kExitIncomplete;
    }
    AutGroup gr = aut_group(g);
    Json j = aut_group_report(gr, cfg.group_order_bound);
    emit(cfg, j,
         "|Aut| = " + std::to_string(gr.order()) +
             ", |Aut+| = " + std::to_string(gr.direct_order()) + ", structure " +
             std::string(j["structure"]));
    return kExitOk;
}

int cmd_verify_table1(const RunConfig& cfg, int max_rank, bool include_e6) {
    struct Row {
        std::string label;
        bool pass;
        std::string detail;
    };
    std::vector<Row> rows;
    auto direct_table = [](const AutGroup& gr) {
        std::vector<int> pos(gr.order(), -1);
        for (int i = 0; i < gr.direct_order(); ++i) pos[gr.direct_indices[i]] = i;
        GroupTable t;
        t.table.assign(gr.direct_order(), std::vector<int>(gr.direct_order()));
        for (int i = 0; i < gr.direct_order(); ++i)
            for (int k = 0; k < gr.direct_order(); ++k)
                t.table[i][k] = pos[gr.table[gr.direct_indices[i]][gr.direct_indices[k]]];
        return t;
    };
    auto matches = [](const GroupStructure& s, const std::string& name) {
        return std::find(s.matches.begin(), s.matches.end(), name) != s.matches.end();
    };

    // A1: two direct automorphisms, no inverse ones
    {
        AutGroup gr = aut_group(explore(dynkin_quiver("A", 1), cfg.node_cap, cfg.depth_cap));
        rows.push_back({"A1: Z2 / Z2", gr.order() == 2 && gr.direct_order() == 2,
                        "|Aut+|=" + std::to_string(gr.direct_order()) +
                            " |Aut|=" + std::to_string(gr.order())});
    }
    // A_n, 1 < n <= max_rank: Z_{n+3} and the dihedral group of order 2(n+3)
    for (int n = 2; n <= std::min(max_rank, 5); ++n) {
        AutGroup gr = aut_group(explore(dynkin_quiver("A", n), cfg.node_cap, cfg.depth_cap));
        GroupStructure ds = identify_group(direct_table(gr), cfg.group_order_bound);
        GroupStructure fs = identify_group(GroupTable{gr.table}, cfg.group_order_bound);
        bool ok = gr.direct_order() == n + 3 && gr.order() == 2 * (n + 3) &&
                  matches(ds, "Z" + std::to_string(n + 3)) &&
                  matches(fs, "D" + std::to_string(n + 3));
        if (n == 3) {
            SemidirectReport rep = semidirect_check(gr);
            ok = ok && rep.splits && !rep.direct_product;
        }
        rows.push_back({"A" + std::to_string(n) + ": Z" + std::to_string(n + 3) + " / D" +
                            std::to_string(n + 3),
                        ok, ds.name + " / " + fs.name});
    }
    if (max_rank >= 4) {
        AutGroup gr = aut_group(explore(dynkin_quiver("D", 4), cfg.node_cap, cfg.depth_cap));
        GroupStructure ds = identify_group(direct_table(gr), cfg.group_order_bound);
        GroupStructure fs = identify_group(GroupTable{gr.table}, cfg.group_order_bound);
        bool ok = gr.direct_order() == 24 && gr.order() == 48 && matches(ds, "Z4 x S3") &&
                  matches(fs, "D4 x S3") && semidirect_check(gr).splits;
        rows.push_back({"D4: Z4 x S3 / D4 x S3", ok, ds.name + " / " + fs.name});
    }
    if (max_rank >= 5) {
        AutGroup gr = aut_group(explore(dynkin_quiver("D", 5), cfg.node_cap, cfg.depth_cap));
        GroupStructure ds = identify_group(direct_table(gr), cfg.group_order_bound);
        bool ok = gr.direct_order() == 10 && gr.order() == 20 && matches(ds, "Z2 x Z5");
        SemidirectReport rep = semidirect_check(gr);
        ok = ok && rep.splits && !rep.direct_product;
        rows.push_back({"D5: Z5 x Z2 (direct part), order 20", ok,
                        ds.name + ", |Aut|=" + std::to_string(gr.order())});
    }
    if (include_e6) {
        AutGroup gr = aut_group(explore(dynkin_quiver("E", 6), cfg.node_cap, cfg.depth_cap));
        GroupStructure ds = identify_group(direct_table(gr), cfg.group_order_bound);
        GroupStructure fs = identify_group(GroupTable{gr.table}, cfg.group_order_bound);
        bool ok = gr.direct_order() == 14 && gr.order() == 28 && matches(ds, "Z14") &&
                  matches(fs, "D14");
        rows.push_back({"E6: Z14 / D14", ok, ds.name + " / " + fs.name});
    }
    // euclidean rows at the relation level
    {
        Triangulation ann = annulus_std(2, 1);
        LabeledExploration le = explore_labeled(ann, 4000, 10);
        ClusterAutomorphism r1 = phi(le, mcg_generator(ann, "r1"));
        ClusterAutomorphism r2 = phi(le, mcg_generator(ann, "r2"));
        auto reps = verify_presentation({{"r1", r1}, {"r2", r2}}, annulus_presentation(2, 1));
        rows.push_back({"A~(2,1): H_{2,1} relations", all_relations_hold(reps),
                        std::to_string(reps.size()) + " relations"});
    }
    {
        DtildeGenerators dg = dtilde_chi_generators(4);
        auto reps = verify_presentation({{"tau", dg.tau},
                                         {"sigma", dg.sigma},
                                         {"rho1", dg.rho1},
                                         {"rhon", dg.rhon}},
                                        dtilde_presentation(7));
        rows.push_back({"D~6 (n=7): mapping-class presentation", all_relations_hold(reps),
                        std::to_string(reps.size()) + " relations"});
    }

    Json j = Json::array();
    bool all = true;
    std::string text;
    for (const auto& row : rows) {
        Json rj;
        rj["row"] = row.label;
        rj["pass"] = row.pass;
        rj["detail"] = row.detail;
        j.push_back(rj);
        all = all && row.pass;
        text += std::string(row.pass ? "PASS  " : "FAIL  ") + row.label + "  [" + row.detail +
                "]\n";
    }
    Json outj;
    outj["rows"] = j;
    outj["all_pass"] = all;
    emit(cfg, outj, text + (all ? "all rows pass" : "FAILURES present"));
    return all ? kExitOk : kExitVerify;
}

int cmd_surface(const RunConfig& cfg, const std::string& sub, const std::string& name,
                int arg) {
    if (sub == "bmatrix") {
        Triangulation t = surface_by_name(name);
        emit(cfg, quiver_to_json(b_matrix(t)), b_matrix(t).to_string());
        return kExitOk;
    }
    if (sub == "flip") {
        Triangulation t = surface_by_name(name);
        if (arg < 1 || arg > t.n()) throw input_error("arc index out of range (1-based)");
        Triangulation f = flip(t, arg - 1);
        emit(cfg, triangulation_to_json(f), f.key());
        return kExitOk;
    }
    if (sub == "flipgraph") {
        Triangulation t = surface_by_name(name);
        FlipGraphSummary sum = enumerate_flip_graph(t, cfg.node_cap);
        Json j;
        j["triangulations"] = sum.triangulations;
        j["complete"] = sum.complete;
        emit(cfg, j,
             std::to_string(sum.triangulations) +
                 (sum.complete ? " triangulations (complete)" : " triangulations (capped)"));
        return sum.complete ? kExitOk : kExitIncomplete;
    }
    if (sub == "mcg") {
        Triangulation t = surface_by_name(name);
        Json j;
        if (t.family == Family::twice_punctured_disc) {
            DtildeGenerators dg = dtilde_chi_generators(t.surface.boundary[0],
                                                        cfg.node_cap, cfg.ball_depth);
            j["generators"] = Json::object();
            j["generators"]["phi(r)"] = images_to_json(dg.phi_r.images);
            j["generators"]["phi(s)"] = images_to_json(dg.phi_s.images);
            j["generators"]["psi_z1"] = images_to_json(dg.rho1.images);
            j["generators"]["psi_z2"] = images_to_json(dg.rhon.images);
            auto reps = verify_presentation({{"tau", dg.tau},
                                             {"sigma", dg.sigma},
                                             {"rho1", dg.rho1},
                                             {"rhon", dg.rhon}},
                                            dtilde_presentation(t.n()));
            Json rels = Json::array();
            for (const auto& r : reps) {
                Json rj;
                rj["relation"] = r.label;
                rj["holds"] = r.holds;
                rels.push_back(rj);
            }
            j["relations"] = rels;
            emit(cfg, j, "");
            return all_relations_hold(reps) ? kExitOk : kExitVerify;
        }
        std::vector<std::string> names = mcg_generator_names(t); // rejects unsupported families
        LabeledExploration le = explore_labeled(t, cfg.node_cap,
                                                std::min(cfg.depth_cap, cfg.ball_depth));
        j["generators"] = Json::object();
        for (const auto& gname : names) {
            ClusterAutomorphism f = phi(le, mcg_generator(t, gname));
            j["generators"][gname] = images_to_json(f.images);
        }
        emit(cfg, j, "");
        return kExitOk;
    }
    if (sub == "psi") {
        Triangulation t = surface_by_name(name);
        if (t.surface.boundary.empty() && t.surface.punctures == 1)
            throw closed_once_punctured_error("psi_z undefined on a closed once-punctured surface");
        if (t.family != Family::punctured_disc)
            throw unsupported_family_error("psi needs once-punctured disc coordinates");
        LabeledExploration le = explore_labeled(t, cfg.node_cap, cfg.depth_cap);
        ClusterAutomorphism f = psi_z(le, arg);
        Json j;
        j["puncture"] = arg;
        j["images"] = images_to_json(f.images);
        j["direction"] = "direct";
        emit(cfg, j, "");
        return kExitOk;
    }
    throw input_error("unknown surface subcommand " + sub);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cluster-algebra engine: mutation, exchange graphs, automorphism "
                 "groups, surface triangulations"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--node-cap", cfg.node_cap, "exploration node cap");
    app.add_option("--depth-cap", cfg.depth_cap, "exploration depth cap");
    app.add_option("--ball-depth", cfg.ball_depth, "bounded-search depth");
    app.add_option("--order-bound", cfg.group_order_bound, "group identification bound");
    app.add_option("--format", cfg.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--graph", cfg.graph_path, "exchange-graph cache file");
    app.add_option("-o,--output", cfg.output_path, "output file (default stdout)");

    std::string input, images_path, surface_sub, surface_name;
    std::vector<int> seq;
    int max_rank = 5, surface_arg = 0;
    bool include_e6 = false;

    auto* mutate = app.add_subcommand("mutate", "apply a mutation sequence to a quiver or seed");
    mutate->add_option("input", input, "quiver or seed JSON file")->required();
    mutate->add_option("-k,--sequence", seq, "1-based mutation positions");

    auto* explore_cmd = app.add_subcommand("explore", "breadth-first exchange-graph closure");
    explore_cmd->add_option("input", input, "quiver JSON file")->required();

    app.add_subcommand("variables", "list the cluster variables of a cached graph");

    auto* check = app.add_subcommand("check", "decide whether an image list is a cluster automorphism");
    check->add_option("images", images_path, "JSON list of rational functions")->required();

    app.add_subcommand("aut", "compute and identify the automorphism group");

    auto* table1 = app.add_subcommand("verify-table1", "check the group table rows");
    table1->add_option("--max-rank", max_rank, "largest Dynkin rank to verify");
    table1->add_flag("--include-e6", include_e6, "also verify the E6 row");

    auto* surf = app.add_subcommand("surface", "triangulation commands");
    surf->add_option("action", surface_sub, "bmatrix | flip | flipgraph | mcg | psi")->required();
    surf->add_option("name", surface_name, "surface name or triangulation file")->required();
    surf->add_option("arg", surface_arg, "arc index (flip, 1-based) or puncture id (psi)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (mutate->parsed()) return cmd_mutate(cfg, input, seq);
        if (explore_cmd->parsed()) return cmd_explore(cfg, input);
        if (app.get_subcommand("variables")->parsed()) return cmd_variables(cfg);
        if (check->parsed()) return cmd_check(cfg, images_path);
        if (app.get_subcommand("aut")->parsed()) return cmd_aut(cfg);
        if (table1->parsed()) return cmd_verify_table1(cfg, max_rank, include_e6);
        if (surf->parsed()) return cmd_surface(cfg, surface_sub, surface_name, surface_arg);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const incomplete_graph_error& e) {
        std::cerr << "incomplete: " << e.what() << "\n";
        return kExitIncomplete;
    } catch (const unreachable_error& e) {
        std::cerr << "unreachable: " << e.what() << "\n";
        return kExitIncomplete;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerify;
    }
    std::cerr << "no subcommand\n";
    return kExitInput;
}

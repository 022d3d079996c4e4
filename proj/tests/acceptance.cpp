// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are exact equality of canonical forms throughout.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "caut/group_id.hpp"
#include "caut/json_io.hpp"
#include "caut/surface.hpp"

using namespace caut;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
    std::string name;
    double time_limit_s; // 0 = no stated limit
    std::function<void(std::ostringstream&)> body;
};

void run(const Criterion& c) {
    std::ostringstream detail;
    bool ok = true;
    std::string what;
    auto t0 = Clock::now();
    try {
        c.body(detail);
    } catch (const std::exception& e) {
        ok = false;
        what = e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
        ok = false;
        what += " [time limit exceeded]";
    }
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << "  " << c.name << "  (" << std::fixed;
    line.precision(2);
    line << secs << "s";
    if (c.time_limit_s > 0) line << " / limit " << c.time_limit_s << "s";
    line << ")";
    if (!detail.str().empty()) line << "  -- " << detail.str();
    if (!what.empty()) line << "  ** " << what;
    std::cout << line.str() << std::endl;
    if (!ok) ++failures;
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw error("requirement failed: " + msg);
}

RationalFn rf3(const std::string& s) { return parse_ratfn(s, 3); }

Quiver dynkin(const std::string& family, int rank) {
    std::vector<std::array<int, 3>> arrows;
    if (family == "A")
        for (int i = 1; i < rank; ++i) arrows.push_back({i, i + 1, 1});
    else if (family == "D") {
        arrows.push_back({1, 3, 1});
        arrows.push_back({2, 3, 1});
        for (int i = 3; i < rank; ++i) arrows.push_back({i, i + 1, 1});
    }
    return Quiver::from_arrows(rank, arrows);
}

GroupTable direct_part_table(const AutGroup& gr) {
    std::vector<int> pos(gr.order(), -1);
    for (int i = 0; i < gr.direct_order(); ++i) pos[gr.direct_indices[i]] = i;
    GroupTable t;
    t.table.assign(gr.direct_order(), std::vector<int>(gr.direct_order()));
    for (int i = 0; i < gr.direct_order(); ++i)
        for (int k = 0; k < gr.direct_order(); ++k)
            t.table[i][k] = pos[gr.table[gr.direct_indices[i]][gr.direct_indices[k]]];
    return t;
}

bool has_match(const GroupStructure& s, const std::string& name) {
    return std::find(s.matches.begin(), s.matches.end(), name) != s.matches.end();
}

// ---------------------------------------------------------------------------

void criterion1(std::ostringstream& detail) {
    Quiver q = Quiver::from_arrows(3, {{2, 1, 1}, {3, 2, 1}}); // 1<-2<-3
    ExchangeGraph g = explore(q);
    require(g.complete, "A3 exploration complete");
    std::vector<RationalFn> f = {rf3("(x2 + 1) / (x1)"), rf3("x2"), rf3("x3")};

    // f(mu_2(x2)) vs mu applied after f
    Seed s0 = initial_seed(q);
    RationalFn mu2x2 = mutate_seed(s0, 1).cluster[1];
    RationalFn lhs = substitute(mu2x2, f);
    require(lhs == rf3("(x2 + x1*x3 + 1) / (x1*x2)"), "f(mu_x2(x2)) value");

    Seed image_seed;
    image_seed.quiver = mutate_quiver(q, 0);
    image_seed.cluster = f;
    RationalFn rhs = mutate_seed(image_seed, 1).cluster[1];
    require(rhs == rf3("(x1 + x3 + x2*x3) / (x1*x2)"), "mu_f(x2)(f(x2)) value");
    require(!(lhs == rhs), "the two mutation routes differ");

    bool no_iso = false;
    try {
        check_cluster_automorphism(g, f);
    } catch (const no_quiver_iso_error&) {
        no_iso = true;
    }
    require(no_iso, "NoQuiverIso verdict");

    RationalFn image = substitute(rf3("(x1 + x1*x2 + x3) / (x2*x3)"), f);
    require(image == rf3("(x2^2 + 2*x2 + x1*x3 + 1) / (x1*x2*x3)"), "field image value");
    require(!is_cluster_variable(g, image), "image is not a cluster variable");
    detail << "f = mu_x1 rejected, image value confirmed";
}

void criterion2(std::ostringstream& detail) {
    Quiver q = Quiver::from_arrows(3, {{2, 1, 1}, {2, 3, 1}}); // 1<-2->3
    ExchangeGraph g = explore(q);
    std::set<std::string> got;
    for (const auto& v : cluster_variables(g)) got.insert(v.to_string());
    std::set<std::string> want;
    for (const char* s :
         {"x1", "x2", "x3", "(x1*x3 + 1) / (x2)", "(x2 + 1) / (x1)", "(x2 + 1) / (x3)",
          "(x2 + x1*x3 + 1) / (x2*x3)", "(x2 + x1*x3 + 1) / (x1*x2)",
          "(x2^2 + 2*x2 + x1*x3 + 1) / (x1*x2*x3)"})
        want.insert(rf3(s).to_string());
    require(got == want, "exactly the nine listed variables");

    std::vector<RationalFn> f = {rf3("x1"), rf3("(x1*x3 + 1) / (x2)"), rf3("x3")};
    ClusterAutomorphism ca = check_cluster_automorphism(g, f);
    require(ca.direction == Direction::inverse, "certified inverse");

    auto image = [&](const char* s) { return substitute(rf3(s), f); };
    require(image("(x1*x3 + 1) / (x2)") == rf3("x2"), "image 1");
    require(image("(x2 + x1*x3 + 1) / (x2*x3)") == rf3("(x2 + 1) / (x3)"), "image 2");
    require(image("(x2 + x1*x3 + 1) / (x1*x2)") == rf3("(x2 + 1) / (x1)"), "image 3");
    require(image("(x2^2 + 2*x2 + x1*x3 + 1) / (x1*x2*x3)") ==
                rf3("(x2^2 + 2*x2 + x1*x3 + 1) / (x1*x2*x3)"),
            "image 4 (fixed point)");
    require(image("(x2 + 1) / (x1)") == rf3("(x2 + x1*x3 + 1) / (x1*x2)"), "image 5");
    require(image("(x2 + 1) / (x3)") == rf3("(x2 + x1*x3 + 1) / (x2*x3)"), "image 6");
    detail << "9 variables, inverse automorphism, six image identities";
}

void criterion3(std::ostringstream& detail) {
    struct Row {
        std::string name;
        Quiver quiver;
        int direct, full;
    };
    std::vector<Row> rows = {
        {"A2", dynkin("A", 2), 5, 10},   {"A3", dynkin("A", 3), 6, 12},
        {"A4", dynkin("A", 4), 7, 14},   {"D4", dynkin("D", 4), 24, 48},
        {"D5", dynkin("D", 5), 10, 20},
    };
    for (const auto& row : rows) {
        AutGroup gr = aut_group(explore(row.quiver));
        require(gr.direct_order() == row.direct, row.name + " |Aut+|");
        require(gr.order() == row.full, row.name + " |Aut|");
        GroupStructure ds = identify_group(direct_part_table(gr));
        GroupStructure fs = identify_group(GroupTable{gr.table});
        if (row.name[0] == 'A') {
            require(has_match(ds, "Z" + std::to_string(row.direct)), row.name + " cyclic");
            require(has_match(fs, "D" + std::to_string(row.direct)), row.name + " dihedral");
        } else if (row.name == "D4") {
            require(has_match(ds, "Z4 x S3"), "D4 direct structure");
            require(has_match(fs, "D4 x S3"), "D4 full structure");
        } else {
            require(has_match(ds, "Z2 x Z5"), "D5 direct structure Z5 x Z2");
        }
        if (row.name == "A3") {
            SemidirectReport rep = semidirect_check(gr);
            require(rep.splits, "A3 semidirect splits");
            require(!rep.direct_product, "A3 product not direct");
        }
    }
    detail << "orders (5,10) (6,12) (7,14) (24,48) (10,20), structures identified";
}

void criterion4(std::ostringstream& detail) {
    Quiver q = Quiver::from_arrows(3, {{2, 1, 2}, {1, 3, 2}, {3, 2, 2}});
    ExchangeGraph g = explore(q, 500, 4);
    auto found = find_automorphisms_bounded(g, 2);
    RationalFn fx1 = rf3("(x2^2 + x3^2) / (x1)");
    RationalFn gx2 = rf3("(x2^4 + 2*x2^2*x3^2 + x3^4 + x1^2*x3^2) / (x1^2*x2)");
    const ClusterAutomorphism* f = nullptr;
    const ClusterAutomorphism* gg = nullptr;
    for (const auto& a : found) {
        if (a.direction == Direction::inverse && a.images[0] == fx1 &&
            a.images[1] == rf3("x2") && a.images[2] == rf3("x3"))
            f = &a;
        if (a.direction == Direction::direct && a.images[0] == fx1 && a.images[1] == gx2 &&
            a.images[2] == rf3("x3"))
            gg = &a;
    }
    require(f != nullptr, "inverse automorphism f found at depth 2");
    require(gg != nullptr, "direct automorphism g found at depth 2");
    // direction arithmetic: g agrees with the composite of two inverse steps
    ClusterAutomorphism h = check_cluster_automorphism(
        g, compose_images(f->images, {rf3("x1"), rf3("(x1^2 + x3^2) / (x2)"), rf3("x3")}));
    require(direction_sign(h.direction) == 0, "inverse after inverse is direct");
    require(direction_sign(compose(g, *f, invert(g, *f)).direction) == 0,
            "f composed with its inverse is direct");
    detail << "f inverse, g direct with the reduced displayed image";
}

void criterion5(std::ostringstream& detail) {
    std::vector<std::pair<std::string, Triangulation>> cases;
    for (int m = 5; m <= 8; ++m) cases.push_back({"polygon" + std::to_string(m), polygon_fan(m)});
    cases.push_back({"annulus(2,1)", annulus_std(2, 1)});
    cases.push_back({"annulus(2,2)", annulus_std(2, 2)});
    cases.push_back({"punctured_disc(5,1)", punctured_disc_std(5, 1)});
    cases.push_back({"figure2_left", figure2_left()});
    cases.push_back({"figure2_right", figure2_right()});
    int flips = 0;
    for (const auto& [name, t] : cases) {
        Quiver q = b_matrix(t);
        std::set<int> radii;
        if (t.family == Family::abstract_complex)
            for (auto [l, r] : t.self_folded) radii.insert(r);
        for (int k = 0; k < t.n(); ++k) {
            if (radii.count(k)) continue;
            require(b_matrix(flip(t, k)) == mutate_quiver(q, k),
                    name + " commutation at arc " + std::to_string(k + 1));
            ++flips;
        }
    }
    require(flip(figure2_left(), 5).key() == figure2_right().key(),
            "figure2_left flipped at arc 6 is figure2_right");
    Quiver displayed = Quiver::from_arrows(
        6, {{1, 2, 1}, {6, 2, 1}, {2, 3, 1}, {5, 2, 1}, {3, 4, 1}, {3, 5, 1}, {5, 4, 1}});
    require(b_matrix(figure2_right()) == displayed, "figure2_right displayed quiver");
    detail << flips << " flips checked";
}

void criterion6(std::ostringstream& detail) {
    // pentagon = A2
    {
        LabeledExploration le = explore_labeled(polygon_fan(5));
        ClusterAutomorphism r = phi(le, mcg_generator(polygon_fan(5), "rot"));
        std::set<std::string> orbit;
        ClusterAutomorphism cur = r;
        for (int k = 0; k < 5; ++k) {
            orbit.insert(cur.image_key());
            cur = compose(le.graph, r, cur);
        }
        require(orbit.size() == 5, "pentagon rotation image has order 5");
        AutGroup gr = aut_group(le.graph);
        std::set<std::string> direct;
        for (int i : gr.direct_indices) direct.insert(gr.elements[i].image_key());
        require(orbit == direct, "rotation subgroup equals Aut+ of A2");
    }
    // heptagon = A4
    {
        LabeledExploration le = explore_labeled(polygon_fan(7));
        ClusterAutomorphism r = phi(le, mcg_generator(polygon_fan(7), "rot"));
        std::set<std::string> orbit;
        ClusterAutomorphism cur = r;
        for (int k = 0; k < 7; ++k) {
            orbit.insert(cur.image_key());
            cur = compose(le.graph, r, cur);
        }
        require(orbit.size() == 7, "heptagon rotation image has order 7");
        AutGroup gr = aut_group(le.graph);
        require(static_cast<int>(orbit.size()) == gr.direct_order(),
                "rotation subgroup equals Aut+ of A4");
    }
    // annulus A(2,1)
    {
        Triangulation ann = annulus_std(2, 1);
        LabeledExploration le = explore_labeled(ann, 4000, 10);
        ClusterAutomorphism r1 = phi(le, mcg_generator(ann, "r1"));
        ClusterAutomorphism r2 = phi(le, mcg_generator(ann, "r2"));
        auto reps = verify_presentation({{"r1", r1}, {"r2", r2}}, annulus_presentation(2, 1));
        require(all_relations_hold(reps), "H_{2,1} relations");
    }
    detail << "pentagon order 5, heptagon order 7, H_{2,1} relations";
}

void criterion7(std::ostringstream& detail) {
    // both parity branches: n = 7 (sigma -> (s, empty)) and n = 6 ((s, z1))
    for (int c : {4, 3}) {
        int n = c + 3;
        DtildeGenerators dg = dtilde_chi_generators(c);
        auto reps = verify_presentation({{"tau", dg.tau},
                                         {"sigma", dg.sigma},
                                         {"rho1", dg.rho1},
                                         {"rhon", dg.rhon}},
                                        dtilde_presentation(n));
        require(all_relations_hold(reps), "mapping-class presentation at n = " + std::to_string(n));
    }

    // marked mapping class identities on words of length <= 4
    Triangulation base = punctured_disc_std(4, 2);
    MappingClass r = mcg_generator(base, "r");
    MappingClass s = mcg_generator(base, "s");
    MarkedMappingClass e = mmc_identity(base);
    std::vector<MarkedMappingClass> gens = {mmc_make(r, {}), mmc_make(s, {}),
                                            mmc_make(mc_identity(base), {0}),
                                            mmc_make(mc_identity(base), {1})};
    require(mmcg_equal(base, mmcg_product(base, gens[2], gens[2]), e), "(1,z)(1,z) = (1,0)");
    require(mmcg_equal(base,
                       mmcg_product(base, gens[3], gens[1]),
                       mmcg_product(base, gens[1], gens[2])),
            "(1,z')(f,0) = (f,0)(1,z) for f(z) = z'");
    std::vector<MarkedMappingClass> words = {e};
    std::vector<MarkedMappingClass> frontier = {e};
    for (int len = 0; len < 4; ++len) {
        std::vector<MarkedMappingClass> next;
        for (const auto& w : frontier)
            for (const auto& g : gens) next.push_back(mmcg_product(base, w, g));
        words.insert(words.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    for (const auto& w : words) {
        require(mmcg_equal(base, mmcg_product(base, w, mmcg_inverse(base, w)), e),
                "inverse law");
        require(mmcg_equal(base, mmcg_product(base, w, e), w), "identity law");
        for (const auto& a : {gens[1], gens[2]})
            require(mmcg_equal(base, mmcg_product(base, mmcg_product(base, w, a), gens[0]),
                               mmcg_product(base, w, mmcg_product(base, a, gens[0]))),
                    "associativity");
    }
    detail << "presentation verified at n=6 and n=7, " << words.size() << " marked mapping class words";
}

void criterion8(std::ostringstream& detail) {
    LabeledExploration le = explore_labeled(punctured_disc_std(5, 1));
    ClusterAutomorphism psi = psi_z(le, 0);
    require(psi.direction == Direction::direct, "psi_z direct");
    require(!psi.is_identity(), "psi_z nontrivial");
    require(compose(le.graph, psi, psi).is_identity(), "psi_z order 2");

    ClusterAutomorphism rot = phi(le, mcg_generator(punctured_disc_std(5, 1), "rot"));
    std::set<std::string> closure;
    std::vector<ClusterAutomorphism> frontier = {identity_automorphism(le.graph)};
    closure.insert(frontier[0].image_key());
    while (!frontier.empty()) {
        ClusterAutomorphism f = frontier.back();
        frontier.pop_back();
        for (const ClusterAutomorphism* g : {&psi, &rot}) {
            ClusterAutomorphism h = compose(le.graph, *g, f);
            if (closure.insert(h.image_key()).second) frontier.push_back(h);
        }
    }
    AutGroup gr = aut_group(le.graph);
    require(static_cast<int>(closure.size()) == gr.direct_order(),
            "psi and the rotation generate Aut+");
    GroupStructure ds = identify_group(direct_part_table(gr));
    require(has_match(ds, "Z2 x Z5"), "Aut+ is Z5 x Z2");

    // toggling is involutive and B-invariant on every supported triangulation
    int checked = 0;
    std::vector<Triangulation> tris = {punctured_disc_std(4, 1), punctured_disc_std(5, 1),
                                       punctured_disc_std(3, 2), punctured_disc_std(4, 2)};
    for (int step = 0; step < 6; ++step)
        tris.push_back(flip(tris[step % 2], step % tris[step % 2].n()));
    for (const auto& t : tris) {
        for (int z = 0; z < t.surface.punctures; ++z) {
            Triangulation tog = tag_toggle(t, z);
            require(b_matrix(tog) == b_matrix(t), "toggle B-invariance");
            require(tag_toggle(tog, z).key() == t.key(), "toggle involution");
            ++checked;
        }
    }
    detail << "psi_z direct of order 2, <psi, rot> = Z5 x Z2, " << checked
           << " toggles checked";
}

void criterion9(std::ostringstream& detail) {
    std::vector<std::pair<std::string, Quiver>> rows = {
        {"A1", dynkin("A", 1)}, {"A2", dynkin("A", 2)}, {"A3", dynkin("A", 3)},
        {"A4", dynkin("A", 4)}, {"D4", dynkin("D", 4)}, {"D5", dynkin("D", 5)},
    };
    int vars = 0;
    for (const auto& [name, q] : rows) {
        ExchangeGraph g = explore(q);
        require(g.complete, name + " complete");
        for (const auto& v : cluster_variables(g)) {
            require(is_laurent(v), name + " Laurent phenomenon");
            require(is_positive_laurent(v), name + " positivity");
            ++vars;
        }
    }
    detail << vars << " cluster variables, all positive Laurent";
}

void criterion10(std::ostringstream& detail) {
    // finite type: the computed groups are finite by construction (criterion
    // 3); here the infinite-type witnesses
    const int kPowers = 21; // pairwise distinct powers up to K = 20
    {
        // the translation maps the initial seed to the seed after the
        // admissible source word with the identity correspondence, so its
        // power image lists are the clusters along the repeated word
        Quiver q = atilde_quiver(2, 1);
        ClusterAutomorphism tau = translation_automorphism(q);
        std::vector<int> word = *topological_order(q);
        std::vector<RationalFn> tau2 = compose_images(tau.images, tau.images);
        Seed walk = initial_seed(q);
        std::set<std::string> keys;
        for (int k = 1; k <= kPowers; ++k) {
            for (int p : word) walk = mutate_seed(walk, p);
            std::string key;
            for (const auto& f : walk.cluster) key += f.to_string() + "|";
            require(keys.insert(key).second, "A~(2,1) translation powers distinct");
            if (k == 1) require(walk.cluster == tau.images, "walk matches the translation");
            if (k == 2) require(walk.cluster == tau2, "walk matches the composed square");
        }
    }
    {
        Quiver q = Quiver::from_arrows(3, {{2, 1, 2}, {1, 3, 2}, {3, 2, 2}});
        ExchangeGraph g = explore(q, 200, 3);
        auto found = find_automorphisms_bounded(g, 2);
        RationalFn fx1 = rf3("(x2^2 + x3^2) / (x1)");
        const ClusterAutomorphism* gg = nullptr;
        for (const auto& a : found)
            if (a.direction == Direction::direct && a.images[0] == fx1 &&
                a.images[2] == rf3("x3") && !a.is_identity())
                gg = &a;
        require(gg != nullptr, "torus-quiver generator found");
        // g maps the initial seed to the mu_2 mu_1 seed with the identity
        // correspondence, so the power image lists are the clusters along
        // the repeated word; one composition cross-checks the walk
        std::vector<RationalFn> g2 = compose_images(gg->images, gg->images);
        Seed walk = initial_seed(q);
        std::set<std::string> keys;
        for (int k = 1; k <= kPowers; ++k) {
            walk = mutate_seed(mutate_seed(walk, 0), 1);
            std::string key;
            for (const auto& f : walk.cluster) key += f.to_string() + "|";
            require(keys.insert(key).second, "torus generator powers distinct");
            if (k == 1) require(walk.cluster == gg->images, "walk matches g");
            if (k == 2) require(walk.cluster == g2, "walk matches g composed with g");
        }
    }
    detail << "unbounded order witnessed to K = 20 on A~(2,1) and the torus quiver";
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"1. field map of a single mutation is not a cluster automorphism", 1.0, criterion1},
        {"2. A3 enumeration and the inverse automorphism", 1.0, criterion2},
        {"3. automorphism groups at desk scale", 60.0, criterion3},
        {"4. torus-quiver bounded automorphisms", 0.0, criterion4},
        {"5. flips commute with mutation", 10.0, criterion5},
        {"6. disc and annulus mapping class groups", 0.0, criterion6},
        {"7. twice-punctured disc presentation", 0.0, criterion7},
        {"8. tag-toggle automorphisms", 0.0, criterion8},
        {"9. Laurent phenomenon and positivity", 0.0, criterion9},
        {"10. unbounded-order automorphisms in infinite type", 0.0, criterion10},
    };
    for (const auto& c : criteria) run(c);
    if (failures) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all acceptance criteria pass" << std::endl;
    return 0;
}

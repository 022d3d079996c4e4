#include <doctest.h>

#include <algorithm>
#include <set>

#include "caut/cluster_aut.hpp"
#include "caut/group_id.hpp"

using namespace caut;

namespace {

Quiver a3_source_middle() { return Quiver::from_arrows(3, {{2, 1, 1}, {2, 3, 1}}); }
Quiver linear_a3() { return Quiver::from_arrows(3, {{2, 1, 1}, {3, 2, 1}}); }
Quiver markov() { return Quiver::from_arrows(3, {{2, 1, 2}, {1, 3, 2}, {3, 2, 2}}); }
Quiver star_d4() { return Quiver::from_arrows(4, {{1, 2, 1}, {1, 3, 1}, {1, 4, 1}}); }

std::vector<RationalFn> images(std::initializer_list<const char*> strs, int n) {
    std::vector<RationalFn> out;
    for (const char* s : strs) out.push_back(parse_ratfn(s, n));
    return out;
}

// all (node, ordering) candidates of a complete graph
std::vector<std::vector<RationalFn>> all_candidates(const ExchangeGraph& g) {
    std::vector<std::vector<RationalFn>> out;
    std::vector<int> perm(g.quiver.n);
    for (const auto& [key, node] : g.nodes) {
        for (int i = 0; i < g.quiver.n; ++i) perm[i] = i;
        do {
            std::vector<RationalFn> cand;
            for (int i : perm) cand.push_back(node.seed.cluster[i]);
            out.push_back(std::move(cand));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

} // namespace

TEST_CASE("the field map of a single mutation need not be a cluster automorphism") {
    // 1<-2<-3, f = mu_{x1}: images form a cluster but neither Q nor Q^op maps
    ExchangeGraph g = explore(linear_a3());
    auto f = images({"(x2 + 1) / (x1)", "x2", "x3"}, 3);
    CHECK_THROWS_AS(check_cluster_automorphism(g, f), no_quiver_iso_error);
    try {
        check_cluster_automorphism(g, f);
    } catch (const no_quiver_iso_error& e) {
        // the image quiver is p1 -> p2 <- p3
        CHECK(e.image_quiver == Quiver::from_arrows(3, {{1, 2, 1}, {3, 2, 1}}));
    }
    CHECK_FALSE(oracle_check(g, f));

    auto not_cluster = images({"x1", "x2", "(x1 + 1) / (x3)"}, 3);
    CHECK_THROWS_AS(check_cluster_automorphism(g, not_cluster), not_a_cluster_error);
}

TEST_CASE("the mu_2 field map on 1<-2->3 is an inverse cluster automorphism") {
    ExchangeGraph g = explore(a3_source_middle());
    auto f = images({"x1", "(x1*x3 + 1) / (x2)", "x3"}, 3);
    ClusterAutomorphism ca = check_cluster_automorphism(g, f);
    CHECK(ca.direction == Direction::inverse);
    CHECK(oracle_check(g, f));

    // the six image identities
    auto apply = [&](const char* s) { return substitute(parse_ratfn(s, 3), f); };
    CHECK(apply("(x1*x3 + 1) / (x2)") == parse_ratfn("x2", 3));
    CHECK(apply("(x1*x3 + x2 + 1) / (x2*x3)") == parse_ratfn("(x2 + 1) / (x3)", 3));
    CHECK(apply("(x1*x3 + x2 + 1) / (x1*x2)") == parse_ratfn("(x2 + 1) / (x1)", 3));
    CHECK(apply("(x2^2 + 2*x2 + 1 + x1*x3) / (x1*x2*x3)") ==
          parse_ratfn("(x2^2 + 2*x2 + 1 + x1*x3) / (x1*x2*x3)", 3));
    CHECK(apply("(x2 + 1) / (x1)") == parse_ratfn("(x2 + 1 + x1*x3) / (x1*x2)", 3));
    CHECK(apply("(x2 + 1) / (x3)") == parse_ratfn("(x2 + 1 + x1*x3) / (x2*x3)", 3));
}

TEST_CASE("identity and oracle sanity") {
    ExchangeGraph g = explore(a3_source_middle());
    ClusterAutomorphism id = identity_automorphism(g);
    CHECK(id.direction == Direction::direct);
    CHECK(id.is_identity());
    CHECK(oracle_check(g, id.images));
}

TEST_CASE("oracle equivalence: certificate criterion vs cluster-image scan") {
    for (const Quiver& q :
         {Quiver::from_arrows(1, {}), Quiver::from_arrows(2, {{2, 1, 1}}), a3_source_middle(),
          linear_a3(), Quiver::from_arrows(4, {{2, 1, 1}, {3, 2, 1}, {4, 3, 1}}),
          star_d4()}) {
        ExchangeGraph g = explore(q);
        for (const auto& cand : all_candidates(g)) {
            bool certified = true;
            try {
                check_cluster_automorphism(g, cand);
            } catch (const error&) {
                certified = false;
            }
            CHECK(certified == oracle_check(g, cand));
        }
    }
}

TEST_CASE("composition, inversion, powers") {
    ExchangeGraph g = explore(a3_source_middle());
    auto f = check_cluster_automorphism(g, images({"x1", "(x1*x3 + 1) / (x2)", "x3"}, 3));
    ClusterAutomorphism finv = invert(g, f);
    CHECK(finv.direction == Direction::inverse);
    CHECK(compose(g, f, finv).is_identity());
    CHECK(compose(g, finv, f).is_identity());
    // direction adds mod 2
    ClusterAutomorphism ff = compose(g, f, f);
    CHECK(ff.direction == Direction::direct);
    CHECK(automorphism_power(g, f, 0).is_identity());
    CHECK(automorphism_power(g, f, 2) == ff);
    CHECK(automorphism_power(g, f, -1) == finv);
}

TEST_CASE("quiver automorphisms and anti-automorphisms induce cluster automorphisms") {
    ExchangeGraph g = explore(a3_source_middle());
    ClusterAutomorphism swap = from_quiver_automorphism(g, {2, 1, 0});
    CHECK(swap.direction == Direction::direct);
    CHECK(swap.images == images({"x3", "x2", "x1"}, 3));
    CHECK_THROWS_AS(from_quiver_automorphism(g, {1, 0, 2}), input_error);

    // functoriality on the D4 star: S3 embeds in Aut+ injectively
    ExchangeGraph gd = explore(star_d4());
    auto autos = quiver_automorphisms(star_d4());
    REQUIRE(autos.size() == 6);
    std::set<std::string> seen;
    for (const auto& s1 : autos) {
        ClusterAutomorphism c1 = from_quiver_automorphism(gd, s1);
        CHECK(c1.direction == Direction::direct);
        seen.insert(c1.image_key());
        for (const auto& s2 : autos) {
            PointBijection prod(4);
            for (int i = 0; i < 4; ++i) prod[i] = s1[s2[i]];
            CHECK(compose(gd, from_quiver_automorphism(gd, s1), from_quiver_automorphism(gd, s2))
                      .images ==
                  from_quiver_automorphism(gd, prod).images);
        }
    }
    CHECK(seen.size() == 6); // kernel = stabilizer of the points = trivial here

    // the standard A~(2,1) quiver has an inverse automorphism from its
    // anti-automorphism
    Quiver at = atilde_quiver(2, 1);
    ExchangeGraph ga = explore(at, 300, 6);
    auto antis = quiver_anti_automorphisms(at);
    REQUIRE_FALSE(antis.empty());
    ClusterAutomorphism inv = from_quiver_anti_automorphism(ga, antis.front());
    CHECK(inv.direction == Direction::inverse);
}

TEST_CASE("automorphism groups of small Dynkin types") {
    ExchangeGraph g1 = explore(Quiver::from_arrows(1, {}));
    AutGroup a1 = aut_group(g1);
    CHECK(a1.order() == 2);
    CHECK(a1.direct_order() == 2);
    CHECK(a1.index_of_direct() == 1);

    ExchangeGraph g2 = explore(Quiver::from_arrows(2, {{2, 1, 1}}));
    AutGroup a2 = aut_group(g2);
    CHECK(a2.order() == 10);
    CHECK(a2.direct_order() == 5);

    ExchangeGraph g3 = explore(a3_source_middle());
    AutGroup a3 = aut_group(g3);
    CHECK(a3.order() == 12);
    CHECK(a3.direct_order() == 6);

    // the combinatorial table agrees with substitution composition
    for (int i = 0; i < a3.order(); ++i)
        for (int j = 0; j < a3.order(); ++j) {
            ClusterAutomorphism via_subst = compose(g3, a3.elements[i], a3.elements[j]);
            CHECK(a3.elements[a3.table[i][j]].images == via_subst.images);
        }

    // sign homomorphism and normality over the whole table
    for (int i = 0; i < a3.order(); ++i)
        for (int j = 0; j < a3.order(); ++j) {
            int di = direction_sign(a3.elements[i].direction);
            int dj = direction_sign(a3.elements[j].direction);
            CHECK(direction_sign(a3.elements[a3.table[i][j]].direction) == (di + dj) % 2);
        }
    for (int i : a3.direct_indices)
        for (int j = 0; j < a3.order(); ++j) {
            int jinv = GroupTable{a3.table}.inverse(j);
            int conj = a3.table[a3.table[j][i]][jinv];
            CHECK(a3.elements[conj].direction == Direction::direct);
        }

    // determination by initial images: no duplicates
    std::set<std::string> keys;
    for (const auto& e : a3.elements) keys.insert(e.image_key());
    CHECK(static_cast<int>(keys.size()) == a3.order());

    ExchangeGraph gd = explore(star_d4());
    AutGroup d4 = aut_group(gd);
    CHECK(d4.order() == 48);
    CHECK(d4.direct_order() == 24);
}

TEST_CASE("every group element certifies and inverts") {
    ExchangeGraph g = explore(a3_source_middle());
    AutGroup a3 = aut_group(g);
    for (const auto& e : a3.elements) {
        CHECK(oracle_check(g, e.images));
        CHECK(compose(g, e, invert(g, e)).is_identity());
    }
}

TEST_CASE("semidirect splitting") {
    ExchangeGraph g3 = explore(a3_source_middle());
    AutGroup a3 = aut_group(g3);
    SemidirectReport rep = semidirect_check(a3);
    CHECK(rep.splits);
    CHECK_FALSE(rep.direct_product);

    ExchangeGraph gd = explore(star_d4());
    SemidirectReport repd = semidirect_check(aut_group(gd));
    CHECK(repd.splits);

    ExchangeGraph g1 = explore(Quiver::from_arrows(1, {}));
    CHECK_THROWS_AS(semidirect_check(aut_group(g1)), error);
}

TEST_CASE("bounded automorphism search on the torus quiver") {
    ExchangeGraph g = explore(markov(), 400, 4);
    auto found = find_automorphisms_bounded(g, 2);
    bool has_f = false, has_g = false;
    RationalFn fx1 = parse_ratfn("(x2^2 + x3^2) / (x1)", 3);
    for (const auto& a : found) {
        if (a.direction == Direction::inverse && a.images[0] == fx1 &&
            a.images[1] == parse_ratfn("x2", 3) && a.images[2] == parse_ratfn("x3", 3))
            has_f = true;
        if (a.direction == Direction::direct && a.images[0] == fx1 &&
            a.images[2] == parse_ratfn("x3", 3) && !a.is_identity())
            has_g = true;
    }
    CHECK(has_f);
    CHECK(has_g);

    // depth 0: quiver-induced automorphisms only (target = initial cluster)
    auto depth0 = find_automorphisms_bounded(g, 0);
    for (const auto& a : depth0)
        CHECK(canonical_cluster_key(a.images) == g.initial_key);
}

TEST_CASE("bounded automorphisms match the full group on finite types") {
    ExchangeGraph g = explore(a3_source_middle());
    AutGroup full = aut_group(g);
    auto found = find_automorphisms_bounded(g, 64);
    CHECK(found.size() == full.elements.size());
    std::set<std::string> a, b;
    for (const auto& e : full.elements) a.insert(e.image_key());
    for (const auto& e : found) b.insert(e.image_key());
    CHECK(a == b);
}

TEST_CASE("opposite mutation equivalence searches") {
    // trees reach their opposite orientation
    auto res3 = opposite_mutation_equivalent(linear_a3());
    CHECK(res3.found);
    {
        Quiver cur = linear_a3();
        for (int k : res3.mutation_sequence) cur = mutate_quiver(cur, k);
        CHECK_FALSE(quiver_isomorphisms(cur, opposite(linear_a3())).empty());
    }
    CHECK(opposite_mutation_equivalent(star_d4()).found);

    // arrowless quiver equals its opposite with the empty sequence
    auto res1 = opposite_mutation_equivalent(Quiver::from_arrows(1, {}));
    CHECK(res1.found);
    CHECK(res1.mutation_sequence.empty());

    // the triple-arrow example: bounded search reports no witness
    Quiver wild = Quiver::from_arrows(3, {{1, 2, 1}, {1, 3, 3}, {2, 3, 2}});
    auto wres = opposite_mutation_equivalent(wild, 400, 10);
    CHECK_FALSE(wres.found);

    // index dichotomy on computed groups: whenever the opposite quiver is
    // reached and the quiver has arrows, the direct subgroup has index two
    std::vector<Quiver> finite_types = {
        Quiver::from_arrows(2, {{2, 1, 1}}),
        a3_source_middle(),
        linear_a3(),
        Quiver::from_arrows(4, {{2, 1, 1}, {3, 2, 1}, {4, 3, 1}}),
        star_d4(),
    };
    for (const Quiver& q : finite_types) {
        auto witness = opposite_mutation_equivalent(q);
        CHECK(witness.found);
        CHECK(aut_group(explore(q)).index_of_direct() == 2);
    }
    // the arrowless rank-one quiver degenerates: the witness is trivial and
    // every automorphism counts as direct
    auto triv = opposite_mutation_equivalent(Quiver::from_arrows(1, {}));
    CHECK(triv.found);
    CHECK(aut_group(explore(Quiver::from_arrows(1, {}))).index_of_direct() == 1);
}

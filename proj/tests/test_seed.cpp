#include <doctest.h>

#include <deque>
#include <map>
#include <set>

#include "caut/seed.hpp"

using namespace caut;

namespace {

Quiver a2() { return Quiver::from_arrows(2, {{2, 1, 1}}); }                   // 1<-2
Quiver a3_source_middle() { return Quiver::from_arrows(3, {{2, 1, 1}, {2, 3, 1}}); }
Quiver linear_a3() { return Quiver::from_arrows(3, {{2, 1, 1}, {3, 2, 1}}); }
Quiver markov() { return Quiver::from_arrows(3, {{2, 1, 2}, {1, 3, 2}, {3, 2, 2}}); }

// independent count oracle: Catalan numbers via the standard recurrence
long long catalan(int n) {
    std::vector<long long> c(n + 1, 0);
    c[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
    return c[n];
}

// independent distance oracle: plain BFS on clusters by direct mutation
int bfs_distance(const Quiver& q, const std::string& from, const std::string& to) {
    Seed init = initial_seed(q);
    std::map<std::string, Seed> seen;
    std::deque<std::string> queue;
    std::string k0 = canonical_cluster_key(init.cluster);
    seen[k0] = init;
    queue.push_back(k0);
    while (!queue.empty()) {
        std::string key = queue.front();
        queue.pop_front();
        Seed s = seen[key];
        for (int k = 0; k < q.n; ++k) {
            Seed m = mutate_seed(s, k);
            std::string mk = canonical_cluster_key(m.cluster);
            if (!seen.count(mk)) {
                seen[mk] = m;
                queue.push_back(mk);
            }
        }
    }
    REQUIRE(seen.count(from));
    REQUIRE(seen.count(to));
    std::map<std::string, int> d2;
    d2[from] = 0;
    std::deque<std::string> q2 = {from};
    while (!q2.empty()) {
        std::string key = q2.front();
        q2.pop_front();
        Seed s = seen[key];
        for (int k = 0; k < q.n; ++k) {
            Seed m = mutate_seed(s, k);
            std::string mk = canonical_cluster_key(m.cluster);
            if (!d2.count(mk)) {
                d2[mk] = d2[key] + 1;
                q2.push_back(mk);
            }
        }
    }
    return d2.at(to);
}

} // namespace

TEST_CASE("initial seeds") {
    Seed s = initial_seed(a3_source_middle());
    CHECK(s.cluster.size() == 3);
    CHECK(s.cluster[0].to_string() == "x1");
    CHECK(s.cluster[2].to_string() == "x3");
    Seed one = initial_seed(Quiver::from_arrows(1, {}));
    CHECK(one.cluster[0].to_string() == "x1");
}

TEST_CASE("seed mutation follows the exchange relation") {
    // 1<-2->3 mutated at 2 gives (1 + x1 x3)/x2
    Seed s = mutate_seed(initial_seed(a3_source_middle()), 1);
    CHECK(s.cluster[1] == parse_ratfn("(x1*x3 + 1) / (x2)", 3));
    // the torus quiver mutated at 1 gives (x2^2 + x3^2)/x1
    Seed t = mutate_seed(initial_seed(markov()), 0);
    CHECK(t.cluster[0] == parse_ratfn("(x2^2 + x3^2) / (x1)", 3));
    // involution
    Seed back = mutate_seed(t, 0);
    CHECK(back.cluster == initial_seed(markov()).cluster);
    CHECK(back.quiver == markov());
}

TEST_CASE("canonical cluster keys are order-free and distinct across clusters") {
    Seed s = initial_seed(a3_source_middle());
    std::vector<RationalFn> shuffled = {s.cluster[1], s.cluster[0], s.cluster[2]};
    CHECK(canonical_cluster_key(s.cluster) == canonical_cluster_key(shuffled));

    ExchangeGraph g = explore(a3_source_middle());
    std::set<std::string> keys;
    for (const auto& [key, node] : g.nodes) keys.insert(key);
    CHECK(static_cast<int>(keys.size()) == 14);
}

TEST_CASE("exploration of finite types matches the triangulation counts") {
    ExchangeGraph g2 = explore(a2());
    CHECK(g2.complete);
    CHECK(static_cast<int>(g2.nodes.size()) == catalan(3)); // pentagon: 5 clusters
    CHECK(static_cast<int>(cluster_variables(g2).size()) == 5);

    ExchangeGraph g3 = explore(a3_source_middle());
    CHECK(g3.complete);
    CHECK(static_cast<int>(g3.nodes.size()) == catalan(4)); // 14 clusters
    CHECK(static_cast<int>(cluster_variables(g3).size()) == 9);
}

TEST_CASE("the nine A3 cluster variables match the known list") {
    ExchangeGraph g = explore(a3_source_middle());
    std::set<std::string> got;
    for (const auto& v : cluster_variables(g)) got.insert(v.to_string());
    std::vector<std::string> expected = {
        "x1",
        "x2",
        "x3",
        "(x1*x3 + 1) / (x2)",
        "(x2 + 1) / (x1)",
        "(x2 + 1) / (x3)",
        "(x2 + x1*x3 + 1) / (x2*x3)",
        "(x2 + x1*x3 + 1) / (x1*x2)",
        "(x2^2 + 2*x2 + x1*x3 + 1) / (x1*x2*x3)",
    };
    std::set<std::string> want;
    for (const auto& s : expected) want.insert(parse_ratfn(s, 3).to_string());
    CHECK(got == want);

    RationalFn not_var = parse_ratfn("(x2^2 + 2*x2 + x1*x3 + 1) / (x1*x2*x3)", 3);
    // it is a variable of the 1<-2->3 algebra but not of the 1<-2<-3 one
    ExchangeGraph glin = explore(linear_a3());
    CHECK(is_cluster_variable(g, not_var));
    CHECK_FALSE(is_cluster_variable(glin, not_var));
}

TEST_CASE("membership queries and incompleteness") {
    ExchangeGraph g = explore(a3_source_middle());
    Seed s = initial_seed(a3_source_middle());
    CHECK(is_cluster(g, s.cluster));
    CHECK(is_cluster_variable(g, s.cluster[0]));

    ExchangeGraph partial = explore(markov(), 50, 64);
    CHECK_FALSE(partial.complete);
    CHECK(is_cluster(partial, initial_seed(markov()).cluster));
    CHECK_THROWS_AS(is_cluster_variable(partial, parse_ratfn("(x1 + 1) / (x2)", 3)),
                    incomplete_graph_error);
}

TEST_CASE("every explored cluster variable is a positive Laurent polynomial") {
    for (const Quiver& q : {a2(), a3_source_middle(), linear_a3()}) {
        ExchangeGraph g = explore(q);
        REQUIRE(g.complete);
        for (const auto& v : cluster_variables(g)) {
            CHECK(is_laurent(v));
            CHECK(is_positive_laurent(v));
        }
    }
}

TEST_CASE("graph edges are involutive through the alignment permutations") {
    ExchangeGraph g = explore(a3_source_middle());
    for (const auto& [key, node] : g.nodes) {
        REQUIRE(node.expanded);
        for (int k = 0; k < g.quiver.n; ++k) {
            const auto& e = node.edges[k];
            REQUIRE_FALSE(e.target.empty());
            const auto& back = g.node(e.target).edges[e.align[k]];
            CHECK(back.target == key);
        }
    }
    for (const auto& [key, node] : g.nodes)
        CHECK(static_cast<int>(node.edges.size()) == g.quiver.n);
}

TEST_CASE("find_flip_path returns a shortest usable mutation sequence") {
    ExchangeGraph g = explore(a3_source_middle());

    CHECK(find_flip_path(g, g.initial_key, g.initial_key).empty());

    Seed mu2 = mutate_seed(initial_seed(a3_source_middle()), 1);
    std::string target = canonical_cluster_key(mu2.cluster);
    std::vector<int> path = find_flip_path(g, g.initial_key, target);
    CHECK(path == std::vector<int>{1});

    // applying the path lands on the target cluster; the length matches an
    // independent BFS
    int checked = 0;
    for (const auto& [from, from_node] : g.nodes) {
        for (const auto& [to, to_node] : g.nodes) {
            if (++checked % 7 != 0) continue; // sampled pairs keep this fast
            std::vector<int> p = find_flip_path(g, from, to);
            Seed cur = from_node.seed;
            for (int k : p) cur = mutate_seed(cur, k);
            CHECK(canonical_cluster_key(cur.cluster) == to);
            CHECK(static_cast<int>(p.size()) == bfs_distance(a3_source_middle(), from, to));
        }
    }
}

TEST_CASE("quivers agree whenever two mutation paths meet") {
    // explore() verifies the aligned quiver equality on every collision and
    // would throw; reaching completeness is the assertion
    CHECK(explore(a3_source_middle()).complete);
    CHECK(explore(Quiver::from_arrows(4, {{1, 2, 1}, {3, 2, 1}, {3, 4, 1}})).complete);
}

TEST_CASE("caps yield flagged partial graphs") {
    ExchangeGraph g = explore(markov(), 100, 64);
    CHECK_FALSE(g.complete);
    CHECK(static_cast<int>(g.nodes.size()) <= 100);
    ExchangeGraph d = explore(markov(), 100000, 3);
    CHECK_FALSE(d.complete);
    CHECK(d.depth_reached == 3);
}

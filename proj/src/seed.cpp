#include "caut/seed.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace caut {

Seed initial_seed(const Quiver& q) {
    Seed s;
    s.quiver = q;
    s.cluster.reserve(q.n);
    for (int i = 0; i < q.n; ++i) s.cluster.push_back(RationalFn::variable(q.n, i));
    return s;
}

Seed mutate_seed(const Seed& s, int k) {
    int n = s.quiver.n;
    if (k < 0 || k >= n) throw index_error("mutation position out of range");
    RationalFn out_prod = RationalFn::constant(s.cluster[k].nvars(), 1);
    RationalFn in_prod = out_prod;
    for (int j = 0; j < n; ++j) {
        int m = s.quiver.b[k][j];
        for (int t = 0; t < m; ++t) out_prod = out_prod * s.cluster[j];
        for (int t = 0; t < -m; ++t) in_prod = in_prod * s.cluster[j];
    }
    Seed r = s;
    r.cluster[k] = (out_prod + in_prod) / s.cluster[k];
    r.quiver = mutate_quiver(s.quiver, k);
    return r;
}

std::string canonical_cluster_key(const std::vector<RationalFn>& cluster) {
    std::vector<std::string> parts;
    parts.reserve(cluster.size());
    for (const auto& f : cluster) parts.push_back(f.to_string());
    std::sort(parts.begin(), parts.end());
    std::string key;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) key += '|';
        key += parts[i];
    }
    return key;
}

const ExchangeNode& ExchangeGraph::node(const std::string& key) const {
    auto it = nodes.find(key);
    if (it == nodes.end()) throw unreachable_error("node not in exchange graph: " + key);
    return it->second;
}

namespace {

// permutation pi with from.cluster[i] == to.cluster[pi[i]]
std::vector<int> alignment(const std::vector<RationalFn>& from,
                           const std::vector<RationalFn>& to) {
    std::unordered_map<std::string, int> pos;
    for (int i = 0; i < static_cast<int>(to.size()); ++i) pos[to[i].to_string()] = i;
    std::vector<int> pi(from.size());
    for (int i = 0; i < static_cast<int>(from.size()); ++i) {
        auto it = pos.find(from[i].to_string());
        if (it == pos.end()) throw error("clusters do not align");
        pi[i] = it->second;
    }
    return pi;
}

// the quiver is determined by its cluster, so two routes into the same
// cluster must carry the same quiver up to the aligning permutation.
void check_quiver_determined(const Seed& incoming, const ExchangeNode& node, const std::vector<int>& pi) {
    int n = incoming.quiver.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (node.seed.quiver.b[pi[i]][pi[j]] != incoming.quiver.b[i][j])
                throw error("same cluster reached with two different quivers");
}

} // namespace

ExchangeGraph explore(const Quiver& q, int node_cap, int depth_cap) {
    if (node_cap < 1 || depth_cap < 1) throw index_error("exploration caps must be >= 1");
    ExchangeGraph g;
    g.quiver = q;
    Seed init = initial_seed(q);
    g.initial_key = canonical_cluster_key(init.cluster);
    g.nodes[g.initial_key] = ExchangeNode{init, 0, {}, false};

    std::set<std::string> frontier = {g.initial_key};
    bool capped = false;
    int depth = 0;
    while (!frontier.empty()) {
        if (depth >= depth_cap) {
            capped = true;
            break;
        }
        std::set<std::string> next_frontier;
        for (const auto& key : frontier) {
            ExchangeNode& node = g.nodes[key];
            node.edges.resize(q.n);
            for (int k = 0; k < q.n; ++k) {
                Seed mutated = mutate_seed(node.seed, k);
                std::string mkey = canonical_cluster_key(mutated.cluster);
                auto it = g.nodes.find(mkey);
                if (it == g.nodes.end()) {
                    if (static_cast<int>(g.nodes.size()) >= node_cap) {
                        capped = true;
                        continue;
                    }
                    std::vector<int> ident(q.n);
                    for (int i = 0; i < q.n; ++i) ident[i] = i;
                    g.nodes[mkey] = ExchangeNode{mutated, depth + 1, {}, false};
                    node.edges[k] = ExchangeEdge{mkey, ident};
                    next_frontier.insert(mkey);
                } else {
                    std::vector<int> pi = alignment(mutated.cluster, it->second.seed.cluster);
                    check_quiver_determined(mutated, it->second, pi);
                    node.edges[k] = ExchangeEdge{mkey, pi};
                }
            }
            node.expanded = true;
        }
        g.depth_reached = depth;
        frontier = std::move(next_frontier);
        ++depth;
    }
    if (!frontier.empty()) capped = true;
    g.complete = !capped;
    if (!g.complete) g.depth_reached = depth;
    return g;
}

std::vector<RationalFn> cluster_variables(const ExchangeGraph& g) {
    std::map<std::string, RationalFn> seen;
    for (const auto& [key, node] : g.nodes)
        for (const auto& f : node.seed.cluster) seen.emplace(f.to_string(), f);
    std::vector<RationalFn> out;
    out.reserve(seen.size());
    for (auto& [s, f] : seen) out.push_back(f);
    return out;
}

bool is_cluster_variable(const ExchangeGraph& g, const RationalFn& f) {
    std::string s = f.to_string();
    for (const auto& [key, node] : g.nodes)
        for (const auto& v : node.seed.cluster)
            if (v.to_string() == s) return true;
    if (!g.complete)
        throw incomplete_graph_error("variable not found within explored ball");
    return false;
}

bool is_cluster(const ExchangeGraph& g, const std::vector<RationalFn>& fns) {
    if (static_cast<int>(fns.size()) != g.quiver.n) return false;
    std::string key = canonical_cluster_key(fns);
    if (g.has_node(key)) return true;
    if (!g.complete)
        throw incomplete_graph_error("cluster not found within explored ball");
    return false;
}

std::vector<std::string> find_node_path(const ExchangeGraph& g, const std::string& from_key,
                                        const std::string& to_key) {
    if (!g.has_node(from_key) || !g.has_node(to_key))
        throw unreachable_error("endpoint not in exchange graph");
    std::unordered_map<std::string, std::string> parent;
    std::deque<std::string> queue = {from_key};
    parent[from_key] = from_key;
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        if (cur == to_key) break;
        const ExchangeNode& node = g.node(cur);
        for (const auto& e : node.edges) {
            if (e.target.empty() || parent.count(e.target)) continue;
            parent[e.target] = cur;
            queue.push_back(e.target);
        }
    }
    if (!parent.count(to_key))
        throw unreachable_error("no path between nodes in explored graph");
    std::vector<std::string> path;
    for (std::string cur = to_key; cur != from_key; cur = parent[cur]) path.push_back(cur);
    path.push_back(from_key);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<int> find_flip_path(const ExchangeGraph& g, const std::string& from_key,
                                const std::string& to_key) {
    std::vector<std::string> node_path = find_node_path(g, from_key, to_key);
    int n = g.quiver.n;
    // evolving[i] = rep position of the evolving seed's variable i
    std::vector<int> evolving(n);
    for (int i = 0; i < n; ++i) evolving[i] = i;
    std::vector<int> out;
    for (size_t step = 0; step + 1 < node_path.size(); ++step) {
        const ExchangeNode& node = g.node(node_path[step]);
        int rep_k = -1;
        for (int k = 0; k < n; ++k)
            if (node.edges[k].target == node_path[step + 1]) {
                rep_k = k;
                break;
            }
        if (rep_k < 0) throw unreachable_error("edge missing along path");
        const auto& edge = node.edges[rep_k];
        int evolving_k = static_cast<int>(
            std::find(evolving.begin(), evolving.end(), rep_k) - evolving.begin());
        out.push_back(evolving_k);
        for (int i = 0; i < n; ++i) evolving[i] = edge.align[evolving[i]];
    }
    return out;
}

} // namespace caut

#pragma once

#include <map>
#include <string>
#include <vector>

#include "caut/poly.hpp"
#include "caut/quiver.hpp"

namespace caut {

// Ordered cluster of rational functions in the initial variables plus the
// quiver whose point i corresponds to cluster position i.
struct Seed {
    std::vector<RationalFn> cluster;
    Quiver quiver;
};

Seed initial_seed(const Quiver& q);

// Exchange relation at position k: the new variable is
// (prod over arrows out of k + prod over arrows into k) / x_k,
// with arrow multiplicities as exponents; the quiver mutates alongside.
Seed mutate_seed(const Seed& s, int k);

// Canonical key of an unordered cluster: sorted canonical serializations
// joined by '|'.
std::string canonical_cluster_key(const std::vector<RationalFn>& cluster);

struct ExchangeEdge {
    std::string target;
    // positions of the mutated seed -> positions of the target representative
    std::vector<int> align;
};

struct ExchangeNode {
    Seed seed; // representative ordering
    int depth = 0;
    std::vector<ExchangeEdge> edges; // one per position, filled when expanded
    bool expanded = false;
};

struct ExchangeGraph {
    Quiver quiver;
    std::string initial_key;
    std::map<std::string, ExchangeNode> nodes;
    bool complete = false;
    int depth_reached = 0;

    const ExchangeNode& node(const std::string& key) const;
    bool has_node(const std::string& key) const { return nodes.count(key) > 0; }
};

inline constexpr int kDefaultNodeCap = 20000;
inline constexpr int kDefaultDepthCap = 64;

// Breadth-first closure of seed mutation from the initial seed, deduplicating
// by unordered cluster. The frontier is processed in canonical key order, so
// the graph is deterministic. When a cap stops the closure the partial graph
// is returned with complete = false.
ExchangeGraph explore(const Quiver& q, int node_cap = kDefaultNodeCap,
                      int depth_cap = kDefaultDepthCap);

std::vector<RationalFn> cluster_variables(const ExchangeGraph& g);
// Membership answers are definitive on complete graphs; on incomplete graphs
// a positive hit is returned and a would-be negative throws
// incomplete_graph_error.
bool is_cluster_variable(const ExchangeGraph& g, const RationalFn& f);
bool is_cluster(const ExchangeGraph& g, const std::vector<RationalFn>& fns);

// Shortest mutation sequence between two nodes (BFS on the stored edges).
// The returned positions refer to the evolving seed: apply the first to the
// source representative, the next to the result, and so on.
std::vector<int> find_flip_path(const ExchangeGraph& g, const std::string& from_key,
                                const std::string& to_key);

// Node path of the same BFS (keys visited, including both ends).
std::vector<std::string> find_node_path(const ExchangeGraph& g, const std::string& from_key,
                                        const std::string& to_key);

} // namespace caut

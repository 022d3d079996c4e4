#pragma once

#include <optional>
#include <string>
#include <vector>

#include "caut/seed.hpp"

namespace caut {

enum class Direction { direct, inverse };

inline int direction_sign(Direction d) { return d == Direction::direct ? 0 : 1; }

// Error for image lists that form a cluster but admit no point-compatible
// quiver isomorphism with Q or Q^op; carries the offending image quiver.
struct no_quiver_iso_error : error {
    Quiver image_quiver;
    no_quiver_iso_error(const std::string& msg, Quiver q)
        : error(msg), image_quiver(std::move(q)) {}
};

// A cluster automorphism, determined by the images of the initial cluster
// variables. The certificate is the point bijection from the points of the
// initial quiver to the positions of the target node's representative seed,
// realizing Q -> Q(f(x)) (direct) or Q^op -> Q(f(x)) (inverse).
struct ClusterAutomorphism {
    std::vector<RationalFn> images;
    Direction direction = Direction::direct;
    PointBijection certificate;
    std::string target_key;

    bool operator==(const ClusterAutomorphism& o) const { return images == o.images; }
    bool is_identity() const;
    std::string image_key() const; // serialization of the ordered image list
};

// Decides whether the image list defines a cluster automorphism: the images
// must form a cluster of the explored graph and the induced point map must be
// a quiver isomorphism from Q (direct) or Q^op (inverse). Throws
// not_a_cluster_error, no_quiver_iso_error, or incomplete_graph_error.
ClusterAutomorphism check_cluster_automorphism(const ExchangeGraph& g,
                                               const std::vector<RationalFn>& images);

// Independent oracle: applies the field map to every cluster of the complete
// graph and tests cluster membership.
bool oracle_check(const ExchangeGraph& g, const std::vector<RationalFn>& images);

// compose(g, f, h) = f after h on generators; directions add mod 2.
ClusterAutomorphism compose(const ExchangeGraph& g, const ClusterAutomorphism& f,
                            const ClusterAutomorphism& h);
ClusterAutomorphism invert(const ExchangeGraph& g, const ClusterAutomorphism& f);
ClusterAutomorphism identity_automorphism(const ExchangeGraph& g);
// f^k for any integer k.
ClusterAutomorphism automorphism_power(const ExchangeGraph& g, const ClusterAutomorphism& f,
                                       int k);

ClusterAutomorphism from_quiver_automorphism(const ExchangeGraph& g, const PointBijection& sigma);
ClusterAutomorphism from_quiver_anti_automorphism(const ExchangeGraph& g,
                                                  const PointBijection& sigma);

// The automorphism determined by a mutation word at a remote seed with the
// identity point correspondence: walk `path_to_anchor` from the initial seed
// (evolving positions), apply `word_at_anchor` there, and require the quiver
// to return to the anchor's quiver exactly. Images of the initial variables
// are recovered by replaying the path backwards on formal variables. The
// result is a direct cluster automorphism; its target may lie outside any
// explored ball, so no graph is needed.
ClusterAutomorphism automorphism_from_word(const Quiver& q, const std::vector<int>& path_to_anchor,
                                           const std::vector<int>& word_at_anchor);

// Direct automorphism of an acyclic seed given by mutating along an
// admissible source order (the translation of the transjective component);
// `path_to_anchor` must lead to a seed with an acyclic quiver.
ClusterAutomorphism translation_automorphism(const Quiver& q,
                                             const std::vector<int>& path_to_anchor = {});

// Quiver-only breadth-first search for a mutation path to an acyclic seed.
std::optional<std::vector<int>> path_to_acyclic(const Quiver& q, int node_cap = 20000,
                                                int depth_cap = 12);

struct AutGroup {
    std::vector<ClusterAutomorphism> elements; // deterministic order, identity first
    std::vector<std::vector<int>> table;       // table[i][j] = index of elements[i] o elements[j]
    std::vector<int> direct_indices;

    int order() const { return static_cast<int>(elements.size()); }
    int direct_order() const { return static_cast<int>(direct_indices.size()); }
    int index_of_direct() const;
    int find(const ClusterAutomorphism& f) const; // -1 if absent
};

// Enumerates Aut A for a complete exchange graph: every node contributes one
// automorphism per point-compatible quiver isomorphism from Q or Q^op; the
// result is closed under composition (verified while building the table).
AutGroup aut_group(const ExchangeGraph& g);

// All automorphisms whose target cluster lies within the given mutation
// distance of the initial cluster in the (possibly partial) graph.
std::vector<ClusterAutomorphism> find_automorphisms_bounded(const ExchangeGraph& g, int depth);

struct SemidirectReport {
    bool splits = false;        // an inverse involution exists
    bool direct_product = false; // some inverse involution is central
};
// Requires the direct subgroup to have index two.
SemidirectReport semidirect_check(const AutGroup& gr);

struct OppositeSearchResult {
    bool found = false;
    std::vector<int> mutation_sequence;
    PointBijection iso; // points of mutated quiver -> points of Q^op
};
// Bounded search for a quiver in the mutation class of Q isomorphic to Q^op.
// A negative result is evidence only, never a proof.
OppositeSearchResult opposite_mutation_equivalent(const Quiver& q, int node_cap = 2000,
                                                  int depth_cap = 16);

} // namespace caut

#include "caut/cluster_aut.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace caut {

bool ClusterAutomorphism::is_identity() const {
    int n = static_cast<int>(images.size());
    for (int i = 0; i < n; ++i)
        if (images[i] != RationalFn::variable(n, i)) return false;
    return true;
}

std::string ClusterAutomorphism::image_key() const {
    std::string s;
    for (size_t i = 0; i < images.size(); ++i) {
        if (i) s += '|';
        s += images[i].to_string();
    }
    return s;
}

namespace {

std::vector<int> align_to_rep(const std::vector<RationalFn>& images, const Seed& rep) {
    std::unordered_map<std::string, int> pos;
    for (int i = 0; i < static_cast<int>(rep.cluster.size()); ++i)
        pos[rep.cluster[i].to_string()] = i;
    std::vector<int> rho(images.size());
    for (int i = 0; i < static_cast<int>(images.size()); ++i) {
        auto it = pos.find(images[i].to_string());
        if (it == pos.end()) throw error("image list does not match node cluster");
        rho[i] = it->second;
    }
    return rho;
}

// quiver of the image cluster with point i <-> images[i]
Quiver image_quiver_for(const std::vector<int>& rho, const Quiver& rep_quiver) {
    int n = rep_quiver.n;
    std::vector<std::vector<int>> b(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i][j] = rep_quiver.b[rho[i]][rho[j]];
    return Quiver(n, b);
}

} // namespace

ClusterAutomorphism check_cluster_automorphism(const ExchangeGraph& g,
                                               const std::vector<RationalFn>& images) {
    int n = g.quiver.n;
    if (static_cast<int>(images.size()) != n)
        throw not_a_cluster_error("image list has wrong length");
    std::set<std::string> distinct;
    for (const auto& f : images) distinct.insert(f.to_string());
    if (static_cast<int>(distinct.size()) != n)
        throw not_a_cluster_error("image list has repeated entries");

    std::string key = canonical_cluster_key(images);
    auto it = g.nodes.find(key);
    if (it == g.nodes.end()) {
        if (!g.complete)
            throw incomplete_graph_error("image cluster not found within explored ball");
        throw not_a_cluster_error("images do not form a cluster");
    }
    const ExchangeNode& node = it->second;
    std::vector<int> rho = align_to_rep(images, node.seed);

    bool direct = true, inverse = true;
    for (int i = 0; i < n && (direct || inverse); ++i)
        for (int j = 0; j < n && (direct || inverse); ++j) {
            int bij = node.seed.quiver.b[rho[i]][rho[j]];
            if (bij != g.quiver.b[i][j]) direct = false;
            if (bij != -g.quiver.b[i][j]) inverse = false;
        }
    if (!direct && !inverse)
        throw no_quiver_iso_error(
            "images form a cluster but the point map is an isomorphism neither from Q nor "
            "from Q^op",
            image_quiver_for(rho, node.seed.quiver));

    ClusterAutomorphism f;
    f.images = images;
    f.direction = direct ? Direction::direct : Direction::inverse;
    f.certificate = rho;
    f.target_key = key;
    return f;
}

bool oracle_check(const ExchangeGraph& g, const std::vector<RationalFn>& images) {
    if (!g.complete) throw incomplete_graph_error("oracle check needs a complete graph");
    int n = g.quiver.n;
    if (static_cast<int>(images.size()) != n) return false;
    std::set<std::string> distinct;
    for (const auto& f : images) distinct.insert(f.to_string());
    if (static_cast<int>(distinct.size()) != n) return false;
    // variables recur across many clusters, so substitute each one once;
    // scanning shallow clusters first makes failures cheap
    std::vector<const ExchangeNode*> order;
    order.reserve(g.nodes.size());
    for (const auto& [key, node] : g.nodes) order.push_back(&node);
    std::stable_sort(order.begin(), order.end(),
                     [](const ExchangeNode* a, const ExchangeNode* b) {
                         return a->depth < b->depth;
                     });
    std::unordered_map<std::string, std::string> image_of;
    for (const ExchangeNode* node : order) {
        std::vector<std::string> mapped;
        mapped.reserve(n);
        for (const auto& v : node->seed.cluster) {
            std::string vk = v.to_string();
            auto it = image_of.find(vk);
            if (it == image_of.end())
                it = image_of.emplace(vk, substitute(v, images).to_string()).first;
            mapped.push_back(it->second);
        }
        std::sort(mapped.begin(), mapped.end());
        std::string mkey;
        for (size_t i = 0; i < mapped.size(); ++i) {
            if (i) mkey += '|';
            mkey += mapped[i];
        }
        if (!g.has_node(mkey)) return false;
    }
    return true;
}

ClusterAutomorphism compose(const ExchangeGraph& g, const ClusterAutomorphism& f,
                            const ClusterAutomorphism& h) {
    std::vector<RationalFn> images;
    images.reserve(h.images.size());
    for (const auto& hi : h.images) images.push_back(substitute(hi, f.images));
    ClusterAutomorphism r = check_cluster_automorphism(g, images);
    // direction arithmetic is forced by the sign homomorphism; keep the
    // certified value but assert agreement
    if (direction_sign(r.direction) !=
        (direction_sign(f.direction) + direction_sign(h.direction)) % 2)
        throw error("direction homomorphism violated by composition");
    return r;
}

ClusterAutomorphism identity_automorphism(const ExchangeGraph& g) {
    return check_cluster_automorphism(g, initial_seed(g.quiver).cluster);
}

ClusterAutomorphism invert(const ExchangeGraph& g, const ClusterAutomorphism& f) {
    int n = g.quiver.n;
    // express the initial variables in terms of formal stand-ins for the
    // target cluster by replaying the mutation path backwards
    std::vector<int> path = find_flip_path(g, f.target_key, g.initial_key);
    const ExchangeNode& target = g.node(f.target_key);
    Seed formal;
    formal.quiver = target.seed.quiver;
    for (int i = 0; i < n; ++i) formal.cluster.push_back(RationalFn::variable(n, i));
    for (int k : path) formal = mutate_seed(formal, k);
    // formal.cluster now lists the initial-node variables, aligned with the
    // initial representative (= the identity seed) via cluster alignment
    std::vector<RationalFn> expr(n);
    {
        Seed replay;
        replay.quiver = target.seed.quiver;
        for (int i = 0; i < n; ++i) replay.cluster.push_back(target.seed.cluster[i]);
        for (int k : path) replay = mutate_seed(replay, k);
        // replay.cluster[i] equals the initial variable x_{beta(i)}
        for (int i = 0; i < n; ++i) {
            const IntPoly& num = replay.cluster[i].num();
            if (num.term_count() != 1 || num.total_degree() != 1 || num.leading_coeff() != 1 ||
                !replay.cluster[i].den().is_constant())
                throw error("replayed path did not land on the initial cluster");
            const Expvec& e = num.leading_exp();
            int var = static_cast<int>(std::find(e.begin(), e.end(), 1) - e.begin());
            expr[var] = formal.cluster[i];
        }
    }
    // substitute the stand-ins: formal variable y_j corresponds to the target
    // representative's position j, which holds f(x_{rho^-1(j)})
    std::vector<int> rho_inv(n);
    for (int i = 0; i < n; ++i) rho_inv[f.certificate[i]] = i;
    std::vector<RationalFn> back(n);
    for (int j = 0; j < n; ++j) back[j] = RationalFn::variable(n, rho_inv[j]);
    std::vector<RationalFn> images(n);
    for (int i = 0; i < n; ++i) images[i] = substitute(expr[i], back);
    ClusterAutomorphism r = check_cluster_automorphism(g, images);
    if (r.direction != f.direction) throw error("inverse changed direction");
    return r;
}

ClusterAutomorphism automorphism_power(const ExchangeGraph& g, const ClusterAutomorphism& f,
                                       int k) {
    ClusterAutomorphism base = k < 0 ? invert(g, f) : f;
    int e = std::abs(k);
    ClusterAutomorphism acc = identity_automorphism(g);
    for (int i = 0; i < e; ++i) acc = compose(g, acc, base);
    return acc;
}

ClusterAutomorphism from_quiver_automorphism(const ExchangeGraph& g, const PointBijection& sigma) {
    auto autos = quiver_automorphisms(g.quiver);
    if (std::find(autos.begin(), autos.end(), sigma) == autos.end())
        throw input_error("bijection is not a quiver automorphism");
    int n = g.quiver.n;
    std::vector<RationalFn> images(n);
    for (int i = 0; i < n; ++i) images[i] = RationalFn::variable(n, sigma[i]);
    return check_cluster_automorphism(g, images);
}

ClusterAutomorphism from_quiver_anti_automorphism(const ExchangeGraph& g,
                                                  const PointBijection& sigma) {
    auto antis = quiver_anti_automorphisms(g.quiver);
    if (std::find(antis.begin(), antis.end(), sigma) == antis.end())
        throw input_error("bijection is not a quiver anti-automorphism");
    int n = g.quiver.n;
    std::vector<RationalFn> images(n);
    for (int i = 0; i < n; ++i) images[i] = RationalFn::variable(n, sigma[i]);
    // when the quiver has arrows a genuine anti-automorphism certifies as
    // inverse; for an arrowless quiver direct and inverse coincide
    return check_cluster_automorphism(g, images);
}

ClusterAutomorphism automorphism_from_word(const Quiver& q, const std::vector<int>& path_to_anchor,
                                           const std::vector<int>& word_at_anchor) {
    int n = q.n;
    Seed anchor = initial_seed(q);
    for (int k : path_to_anchor) anchor = mutate_seed(anchor, k);
    Seed moved = anchor;
    for (int k : word_at_anchor) moved = mutate_seed(moved, k);
    if (!(moved.quiver == anchor.quiver))
        throw error("mutation word does not return the anchor quiver");

    // f on the anchor cluster: position-wise replacement
    // express every initial variable in the anchor variables by replaying the
    // path backwards on formal stand-ins
    Seed formal;
    formal.quiver = anchor.quiver;
    for (int i = 0; i < n; ++i) formal.cluster.push_back(RationalFn::variable(n, i));
    for (auto it = path_to_anchor.rbegin(); it != path_to_anchor.rend(); ++it)
        formal = mutate_seed(formal, *it);
    // formal.cluster[i] now expresses x_{i+1} in the anchor variables
    if (!(formal.quiver == q)) throw error("backward replay lost the initial quiver");
    ClusterAutomorphism f;
    f.images.resize(n);
    for (int i = 0; i < n; ++i) f.images[i] = substitute(formal.cluster[i], moved.cluster);
    f.direction = Direction::direct;
    f.certificate.resize(n);
    for (int i = 0; i < n; ++i) f.certificate[i] = i;
    f.target_key = canonical_cluster_key(f.images);
    return f;
}

ClusterAutomorphism translation_automorphism(const Quiver& q, const std::vector<int>& path) {
    Seed anchor = initial_seed(q);
    for (int k : path) anchor = mutate_seed(anchor, k);
    auto topo = topological_order(anchor.quiver);
    if (!topo) throw input_error("translation automorphism needs an acyclic anchor seed");
    return automorphism_from_word(q, path, *topo);
}

std::optional<std::vector<int>> path_to_acyclic(const Quiver& q, int node_cap, int depth_cap) {
    struct Entry {
        Quiver quiver;
        int parent, k, depth;
    };
    auto reconstruct = [](const std::vector<Entry>& entries, int idx) {
        std::vector<int> path;
        for (int cur = idx; entries[cur].parent >= 0; cur = entries[cur].parent)
            path.push_back(entries[cur].k);
        std::reverse(path.begin(), path.end());
        return path;
    };
    std::vector<Entry> entries = {{q, -1, -1, 0}};
    std::set<std::vector<std::vector<int>>> seen = {q.b};
    if (is_acyclic(q)) return std::vector<int>{};
    size_t head = 0;
    while (head < entries.size() && static_cast<int>(entries.size()) < node_cap) {
        int cur = static_cast<int>(head++);
        if (entries[cur].depth >= depth_cap) continue;
        for (int k = 0; k < q.n; ++k) {
            Quiver m = mutate_quiver(entries[cur].quiver, k);
            if (!seen.insert(m.b).second) continue;
            entries.push_back({m, cur, k, entries[cur].depth + 1});
            if (is_acyclic(m)) return reconstruct(entries, static_cast<int>(entries.size()) - 1);
        }
    }
    return std::nullopt;
}

int AutGroup::index_of_direct() const {
    return direct_order() == order() ? 1 : order() / direct_order();
}

int AutGroup::find(const ClusterAutomorphism& f) const {
    for (int i = 0; i < order(); ++i)
        if (elements[i].images == f.images) return i;
    return -1;
}

namespace {

// Automorphisms whose target is the given node: one per point-compatible
// quiver isomorphism from Q (direct) or from Q^op (inverse, skipping
// bijections already counted as direct, which only coincide when b = 0).
std::vector<ClusterAutomorphism> node_automorphisms(const ExchangeGraph& g,
                                                    const std::string& key) {
    const ExchangeNode& node = g.node(key);
    int n = g.quiver.n;
    std::vector<ClusterAutomorphism> out;
    auto add = [&](const PointBijection& sigma, Direction dir) {
        ClusterAutomorphism f;
        f.images.resize(n);
        for (int i = 0; i < n; ++i) f.images[i] = node.seed.cluster[sigma[i]];
        f.direction = dir;
        f.certificate = sigma;
        f.target_key = key;
        out.push_back(std::move(f));
    };
    auto direct = quiver_isomorphisms(g.quiver, node.seed.quiver);
    for (const auto& sigma : direct) add(sigma, Direction::direct);
    for (const auto& sigma : quiver_isomorphisms(opposite(g.quiver), node.seed.quiver))
        if (std::find(direct.begin(), direct.end(), sigma) == direct.end())
            add(sigma, Direction::inverse);
    return out;
}

} // namespace

namespace {

// combinatorial action of an automorphism on the whole exchange graph: node
// key -> (image node key, position alignment). Propagated along edges from
// the initial node; this is compatibility with mutations as bookkeeping.
using NodeAction = std::unordered_map<std::string, std::pair<std::string, std::vector<int>>>;

NodeAction build_node_action(const ExchangeGraph& g, const ClusterAutomorphism& f) {
    int n = g.quiver.n;
    NodeAction action;
    action[g.initial_key] = {f.target_key, f.certificate};
    std::deque<std::string> queue = {g.initial_key};
    while (!queue.empty()) {
        std::string key = queue.front();
        queue.pop_front();
        const auto& [img_key, pi] = action.at(key);
        const ExchangeNode& node = g.node(key);
        const ExchangeNode& img = g.node(img_key);
        for (int k = 0; k < n; ++k) {
            const ExchangeEdge& e = node.edges[k];
            const ExchangeEdge& e2 = img.edges[pi[k]];
            std::vector<int> pi2(n);
            for (int i = 0; i < n; ++i) pi2[e.align[i]] = e2.align[pi[i]];
            auto it = action.find(e.target);
            if (it == action.end()) {
                action[e.target] = {e2.target, pi2};
                queue.push_back(e.target);
            } else if (it->second.first != e2.target || it->second.second != pi2) {
                throw error("automorphism action on the exchange graph is inconsistent");
            }
        }
    }
    return action;
}

} // namespace

AutGroup aut_group(const ExchangeGraph& g) {
    if (!g.complete) throw incomplete_graph_error("aut_group needs a complete graph");
    AutGroup gr;
    for (const auto& [key, node] : g.nodes)
        for (auto& f : node_automorphisms(g, key)) gr.elements.push_back(std::move(f));
    // deterministic order with the identity first
    std::stable_sort(gr.elements.begin(), gr.elements.end(),
                     [](const ClusterAutomorphism& a, const ClusterAutomorphism& b) {
                         bool ia = a.is_identity(), ib = b.is_identity();
                         if (ia != ib) return ia;
                         return a.image_key() < b.image_key();
                     });
    int m = gr.order();
    std::map<std::pair<std::string, std::vector<int>>, int> index;
    for (int i = 0; i < m; ++i)
        index[{gr.elements[i].target_key, gr.elements[i].certificate}] = i;
    // the composite (f o h)(x_i) is f's node action applied to h's target;
    // the table is pure bookkeeping on certificates
    gr.table.assign(m, std::vector<int>(m, -1));
    int n = g.quiver.n;
    for (int i = 0; i < m; ++i) {
        NodeAction action = build_node_action(g, gr.elements[i]);
        for (int j = 0; j < m; ++j) {
            const auto& [img_key, pi] = action.at(gr.elements[j].target_key);
            std::vector<int> cert(n);
            for (int v = 0; v < n; ++v) cert[v] = pi[gr.elements[j].certificate[v]];
            auto it = index.find({img_key, cert});
            if (it == index.end())
                throw error("automorphism set not closed under composition");
            gr.table[i][j] = it->second;
        }
    }
    for (int i = 0; i < m; ++i)
        if (gr.elements[i].direction == Direction::direct) gr.direct_indices.push_back(i);
    return gr;
}

std::vector<ClusterAutomorphism> find_automorphisms_bounded(const ExchangeGraph& g, int depth) {
    std::vector<ClusterAutomorphism> out;
    for (const auto& [key, node] : g.nodes) {
        if (node.depth > depth) continue;
        for (auto& f : node_automorphisms(g, key)) out.push_back(std::move(f));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const ClusterAutomorphism& a, const ClusterAutomorphism& b) {
                         return a.image_key() < b.image_key();
                     });
    return out;
}

SemidirectReport semidirect_check(const AutGroup& gr) {
    if (gr.index_of_direct() != 2)
        throw error("semidirect check requires the direct subgroup to have index two");
    SemidirectReport rep;
    int m = gr.order();
    for (int i = 0; i < m; ++i) {
        if (gr.elements[i].direction != Direction::inverse) continue;
        if (gr.table[i][i] != 0) continue; // not an involution (identity is element 0)
        rep.splits = true;
        bool central = true;
        for (int j = 0; j < m && central; ++j)
            if (gr.table[i][j] != gr.table[j][i]) central = false;
        if (central) {
            rep.direct_product = true;
            break;
        }
    }
    return rep;
}

OppositeSearchResult opposite_mutation_equivalent(const Quiver& q, int node_cap, int depth_cap) {
    Quiver target = opposite(q);
    OppositeSearchResult res;

    struct Entry {
        Quiver quiver;
        int parent;
        int k;
    };
    std::vector<Entry> entries;
    entries.push_back({q, -1, -1});
    // bucket by a cheap invariant, then exact isomorphism within the bucket
    auto invariant = [](const Quiver& r) {
        std::vector<std::vector<int>> rows;
        for (int i = 0; i < r.n; ++i) {
            std::vector<int> row = r.b[i];
            std::sort(row.begin(), row.end());
            rows.push_back(std::move(row));
        }
        std::sort(rows.begin(), rows.end());
        std::string s;
        for (const auto& row : rows)
            for (int v : row) s += std::to_string(v) + ",";
        return s;
    };
    std::unordered_map<std::string, std::vector<int>> buckets;
    buckets[invariant(q)].push_back(0);

    auto emit = [&](int idx) {
        auto isos = quiver_isomorphisms(entries[idx].quiver, target);
        if (isos.empty()) return false;
        res.found = true;
        res.iso = isos.front();
        std::vector<int> seq;
        for (int cur = idx; entries[cur].parent >= 0; cur = entries[cur].parent)
            seq.push_back(entries[cur].k);
        std::reverse(seq.begin(), seq.end());
        res.mutation_sequence = seq;
        return true;
    };
    if (emit(0)) return res;

    size_t head = 0;
    std::vector<int> depth_of = {0};
    while (head < entries.size() && static_cast<int>(entries.size()) < node_cap) {
        int cur = static_cast<int>(head++);
        if (depth_of[cur] >= depth_cap) continue;
        for (int k = 0; k < q.n; ++k) {
            Quiver m = mutate_quiver(entries[cur].quiver, k);
            std::string inv = invariant(m);
            bool known = false;
            for (int idx : buckets[inv])
                if (!quiver_isomorphisms(m, entries[idx].quiver).empty()) {
                    known = true;
                    break;
                }
            if (known) continue;
            entries.push_back({m, cur, k});
            depth_of.push_back(depth_of[cur] + 1);
            buckets[inv].push_back(static_cast<int>(entries.size()) - 1);
            if (emit(static_cast<int>(entries.size()) - 1)) return res;
            if (static_cast<int>(entries.size()) >= node_cap) break;
        }
    }
    return res;
}

} // namespace caut

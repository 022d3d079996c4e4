#include "caut/quiver.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace caut {

Quiver::Quiver(int n_, std::vector<std::vector<int>> b_) : n(n_), b(std::move(b_)) {
    validate();
}

void Quiver::validate() const {
    if (n < 1) throw index_error("quiver needs at least one point");
    if (static_cast<int>(b.size()) != n) throw input_error("matrix size mismatch");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(b[i].size()) != n) throw input_error("matrix row size mismatch");
        if (b[i][i] != 0) throw input_error("quiver has a loop");
        for (int j = 0; j < n; ++j)
            if (b[i][j] != -b[j][i]) throw input_error("matrix is not skew-symmetric");
    }
}

Quiver Quiver::from_arrows(int n, const std::vector<std::array<int, 3>>& arrows) {
    std::vector<std::vector<int>> b(n, std::vector<int>(n, 0));
    for (const auto& [s, t, m] : arrows) {
        if (s < 1 || s > n || t < 1 || t > n) throw input_error("arrow endpoint out of range");
        b[s - 1][t - 1] += m;
        b[t - 1][s - 1] -= m;
    }
    return Quiver(n, b);
}

std::string Quiver::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (b[i][j] > 0) {
                if (!first) out << ", ";
                out << (i + 1) << "->" << (j + 1);
                if (b[i][j] > 1) out << "(x" << b[i][j] << ")";
                first = false;
            }
    if (first) out << "(no arrows)";
    return out.str();
}

Quiver mutate_quiver(const Quiver& q, int k) {
    if (k < 0 || k >= q.n) throw index_error("mutation point out of range");
    Quiver r = q;
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j) {
            if (i == k || j == k)
                r.b[i][j] = -q.b[i][j];
            else
                r.b[i][j] = q.b[i][j] +
                            (std::abs(q.b[i][k]) * q.b[k][j] + q.b[i][k] * std::abs(q.b[k][j])) / 2;
        }
    return r;
}

Quiver mutate_quiver_arrows(const Quiver& q, int k) {
    if (k < 0 || k >= q.n) throw index_error("mutation point out of range");
    // arrow multiset as a signed count matrix that may transiently hold
    // 2-cycles; loops never arise from the three steps
    std::vector<std::vector<int>> arrows(q.n, std::vector<int>(q.n, 0));
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j)
            if (q.b[i][j] > 0) arrows[i][j] = q.b[i][j];

    // (a) insert an arrow i->j for each path i->k->j
    std::vector<std::vector<int>> next = arrows;
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j)
            if (i != j) next[i][j] += arrows[i][k] * arrows[k][j];
    // (b) reverse all arrows at k
    for (int i = 0; i < q.n; ++i) {
        if (i == k) continue;
        std::swap(next[i][k], next[k][i]);
    }
    // (c) cancel 2-cycles
    std::vector<std::vector<int>> b(q.n, std::vector<int>(q.n, 0));
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j) b[i][j] = next[i][j] - next[j][i];
    return Quiver(q.n, b);
}

Quiver opposite(const Quiver& q) {
    Quiver r = q;
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j) r.b[i][j] = -q.b[i][j];
    return r;
}

namespace {

// degree profile used to prune the bijection search
struct PointProfile {
    int out_total = 0, in_total = 0;
    std::vector<int> out_mults, in_mults; // sorted multiplicities
    bool operator==(const PointProfile& o) const {
        return out_total == o.out_total && in_total == o.in_total && out_mults == o.out_mults &&
               in_mults == o.in_mults;
    }
};

PointProfile profile_of(const Quiver& q, int i) {
    PointProfile p;
    for (int j = 0; j < q.n; ++j) {
        if (q.b[i][j] > 0) {
            p.out_total += q.b[i][j];
            p.out_mults.push_back(q.b[i][j]);
        } else if (q.b[i][j] < 0) {
            p.in_total += -q.b[i][j];
            p.in_mults.push_back(-q.b[i][j]);
        }
    }
    std::sort(p.out_mults.begin(), p.out_mults.end());
    std::sort(p.in_mults.begin(), p.in_mults.end());
    return p;
}

void iso_backtrack(const Quiver& q, const Quiver& r, const std::vector<PointProfile>& pq,
                   const std::vector<PointProfile>& pr, PointBijection& sigma,
                   std::vector<bool>& used, int i, std::vector<PointBijection>& out) {
    if (i == q.n) {
        out.push_back(sigma);
        return;
    }
    for (int j = 0; j < q.n; ++j) {
        if (used[j] || !(pq[i] == pr[j])) continue;
        bool ok = true;
        for (int k = 0; k < i && ok; ++k)
            if (r.b[j][sigma[k]] != q.b[i][k]) ok = false;
        if (!ok) continue;
        sigma[i] = j;
        used[j] = true;
        iso_backtrack(q, r, pq, pr, sigma, used, i + 1, out);
        used[j] = false;
    }
}

} // namespace

std::vector<PointBijection> quiver_isomorphisms(const Quiver& q, const Quiver& r) {
    std::vector<PointBijection> out;
    if (q.n != r.n) return out;
    std::vector<PointProfile> pq(q.n), pr(q.n);
    for (int i = 0; i < q.n; ++i) pq[i] = profile_of(q, i);
    for (int j = 0; j < q.n; ++j) pr[j] = profile_of(r, j);
    PointBijection sigma(q.n, -1);
    std::vector<bool> used(q.n, false);
    iso_backtrack(q, r, pq, pr, sigma, used, 0, out);
    return out;
}

std::vector<PointBijection> quiver_automorphisms(const Quiver& q) {
    return quiver_isomorphisms(q, q);
}

std::vector<PointBijection> quiver_anti_automorphisms(const Quiver& q) {
    return quiver_isomorphisms(q, opposite(q));
}

bool is_acyclic(const Quiver& q) { return topological_order(q).has_value(); }

std::optional<std::vector<int>> topological_order(const Quiver& q) {
    std::vector<int> indeg(q.n, 0);
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j)
            if (q.b[i][j] > 0) ++indeg[j];
    std::vector<int> order;
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int i = 0; i < q.n; ++i)
        if (indeg[i] == 0) ready.push(i);
    while (!ready.empty()) {
        int i = ready.top();
        ready.pop();
        order.push_back(i);
        for (int j = 0; j < q.n; ++j)
            if (q.b[i][j] > 0 && --indeg[j] == 0) ready.push(j);
    }
    if (static_cast<int>(order.size()) != q.n) return std::nullopt;
    return order;
}

std::string TypeName::to_string() const {
    std::ostringstream out;
    switch (family) {
        case TypeFamily::Dynkin:
            out << name << rank;
            break;
        case TypeFamily::Euclidean:
            if (name == "A~")
                out << "A~(" << p << "," << q << ")";
            else
                out << name << (rank - 1);
            break;
        case TypeFamily::Other:
            out << "Other";
            break;
    }
    return out.str();
}

namespace {

// arm lengths from a branch vertex in a tree, sorted ascending
std::vector<int> arm_lengths(const std::vector<std::vector<int>>& adj, int center) {
    std::vector<int> arms;
    for (int nb : adj[center]) {
        int len = 1, prev = center, cur = nb;
        while (adj[cur].size() == 2) {
            int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = nxt;
            ++len;
        }
        if (adj[cur].size() > 2) return {}; // meets another branch vertex
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    return arms;
}

} // namespace

TypeName classify_type(const Quiver& qv) {
    TypeName t;
    t.rank = qv.n;
    int n = qv.n;

    int edges = 0, maxmult = 0;
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int m = std::abs(qv.b[i][j]);
            if (m > 0) {
                ++edges;
                maxmult = std::max(maxmult, m);
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }

    // connectivity
    if (n > 1) {
        std::vector<bool> seen(n, false);
        std::vector<int> stack = {0};
        seen[0] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        if (!std::all_of(seen.begin(), seen.end(), [](bool x) { return x; })) return t;
    }

    if (maxmult >= 2) {
        // only the Kronecker pattern A~_{1,1} matches a diagram
        if (n == 2 && maxmult == 2) {
            t.family = TypeFamily::Euclidean;
            t.name = "A~";
            t.p = 1;
            t.q = 1;
        }
        return t;
    }

    if (n == 1 && edges == 0) {
        t.family = TypeFamily::Dynkin;
        t.name = "A";
        return t;
    }

    std::vector<int> deg(n);
    for (int i = 0; i < n; ++i) deg[i] = static_cast<int>(adj[i].size());
    int maxdeg = *std::max_element(deg.begin(), deg.end());

    if (edges == n) {
        // single cycle through all points: A~ diagram; orientation split
        if (maxdeg != 2) return t;
        int cw = 0, ccw = 0;
        int prev = 0, cur = adj[0][0];
        if (qv.b[0][cur] > 0) ++cw;
        else ++ccw;
        while (cur != 0) {
            int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            if (qv.b[cur][nxt] > 0) ++cw;
            else ++ccw;
            prev = cur;
            cur = nxt;
        }
        if (cw == 0 || ccw == 0) return t; // cyclic orientation, not an A~ quiver
        t.family = TypeFamily::Euclidean;
        t.name = "A~";
        t.p = std::max(cw, ccw);
        t.q = std::min(cw, ccw);
        return t;
    }

    if (edges != n - 1) return t; // not a tree
    int n3 = static_cast<int>(std::count(deg.begin(), deg.end(), 3));
    int n4plus = static_cast<int>(std::count_if(deg.begin(), deg.end(), [](int d) { return d >= 4; }));

    if (n3 == 0 && n4plus == 0) {
        t.family = TypeFamily::Dynkin;
        t.name = "A";
        return t;
    }
    if (n4plus == 1 && n3 == 0) {
        // degree-4 star with 4 single-edge arms: D~_4
        int center = static_cast<int>(std::find(deg.begin(), deg.end(), 4) - deg.begin());
        if (n == 5 && arm_lengths(adj, center) == std::vector<int>{1, 1, 1, 1}) {
            t.family = TypeFamily::Euclidean;
            t.name = "D~";
        }
        return t;
    }
    if (n4plus > 0) return t;

    if (n3 == 1) {
        int center = static_cast<int>(std::find(deg.begin(), deg.end(), 3) - deg.begin());
        auto arms = arm_lengths(adj, center);
        if (arms.size() != 3) return t;
        if (arms[0] == 1 && arms[1] == 1) {
            t.family = TypeFamily::Dynkin;
            t.name = "D";
            return t;
        }
        if (arms == std::vector<int>{1, 2, 2}) { t.family = TypeFamily::Dynkin; t.name = "E"; return t; }
        if (arms == std::vector<int>{1, 2, 3}) { t.family = TypeFamily::Dynkin; t.name = "E"; return t; }
        if (arms == std::vector<int>{1, 2, 4}) { t.family = TypeFamily::Dynkin; t.name = "E"; return t; }
        if (arms == std::vector<int>{2, 2, 2}) { t.family = TypeFamily::Euclidean; t.name = "E~"; return t; }
        if (arms == std::vector<int>{1, 3, 3}) { t.family = TypeFamily::Euclidean; t.name = "E~"; return t; }
        if (arms == std::vector<int>{1, 2, 5}) { t.family = TypeFamily::Euclidean; t.name = "E~"; return t; }
        return t;
    }
    if (n3 == 2) {
        // D~ shape: two branch points, each with two leaf arms, joined by a path
        std::vector<int> centers;
        for (int i = 0; i < n; ++i)
            if (deg[i] == 3) centers.push_back(i);
        for (int c : centers) {
            int leaf_arms = 0;
            for (int nb : adj[c])
                if (deg[nb] == 1) ++leaf_arms;
            if (leaf_arms < 2) return t;
        }
        t.family = TypeFamily::Euclidean;
        t.name = "D~";
        return t;
    }
    return t;
}

Quiver atilde_quiver(int p, int q) {
    if (p < 1 || q < 1 || p + q < 3) throw input_error("A~ parameters need p,q >= 1, p+q >= 3");
    int n = p + q;
    std::vector<std::array<int, 3>> arrows;
    // upper path 1 -> 2 -> ... -> p -> p+q
    for (int i = 1; i < p; ++i) arrows.push_back({i, i + 1, 1});
    arrows.push_back({p, n, 1});
    // lower path 1 -> p+1 -> ... -> p+q-1 -> p+q
    if (q == 1) {
        arrows.push_back({1, n, 1});
    } else {
        arrows.push_back({1, p + 1, 1});
        for (int m = 1; m < q - 1; ++m) arrows.push_back({p + m, p + m + 1, 1});
        arrows.push_back({p + q - 1, n, 1});
    }
    return Quiver::from_arrows(n, arrows);
}

} // namespace caut

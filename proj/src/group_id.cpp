#include "caut/group_id.hpp"

#include <algorithm>
#include <numeric>

namespace caut {

int GroupTable::inverse(int a) const {
    for (int b = 0; b < order(); ++b)
        if (table[a][b] == 0) return b;
    throw error("element without inverse in group table");
}

int GroupTable::element_order(int a) const {
    int x = a, k = 1;
    while (x != 0) {
        x = table[x][a];
        ++k;
        if (k > order()) throw error("element order exceeds group order");
    }
    return k;
}

bool GroupTable::is_abelian() const {
    for (int a = 0; a < order(); ++a)
        for (int b = a + 1; b < order(); ++b)
            if (table[a][b] != table[b][a]) return false;
    return true;
}

int GroupTable::center_size() const {
    int c = 0;
    for (int a = 0; a < order(); ++a) {
        bool central = true;
        for (int b = 0; b < order() && central; ++b)
            if (table[a][b] != table[b][a]) central = false;
        if (central) ++c;
    }
    return c;
}

std::map<int, int> GroupTable::order_profile() const {
    std::map<int, int> prof;
    for (int a = 0; a < order(); ++a) ++prof[element_order(a)];
    return prof;
}

GroupTable cyclic_group(int m) {
    GroupTable g;
    g.table.assign(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) g.table[a][b] = (a + b) % m;
    return g;
}

GroupTable dihedral_group(int m) {
    // elements: r^i (0..m-1), s r^i (m..2m-1); s r^i s = r^-i
    GroupTable g;
    int n = 2 * m;
    g.table.assign(n, std::vector<int>(n));
    auto idx = [&](int flip, int rot) { return flip * m + ((rot % m) + m) % m; };
    for (int f1 = 0; f1 < 2; ++f1)
        for (int r1 = 0; r1 < m; ++r1)
            for (int f2 = 0; f2 < 2; ++f2)
                for (int r2 = 0; r2 < m; ++r2) {
                    // (s^f1 r^r1)(s^f2 r^r2) = s^{f1+f2} r^{(-1)^{f2} r1 + r2}
                    int f = (f1 + f2) % 2;
                    int r = (f2 ? -r1 : r1) + r2;
                    g.table[idx(f1, r1)][idx(f2, r2)] = idx(f, r);
                }
    return g;
}

GroupTable symmetric3() { return dihedral_group(3); }

GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
    GroupTable g;
    int n = a.order() * b.order();
    g.table.assign(n, std::vector<int>(n));
    auto idx = [&](int x, int y) { return x * b.order() + y; };
    for (int x1 = 0; x1 < a.order(); ++x1)
        for (int y1 = 0; y1 < b.order(); ++y1)
            for (int x2 = 0; x2 < a.order(); ++x2)
                for (int y2 = 0; y2 < b.order(); ++y2)
                    g.table[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
    return g;
}

namespace {

bool iso_backtrack(const GroupTable& a, const GroupTable& b, const std::vector<int>& orders_a,
                   const std::vector<int>& orders_b, std::vector<int>& phi,
                   std::vector<bool>& used, int i) {
    int n = a.order();
    if (i == n) return true;
    if (phi[i] != -1) return iso_backtrack(a, b, orders_a, orders_b, phi, used, i + 1);
    for (int j = 0; j < n; ++j) {
        if (used[j] || orders_a[i] != orders_b[j]) continue;
        // tentatively map i -> j, then force closure under multiplication
        std::vector<int> saved_phi = phi;
        std::vector<bool> saved_used = used;
        phi[i] = j;
        used[j] = true;
        bool ok = true;
        // propagate: for all pairs with both images known, the product image
        // is forced; keep iterating until stable or contradiction
        bool changed = true;
        while (changed && ok) {
            changed = false;
            for (int x = 0; x < n && ok; ++x) {
                if (phi[x] == -1) continue;
                for (int y = 0; y < n && ok; ++y) {
                    if (phi[y] == -1) continue;
                    int p = a.mul(x, y), q = b.mul(phi[x], phi[y]);
                    if (phi[p] == -1) {
                        if (used[q] || orders_a[p] != orders_b[q]) {
                            ok = false;
                        } else {
                            phi[p] = q;
                            used[q] = true;
                            changed = true;
                        }
                    } else if (phi[p] != q) {
                        ok = false;
                    }
                }
            }
        }
        if (ok && iso_backtrack(a, b, orders_a, orders_b, phi, used, i + 1)) return true;
        phi = std::move(saved_phi);
        used = std::move(saved_used);
    }
    return false;
}

} // namespace

bool tables_isomorphic(const GroupTable& a, const GroupTable& b) {
    if (a.order() != b.order()) return false;
    if (a.order_profile() != b.order_profile()) return false;
    if (a.is_abelian() != b.is_abelian()) return false;
    if (a.center_size() != b.center_size()) return false;
    int n = a.order();
    std::vector<int> orders_a(n), orders_b(n);
    for (int i = 0; i < n; ++i) {
        orders_a[i] = a.element_order(i);
        orders_b[i] = b.element_order(i);
    }
    std::vector<int> phi(n, -1);
    std::vector<bool> used(n, false);
    phi[0] = 0;
    used[0] = true;
    return iso_backtrack(a, b, orders_a, orders_b, phi, used, 0);
}

GroupStructure identify_group(const GroupTable& g, int order_bound) {
    if (g.order() > order_bound)
        throw bound_exceeded_error("group order exceeds identification bound");
    GroupStructure s;
    s.order = g.order();
    s.abelian = g.is_abelian();
    s.center_size = g.center_size();
    s.order_profile = g.order_profile();

    int n = g.order();
    auto consider = [&](const std::string& name, const GroupTable& cand) {
        if (cand.order() != n) return;
        if (tables_isomorphic(g, cand)) s.matches.push_back(name);
    };
    consider("Z" + std::to_string(n), cyclic_group(n));
    if (n % 2 == 0 && n >= 2) consider("D" + std::to_string(n / 2), dihedral_group(n / 2));
    for (int a = 2; a * 2 <= n; ++a) {
        if (n % a) continue;
        int b = n / a;
        if (a > b) break;
        consider("Z" + std::to_string(a) + " x Z" + std::to_string(b),
                 direct_product(cyclic_group(a), cyclic_group(b)));
    }
    if (n % 6 == 0) {
        int a = n / 6;
        if (a >= 2)
            consider("Z" + std::to_string(a) + " x S3",
                     direct_product(cyclic_group(a), symmetric3()));
        if (n % 12 == 0 && n / 12 >= 2)
            consider("D" + std::to_string(n / 12) + " x S3",
                     direct_product(dihedral_group(n / 12), symmetric3()));
    }
    s.name = s.matches.empty() ? "unidentified" : s.matches.front();
    // prefer the most specific conventional name: cyclic first, then
    // abelian products, then dihedral, then mixed products
    return s;
}

} // namespace caut

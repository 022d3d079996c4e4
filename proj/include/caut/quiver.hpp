#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "caut/errors.hpp"

namespace caut {

// Point bijection sigma: sigma[i] = image of point i (0-based).
using PointBijection = std::vector<int>;

// Finite quiver without loops or 2-cycles, as a skew-symmetric integer
// matrix: b[i][j] > 0 means b[i][j] arrows i -> j.
struct Quiver {
    int n = 0;
    std::vector<std::vector<int>> b;

    Quiver() = default;
    Quiver(int n_, std::vector<std::vector<int>> b_);

    static Quiver from_arrows(int n, const std::vector<std::array<int, 3>>& arrows);

    bool operator==(const Quiver& o) const { return n == o.n && b == o.b; }
    void validate() const; // skew-symmetry, zero diagonal, n >= 1

    std::string to_string() const;
};

// Matrix mutation at point k (0-based).
Quiver mutate_quiver(const Quiver& q, int k);

// The same mutation computed on an explicit arrow multiset by the three
// steps (insert composites through k, reverse at k, cancel 2-cycles); used
// as a cross-check of the matrix formula.
Quiver mutate_quiver_arrows(const Quiver& q, int k);

Quiver opposite(const Quiver& q);

// All point bijections sigma with b_R[sigma(i)][sigma(j)] = b_Q[i][j],
// in lexicographic order of the image vector.
std::vector<PointBijection> quiver_isomorphisms(const Quiver& q, const Quiver& r);

std::vector<PointBijection> quiver_automorphisms(const Quiver& q);
std::vector<PointBijection> quiver_anti_automorphisms(const Quiver& q);

bool is_acyclic(const Quiver& q);
// Points ordered so every arrow goes from an earlier to a later point;
// empty optional when the quiver has an oriented cycle.
std::optional<std::vector<int>> topological_order(const Quiver& q);

// Diagram classification of the underlying unoriented multigraph.
enum class TypeFamily { Dynkin, Euclidean, Other };
struct TypeName {
    TypeFamily family = TypeFamily::Other;
    std::string name;  // "A", "D", "E", "A~", "D~", "E~"
    int rank = 0;      // number of points
    int p = 0, q = 0;  // cycle orientation split for A~ (p >= q)

    std::string to_string() const;
};
TypeName classify_type(const Quiver& q);

// Standard acyclic orientation of the euclidean A~_{p,q} diagram:
// 1 -> 2 -> ... -> p -> p+q and 1 -> p+1 -> ... -> p+q-1 -> p+q.
Quiver atilde_quiver(int p, int q);

} // namespace caut

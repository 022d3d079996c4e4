#pragma once

#include <map>
#include <string>
#include <vector>

#include "caut/errors.hpp"

namespace caut {

// Abstract finite group given by a multiplication table; element 0 is the
// identity. Small-order identification against named candidates by
// brute-force table isomorphism.
struct GroupTable {
    std::vector<std::vector<int>> table;
    int order() const { return static_cast<int>(table.size()); }

    int mul(int a, int b) const { return table[a][b]; }
    int inverse(int a) const;
    int element_order(int a) const;
    bool is_abelian() const;
    int center_size() const;
    std::map<int, int> order_profile() const; // element order -> count
};

GroupTable cyclic_group(int m);
GroupTable dihedral_group(int m); // order 2m
GroupTable symmetric3();
GroupTable direct_product(const GroupTable& a, const GroupTable& b);

bool tables_isomorphic(const GroupTable& a, const GroupTable& b);

struct GroupStructure {
    int order = 0;
    bool abelian = false;
    int center_size = 0;
    std::map<int, int> order_profile;
    std::vector<std::string> matches; // all candidate names that fit
    std::string name;                 // preferred candidate, or "unidentified"
};

inline constexpr int kDefaultGroupOrderBound = 200;

// Reports order, abelianness, element-order profile, center size, and
// isomorphism tests against the named candidates used in the verification
// tables: Z_m, D_m (order 2m), Z_a x Z_b, Z_a x S3, D_a x S3.
GroupStructure identify_group(const GroupTable& g, int order_bound = kDefaultGroupOrderBound);

} // namespace caut

#include <doctest.h>

#include "caut/cluster_aut.hpp"
#include "caut/group_id.hpp"

using namespace caut;

TEST_CASE("table helpers") {
    GroupTable z6 = cyclic_group(6);
    CHECK(z6.is_abelian());
    CHECK(z6.element_order(1) == 6);
    CHECK(z6.center_size() == 6);
    GroupTable d6 = dihedral_group(6);
    CHECK_FALSE(d6.is_abelian());
    CHECK(d6.order() == 12);
    CHECK(d6.inverse(1) == 5);
}

TEST_CASE("isomorphism testing distinguishes same-order groups") {
    CHECK(tables_isomorphic(cyclic_group(10), direct_product(cyclic_group(5), cyclic_group(2))));
    CHECK_FALSE(tables_isomorphic(cyclic_group(4), direct_product(cyclic_group(2), cyclic_group(2))));
    CHECK_FALSE(tables_isomorphic(dihedral_group(6), direct_product(cyclic_group(6), cyclic_group(2))));
    CHECK(tables_isomorphic(dihedral_group(6), direct_product(dihedral_group(3), cyclic_group(2))));
    CHECK(tables_isomorphic(symmetric3(), dihedral_group(3)));
}

TEST_CASE("identification reports") {
    GroupStructure triv = identify_group(cyclic_group(1));
    CHECK(triv.name == "Z1");

    GroupStructure z6 = identify_group(cyclic_group(6));
    CHECK(z6.name == "Z6");
    CHECK(z6.abelian);

    GroupStructure d6 = identify_group(dihedral_group(6));
    // D6 is also Z2 x S3; the dihedral name is preferred
    CHECK(d6.name == "D6");

    GroupStructure z5z2 = identify_group(direct_product(cyclic_group(5), cyclic_group(2)));
    CHECK(std::find(z5z2.matches.begin(), z5z2.matches.end(), "Z2 x Z5") != z5z2.matches.end());

    GroupStructure z4s3 = identify_group(direct_product(cyclic_group(4), symmetric3()));
    CHECK(std::find(z4s3.matches.begin(), z4s3.matches.end(), "Z4 x S3") != z4s3.matches.end());

    GroupStructure d4s3 = identify_group(direct_product(dihedral_group(4), symmetric3()));
    CHECK(std::find(d4s3.matches.begin(), d4s3.matches.end(), "D4 x S3") != d4s3.matches.end());

    CHECK_THROWS_AS(identify_group(cyclic_group(300)), bound_exceeded_error);
}

TEST_CASE("identification of the computed automorphism groups") {
    // A2: Z5 and the dihedral group of order 10
    ExchangeGraph g2 = explore(Quiver::from_arrows(2, {{2, 1, 1}}));
    AutGroup a2 = aut_group(g2);
    GroupTable full{a2.table};
    GroupStructure fs = identify_group(full);
    CHECK(fs.name == "D5");

    std::vector<int> pos(a2.order(), -1);
    for (int i = 0; i < a2.direct_order(); ++i) pos[a2.direct_indices[i]] = i;
    GroupTable direct;
    direct.table.assign(a2.direct_order(), std::vector<int>(a2.direct_order()));
    for (int i = 0; i < a2.direct_order(); ++i)
        for (int k = 0; k < a2.direct_order(); ++k)
            direct.table[i][k] = pos[a2.table[a2.direct_indices[i]][a2.direct_indices[k]]];
    CHECK(identify_group(direct).name == "Z5");
}

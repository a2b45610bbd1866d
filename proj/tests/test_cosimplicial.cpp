#include "dgdef/cosimplicial.hpp"

#include "dgdef/zoo.hpp"
#include "doctest.h"

using namespace dgdef;

namespace {

// ideal of k[t]/t^3 concentrated in bidegree (0,0)
BigradedArtin flat_poly() {
    BigradedArtin B;
    B.name = "flat";
    B.label = {"t", "t^2"};
    B.deg = {{0, 0}, {0, 0}};
    B.mult[{0, 0}] = SVec{{1, Rat(1)}};
    return B;
}

// single square-zero generator in a chosen bidegree
BigradedArtin one_generator(int i, int j) {
    BigradedArtin B;
    B.name = "gen";
    B.label = {"x"};
    B.deg = {{i, j}};
    return B;
}

// x, y in bidegree (1,0) with xy = z = -yx, squares zero
BigradedArtin two_cochain_generators() {
    BigradedArtin B;
    B.name = "pair";
    B.label = {"x", "y", "z"};
    B.deg = {{1, 0}, {1, 0}, {2, 0}};
    B.mult[{0, 1}] = SVec{{2, Rat(1)}};
    B.mult[{1, 0}] = SVec{{2, Rat(-1)}};
    return B;
}

}  // namespace

TEST_CASE("bigraded validator") {
    CHECK_NOTHROW(flat_poly().validate());
    SUBCASE("d_h and d_v must commute") {
        BigradedArtin B;
        B.label = {"a", "b", "e"};
        B.deg = {{0, 1}, {1, 1}, {1, 0}};
        B.dh_map[0] = SVec{{1, Rat(1)}};
        B.dv_map[1] = SVec{{2, Rat(1)}};  // d_v d_h a = e but d_h d_v a = 0
        CHECK_THROWS_AS(B.validate(), std::invalid_argument);
        B.dv_map[0] = SVec{};  // still zero; add the missing corner instead
        B.label.push_back("c");
        B.deg.push_back({0, 0});
        B.dv_map[0] = SVec{{3, Rat(1)}};
        B.dh_map[3] = SVec{{2, Rat(1)}};
        CHECK_NOTHROW(B.validate());
    }
    SUBCASE("non-nilpotent multiplication is rejected") {
        BigradedArtin B;
        B.label = {"t"};
        B.deg = {{0, 0}};
        B.mult[{0, 0}] = SVec{{0, Rat(1)}};
        CHECK_THROWS_AS(B.validate(), std::invalid_argument);
    }
    SUBCASE("commutativity sign uses both degrees") {
        BigradedArtin B = two_cochain_generators();
        B.mult[{1, 0}] = SVec{{2, Rat(1)}};  // should be -xy
        CHECK_THROWS_AS(B.validate(), std::invalid_argument);
    }
}

TEST_CASE("Tot of a bigraded Artinian") {
    SUBCASE("cochain degree zero: Tot is the algebra itself") {
        ArtinCdga T = tot_bigraded_artin(flat_poly());
        ArtinCdga P = truncated_polynomial(3);
        CHECK(T.label == P.label);
        CHECK(T.deg == P.deg);
        CHECK(T.basis_product(0, 0) == P.basis_product(0, 0));
        CHECK(T.nilpotency_index() == 3);
    }
    SUBCASE("bidegree (1,1) lands in chain degree 0") {
        ArtinCdga T = tot_bigraded_artin(one_generator(1, 1));
        CHECK(T.deg == std::vector<int>{0});
    }
    SUBCASE("product twist (-1)^{j_a i_b}") {
        BigradedArtin B;
        B.label = {"x", "y", "z"};
        B.deg = {{1, 1}, {1, 1}, {2, 2}};
        B.mult[{0, 1}] = SVec{{2, Rat(1)}};
        B.mult[{1, 0}] = SVec{{2, Rat(1)}};  // (-1)^{1*1+1*1} = +1
        B.validate();
        ArtinCdga T = tot_bigraded_artin(B);  // re-validates as a cdga
        CHECK(T.basis_product(0, 1) == SVec{{2, Rat(-1)}});
        CHECK(T.basis_product(1, 0) == SVec{{2, Rat(-1)}});
    }
    SUBCASE("total differential D = d_h + (-1)^i d_v") {
        BigradedArtin B;
        B.label = {"q", "p", "r", "s"};
        B.deg = {{0, 1}, {1, 1}, {1, 0}, {0, 0}};
        B.dh_map[0] = SVec{{1, Rat(1)}};
        B.dv_map[1] = SVec{{2, Rat(1)}};
        B.dv_map[0] = SVec{{3, Rat(1)}};
        B.dh_map[3] = SVec{{2, Rat(1)}};
        B.validate();
        ArtinCdga T = tot_bigraded_artin(B);
        CHECK(T.d(SVec{{0, Rat(1)}}) == (SVec{{1, Rat(1)}, {3, Rat(1)}}));
        // p sits in bidegree (1,1): D p = -d_v p
        CHECK(T.d(SVec{{1, Rat(1)}}) == SVec{{2, Rat(-1)}});
    }
}

TEST_CASE("denormalization levels") {
    SUBCASE("cochain degree zero gives a constant cosimplicial object") {
        CosimplicialArtin D = denormalize(flat_poly(), 3);
        for (unsigned n = 0; n <= 3; ++n) CHECK(D.level[n].dim() == 2);
        for (unsigned n = 1; n <= 3; ++n)
            for (const CdgaMap& f : D.coface[n])
                CHECK(f.matrix() == RatMatrix::identity(2));
        for (unsigned n = 0; n < 3; ++n)
            for (const CdgaMap& f : D.codegeneracy[n])
                CHECK(f.matrix() == RatMatrix::identity(2));
    }
    SUBCASE("one cochain-1 generator spans n copies at level n") {
        CosimplicialArtin D = denormalize(one_generator(1, 0), 3);
        for (unsigned n = 0; n <= 3; ++n) CHECK(D.level[n].dim() == n);
        CHECK(D.level[2].label == std::vector<std::string>{"x@1", "x@2"});
        // top coface hits every degenerate position
        SVec img = D.coface[2][1].apply(SVec{{0, Rat(1)}});
        CHECK(img == (SVec{{0, Rat(1)}, {1, Rat(1)}}));
        SVec outer = D.coface[2][0].apply(SVec{{0, Rat(1)}});
        CHECK(outer == SVec{{D.pair_index(2, {1}, 0), Rat(1)}});  // only one surjection factors
    }
    SUBCASE("chain-direction generator keeps its differential") {
        BigradedArtin B;
        B.label = {"p", "q"};
        B.deg = {{1, 1}, {1, 0}};
        B.dv_map[0] = SVec{{1, Rat(1)}};
        CosimplicialArtin D = denormalize(B, 2);
        std::size_t p2 = D.pair_index(2, {1}, 0);
        std::size_t q2 = D.pair_index(2, {1}, 1);
        CHECK(D.level[2].d(SVec{{p2, Rat(1)}}) == SVec{{q2, Rat(1)}});
    }
    SUBCASE("alternating coface sum recovers d_h on normalized elements") {
        BigradedArtin B;
        B.label = {"a", "b"};
        B.deg = {{0, 0}, {1, 0}};
        B.dh_map[0] = SVec{{1, Rat(1)}};
        CosimplicialArtin D = denormalize(B, 2);
        // level 0 = {a}, level 1 = {a@1, b}
        SVec d0 = D.coface[1][0].apply(SVec{{0, Rat(1)}});
        SVec d1 = D.coface[1][1].apply(SVec{{0, Rat(1)}});
        std::size_t a1 = D.pair_index(1, {1}, 0);
        std::size_t b1 = D.pair_index(1, {}, 1);
        CHECK(d0 == SVec{{a1, Rat(1)}});
        CHECK(d1 == (SVec{{a1, Rat(1)}, {b1, Rat(1)}}));
        SVec diff = d1;
        sv_add(diff, Rat(-1), d0);
        CHECK(diff == SVec{{b1, Rat(1)}});
    }
}

TEST_CASE("shuffle product at level two") {
    CosimplicialArtin D = denormalize(two_cochain_generators(), 2);
    std::size_t x1 = D.pair_index(2, {1}, 0), x2 = D.pair_index(2, {2}, 0);
    std::size_t y1 = D.pair_index(2, {1}, 1), y2 = D.pair_index(2, {2}, 1);
    std::size_t z = D.pair_index(2, {}, 2);
    const ArtinCdga& L2 = D.level[2];
    // the two 2-shuffles come with opposite signatures
    CHECK(L2.basis_product(x1, y2) == SVec{{z, Rat(1)}});
    CHECK(L2.basis_product(x2, y1) == SVec{{z, Rat(-1)}});
    // common degenerate position: the product collapses unless sets partition
    CHECK(L2.basis_product(x1, y1).empty());
    CHECK(L2.basis_product(x1, x2).empty());  // x^2 = 0 upstairs
    // multiplicativity of cofaces: xy = 0 at level one, and the two shuffle
    // terms of d^1(x) d^1(y) cancel accordingly
    CHECK(D.level[1].basis_product(D.pair_index(1, {}, 0), D.pair_index(1, {}, 1)).empty());
    SVec dx = D.coface[2][1].apply(SVec{{D.pair_index(1, {}, 0), Rat(1)}});
    SVec dy = D.coface[2][1].apply(SVec{{D.pair_index(1, {}, 1), Rat(1)}});
    CHECK(L2.product(dx, dy).empty());
}

TEST_CASE("maps of bigraded Artinians") {
    // B1 = {t, a}, a in bidegree (1,0), all products zero; quotient kills a
    BigradedArtin B1;
    B1.name = "ext";
    B1.label = {"t", "a"};
    B1.deg = {{0, 0}, {1, 0}};
    BigradedArtin B2;
    B2.name = "base";
    B2.label = {"t"};
    B2.deg = {{0, 0}};
    BigradedMap f{B1, B2, {{0, SVec{{0, Rat(1)}}}}};
    f.validate();
    SUBCASE("bidegree mismatch is rejected") {
        BigradedMap bad{B1, B2, {{1, SVec{{0, Rat(1)}}}}};
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    }
    SUBCASE("denormalized maps are levelwise small extensions") {
        CosimplicialArtin DA = denormalize(B1, 2), DB = denormalize(B2, 2);
        std::vector<CdgaMap> g = denormalize_map(f, DA, DB);
        REQUIRE(g.size() == 3);
        CHECK(classify_surjection(g[0]).kind == SurjectionKind::acyclic_small);  // iso
        for (unsigned n = 1; n <= 2; ++n) {
            CHECK(g[n].is_surjective());
            CHECK(classify_surjection(g[n]).kind == SurjectionKind::small);
        }
        CHECK(g[2].source.dim() == 3);  // t@12, a@1, a@2
        CHECK(g[2].target.dim() == 1);
    }
    SUBCASE("Tot of a map with acyclic kernel is an acyclic small extension") {
        BigradedArtin B;
        B.name = "cone";
        B.label = {"q", "p"};
        B.deg = {{0, 1}, {1, 1}};
        B.dh_map[0] = SVec{{1, Rat(1)}};
        BigradedArtin Z;
        Z.name = "pt";
        BigradedMap to_point{B, Z, {}};
        CdgaMap g = tot_map(to_point);
        CHECK(classify_surjection(g).kind == SurjectionKind::acyclic_small);
    }
    SUBCASE("Tot of the general extension stays merely small") {
        CdgaMap g = tot_map(f);
        CHECK(classify_surjection(g).kind == SurjectionKind::small);
    }
}

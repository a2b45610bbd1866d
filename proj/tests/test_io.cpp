#include "dgdef/io.hpp"

#include "dgdef/zoo.hpp"
#include "doctest.h"

using namespace dgdef;

TEST_CASE("document parsing") {
    Document doc = parse_document(std::string(R"(# comment
[meta]
kind = dgla
name = Lobs

[space]
u : 1
v : 2   # trailing comment

[bracket]
u,u -> 2*v
)"));
    CHECK(doc.kind() == "dgla");
    CHECK(doc.meta.at("name") == "Lobs");
    REQUIRE(doc.spaces.at("space").size() == 2);
    CHECK(doc.spaces.at("space")[1] == std::make_pair(std::string("v"), std::vector<int>{2}));
    REQUIRE(doc.rules.at("bracket").size() == 1);
    const Rule& r = doc.rules.at("bracket")[0];
    CHECK(r.lhs == std::vector<std::string>{"u", "u"});
    REQUIRE(r.rhs.size() == 1);
    CHECK(r.rhs[0] == std::make_pair(Rat(2), std::string("v")));
}

TEST_CASE("parse errors carry line and column") {
    auto expect_line = [](const std::string& text, int line) {
        try {
            parse_document(text);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line == line);
            CHECK(e.col >= 1);
        }
    };
    expect_line("[space]\nu 1\n", 2);                       // missing colon
    expect_line("[meta]\nkind dgla\n", 2);                  // missing =
    expect_line("u : 1\n", 1);                              // content before section
    expect_line("[space]\nu : x\n", 2);                     // non-integer degree
    expect_line("[bracket]\nu,u => 2*v\n", 2);              // missing arrow
    expect_line("[differential]\nu -> one*v\n", 2);         // bad coefficient
    expect_line("[space\nu : 1\n", 1);                      // unterminated header
}

TEST_CASE("serialization roundtrips") {
    SUBCASE("dg Lie algebras") {
        for (const DGLA& L : {zoo::lobs(), zoo::labh(2), end_dgla(zoo::two_step_complex(1))}) {
            DGLA back = dgla_from_document(parse_document(to_text(L)));
            CHECK(back.label == L.label);
            CHECK(back.deg == L.deg);
            CHECK(back.diff == L.diff);
            CHECK(back.bracket == L.bracket);
        }
    }
    SUBCASE("Artinian algebras") {
        for (const ArtinCdga& A :
             {truncated_polynomial(4), dual_numbers(1),
              cone_extension(CdgaMap{dual_numbers(0), trivial_artin(), {}}).tilde}) {
            ArtinCdga back = artin_from_document(parse_document(to_text(A)));
            CHECK(back.label == A.label);
            CHECK(back.deg == A.deg);
            CHECK(back.diff == A.diff);
            CHECK(back.nilpotency_index() == A.nilpotency_index());
            for (std::size_t i = 0; i < A.dim(); ++i)
                for (std::size_t j = 0; j < A.dim(); ++j)
                    CHECK(back.basis_product(i, j) == A.basis_product(i, j));
        }
    }
}

TEST_CASE("builders validate their input") {
    // a degree-preserving differential must be rejected by the DGLA validator
    CHECK_THROWS_AS(dgla_from_document(parse_document(std::string(
                        "[meta]\nkind = dgla\n[space]\nu : 1\nv : 2\n"
                        "[bracket]\nu,u -> 2*v\n[differential]\nu -> 1*u\n"))),
                    std::invalid_argument);
    // unknown label in a rule is a parse error
    CHECK_THROWS_AS(dgla_from_document(parse_document(
                        std::string("[meta]\nkind = dgla\n[space]\nu : 1\n[bracket]\nu,w -> 1*u\n"))),
                    ParseError);
    // bigraded documents need two degrees
    CHECK_THROWS_AS(bigraded_from_document(parse_document(
                        std::string("[meta]\nkind = bigraded\n[space]\nq : 0\n"))),
                    ParseError);
}

TEST_CASE("extension and element documents") {
    Document doc = parse_document(std::string(R"(
[meta]
kind = extension
source.name = k[t]/t^3
target.name = k[t]/t^2
[source.space]
t : 0
t^2 : 0
[source.multiplication]
t,t -> 1*t^2
[target.space]
t : 0
[map]
t -> 1*t
t^2 -> 0
)"));
    CdgaMap f = extension_from_document(doc);
    CHECK(classify_surjection(f).kind == SurjectionKind::small);

    NilpotentDGLA N = coefficient_extension(zoo::lobs(), f.source);
    SVec w = element_from_document(
        parse_document(std::string("[element]\nu|t -> 1/2\nv|t^2 -> -3\nu|t^2 -> 0\n")),
        N.lie.label);
    SVec expect = sv_scale(N.lie.from_label("u|t"), Rat(1) / 2);
    sv_add(expect, Rat(-3), N.lie.from_label("v|t^2"));
    CHECK(w == expect);
}

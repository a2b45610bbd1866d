#include "dgdef/artin.hpp"
#include "doctest.h"

using namespace dgdef;

namespace {

// Surjection k[t]/t^r -> k[t]/t^s (s <= r), t -> t.
CdgaMap truncation_map(std::size_t r, std::size_t s) {
    CdgaMap f{truncated_polynomial(r), truncated_polynomial(s), {}};
    for (std::size_t p = 1; p < r; ++p)
        if (p < s) f.images[p - 1] = SVec{{p - 1, Rat(1)}};
    f.validate();
    return f;
}

}  // namespace

TEST_CASE("constructors validate and compute the filtration") {
    ArtinCdga k = trivial_artin();
    k.validate();
    CHECK(k.nilpotency_index() == 1);

    ArtinCdga de = dual_numbers(0);
    de.validate();
    CHECK(de.nilpotency_index() == 2);
    CHECK(de.weight(0) == 1);

    ArtinCdga d1 = dual_numbers(1);
    d1.validate();
    CHECK(d1.deg[0] == 1);
    CHECK(d1.nonneg());

    ArtinCdga t4 = truncated_polynomial(4);
    t4.validate();
    CHECK(t4.dim() == 3);
    CHECK(t4.nilpotency_index() == 4);
    CHECK(t4.weight(0) == 1);  // t
    CHECK(t4.weight(1) == 2);  // t^2
    CHECK(t4.weight(2) == 3);  // t^3
    CHECK(t4.product(t4.from_label("t"), t4.from_label("t^2")) == t4.from_label("t^3"));
    CHECK(sv_is_zero(t4.product(t4.from_label("t^2"), t4.from_label("t^3"))));
}

TEST_CASE("square_zero on a two-term complex") {
    // V: chain degree 1 -> 0, boundary = id on Q
    std::map<int, std::vector<std::string>> ls{{0, {"x"}}, {1, {"y"}}};
    std::map<int, RatMatrix> bd{{1, RatMatrix::identity(1)}};
    ArtinCdga a = square_zero(ls, bd);
    a.validate();
    CHECK(a.nilpotency_index() == 2);
    CHECK(a.d(a.from_label("y")) == a.from_label("x"));
    CHECK(is_acyclic(a.ideal_complex()));
}

TEST_CASE("validators reject corrupted structure constants") {
    // break graded commutativity on degree-1 generators: eps*eps != 0 is
    // inconsistent for odd degree
    ArtinCdga bad;
    bad.label = {"e", "f"};
    bad.deg = {1, 1};
    bad.mult[{0, 0}] = SVec{};  // fine
    bad.mult[{0, 1}] = SVec{};
    bad.mult[{1, 0}] = SVec{};
    bad.finalize();
    bad.validate();  // all-zero products are legal

    ArtinCdga bad2 = truncated_polynomial(3);
    bad2.mult[{0, 0}] = SVec{{0, Rat(1)}};  // t*t = t: wrong weight, breaks nilpotence
    CHECK_THROWS(bad2.finalize());

    ArtinCdga bad3 = truncated_polynomial(3);
    bad3.diff[1] = SVec{{0, Rat(1)}};  // d(t^2) = t in the same chain degree
    bad3.finalize();
    CHECK_THROWS_AS(bad3.validate(), std::invalid_argument);

    // Leibniz failure: d(t^2) should be 2t*dt = 0 here since dt = 0, so make
    // a degree-consistent but Leibniz-violating differential.
    ArtinCdga bad4;
    bad4.label = {"u", "v", "uv"};
    bad4.deg = {0, 1, 1};
    bad4.mult[{0, 1}] = SVec{{2, Rat(1)}};
    bad4.mult[{1, 0}] = SVec{{2, Rat(1)}};
    bad4.diff[2] = SVec{{0, Rat(1)}};  // d(uv) = u but d(u)v + u d(v) = 0... wait dv=0
    bad4.finalize();
    CHECK_THROWS_AS(bad4.validate(), std::invalid_argument);
}

TEST_CASE("classify_surjection on truncation towers") {
    // k[t]/t^3 -> k[t]/t^2 is small but not acyclic: kernel spanned by t^2
    CdgaMap f32 = truncation_map(3, 2);
    SurjectionInfo i32 = classify_surjection(f32);
    CHECK(i32.kind == SurjectionKind::small);
    REQUIRE(i32.kernel_flat.size() == 1);
    CHECK(sv_sparse(i32.kernel_flat[0]) == f32.source.from_label("t^2"));

    // k[t]/t^4 -> k[t]/t^2 is not small: t * t^2 = t^3 != 0
    CdgaMap f42 = truncation_map(4, 2);
    SurjectionInfo i42 = classify_surjection(f42);
    CHECK(i42.kind == SurjectionKind::general);
    CHECK(i42.kernel_flat.size() == 2);

    // non-surjective map is flagged
    CdgaMap up{truncated_polynomial(2), truncated_polynomial(3), {}};
    up.images[0] = SVec{{1, Rat(1)}};  // t -> t^2
    up.validate();
    SurjectionInfo iu = classify_surjection(up);
    CHECK(iu.kind == SurjectionKind::not_surjective);
}

TEST_CASE("factor_surjection splits a non-small surjection into smalls") {
    CdgaMap f42 = truncation_map(4, 2);
    std::vector<CdgaMap> steps = factor_surjection(f42);
    REQUIRE(steps.size() == 2);
    for (const CdgaMap& s : steps) {
        s.validate();
        CHECK(classify_surjection(s).is_small());
    }
    CdgaMap total = compose(steps[1], steps[0]);
    CHECK(total.matrix() == f42.matrix());

    // already-small maps factor trivially
    CHECK(factor_surjection(truncation_map(3, 2)).size() == 1);
}

TEST_CASE("cone_extension produces an acyclic small extension") {
    CdgaMap f32 = truncation_map(3, 2);
    ConeExtension ce = cone_extension(f32);
    ce.tilde.validate();
    ce.shifted.validate();
    ce.phi.validate();
    ce.rho.validate();

    // tilde = k[t]/t^3 (+) Q s0 with d(s0) = t^2, s0 in chain degree 1
    CHECK(ce.tilde.dim() == 3);
    CHECK(ce.tilde.deg[2] == 1);
    CHECK(ce.tilde.d(ce.tilde.from_label("s0")) == ce.tilde.from_label("t^2"));

    SurjectionInfo iphi = classify_surjection(ce.phi);
    CHECK(iphi.kind == SurjectionKind::acyclic_small);

    // A is recovered as tilde x_{rho, k(+)I[1]} k
    CdgaMap unit{trivial_artin(), ce.shifted, {}};
    FiberProduct fp = fiber_product(ce.rho, unit);
    fp.algebra.validate();
    fp.to_first.validate();
    CHECK(fp.algebra.dim() == f32.source.dim());
    // the embedding into tilde is an isomorphism onto m(A) < m(tilde)
    CdgaMap iso{f32.source, fp.algebra, {}};
    for (std::size_t i = 0; i < f32.source.dim(); ++i) {
        Vec flat = zero_vec(ce.tilde.dim());
        flat[i] = 1;  // tilde keeps A's basis in the first block
        auto x = solve(fp.embedding, flat);
        REQUIRE(x);
        iso.images[i] = sv_sparse(*x);
    }
    iso.validate();
    CHECK(iso.matrix().rank() == f32.source.dim());
}

TEST_CASE("fiber products and their universal property") {
    // k[eps] x_k k[eps]: both project to k, so the fiber product is 2-dim
    ArtinCdga e = dual_numbers(0);
    CdgaMap to_k{e, trivial_artin(), {}};
    to_k.validate();
    FiberProduct fp = fiber_product(to_k, to_k);
    fp.algebra.validate();
    CHECK(fp.algebra.dim() == 2);
    CHECK(fp.algebra.nilpotency_index() == 2);
    fp.to_first.validate();
    fp.to_second.validate();

    // diagonal k[eps] -> k[eps] x_k k[eps] mediates (id, id)
    CdgaMap id_e = identity_cdga_map(e);
    CdgaMap med = fiber_product_mediator(fp, id_e, id_e);
    med.validate();
    CHECK(compose(fp.to_first, med).matrix() == id_e.matrix());
    CHECK(compose(fp.to_second, med).matrix() == id_e.matrix());

    // fiber product over a nontrivial base: k[t]/t^3 x_{k[t]/t^2} k[t]/t^3
    CdgaMap f = truncation_map(3, 2);
    FiberProduct fp2 = fiber_product(f, f);
    fp2.algebra.validate();
    CHECK(fp2.algebra.dim() == 3);  // (t,t), (t^2,0), (0,t^2)
    fp2.to_first.validate();
    fp2.to_second.validate();
    CHECK(fp2.to_first.is_surjective());

    // incompatible pair is rejected: (t -> t, t -> 0) does not agree on B
    CdgaMap z{f.source, f.source, {}};
    z.images[1] = SVec{{1, Rat(1)}};  // t -> 0, t^2 -> t^2: not compatible
    CHECK_THROWS_AS(fiber_product_mediator(fp2, identity_cdga_map(f.source), z),
                    std::invalid_argument);
}

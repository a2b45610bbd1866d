#pragma once

// Standing test objects: small DGLAs and Artinian coefficient algebras that
// recur across the test suite and the acceptance runs.

#include "dgdef/dgla.hpp"

namespace dgdef {
namespace zoo {

inline DGLA zero_dgla() {
    DGLA out;
    out.name = "0";
    return out;
}

// Abelian, one-dimensional in cochain degree n.
inline DGLA labh(int n) {
    CochainComplex c;
    c.space.labels[n] = {"e"};
    DGLA out = abelian_dgla(c, "Labh" + std::to_string(n));
    return out;
}

// u in degree 1, v in degree 2, d = 0, [u,u] = 2v, all other brackets zero.
inline DGLA lobs() {
    DGLA out;
    out.name = "Lobs";
    out.label = {"u", "v"};
    out.deg = {1, 2};
    out.bracket[{0, 0}] = SVec{{1, Rat(2)}};
    return out;
}

// Exterior algebra on one generator y in chain degree 1 (basis 1, y).
inline GradedAlgebra exterior_one() {
    GradedAlgebra R;
    R.name = "Lambda(y)";
    R.flavor = GradedAlgebra::Flavor::graded_commutative;
    R.label = {"1", "y"};
    R.deg = {0, 1};
    R.mult[{0, 0}] = SVec{{0, Rat(1)}};
    R.mult[{0, 1}] = SVec{{1, Rat(1)}};
    R.mult[{1, 0}] = SVec{{1, Rat(1)}};
    return R;
}

// k[x]/x^2 with x in chain degree 0 (basis 1, x).
inline GradedAlgebra dual_numbers_algebra() {
    GradedAlgebra R;
    R.name = "k[x]/x^2";
    R.flavor = GradedAlgebra::Flavor::graded_commutative;
    R.label = {"1", "x"};
    R.deg = {0, 0};
    R.mult[{0, 0}] = SVec{{0, Rat(1)}};
    R.mult[{0, 1}] = SVec{{1, Rat(1)}};
    R.mult[{1, 0}] = SVec{{1, Rat(1)}};
    return R;
}

// V = Q (chain degree 0) (+) Q (chain degree 1), with boundary c * id.
inline CochainComplex two_step_complex(const Rat& c) {
    std::map<int, std::vector<std::string>> ls{{0, {"v0"}}, {1, {"v1"}}};
    std::map<int, RatMatrix> bd;
    RatMatrix m(1, 1);
    m.at(0, 0) = c;
    bd[1] = m;
    return chain_complex(ls, bd);
}

}  // namespace zoo
}  // namespace dgdef

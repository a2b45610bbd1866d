#pragma once

// Finite-dimensional differential graded Lie algebras over Q, with the
// constructors (abelian, End(V), derivation algebras) and the coefficient
// extension Tot(L (x) m(A)) used everywhere downstream.
//
// DGLAs are cochain-graded; d raises degree by one. Sign conventions:
//   [x,y] = -(-1)^{|x||y|} [y,x]
//   [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
//   d[x,y] = [dx,y] + (-1)^{|x|} [x,dy]

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dgdef/artin.hpp"
#include "dgdef/complexes.hpp"
#include "dgdef/svec.hpp"

namespace dgdef {

class DGLA {
  public:
    std::string name;
    std::vector<std::string> label;  // flat basis, globally unique labels
    std::vector<int> deg;            // cochain degree per basis element
    std::map<std::size_t, SVec> diff;
    std::map<std::pair<std::size_t, std::size_t>, SVec> bracket;

    std::size_t dim() const { return label.size(); }

    SVec basis_bracket(std::size_t i, std::size_t j) const {
        auto it = bracket.find({i, j});
        return it == bracket.end() ? SVec{} : it->second;
    }

    SVec br(const SVec& x, const SVec& y) const {
        SVec out;
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) sv_add(out, a * b, basis_bracket(i, j));
        return out;
    }

    SVec d(const SVec& x) const {
        SVec out;
        for (const auto& [i, a] : x) {
            auto it = diff.find(i);
            if (it != diff.end()) sv_add(out, a, it->second);
        }
        return out;
    }

    int degree_of(const SVec& x) const {
        std::optional<int> n;
        for (const auto& [i, a] : x) {
            (void)a;
            if (n && *n != deg[i]) throw std::invalid_argument("degree_of: inhomogeneous element");
            n = deg[i];
        }
        if (!n) throw std::invalid_argument("degree_of: zero element");
        return *n;
    }

    SVec from_label(const std::string& l) const {
        for (std::size_t i = 0; i < label.size(); ++i)
            if (label[i] == l) return SVec{{i, Rat(1)}};
        throw std::invalid_argument("unknown basis label: " + l);
    }

    std::vector<std::size_t> indices_in_degree(int n) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < dim(); ++i)
            if (deg[i] == n) out.push_back(i);
        return out;
    }

    // Underlying cochain complex; basis per degree in flat order.
    CochainComplex complex() const {
        CochainComplex out;
        std::map<int, std::vector<std::size_t>> idx;
        for (std::size_t i = 0; i < dim(); ++i) {
            out.space.labels[deg[i]].push_back(label[i]);
            idx[deg[i]].push_back(i);
        }
        for (const auto& [n, src] : idx) {
            if (!idx.count(n + 1)) continue;
            const auto& dst = idx.at(n + 1);
            RatMatrix m(dst.size(), src.size());
            for (std::size_t c = 0; c < src.size(); ++c) {
                auto it = diff.find(src[c]);
                if (it == diff.end()) continue;
                for (const auto& [j, x] : it->second) {
                    for (std::size_t r = 0; r < dst.size(); ++r)
                        if (dst[r] == j) m.at(r, c) = x;
                }
            }
            out.set_d(n, m);
        }
        out.validate();
        return out;
    }

    void validate() const {
        std::size_t n = dim();
        if (deg.size() != n) throw std::invalid_argument("DGLA: deg/label size mismatch");
        {
            std::set<std::string> seen(label.begin(), label.end());
            if (seen.size() != n) throw std::invalid_argument("DGLA: duplicate basis label");
        }
        for (const auto& [i, v] : diff)
            for (const auto& [j, x] : v) {
                (void)x;
                if (deg[j] != deg[i] + 1)
                    throw std::invalid_argument("DGLA: d does not raise degree by 1");
            }
        for (const auto& [ij, v] : bracket)
            for (const auto& [k, x] : v) {
                (void)x;
                if (deg[k] != deg[ij.first] + deg[ij.second])
                    throw std::invalid_argument("DGLA: bracket degree mismatch");
            }
        for (std::size_t i = 0; i < n; ++i)
            if (!d(d(SVec{{i, Rat(1)}})).empty()) throw std::invalid_argument("DGLA: d^2 != 0");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                SVec anti = basis_bracket(i, j);
                sv_add(anti, parity_sign(static_cast<long>(deg[i]) * deg[j]),
                       basis_bracket(j, i));
                if (!anti.empty())
                    throw std::invalid_argument("DGLA: antisymmetry fails at " + label[i] + "," +
                                                label[j]);
                SVec ei{{i, Rat(1)}}, ej{{j, Rat(1)}};
                SVec leib = d(basis_bracket(i, j));
                sv_add(leib, Rat(-1), br(d(ei), ej));
                sv_add(leib, -parity_sign(deg[i]), br(ei, d(ej)));
                if (!leib.empty())
                    throw std::invalid_argument("DGLA: Leibniz fails at " + label[i] + "," +
                                                label[j]);
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    SVec ei{{i, Rat(1)}}, ej{{j, Rat(1)}}, ek{{k, Rat(1)}};
                    SVec jac = br(ei, basis_bracket(j, k));
                    sv_add(jac, Rat(-1), br(basis_bracket(i, j), ek));
                    sv_add(jac, -parity_sign(static_cast<long>(deg[i]) * deg[j]),
                           br(ej, basis_bracket(i, k)));
                    if (!jac.empty())
                        throw std::invalid_argument("DGLA: Jacobi fails at " + label[i] + "," +
                                                    label[j] + "," + label[k]);
                }
    }
};

struct DglaMap {
    DGLA source, target;
    std::map<std::size_t, SVec> images;

    SVec apply(const SVec& x) const {
        SVec out;
        for (const auto& [i, a] : x) {
            auto it = images.find(i);
            if (it != images.end()) sv_add(out, a, it->second);
        }
        return out;
    }

    void validate() const {
        for (const auto& [i, v] : images)
            for (const auto& [j, x] : v) {
                (void)x;
                if (target.deg[j] != source.deg[i])
                    throw std::invalid_argument("DglaMap: not degree-preserving");
            }
        for (std::size_t i = 0; i < source.dim(); ++i) {
            SVec lhs = apply(source.d(SVec{{i, Rat(1)}}));
            sv_add(lhs, Rat(-1), target.d(apply(SVec{{i, Rat(1)}})));
            if (!lhs.empty()) throw std::invalid_argument("DglaMap: does not commute with d");
            for (std::size_t j = 0; j < source.dim(); ++j) {
                SVec br = apply(source.basis_bracket(i, j));
                sv_add(br, Rat(-1),
                       target.br(apply(SVec{{i, Rat(1)}}), apply(SVec{{j, Rat(1)}})));
                if (!br.empty())
                    throw std::invalid_argument("DglaMap: does not preserve the bracket");
            }
        }
    }
};

inline Cohomology dgla_cohomology(const DGLA& L, int n) { return cohomology(L.complex(), n); }

// ----- constructors -----

inline DGLA abelian_dgla(const CochainComplex& c, const std::string& name = "abelian") {
    DGLA out;
    out.name = name;
    std::map<int, std::vector<std::size_t>> idx;
    for (const auto& [n, ls] : c.space.labels)
        for (std::size_t p = 0; p < ls.size(); ++p) {
            idx[n].push_back(out.label.size());
            out.label.push_back(ls[p]);
            out.deg.push_back(n);
        }
    for (const auto& [n, m] : c.differential) {
        if (!idx.count(n)) continue;
        const auto& src = idx.at(n);
        const auto& dst = idx.count(n + 1) ? idx.at(n + 1) : std::vector<std::size_t>{};
        for (std::size_t cc = 0; cc < src.size(); ++cc) {
            SVec v;
            for (std::size_t r = 0; r < dst.size(); ++r)
                if (m.at(r, cc) != 0) v[dst[r]] = m.at(r, cc);
            if (!v.empty()) out.diff[src[cc]] = v;
        }
    }
    return out;
}

namespace detail {

// Shared builder for DGLAs whose elements are operators on a flat graded
// space: bracket = graded commutator, differential = [d_space, -].
struct OperatorDgla {
    std::vector<int> space_deg;  // chain degree of the underlying flat basis
    RatMatrix d_space;           // lowers chain degree by 1
    // cochain degree n -> basis operators (each maps chain degree i -> i-n)
    std::map<int, std::vector<RatMatrix>> ops;
    std::map<int, std::vector<std::string>> op_labels;

    DGLA build(const std::string& name) const {
        DGLA out;
        out.name = name;
        std::map<int, std::vector<std::size_t>> idx;
        for (const auto& [n, mats] : ops)
            for (std::size_t p = 0; p < mats.size(); ++p) {
                idx[n].push_back(out.label.size());
                out.label.push_back(op_labels.at(n)[p]);
                out.deg.push_back(n);
            }
        std::size_t N = space_deg.size();
        auto flatten = [&](const RatMatrix& m) {
            Vec v = zero_vec(N * N);
            for (std::size_t r = 0; r < N; ++r)
                for (std::size_t c = 0; c < N; ++c) v[r * N + c] = m.at(r, c);
            return v;
        };
        std::map<int, RatMatrix> coords;  // degree -> (N^2) x (#ops) matrix
        for (const auto& [n, mats] : ops) {
            std::vector<Vec> cols;
            for (const auto& m : mats) cols.push_back(flatten(m));
            coords[n] = RatMatrix::from_columns(N * N, cols);
        }
        auto express = [&](int n, const RatMatrix& m) {
            Vec flat = flatten(m);
            if (is_zero(flat)) return SVec{};
            auto it = coords.find(n);
            if (it == coords.end())
                throw std::logic_error("OperatorDgla: result outside the operator span");
            auto x = solve(it->second, flat);
            if (!x) throw std::logic_error("OperatorDgla: result outside the operator span");
            SVec out_v;
            for (std::size_t r = 0; r < x->size(); ++r)
                if ((*x)[r] != 0) out_v[idx.at(n)[r]] = (*x)[r];
            return out_v;
        };
        for (const auto& [n, mats] : ops)
            for (std::size_t p = 0; p < mats.size(); ++p) {
                Rat sgn = parity_sign(n);
                RatMatrix dm = d_space * mats[p] - mats[p].scaled(sgn) * d_space;
                SVec dv = express(n + 1, dm);
                if (!dv.empty()) out.diff[idx.at(n)[p]] = dv;
            }
        for (const auto& [n, mats] : ops)
            for (const auto& [m2, mats2] : ops)
                for (std::size_t p = 0; p < mats.size(); ++p)
                    for (std::size_t q = 0; q < mats2.size(); ++q) {
                        Rat sgn = parity_sign(static_cast<long>(n) * m2);
                        RatMatrix c = mats[p] * mats2[q] - (mats2[q] * mats[p]).scaled(sgn);
                        SVec bv = express(n + m2, c);
                        if (!bv.empty())
                            out.bracket[{idx.at(n)[p], idx.at(m2)[q]}] = bv;
                    }
        return out;
    }
};

}  // namespace detail

// End(V) for a chain complex V (presented via chain_complex's convention:
// cochain degree -i stores chain degree i). L^n = (+)_i Hom(V_{i+n}, V_i),
// d(f) = [d_V, f], bracket = graded commutator.
inline DGLA end_dgla(const CochainComplex& v_chain) {
    detail::OperatorDgla ob;
    std::vector<std::pair<int, std::string>> flat;  // (chain degree, label)
    for (const auto& [nc, ls] : v_chain.space.labels)
        for (const auto& l : ls) flat.push_back({-nc, l});
    std::size_t N = flat.size();
    for (auto& [dg, l] : flat) ob.space_deg.push_back(dg), (void)l;
    ob.d_space = RatMatrix(N, N);
    for (const auto& [nc, m] : v_chain.differential) {
        // boundary from chain degree -nc to -nc-1 in cochain storage
        std::vector<std::size_t> src, dst;
        for (std::size_t i = 0; i < N; ++i) {
            if (flat[i].first == -nc) src.push_back(i);
            if (flat[i].first == -nc - 1) dst.push_back(i);
        }
        for (std::size_t c = 0; c < src.size(); ++c)
            for (std::size_t r = 0; r < dst.size(); ++r)
                ob.d_space.at(dst[r], src[c]) = m.at(r, c);
    }
    for (std::size_t p = 0; p < N; ++p)
        for (std::size_t q = 0; q < N; ++q) {
            int n = flat[q].first - flat[p].first;  // maps e_q -> e_p
            RatMatrix m(N, N);
            m.at(p, q) = 1;
            ob.ops[n].push_back(m);
            ob.op_labels[n].push_back("E[" + flat[p].second + "<-" + flat[q].second + "]");
        }
    return ob.build("End(V)");
}

// Graded algebra input for derivation DGLAs. Chain-graded; d lowers degree.
struct GradedAlgebra {
    enum class Flavor { associative, graded_commutative, lie };
    std::string name;
    Flavor flavor = Flavor::associative;
    std::vector<std::string> label;
    std::vector<int> deg;  // chain degrees
    std::map<std::pair<std::size_t, std::size_t>, SVec> mult;
    std::map<std::size_t, SVec> diff;  // lowers chain degree by 1

    std::size_t dim() const { return label.size(); }

    SVec basis_product(std::size_t i, std::size_t j) const {
        auto it = mult.find({i, j});
        return it == mult.end() ? SVec{} : it->second;
    }

    void validate() const {
        std::size_t n = dim();
        for (const auto& [ij, v] : mult)
            for (const auto& [k, x] : v) {
                (void)x;
                if (deg[k] != deg[ij.first] + deg[ij.second])
                    throw std::invalid_argument("GradedAlgebra: product degree mismatch");
            }
        for (const auto& [i, v] : diff)
            for (const auto& [j, x] : v) {
                (void)x;
                if (deg[j] != deg[i] - 1)
                    throw std::invalid_argument("GradedAlgebra: d degree mismatch");
            }
        auto prod = [&](const SVec& a, const SVec& b) {
            SVec out;
            for (const auto& [i, x] : a)
                for (const auto& [j, y] : b) sv_add(out, x * y, basis_product(i, j));
            return out;
        };
        auto dd = [&](const SVec& a) {
            SVec out;
            for (const auto& [i, x] : a) {
                auto it = diff.find(i);
                if (it != diff.end()) sv_add(out, x, it->second);
            }
            return out;
        };
        for (std::size_t i = 0; i < n; ++i)
            if (!dd(dd(SVec{{i, Rat(1)}})).empty())
                throw std::invalid_argument("GradedAlgebra: d^2 != 0");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                SVec leib = dd(basis_product(i, j));
                sv_add(leib, Rat(-1), prod(dd(SVec{{i, Rat(1)}}), SVec{{j, Rat(1)}}));
                sv_add(leib, -parity_sign(deg[i]), prod(SVec{{i, Rat(1)}}, dd(SVec{{j, Rat(1)}})));
                if (!leib.empty())
                    throw std::invalid_argument("GradedAlgebra: Leibniz fails for d");
            }
        if (flavor == Flavor::associative || flavor == Flavor::graded_commutative) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) {
                        SVec as = prod(basis_product(i, j), SVec{{k, Rat(1)}});
                        sv_add(as, Rat(-1), prod(SVec{{i, Rat(1)}}, basis_product(j, k)));
                        if (!as.empty())
                            throw std::invalid_argument("GradedAlgebra: not associative");
                    }
        }
        if (flavor == Flavor::graded_commutative) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    SVec c = basis_product(i, j);
                    sv_add(c, -parity_sign(static_cast<long>(deg[i]) * deg[j]),
                           basis_product(j, i));
                    if (!c.empty())
                        throw std::invalid_argument("GradedAlgebra: not graded-commutative");
                }
        }
        if (flavor == Flavor::lie) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    SVec c = basis_product(i, j);
                    sv_add(c, parity_sign(static_cast<long>(deg[i]) * deg[j]),
                           basis_product(j, i));
                    if (!c.empty())
                        throw std::invalid_argument("GradedAlgebra: bracket not antisymmetric");
                    for (std::size_t k = 0; k < n; ++k) {
                        SVec jac = prod(SVec{{i, Rat(1)}}, basis_product(j, k));
                        sv_add(jac, Rat(-1), prod(basis_product(i, j), SVec{{k, Rat(1)}}));
                        sv_add(jac, -parity_sign(static_cast<long>(deg[i]) * deg[j]),
                               prod(SVec{{j, Rat(1)}}, basis_product(i, k)));
                        if (!jac.empty())
                            throw std::invalid_argument("GradedAlgebra: Jacobi fails");
                    }
                }
        }
    }
};

// Derivations of R (for the chosen flavor) as a DGLA. A degree-n derivation
// maps chain degree i -> i - n and satisfies
//   f(a b) = f(a) b + (-1)^{n |a|} a f(b)
// (same shape for all three flavors; the flavor only constrains R itself).
// The Leibniz constraint is solved as a linear system over all basis pairs.
inline DGLA der_dgla(const GradedAlgebra& R) {
    R.validate();
    std::size_t N = R.dim();
    detail::OperatorDgla ob;
    ob.space_deg = R.deg;
    ob.d_space = RatMatrix(N, N);
    for (const auto& [i, v] : R.diff)
        for (const auto& [j, x] : v) ob.d_space.at(j, i) = x;

    std::set<int> degrees_n;
    for (std::size_t p = 0; p < N; ++p)
        for (std::size_t q = 0; q < N; ++q) degrees_n.insert(R.deg[q] - R.deg[p]);
    for (int n : degrees_n) {
        // unknowns: f_{pq} over pairs with deg[q] - deg[p] = n
        std::vector<std::pair<std::size_t, std::size_t>> unk;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = 0; q < N; ++q)
                if (R.deg[q] - R.deg[p] == n) unk.push_back({p, q});
        if (unk.empty()) continue;
        // rows: for each (i,j,k): coeff of e_k in f(e_i e_j) - f(e_i)e_j
        //       - (-1)^{n deg_i} e_i f(e_j) = 0
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                std::map<std::size_t, SVec> contrib;  // unknown index -> target SVec
                SVec pij = R.basis_product(i, j);
                for (std::size_t u = 0; u < unk.size(); ++u) {
                    auto [p, q] = unk[u];
                    SVec t;
                    auto it = pij.find(q);
                    if (it != pij.end()) sv_add_term(t, p, it->second);  // f(e_i e_j)
                    if (q == i)  // - f(e_i) e_j
                        sv_add(t, Rat(-1), R.basis_product(p, j));
                    if (q == j)  // - (-1)^{n deg_i} e_i f(e_j)
                        sv_add(t, -parity_sign(static_cast<long>(n) * R.deg[i]),
                               R.basis_product(i, p));
                    if (!t.empty()) contrib[u] = t;
                }
                std::set<std::size_t> targets;
                for (const auto& [u, t] : contrib)
                    for (const auto& [k, x] : t) {
                        (void)x;
                        targets.insert(k);
                    }
                for (std::size_t k : targets) {
                    Vec row = zero_vec(unk.size());
                    for (const auto& [u, t] : contrib) {
                        auto it = t.find(k);
                        if (it != t.end()) row[u] = it->second;
                    }
                    rows.push_back(std::move(row));
                }
            }
        RatMatrix sys(rows.size(), unk.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < unk.size(); ++c) sys.at(r, c) = rows[r][c];
        std::size_t count = 0;
        for (const Vec& kvec : kernel_basis(sys)) {
            RatMatrix m(N, N);
            for (std::size_t u = 0; u < unk.size(); ++u) m.at(unk[u].first, unk[u].second) = kvec[u];
            ob.ops[n].push_back(m);
            ob.op_labels[n].push_back("D" + std::to_string(n) + "_" + std::to_string(count++));
        }
        if (ob.ops.count(n) && ob.ops.at(n).empty()) ob.ops.erase(n);
    }
    return ob.build("Der(" + R.name + ")");
}

// ----- coefficient extension -----

// Tot(L (x) m(A)): basis u|a over (L basis) x (m(A) basis), cochain degree
// deg_L(u) - deg_A(a), with
//   d(u|a) = du|a + (-1)^{deg u} u|da
//   [u|a, v|b] = (-1)^{deg v deg a} [u,v]|ab.
struct NilpotentDGLA {
    DGLA lie;
    DGLA base;        // the L it came from
    ArtinCdga coeffs; // the A it came from
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // flat -> (L idx, A idx)
    std::vector<std::size_t> weight;  // m-adic weight per flat basis element

    std::size_t nilpotency_index() const { return coeffs.nilpotency_index(); }

    std::size_t weight_of(const SVec& x) const {
        std::size_t w = nilpotency_index();
        for (const auto& [i, a] : x) {
            (void)a;
            w = std::min(w, weight[i]);
        }
        return w;
    }

    // Drop all components of m-adic weight > w (truncation mod m^{w+1}).
    SVec truncate_above(const SVec& x, std::size_t w) const {
        SVec out;
        for (const auto& [i, a] : x)
            if (weight[i] <= w) out[i] = a;
        return out;
    }
};

inline NilpotentDGLA coefficient_extension(const DGLA& L, const ArtinCdga& A) {
    NilpotentDGLA out;
    out.base = L;
    out.coeffs = A;
    out.lie.name = "Tot(" + L.name + "(x)m(" + A.name + "))";
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> flat;
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j) {
            flat[{i, j}] = out.pairs.size();
            out.pairs.push_back({i, j});
            out.lie.label.push_back(L.label[i] + "|" + A.label[j]);
            out.lie.deg.push_back(L.deg[i] - A.deg[j]);
            out.weight.push_back(A.weight(j));
        }
    auto embed = [&](const SVec& lu, const SVec& av) {
        // (sum lu) (x) (sum av) as a flat SVec
        SVec r;
        for (const auto& [i, x] : lu)
            for (const auto& [j, y] : av) sv_add_term(r, flat.at({i, j}), x * y);
        return r;
    };
    for (std::size_t p = 0; p < out.pairs.size(); ++p) {
        auto [i, j] = out.pairs[p];
        SVec dv = embed(L.d(SVec{{i, Rat(1)}}), SVec{{j, Rat(1)}});
        sv_add(dv, parity_sign(L.deg[i]), embed(SVec{{i, Rat(1)}}, A.d(SVec{{j, Rat(1)}})));
        if (!dv.empty()) out.lie.diff[p] = dv;
    }
    for (std::size_t p = 0; p < out.pairs.size(); ++p)
        for (std::size_t q = 0; q < out.pairs.size(); ++q) {
            auto [i, a] = out.pairs[p];
            auto [j, b] = out.pairs[q];
            SVec lb = L.basis_bracket(i, j);
            if (lb.empty()) continue;
            SVec ab = A.basis_product(a, b);
            if (ab.empty()) continue;
            Rat sgn = parity_sign(static_cast<long>(L.deg[j]) * A.deg[a]);
            SVec v = sv_scale(embed(lb, ab), sgn);
            if (!v.empty()) out.lie.bracket[{p, q}] = v;
        }
    return out;
}

// Map of coefficient extensions induced by (f : L -> M, g : A -> B).
inline DglaMap coefficient_extension_map(const NilpotentDGLA& src, const NilpotentDGLA& dst,
                                         const DglaMap& f, const CdgaMap& g) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> flat;
    for (std::size_t p = 0; p < dst.pairs.size(); ++p) flat[dst.pairs[p]] = p;
    DglaMap out{src.lie, dst.lie, {}};
    for (std::size_t p = 0; p < src.pairs.size(); ++p) {
        auto [i, j] = src.pairs[p];
        SVec fi = f.apply(SVec{{i, Rat(1)}});
        SVec gj = g.apply(SVec{{j, Rat(1)}});
        SVec v;
        for (const auto& [ii, x] : fi)
            for (const auto& [jj, y] : gj) sv_add_term(v, flat.at({ii, jj}), x * y);
        if (!v.empty()) out.images[p] = v;
    }
    return out;
}

}  // namespace dgdef

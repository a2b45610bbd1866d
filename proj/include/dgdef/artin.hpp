#pragma once

// Local Artinian cdgas over Q, presented by a flat basis of the maximal
// ideal m(A) with chain degrees. The unit is implicit: elements of A are
// "scalar + ideal part", and all structure maps below act on the ideal.
//
// Conventions: d lowers chain degree by one; graded commutativity and the
// Leibniz rule use total parity of the chain degree.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dgdef/complexes.hpp"
#include "dgdef/svec.hpp"

namespace dgdef {

inline Rat parity_sign(long n) { return ((n % 2 + 2) % 2 == 0) ? Rat(1) : Rat(-1); }

class ArtinCdga {
  public:
    std::string name;
    std::vector<std::string> label;  // flat basis of m(A), globally unique labels
    std::vector<int> deg;            // chain degree of each basis element
    std::map<std::size_t, SVec> diff;
    std::map<std::pair<std::size_t, std::size_t>, SVec> mult;

    std::size_t dim() const { return label.size(); }

    bool nonneg() const {
        for (int n : deg)
            if (n < 0) return false;
        return true;
    }

    SVec basis_product(std::size_t i, std::size_t j) const {
        auto it = mult.find({i, j});
        return it == mult.end() ? SVec{} : it->second;
    }

    SVec product(const SVec& a, const SVec& b) const {
        SVec out;
        for (const auto& [i, x] : a)
            for (const auto& [j, y] : b) sv_add(out, x * y, basis_product(i, j));
        return out;
    }

    SVec d(const SVec& a) const {
        SVec out;
        for (const auto& [i, x] : a) {
            auto it = diff.find(i);
            if (it != diff.end()) sv_add(out, x, it->second);
        }
        return out;
    }

    int degree_of(const SVec& a) const {
        std::optional<int> n;
        for (const auto& [i, x] : a) {
            (void)x;
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

    // m-adic filtration: power_span(k) spans m^k (k >= 1). Requires finalize().
    const Span& power_span(std::size_t k) const {
        if (k == 0 || k > powers_.size())
            throw std::out_of_range("power_span: k outside 1..nilpotency_index");
        return powers_[k - 1];
    }

    // Least k with m^k = 0.
    std::size_t nilpotency_index() const { return powers_.size() + 1; }

    // Largest w with e_i in span(m^w).
    std::size_t weight(std::size_t i) const { return weights_[i]; }

    std::size_t weight_of(const SVec& a) const {
        std::size_t w = nilpotency_index();
        for (const auto& [i, x] : a) {
            (void)x;
            w = std::min(w, weights_[i]);
        }
        return w;
    }

    // Compute the m-adic filtration and nilpotency; throws if m is not
    // nilpotent within dim()+1 steps (impossible for a genuine ideal basis).
    void finalize() {
        powers_.clear();
        std::size_t n = dim();
        Span full(n);
        for (std::size_t i = 0; i < n; ++i) {
            Vec e = zero_vec(n);
            e[i] = 1;
            full.add(e);
        }
        if (full.dim() > 0) powers_.push_back(full);
        while (!powers_.empty() && powers_.back().dim() > 0) {
            if (powers_.size() > n + 1)
                throw std::invalid_argument("ArtinCdga: ideal is not nilpotent");
            const Span& prev = powers_.back();
            Span next(n);
            for (std::size_t i = 0; i < n; ++i)
                for (const Vec& row : prev.rows()) {
                    SVec p = product(SVec{{i, Rat(1)}}, sv_sparse(row));
                    if (!p.empty()) next.add(sv_dense(p, n));
                }
            if (next.dim() == 0) break;
            powers_.push_back(std::move(next));
        }
        weights_.assign(n, 1);
        for (std::size_t i = 0; i < n; ++i) {
            Vec e = zero_vec(n);
            e[i] = 1;
            for (std::size_t k = powers_.size(); k >= 1; --k)
                if (powers_[k - 1].contains(e)) {
                    weights_[i] = k;
                    break;
                }
        }
    }

    // Full axiom check: grading, d^2 = 0, Leibniz, graded commutativity,
    // associativity, nilpotency (via finalize).
    void validate() const {
        std::size_t n = dim();
        if (deg.size() != n) throw std::invalid_argument("ArtinCdga: deg/label size mismatch");
        {
            std::set<std::string> seen(label.begin(), label.end());
            if (seen.size() != n) throw std::invalid_argument("ArtinCdga: duplicate basis label");
        }
        if (powers_.empty() && n > 0)
            throw std::invalid_argument("ArtinCdga: finalize() not called");
        for (const auto& [i, v] : diff) {
            if (i >= n) throw std::invalid_argument("ArtinCdga: diff index out of range");
            for (const auto& [j, x] : v) {
                (void)x;
                if (deg[j] != deg[i] - 1)
                    throw std::invalid_argument("ArtinCdga: d does not lower degree by 1");
            }
        }
        for (const auto& [ij, v] : mult) {
            auto [i, j] = ij;
            if (i >= n || j >= n) throw std::invalid_argument("ArtinCdga: mult index out of range");
            for (const auto& [k, x] : v) {
                (void)x;
                if (deg[k] != deg[i] + deg[j])
                    throw std::invalid_argument("ArtinCdga: product degree mismatch");
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            SVec ddi = d(d(SVec{{i, Rat(1)}}));
            if (!ddi.empty()) throw std::invalid_argument("ArtinCdga: d^2 != 0");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                SVec ei{{i, Rat(1)}}, ej{{j, Rat(1)}};
                SVec comm = basis_product(i, j);
                sv_add(comm, -parity_sign(static_cast<long>(deg[i]) * deg[j]),
                       basis_product(j, i));
                if (!comm.empty())
                    throw std::invalid_argument("ArtinCdga: not graded-commutative at " +
                                                label[i] + "," + label[j]);
                SVec leib = d(basis_product(i, j));
                sv_add(leib, Rat(-1), product(d(ei), ej));
                sv_add(leib, -parity_sign(deg[i]), product(ei, d(ej)));
                if (!leib.empty())
                    throw std::invalid_argument("ArtinCdga: Leibniz fails at " + label[i] + "," +
                                                label[j]);
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    SVec lhs = product(basis_product(i, j), SVec{{k, Rat(1)}});
                    sv_add(lhs, Rat(-1), product(SVec{{i, Rat(1)}}, basis_product(j, k)));
                    if (!lhs.empty())
                        throw std::invalid_argument("ArtinCdga: associativity fails at " +
                                                    label[i] + "," + label[j] + "," + label[k]);
                }
    }

    // m(A) as a chain complex (stored cochain via degree i <-> -i).
    CochainComplex ideal_complex() const {
        std::map<int, std::vector<std::string>> ls;
        std::map<int, std::vector<std::size_t>> idx;
        for (std::size_t i = 0; i < dim(); ++i) {
            ls[deg[i]].push_back(label[i]);
            idx[deg[i]].push_back(i);
        }
        std::map<int, RatMatrix> bd;
        for (const auto& [n, src] : idx) {
            if (!idx.count(n - 1)) continue;
            const auto& dst = idx.at(n - 1);
            RatMatrix m(dst.size(), src.size());
            for (std::size_t c = 0; c < src.size(); ++c) {
                auto it = diff.find(src[c]);
                if (it == diff.end()) continue;
                for (const auto& [j, x] : it->second) {
                    auto pos = std::find(dst.begin(), dst.end(), j);
                    m.at(static_cast<std::size_t>(pos - dst.begin()), c) = x;
                }
            }
            bd[n] = m;
        }
        return chain_complex(ls, bd);
    }

    // Flat index <-> per-degree position, for building degreewise matrices.
    std::vector<std::size_t> indices_in_degree(int n) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < dim(); ++i)
            if (deg[i] == n) out.push_back(i);
        return out;
    }

  private:
    std::vector<Span> powers_;          // powers_[k-1] spans m^k, nonzero ones only
    std::vector<std::size_t> weights_;  // m-adic weight per basis element
};

// Morphism of Artinian cdgas (unital; determined by its action on m).
struct CdgaMap {
    ArtinCdga source, target;
    std::map<std::size_t, SVec> images;  // source basis index -> element of m(target)

    SVec apply(const SVec& a) const {
        SVec out;
        for (const auto& [i, x] : a) {
            auto it = images.find(i);
            if (it != images.end()) sv_add(out, x, it->second);
        }
        return out;
    }

    RatMatrix matrix() const {
        RatMatrix m(target.dim(), source.dim());
        for (const auto& [i, v] : images)
            for (const auto& [j, x] : v) m.at(j, i) = x;
        return m;
    }

    bool is_surjective() const { return matrix().rank() == target.dim(); }

    void validate() const {
        for (const auto& [i, v] : images) {
            if (i >= source.dim()) throw std::invalid_argument("CdgaMap: index out of range");
            for (const auto& [j, x] : v) {
                (void)x;
                if (target.deg[j] != source.deg[i])
                    throw std::invalid_argument("CdgaMap: not degree-preserving at " +
                                                source.label[i]);
            }
        }
        for (std::size_t i = 0; i < source.dim(); ++i) {
            SVec ei{{i, Rat(1)}};
            SVec lhs = apply(source.d(ei));
            sv_add(lhs, Rat(-1), target.d(apply(ei)));
            if (!lhs.empty())
                throw std::invalid_argument("CdgaMap: does not commute with d at " +
                                            source.label[i]);
        }
        for (std::size_t i = 0; i < source.dim(); ++i)
            for (std::size_t j = 0; j < source.dim(); ++j) {
                SVec lhs = apply(source.basis_product(i, j));
                sv_add(lhs, Rat(-1),
                       target.product(apply(SVec{{i, Rat(1)}}), apply(SVec{{j, Rat(1)}})));
                if (!lhs.empty())
                    throw std::invalid_argument("CdgaMap: not multiplicative at " +
                                                source.label[i] + "," + source.label[j]);
            }
    }
};

inline CdgaMap compose(const CdgaMap& g, const CdgaMap& f) {
    CdgaMap out{f.source, g.target, {}};
    for (std::size_t i = 0; i < f.source.dim(); ++i) {
        SVec v = g.apply(f.apply(SVec{{i, Rat(1)}}));
        if (!v.empty()) out.images[i] = v;
    }
    return out;
}

inline CdgaMap identity_cdga_map(const ArtinCdga& a) {
    CdgaMap out{a, a, {}};
    for (std::size_t i = 0; i < a.dim(); ++i) out.images[i] = SVec{{i, Rat(1)}};
    return out;
}

// ----- constructors -----

inline ArtinCdga trivial_artin() {
    ArtinCdga a;
    a.name = "k";
    a.finalize();
    return a;
}

// k[eps_n]: one square-zero generator in chain degree n, d = 0.
inline ArtinCdga dual_numbers(int n = 0) {
    ArtinCdga a;
    a.name = "k[eps_" + std::to_string(n) + "]";
    a.label = {"eps" + std::to_string(n)};
    a.deg = {n};
    a.finalize();
    return a;
}

// k (+) V with V*V = 0, for a chain complex V given by degreewise labels and
// boundary maps (boundary[i] : degree i -> i-1).
inline ArtinCdga square_zero(const std::map<int, std::vector<std::string>>& labels,
                             const std::map<int, RatMatrix>& boundary,
                             const std::string& name = "k(+)V") {
    ArtinCdga a;
    a.name = name;
    std::map<int, std::vector<std::size_t>> idx;
    for (const auto& [n, ls] : labels)
        for (const auto& l : ls) {
            idx[n].push_back(a.label.size());
            a.label.push_back(l);
            a.deg.push_back(n);
        }
    for (const auto& [n, m] : boundary) {
        const auto& src = idx.at(n);
        const auto& dst = idx.count(n - 1) ? idx.at(n - 1) : std::vector<std::size_t>{};
        if (m.rows() != dst.size() || m.cols() != src.size())
            throw std::invalid_argument("square_zero: boundary shape mismatch in degree " +
                                        std::to_string(n));
        for (std::size_t c = 0; c < src.size(); ++c) {
            SVec v;
            for (std::size_t r = 0; r < dst.size(); ++r)
                if (m.at(r, c) != 0) v[dst[r]] = m.at(r, c);
            if (!v.empty()) a.diff[src[c]] = v;
        }
    }
    a.finalize();
    return a;
}

// k[t]/t^r in chain degree 0, basis t, t^2, ..., t^{r-1}.
inline ArtinCdga truncated_polynomial(std::size_t r) {
    if (r < 1) throw std::invalid_argument("truncated_polynomial: need r >= 1");
    ArtinCdga a;
    a.name = "k[t]/t^" + std::to_string(r);
    for (std::size_t p = 1; p < r; ++p) {
        a.label.push_back(p == 1 ? "t" : "t^" + std::to_string(p));
        a.deg.push_back(0);
    }
    for (std::size_t p = 1; p < r; ++p)
        for (std::size_t q = 1; q < r; ++q)
            if (p + q < r) a.mult[{p - 1, q - 1}] = SVec{{p + q - 1, Rat(1)}};
    a.finalize();
    return a;
}

// ----- quotients -----

struct ArtinQuotient {
    ArtinCdga algebra;
    CdgaMap projection;
    std::vector<std::size_t> section;  // quotient basis index -> source basis index
};

// A / J for a homogeneous dg-ideal J given as a Span in the flat coordinates
// of m(A). Basis of the quotient: source basis elements away from the pivots.
inline ArtinQuotient quotient_by_ideal(const ArtinCdga& a, const Span& J) {
    std::size_t n = a.dim();
    if (J.ambient_dim() != n) throw std::invalid_argument("quotient_by_ideal: ambient mismatch");
    for (const Vec& row : J.rows()) {
        std::optional<int> dg;
        for (std::size_t j = 0; j < n; ++j)
            if (row[j] != 0) {
                if (dg && *dg != a.deg[j])
                    throw std::invalid_argument("quotient_by_ideal: inhomogeneous ideal");
                dg = a.deg[j];
            }
        if (!J.contains(sv_dense(a.d(sv_sparse(row)), n)))
            throw std::invalid_argument("quotient_by_ideal: not closed under d");
        for (std::size_t i = 0; i < n; ++i)
            if (!J.contains(sv_dense(a.product(SVec{{i, Rat(1)}}, sv_sparse(row)), n)))
                throw std::invalid_argument("quotient_by_ideal: not an ideal");
    }
    std::vector<bool> is_pivot(n, false);
    for (auto p : J.pivots()) is_pivot[p] = true;
    ArtinQuotient out;
    out.algebra.name = a.name + "/J";
    std::map<std::size_t, std::size_t> to_q;  // source index -> quotient index
    for (std::size_t i = 0; i < n; ++i)
        if (!is_pivot[i]) {
            to_q[i] = out.algebra.label.size();
            out.section.push_back(i);
            out.algebra.label.push_back(a.label[i]);
            out.algebra.deg.push_back(a.deg[i]);
        }
    auto project = [&](const SVec& v) {
        Vec r = J.reduce(sv_dense(v, n));
        SVec q;
        for (std::size_t i = 0; i < n; ++i)
            if (r[i] != 0) q[to_q.at(i)] = r[i];
        return q;
    };
    for (std::size_t qi = 0; qi < out.section.size(); ++qi) {
        SVec dv = project(a.d(SVec{{out.section[qi], Rat(1)}}));
        if (!dv.empty()) out.algebra.diff[qi] = dv;
        for (std::size_t qj = 0; qj < out.section.size(); ++qj) {
            SVec pv = project(a.basis_product(out.section[qi], out.section[qj]));
            if (!pv.empty()) out.algebra.mult[{qi, qj}] = pv;
        }
    }
    out.algebra.finalize();
    out.projection = CdgaMap{a, out.algebra, {}};
    for (std::size_t i = 0; i < n; ++i) {
        SVec v = project(SVec{{i, Rat(1)}});
        if (!v.empty()) out.projection.images[i] = v;
    }
    return out;
}

// ----- classification of surjections -----

enum class SurjectionKind { not_surjective, general, small, acyclic_small };

struct SurjectionInfo {
    SurjectionKind kind = SurjectionKind::general;
    std::vector<Vec> kernel_flat;  // basis of I = ker(f) in flat m(source) coordinates
    CochainComplex kernel_complex; // I as a chain complex
    bool is_small() const {
        return kind == SurjectionKind::small || kind == SurjectionKind::acyclic_small;
    }
};

namespace detail {

// Kernel basis of f on the ideal, computed degreewise for determinism, flat.
inline std::vector<Vec> kernel_flat_basis(const CdgaMap& f) {
    std::vector<Vec> out;
    std::set<int> degs(f.source.deg.begin(), f.source.deg.end());
    RatMatrix M = f.matrix();
    for (int n : degs) {
        auto src = f.source.indices_in_degree(n);
        auto dst = f.target.indices_in_degree(n);
        RatMatrix block(dst.size(), src.size());
        for (std::size_t c = 0; c < src.size(); ++c)
            for (std::size_t r = 0; r < dst.size(); ++r) block.at(r, c) = M.at(dst[r], src[c]);
        for (const Vec& k : kernel_basis(block)) {
            Vec flat = zero_vec(f.source.dim());
            for (std::size_t c = 0; c < src.size(); ++c) flat[src[c]] = k[c];
            out.push_back(std::move(flat));
        }
    }
    return out;
}

// Kernel of f as a chain complex, with the inclusion remembered via labels.
inline CochainComplex kernel_as_complex(const ArtinCdga& a, const std::vector<Vec>& kernel) {
    std::map<int, std::vector<std::string>> ls;
    std::map<int, std::vector<std::size_t>> which;  // degree -> kernel vector index
    for (std::size_t k = 0; k < kernel.size(); ++k) {
        int n = a.degree_of(sv_sparse(kernel[k]));
        ls[n].push_back("i" + std::to_string(k));
        which[n].push_back(k);
    }
    std::map<int, RatMatrix> bd;
    for (const auto& [n, src] : which) {
        if (!which.count(n - 1)) {
            for (const auto& k : src)
                if (!a.d(sv_sparse(kernel[k])).empty())
                    throw std::invalid_argument("kernel_as_complex: d leaves the kernel span");
            continue;
        }
        const auto& dst = which.at(n - 1);
        RatMatrix cols(a.dim(), dst.size());
        for (std::size_t c = 0; c < dst.size(); ++c)
            for (std::size_t r = 0; r < a.dim(); ++r) cols.at(r, c) = kernel[dst[c]][r];
        RatMatrix m(dst.size(), src.size());
        for (std::size_t c = 0; c < src.size(); ++c) {
            Vec dv = sv_dense(a.d(sv_sparse(kernel[src[c]])), a.dim());
            auto x = solve(cols, dv);
            if (!x) throw std::invalid_argument("kernel_as_complex: d leaves the kernel span");
            for (std::size_t r = 0; r < dst.size(); ++r) m.at(r, c) = (*x)[r];
        }
        bd[n] = m;
    }
    return chain_complex(ls, bd);
}

}  // namespace detail

inline SurjectionInfo classify_surjection(const CdgaMap& f) {
    SurjectionInfo info;
    if (!f.is_surjective()) {
        info.kind = SurjectionKind::not_surjective;
        return info;
    }
    info.kernel_flat = detail::kernel_flat_basis(f);
    info.kernel_complex = detail::kernel_as_complex(f.source, info.kernel_flat);
    bool small = true;
    for (const Vec& k : info.kernel_flat) {
        for (std::size_t i = 0; i < f.source.dim() && small; ++i)
            if (!f.source.product(SVec{{i, Rat(1)}}, sv_sparse(k)).empty()) small = false;
        if (!small) break;
    }
    if (!small) {
        info.kind = SurjectionKind::general;
        return info;
    }
    info.kind = is_acyclic(info.kernel_complex) ? SurjectionKind::acyclic_small
                                                : SurjectionKind::small;
    return info;
}

// Factor a surjection into small extensions along I_k = m(A)^k * I:
//   A = A/I_r -> A/I_{r-1} -> ... -> A/I_1 -> B.
// Returns the consecutive maps in composition order (first applied first);
// every map in the list is a small extension and the composite equals f.
inline std::vector<CdgaMap> factor_surjection(const CdgaMap& f) {
    SurjectionInfo info = classify_surjection(f);
    if (info.kind == SurjectionKind::not_surjective)
        throw std::invalid_argument("factor_surjection: map is not surjective");
    if (info.is_small()) return {f};
    std::size_t n = f.source.dim();
    // I_k spans, k = 1, 2, ... until zero.
    std::vector<Span> Ik;
    {
        Span I0(n);
        for (const Vec& k : info.kernel_flat) I0.add(k);
        Span cur = I0;
        while (true) {
            Span next(n);
            for (std::size_t i = 0; i < n; ++i)
                for (const Vec& row : cur.rows()) {
                    SVec p = f.source.product(SVec{{i, Rat(1)}}, sv_sparse(row));
                    if (!p.empty()) next.add(sv_dense(p, n));
                }
            if (next.dim() == 0) break;
            Ik.push_back(next);
            cur = Ik.back();
        }
    }
    // Quotients A/I_k for k = r-1 down to 1 (A/I_r = A since I_r = 0).
    std::vector<CdgaMap> chain;
    ArtinCdga current = f.source;
    CdgaMap from_A = identity_cdga_map(f.source);  // A -> current
    for (std::size_t step = Ik.size(); step >= 1; --step) {
        // Push the ideal I_step through the quotients taken so far.
        Span J(current.dim());
        for (const Vec& row : Ik[step - 1].rows()) {
            SVec img = from_A.apply(sv_sparse(row));
            if (!img.empty()) J.add(sv_dense(img, current.dim()));
        }
        ArtinQuotient q = quotient_by_ideal(current, J);
        chain.push_back(q.projection);
        from_A = compose(q.projection, from_A);
        current = q.algebra;
    }
    // Last leg: induced map current -> B (well-defined since I_0 contains all J's... f kills I).
    CdgaMap last{current, f.target, {}};
    // current basis elements are labelled source basis elements; recover their
    // flat index in A by label.
    for (std::size_t i = 0; i < current.dim(); ++i) {
        SVec img = f.apply(f.source.from_label(current.label[i]));
        if (!img.empty()) last.images[i] = img;
    }
    last.validate();
    chain.push_back(last);
    return chain;
}

// ----- cone extension -----

// Given a small extension f : A -> B with kernel I, the cone extension is
//   tilde = A (+) I[1],  d(s_x) = x - s_{dx},  (s-part)^2 = 0 = m(A) * s,
// with phi : tilde -> B (extend f by 0) an acyclic small extension, and
// rho : tilde -> k (+) I[1] the projection killing m(A). Then
// A = tilde x_{rho, k(+)I[1]} k recovers A as a fiber product.
struct ConeExtension {
    ArtinCdga tilde;
    CdgaMap phi;            // tilde -> B, acyclic small
    ArtinCdga shifted;      // k (+) I[1], square-zero, d(s_x) = -s_{dx}
    CdgaMap rho;            // tilde -> shifted
    std::vector<Vec> kernel_flat;  // basis of I used for the s_j generators
};

inline ConeExtension cone_extension(const CdgaMap& f) {
    SurjectionInfo info = classify_surjection(f);
    if (!info.is_small()) throw std::invalid_argument("cone_extension: input must be small");
    const ArtinCdga& A = f.source;
    std::size_t n = A.dim(), m = info.kernel_flat.size();
    ConeExtension out;
    out.kernel_flat = info.kernel_flat;

    // d of kernel vectors in the kernel basis.
    RatMatrix cols(n, m);
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t r = 0; r < n; ++r) cols.at(r, c) = info.kernel_flat[c][r];
    std::vector<SVec> d_in_kernel(m);  // index: kernel vector -> SVec over kernel indices
    for (std::size_t k = 0; k < m; ++k) {
        Vec dv = sv_dense(A.d(sv_sparse(info.kernel_flat[k])), n);
        auto x = solve(cols, dv);
        if (!x) throw std::invalid_argument("cone_extension: d leaves the kernel");
        for (std::size_t r = 0; r < m; ++r)
            if ((*x)[r] != 0) d_in_kernel[k][r] = (*x)[r];
    }

    out.tilde.name = "cone(" + A.name + ")";
    out.tilde.label = A.label;
    out.tilde.deg = A.deg;
    for (std::size_t k = 0; k < m; ++k) {
        out.tilde.label.push_back("s" + std::to_string(k));
        out.tilde.deg.push_back(A.degree_of(sv_sparse(info.kernel_flat[k])) + 1);
    }
    out.tilde.mult = A.mult;  // all products with an s factor vanish
    out.tilde.diff = A.diff;
    for (std::size_t k = 0; k < m; ++k) {
        SVec ds = sv_sparse(info.kernel_flat[k]);  // the A-part: x
        for (const auto& [j, x] : d_in_kernel[k]) sv_add_term(ds, n + j, -x);
        if (!ds.empty()) out.tilde.diff[n + k] = ds;
    }
    out.tilde.finalize();

    out.phi = CdgaMap{out.tilde, f.target, {}};
    for (const auto& [i, v] : f.images) out.phi.images[i] = v;

    out.shifted.name = "k(+)I[1]";
    for (std::size_t k = 0; k < m; ++k) {
        out.shifted.label.push_back("s" + std::to_string(k));
        out.shifted.deg.push_back(A.degree_of(sv_sparse(info.kernel_flat[k])) + 1);
    }
    for (std::size_t k = 0; k < m; ++k) {
        SVec ds;
        for (const auto& [j, x] : d_in_kernel[k]) sv_add_term(ds, j, -x);
        if (!ds.empty()) out.shifted.diff[k] = ds;
    }
    out.shifted.finalize();

    out.rho = CdgaMap{out.tilde, out.shifted, {}};
    for (std::size_t k = 0; k < m; ++k) out.rho.images[n + k] = SVec{{k, Rat(1)}};
    return out;
}

// ----- fiber products -----

struct FiberProduct {
    ArtinCdga algebra;
    CdgaMap to_first, to_second;
    // flat embedding m(P) -> m(A) (+) m(C); column k is the k-th basis vector
    RatMatrix embedding;
};

inline FiberProduct fiber_product(const CdgaMap& f, const CdgaMap& g) {
    if (f.target.dim() != g.target.dim() || f.target.label != g.target.label)
        throw std::invalid_argument("fiber_product: targets differ");
    const ArtinCdga& A = f.source;
    const ArtinCdga& C = g.source;
    std::size_t nA = A.dim(), nC = C.dim(), nB = f.target.dim();
    FiberProduct out;
    out.algebra.name = A.name + " x_B " + C.name;

    std::set<int> degs(A.deg.begin(), A.deg.end());
    degs.insert(C.deg.begin(), C.deg.end());
    RatMatrix MF = f.matrix(), MG = g.matrix();
    std::vector<Vec> basis;  // flat vectors in Q^{nA+nC}
    for (int nn : degs) {
        auto sa = A.indices_in_degree(nn);
        auto sc = C.indices_in_degree(nn);
        auto tb = f.target.indices_in_degree(nn);
        RatMatrix block(tb.size(), sa.size() + sc.size());
        for (std::size_t c = 0; c < sa.size(); ++c)
            for (std::size_t r = 0; r < tb.size(); ++r) block.at(r, c) = MF.at(tb[r], sa[c]);
        for (std::size_t c = 0; c < sc.size(); ++c)
            for (std::size_t r = 0; r < tb.size(); ++r)
                block.at(r, sa.size() + c) = -MG.at(tb[r], sc[c]);
        for (const Vec& k : kernel_basis(block)) {
            Vec flat = zero_vec(nA + nC);
            for (std::size_t c = 0; c < sa.size(); ++c) flat[sa[c]] = k[c];
            for (std::size_t c = 0; c < sc.size(); ++c) flat[nA + sc[c]] = k[sa.size() + c];
            out.algebra.label.push_back("w" + std::to_string(basis.size()));
            out.algebra.deg.push_back(nn);
            basis.push_back(std::move(flat));
        }
    }
    out.embedding = RatMatrix(nA + nC, basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c)
        for (std::size_t r = 0; r < nA + nC; ++r) out.embedding.at(r, c) = basis[c][r];

    auto split = [&](const Vec& v) {
        SVec a, c;
        for (std::size_t i = 0; i < nA; ++i)
            if (v[i] != 0) a[i] = v[i];
        for (std::size_t i = 0; i < nC; ++i)
            if (v[nA + i] != 0) c[i] = v[nA + i];
        return std::pair<SVec, SVec>{a, c};
    };
    auto express = [&](const SVec& a, const SVec& c) {
        Vec flat = zero_vec(nA + nC);
        for (const auto& [i, x] : a) flat[i] = x;
        for (const auto& [i, x] : c) flat[nA + i] = x;
        auto x = solve(out.embedding, flat);
        if (!x) throw std::logic_error("fiber_product: element escapes the fiber product");
        return sv_sparse(*x);
    };
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto [ai, ci] = split(basis[i]);
        SVec dv = express(A.d(ai), C.d(ci));
        if (!dv.empty()) out.algebra.diff[i] = dv;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            auto [aj, cj] = split(basis[j]);
            SVec pv = express(A.product(ai, aj), C.product(ci, cj));
            if (!pv.empty()) out.algebra.mult[{i, j}] = pv;
        }
    }
    out.algebra.finalize();

    out.to_first = CdgaMap{out.algebra, A, {}};
    out.to_second = CdgaMap{out.algebra, C, {}};
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto [ai, ci] = split(basis[i]);
        if (!ai.empty()) out.to_first.images[i] = ai;
        if (!ci.empty()) out.to_second.images[i] = ci;
    }
    return out;
}

// Universal property: the unique map D -> P through which a compatible pair
// (p : D -> A, q : D -> C) factors. Throws if the pair is incompatible.
inline CdgaMap fiber_product_mediator(const FiberProduct& fp, const CdgaMap& p,
                                      const CdgaMap& q) {
    std::size_t nA = fp.to_first.target.dim(), nC = fp.to_second.target.dim();
    CdgaMap out{p.source, fp.algebra, {}};
    for (std::size_t i = 0; i < p.source.dim(); ++i) {
        SVec a = p.apply(SVec{{i, Rat(1)}});
        SVec c = q.apply(SVec{{i, Rat(1)}});
        Vec flat = zero_vec(nA + nC);
        for (const auto& [j, x] : a) flat[j] = x;
        for (const auto& [j, x] : c) flat[nA + j] = x;
        auto x = solve(fp.embedding, flat);
        if (!x) throw std::invalid_argument("fiber_product_mediator: pair does not land in P");
        SVec v = sv_sparse(*x);
        if (!v.empty()) out.images[i] = v;
    }
    return out;
}

}  // namespace dgdef

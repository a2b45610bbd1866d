#pragma once

// Bigraded Artinian ideals (cochain direction i >= 0, chain direction
// j >= 0) with two commuting differentials, their total complex as an
// ordinary Artinian cdga, and the cosimplicial denormalization carrying the
// Eilenberg-Zilber shuffle product.
//
// Sign conventions (pinned by the validators below):
//   a b = (-1)^{i_a i_b + j_a j_b} b a
//   d_h(a b) = d_h(a) b + (-1)^{i_a} a d_h(b),   d_h : (i,j) -> (i+1,j)
//   d_v(a b) = d_v(a) b + (-1)^{j_a} a d_v(b),   d_v : (i,j) -> (i,j-1)
//   d_h d_v = d_v d_h
// Tot: chain degree n = j - i, D = d_h + (-1)^i d_v, product twisted by
// (-1)^{j_a i_b}; these make Tot a valid Artinian cdga.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dgdef/artin.hpp"
#include "dgdef/svec.hpp"

namespace dgdef {

struct BigradedArtin {
    std::string name;
    std::vector<std::string> label;
    std::vector<std::pair<int, int>> deg;  // (cochain i >= 0, chain j >= 0)
    std::map<std::size_t, SVec> dh_map, dv_map;
    std::map<std::pair<std::size_t, std::size_t>, SVec> mult;

    std::size_t dim() const { return label.size(); }

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

    SVec dh(const SVec& a) const { return apply_map(dh_map, a); }
    SVec dv(const SVec& a) const { return apply_map(dv_map, a); }

    SVec from_label(const std::string& l) const {
        for (std::size_t i = 0; i < label.size(); ++i)
            if (label[i] == l) return SVec{{i, Rat(1)}};
        throw std::invalid_argument("unknown basis label: " + l);
    }

    void validate() const {
        std::size_t n = dim();
        if (deg.size() != n) throw std::invalid_argument("BigradedArtin: deg/label mismatch");
        for (const auto& [i, j] : deg)
            if (i < 0 || j < 0)
                throw std::invalid_argument("BigradedArtin: degrees must be nonnegative");
        check_degrees(dh_map, 1, 0, "d_h");
        check_degrees(dv_map, 0, -1, "d_v");
        for (const auto& [ij, v] : mult) {
            auto [i, j] = ij;
            for (const auto& [k, x] : v) {
                (void)x;
                if (deg[k].first != deg[i].first + deg[j].first ||
                    deg[k].second != deg[i].second + deg[j].second)
                    throw std::invalid_argument("BigradedArtin: product degree mismatch");
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            SVec ei{{i, Rat(1)}};
            if (!dh(dh(ei)).empty()) throw std::invalid_argument("BigradedArtin: d_h^2 != 0");
            if (!dv(dv(ei)).empty()) throw std::invalid_argument("BigradedArtin: d_v^2 != 0");
            SVec comm = dh(dv(ei));
            sv_add(comm, Rat(-1), dv(dh(ei)));
            if (!comm.empty())
                throw std::invalid_argument("BigradedArtin: d_h and d_v do not commute");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                SVec ei{{i, Rat(1)}}, ej{{j, Rat(1)}};
                SVec comm = basis_product(i, j);
                Rat s = parity_sign(static_cast<long>(deg[i].first) * deg[j].first +
                                    static_cast<long>(deg[i].second) * deg[j].second);
                sv_add(comm, -s, basis_product(j, i));
                if (!comm.empty())
                    throw std::invalid_argument("BigradedArtin: not bigraded-commutative at " +
                                                label[i] + "," + label[j]);
                SVec lh = dh(basis_product(i, j));
                sv_add(lh, Rat(-1), product(dh(ei), ej));
                sv_add(lh, -parity_sign(deg[i].first), product(ei, dh(ej)));
                if (!lh.empty())
                    throw std::invalid_argument("BigradedArtin: d_h Leibniz fails at " +
                                                label[i] + "," + label[j]);
                SVec lv = dv(basis_product(i, j));
                sv_add(lv, Rat(-1), product(dv(ei), ej));
                sv_add(lv, -parity_sign(deg[i].second), product(ei, dv(ej)));
                if (!lv.empty())
                    throw std::invalid_argument("BigradedArtin: d_v Leibniz fails at " +
                                                label[i] + "," + label[j]);
                for (std::size_t k = 0; k < n; ++k) {
                    SVec as = product(basis_product(i, j), SVec{{k, Rat(1)}});
                    sv_add(as, Rat(-1), product(ei, basis_product(j, k)));
                    if (!as.empty())
                        throw std::invalid_argument("BigradedArtin: associativity fails");
                }
            }
        // nilpotency: powers of the ideal must vanish
        Span power(n);
        for (std::size_t i = 0; i < n; ++i) power.add(sv_dense(SVec{{i, Rat(1)}}, n));
        for (std::size_t k = 0; k <= n; ++k) {
            if (power.dim() == 0) return;
            Span next(n);
            for (const Vec& row : power.rows())
                for (std::size_t i = 0; i < n; ++i)
                    next.add(sv_dense(product(sv_sparse(row), SVec{{i, Rat(1)}}), n));
            power = std::move(next);
        }
        throw std::invalid_argument("BigradedArtin: ideal is not nilpotent");
    }

  private:
    static SVec apply_map(const std::map<std::size_t, SVec>& m, const SVec& a) {
        SVec out;
        for (const auto& [i, x] : a) {
            auto it = m.find(i);
            if (it != m.end()) sv_add(out, x, it->second);
        }
        return out;
    }

    void check_degrees(const std::map<std::size_t, SVec>& m, int di, int dj,
                       const char* what) const {
        for (const auto& [i, v] : m)
            for (const auto& [j, x] : v) {
                (void)x;
                if (deg[j].first != deg[i].first + di || deg[j].second != deg[i].second + dj)
                    throw std::invalid_argument(std::string("BigradedArtin: ") + what +
                                                " degree mismatch");
            }
    }
};

struct BigradedMap {
    BigradedArtin source, target;
    std::map<std::size_t, SVec> images;

    SVec apply(const SVec& a) const {
        SVec out;
        for (const auto& [i, x] : a) {
            auto it = images.find(i);
            if (it != images.end()) sv_add(out, x, it->second);
        }
        return out;
    }

    void validate() const {
        for (const auto& [i, v] : images)
            for (const auto& [j, x] : v) {
                (void)x;
                if (target.deg[j] != source.deg[i])
                    throw std::invalid_argument("BigradedMap: not bidegree-preserving");
            }
        for (std::size_t i = 0; i < source.dim(); ++i) {
            SVec ei{{i, Rat(1)}};
            SVec ch = apply(source.dh(ei));
            sv_add(ch, Rat(-1), target.dh(apply(ei)));
            if (!ch.empty()) throw std::invalid_argument("BigradedMap: d_h not preserved");
            SVec cv = apply(source.dv(ei));
            sv_add(cv, Rat(-1), target.dv(apply(ei)));
            if (!cv.empty()) throw std::invalid_argument("BigradedMap: d_v not preserved");
            for (std::size_t j = 0; j < source.dim(); ++j) {
                SVec mu = apply(source.basis_product(i, j));
                sv_add(mu, Rat(-1), target.product(apply(ei), apply(SVec{{j, Rat(1)}})));
                if (!mu.empty()) throw std::invalid_argument("BigradedMap: not multiplicative");
            }
        }
    }
};

// Tot: chain degree j - i, differential d_h + (-1)^i d_v, product with the
// (-1)^{j_a i_b} twist. Chain degrees may be negative.
inline ArtinCdga tot_bigraded_artin(const BigradedArtin& B) {
    ArtinCdga out;
    out.name = "Tot(" + B.name + ")";
    out.label = B.label;
    for (const auto& [i, j] : B.deg) out.deg.push_back(j - i);
    for (std::size_t p = 0; p < B.dim(); ++p) {
        SVec ep{{p, Rat(1)}};
        SVec d = B.dh(ep);
        sv_add(d, parity_sign(B.deg[p].first), B.dv(ep));
        if (!d.empty()) out.diff[p] = std::move(d);
    }
    for (std::size_t p = 0; p < B.dim(); ++p)
        for (std::size_t q = 0; q < B.dim(); ++q) {
            SVec v = sv_scale(B.basis_product(p, q),
                              parity_sign(static_cast<long>(B.deg[p].second) *
                                          B.deg[q].first));
            if (!v.empty()) out.mult[{p, q}] = std::move(v);
        }
    out.finalize();
    out.validate();
    return out;
}

inline CdgaMap tot_map(const BigradedMap& f) {
    CdgaMap out{tot_bigraded_artin(f.source), tot_bigraded_artin(f.target), f.images};
    out.validate();
    return out;
}

// ----- denormalization -----

struct CosimplicialArtin {
    BigradedArtin source;
    std::vector<ArtinCdga> level;  // 0..depth
    // per level n: (degenerate set J subset of {1..n}, source basis index)
    std::vector<std::vector<std::pair<std::vector<unsigned>, std::size_t>>> basis;
    std::vector<std::vector<CdgaMap>> coface;        // coface[n][i]: level n-1 -> level n
    std::vector<std::vector<CdgaMap>> codegeneracy;  // codegeneracy[n][i]: level n+1 -> n

    unsigned depth() const { return static_cast<unsigned>(level.size()) - 1; }

    std::size_t pair_index(unsigned n, const std::vector<unsigned>& J, std::size_t b) const {
        for (std::size_t k = 0; k < basis[n].size(); ++k)
            if (basis[n][k] == std::make_pair(J, b)) return k;
        throw std::invalid_argument("pair_index: no such basis pair");
    }
};

namespace detail {

// values of the surjection [n] ->> [k] whose degenerate positions are J
inline std::vector<int> surjection_values(unsigned n, const std::vector<unsigned>& J) {
    std::vector<int> v(n + 1, 0);
    for (unsigned i = 1; i <= n; ++i)
        v[i] = v[i - 1] + (std::find(J.begin(), J.end(), i) == J.end() ? 1 : 0);
    return v;
}

// structure map D(alpha): level m -> level n for monotone alpha: [m] -> [n]
inline CdgaMap denorm_structure_map(const CosimplicialArtin& D, unsigned m, unsigned n,
                                    const std::vector<int>& alpha) {
    const BigradedArtin& B = D.source;
    CdgaMap out{D.level[m], D.level[n], {}};
    for (std::size_t tk = 0; tk < D.basis[n].size(); ++tk) {
        const auto& [Jt, bt] = D.basis[n][tk];
        std::vector<int> theta = surjection_values(n, Jt);
        // compose with alpha and factor epi-mono
        std::vector<int> comp(m + 1);
        for (unsigned i = 0; i <= m; ++i) comp[i] = theta[alpha[i]];
        std::vector<int> image;
        for (int v : comp)
            if (image.empty() || image.back() != v) {
                if (!image.empty() && image.back() > v)
                    throw std::logic_error("denorm_structure_map: alpha not monotone");
                image.push_back(v);
            }
        std::vector<unsigned> Js;
        for (unsigned i = 1; i <= m; ++i)
            if (comp[i] == comp[i - 1]) Js.push_back(i);
        int kprime = theta[n];
        int k = static_cast<int>(image.size()) - 1;
        bool initial = true;  // image == {0..k}?
        for (int r = 0; r <= k; ++r)
            if (image[r] != r) initial = false;
        if (initial && k == kprime) {
            // identity mono: (Js, bt) -> (Jt, bt)
            std::size_t src = D.pair_index(m, Js, bt);
            sv_add_term(out.images[src], tk, Rat(1));
        } else if (initial && k == kprime - 1) {
            // top coface: acts by d_h on the coefficient
            for (std::size_t sk = 0; sk < D.basis[m].size(); ++sk) {
                const auto& [Jsrc, bs] = D.basis[m][sk];
                if (Jsrc != Js) continue;
                SVec dh = B.dh(SVec{{bs, Rat(1)}});
                auto it = dh.find(bt);
                if (it != dh.end()) sv_add_term(out.images[sk], tk, it->second);
            }
        }
        // all other monos act by zero
    }
    for (auto it = out.images.begin(); it != out.images.end();)
        it = it->second.empty() ? out.images.erase(it) : std::next(it);
    return out;
}

}  // namespace detail

// Dold-Kan denormalization in the cochain direction: level n is spanned by
// pairs (J, b) with J subset of {1..n} the degenerate positions and b of
// cochain degree n - |J|; the differential is d_v, and the multiplication is
// the shuffle product
//   (J1, x)(J2, y) = (-1)^{inv} (J1 cap J2, x y)
// when, after deleting the common positions, the renumbered sets J1', J2'
// partition {1..n'}, and zero otherwise; inv counts the inverted pairs of
// the shuffle. Every level is validated as an ArtinCdga and the cosimplicial
// identities are checked exhaustively up to the requested depth.
inline CosimplicialArtin denormalize(const BigradedArtin& B, unsigned depth = 3) {
    B.validate();
    CosimplicialArtin D;
    D.source = B;
    for (unsigned n = 0; n <= depth; ++n) {
        std::vector<std::pair<std::vector<unsigned>, std::size_t>> basis;
        // subsets of {1..n}, by size then lexicographic
        std::vector<std::vector<unsigned>> subsets{{}};
        for (unsigned i = 1; i <= n; ++i) {
            std::size_t sz = subsets.size();
            for (std::size_t s = 0; s < sz; ++s) {
                auto J = subsets[s];
                J.push_back(i);
                subsets.push_back(std::move(J));
            }
        }
        std::sort(subsets.begin(), subsets.end(),
                  [](const auto& a, const auto& b) {
                      return a.size() != b.size() ? a.size() < b.size() : a < b;
                  });
        ArtinCdga lvl;
        lvl.name = "D" + std::to_string(n) + "(" + B.name + ")";
        for (const auto& J : subsets)
            for (std::size_t b = 0; b < B.dim(); ++b) {
                if (B.deg[b].first != static_cast<int>(n - J.size())) continue;
                std::string l = B.label[b];
                if (!J.empty()) {
                    l += "@";
                    for (unsigned i : J) l += std::to_string(i);
                }
                basis.emplace_back(J, b);
                lvl.label.push_back(l);
                lvl.deg.push_back(B.deg[b].second);
            }
        for (std::size_t k = 0; k < basis.size(); ++k) {
            SVec dv = B.dv(SVec{{basis[k].second, Rat(1)}});
            SVec img;
            for (const auto& [b2, x] : dv) {
                for (std::size_t k2 = 0; k2 < basis.size(); ++k2)
                    if (basis[k2].first == basis[k].first && basis[k2].second == b2)
                        sv_add_term(img, k2, x);
            }
            if (!img.empty()) lvl.diff[k] = std::move(img);
        }
        for (std::size_t p = 0; p < basis.size(); ++p)
            for (std::size_t q = 0; q < basis.size(); ++q) {
                const auto& [J1, x] = basis[p];
                const auto& [J2, y] = basis[q];
                std::vector<unsigned> J0;
                std::set_intersection(J1.begin(), J1.end(), J2.begin(), J2.end(),
                                      std::back_inserter(J0));
                // renumber {1..n} minus J0 and check the partition condition
                std::map<unsigned, unsigned> renum;
                unsigned next = 1;
                for (unsigned i = 1; i <= n; ++i)
                    if (std::find(J0.begin(), J0.end(), i) == J0.end()) renum[i] = next++;
                std::vector<unsigned> R1, R2;
                for (unsigned i : J1)
                    if (std::find(J0.begin(), J0.end(), i) == J0.end())
                        R1.push_back(renum.at(i));
                for (unsigned i : J2)
                    if (std::find(J0.begin(), J0.end(), i) == J0.end())
                        R2.push_back(renum.at(i));
                std::set<unsigned> uni(R1.begin(), R1.end());
                uni.insert(R2.begin(), R2.end());
                if (R1.size() + R2.size() != next - 1 || uni.size() != next - 1) continue;
                long inv = 0;
                for (unsigned a : R1)
                    for (unsigned b : R2)
                        if (a > b) ++inv;
                SVec prod = B.basis_product(x, y);
                SVec img;
                for (const auto& [b2, c] : prod) {
                    for (std::size_t k2 = 0; k2 < basis.size(); ++k2)
                        if (basis[k2].first == J0 && basis[k2].second == b2)
                            sv_add_term(img, k2, c * parity_sign(inv));
                }
                if (!img.empty()) lvl.mult[{p, q}] = std::move(img);
            }
        lvl.finalize();
        lvl.validate();
        D.level.push_back(std::move(lvl));
        D.basis.push_back(std::move(basis));
    }

    D.coface.resize(depth + 1);
    D.codegeneracy.resize(depth);
    for (unsigned n = 1; n <= depth; ++n)
        for (unsigned i = 0; i <= n; ++i) {
            std::vector<int> delta(n);
            for (unsigned j = 0; j < n; ++j) delta[j] = (j < i) ? static_cast<int>(j) : j + 1;
            CdgaMap f = detail::denorm_structure_map(D, n - 1, n, delta);
            f.validate();
            D.coface[n].push_back(std::move(f));
        }
    for (unsigned n = 0; n + 1 <= depth; ++n)
        for (unsigned i = 0; i <= n; ++i) {
            std::vector<int> sigma(n + 2);
            for (unsigned j = 0; j <= n + 1; ++j)
                sigma[j] = (j <= i) ? static_cast<int>(j) : j - 1;
            CdgaMap f = detail::denorm_structure_map(D, n + 1, n, sigma);
            f.validate();
            D.codegeneracy[n].push_back(std::move(f));
        }

    // cosimplicial identities, exhaustively up to the depth
    auto eq = [](const CdgaMap& a, const CdgaMap& b) { return a.matrix() == b.matrix(); };
    for (unsigned n = 2; n <= depth; ++n)
        for (unsigned j = 1; j <= n; ++j)
            for (unsigned i = 0; i < j; ++i)
                if (!eq(compose(D.coface[n][j], D.coface[n - 1][i]),
                        compose(D.coface[n][i], D.coface[n - 1][j - 1])))
                    throw std::logic_error("denormalize: coface identity fails");
    for (unsigned n = 0; n + 2 <= depth; ++n)
        for (unsigned j = 0; j <= n; ++j)
            for (unsigned i = 0; i <= j; ++i)
                if (!eq(compose(D.codegeneracy[n][i], D.codegeneracy[n + 1][j + 1]),
                        compose(D.codegeneracy[n][j], D.codegeneracy[n + 1][i])))
                    throw std::logic_error("denormalize: codegeneracy identity fails");
    for (unsigned n = 0; n + 1 <= depth; ++n)
        for (unsigned j = 0; j <= n; ++j)
            for (unsigned i = 0; i <= n + 1; ++i) {
                CdgaMap lhs = compose(D.codegeneracy[n][j], D.coface[n + 1][i]);
                bool ok;
                if (i == j || i == j + 1) {
                    ok = lhs.matrix() == identity_cdga_map(D.level[n]).matrix();
                } else if (i < j) {
                    ok = n >= 1 && eq(lhs, compose(D.coface[n][i], D.codegeneracy[n - 1][j - 1]));
                } else {
                    ok = n >= 1 && eq(lhs, compose(D.coface[n][i - 1], D.codegeneracy[n - 1][j]));
                }
                if (!ok) throw std::logic_error("denormalize: mixed identity fails");
            }
    return D;
}

// levelwise maps induced by a map of bigraded Artinians
inline std::vector<CdgaMap> denormalize_map(const BigradedMap& f, const CosimplicialArtin& DA,
                                            const CosimplicialArtin& DB) {
    f.validate();
    std::vector<CdgaMap> out;
    for (unsigned n = 0; n <= std::min(DA.depth(), DB.depth()); ++n) {
        CdgaMap g{DA.level[n], DB.level[n], {}};
        for (std::size_t k = 0; k < DA.basis[n].size(); ++k) {
            const auto& [J, b] = DA.basis[n][k];
            SVec img;
            for (const auto& [b2, x] : f.apply(SVec{{b, Rat(1)}}))
                sv_add_term(img, DB.pair_index(n, J, b2), x);
            if (!img.empty()) g.images[k] = std::move(img);
        }
        g.validate();
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace dgdef

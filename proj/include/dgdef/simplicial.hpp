#pragma once

// Polynomial de Rham forms on simplices, Maurer-Cartan cells over them,
// gauge one-simplices, and homotopy groups in the square-zero case.
//
// Omega(Delta^n) = Q[t_1..t_n, dt_1..dt_n] with t_0 = 1 - sum t_i and
// dt_0 = -sum dt_i eliminated. Coordinates are 0-based internally: index j
// stands for t_{j+1}. A form is a sum of terms (exponent vector, ascending
// dt index set) with exact rational coefficients; dt_i dt_j = -dt_j dt_i and
// dt_i^2 = 0 are built into the term arithmetic.
//
// Face i substitutes t_i = 0 (with t_0 = 0 expressed through the eliminated
// coordinate when i = 0); degeneracy i collapses t_i into t_i + t_{i+1}.
// Both are algebra maps, so the simplicial identities only need checking on
// the coordinate generators.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dgdef/dgla.hpp"
#include "dgdef/mcgauge.hpp"
#include "dgdef/rational.hpp"
#include "dgdef/svec.hpp"

namespace dgdef {

struct DeRhamForm {
    // (t-exponents, size n; ascending 0-based dt indices) -> coefficient
    using Key = std::pair<std::vector<unsigned>, std::vector<unsigned>>;

    unsigned n = 0;
    std::map<Key, Rat> terms;

    static DeRhamForm zero(unsigned dim) { return DeRhamForm{dim, {}}; }

    static DeRhamForm constant(unsigned dim, const Rat& c) {
        DeRhamForm f{dim, {}};
        if (c != 0) f.terms[{std::vector<unsigned>(dim, 0), {}}] = c;
        return f;
    }

    static DeRhamForm coordinate(unsigned dim, unsigned i) {
        if (i >= dim) throw std::out_of_range("coordinate: index out of range");
        DeRhamForm f{dim, {}};
        std::vector<unsigned> e(dim, 0);
        e[i] = 1;
        f.terms[{e, {}}] = 1;
        return f;
    }

    bool is_zero() const { return terms.empty(); }

    bool operator==(const DeRhamForm& o) const { return n == o.n && terms == o.terms; }

    void add_term(const Key& k, const Rat& c) {
        if (c == 0) return;
        Rat& slot = terms[k];
        slot += c;
        if (slot == 0) terms.erase(k);
    }
};

inline DeRhamForm form_add(DeRhamForm a, const Rat& c, const DeRhamForm& b) {
    if (a.n != b.n) throw std::invalid_argument("form_add: dimension mismatch");
    for (const auto& [k, x] : b.terms) a.add_term(k, c * x);
    return a;
}

inline DeRhamForm form_scale(const DeRhamForm& a, const Rat& c) {
    DeRhamForm out{a.n, {}};
    if (c == 0) return out;
    for (const auto& [k, x] : a.terms) out.terms[k] = c * x;
    return out;
}

inline DeRhamForm deRham_product(const DeRhamForm& a, const DeRhamForm& b) {
    if (a.n != b.n) throw std::invalid_argument("deRham_product: dimension mismatch");
    DeRhamForm out{a.n, {}};
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
            const auto& [ea, sa] = ka;
            const auto& [eb, sb] = kb;
            // wedge of the dt parts: zero on repeats, sign counts inversions
            long inv = 0;
            bool dead = false;
            for (unsigned x : sa)
                for (unsigned y : sb) {
                    if (x == y) dead = true;
                    if (x > y) ++inv;
                }
            if (dead) continue;
            std::vector<unsigned> e(a.n);
            for (unsigned j = 0; j < a.n; ++j) e[j] = ea[j] + eb[j];
            std::vector<unsigned> s = sa;
            s.insert(s.end(), sb.begin(), sb.end());
            std::sort(s.begin(), s.end());
            out.add_term({e, s}, ca * cb * parity_sign(inv));
        }
    return out;
}

inline DeRhamForm deRham_differential(const DeRhamForm& a) {
    DeRhamForm out{a.n, {}};
    for (const auto& [k, c] : a.terms) {
        const auto& [e, s] = k;
        for (unsigned j = 0; j < a.n; ++j) {
            if (e[j] == 0) continue;
            bool dead = false;
            long before = 0;
            for (unsigned x : s) {
                if (x == j) dead = true;
                if (x < j) ++before;
            }
            if (dead) continue;
            std::vector<unsigned> e2 = e;
            --e2[j];
            std::vector<unsigned> s2 = s;
            s2.insert(s2.begin() + before, j);
            out.add_term({e2, s2}, c * Rat(e[j]) * parity_sign(before));
        }
    }
    return out;
}

// form degree of a homogeneous form; throws on mixed degrees
inline int form_degree(const DeRhamForm& a) {
    int d = -1;
    for (const auto& [k, c] : a.terms) {
        (void)c;
        int fd = static_cast<int>(k.second.size());
        if (d >= 0 && d != fd) throw std::invalid_argument("form_degree: inhomogeneous form");
        d = fd;
    }
    if (d < 0) throw std::invalid_argument("form_degree: zero form");
    return d;
}

namespace detail {

struct AffineImage {
    Rat c0;
    std::map<unsigned, Rat> lin;  // target coordinate -> coefficient
};

inline DeRhamForm substitute(const DeRhamForm& f, unsigned m,
                             const std::vector<AffineImage>& img) {
    DeRhamForm out = DeRhamForm::zero(m);
    for (const auto& [k, c] : f.terms) {
        const auto& [e, s] = k;
        DeRhamForm acc = DeRhamForm::constant(m, c);
        for (unsigned j = 0; j < f.n; ++j) {
            if (e[j] == 0) continue;
            DeRhamForm t = DeRhamForm::constant(m, img[j].c0);
            for (const auto& [tc, x] : img[j].lin)
                t = form_add(t, x, DeRhamForm::coordinate(m, tc));
            for (unsigned p = 0; p < e[j]; ++p) acc = deRham_product(acc, t);
        }
        for (unsigned j : s) {
            DeRhamForm dt = DeRhamForm::zero(m);
            for (const auto& [tc, x] : img[j].lin)
                dt = form_add(dt, x, deRham_differential(DeRhamForm::coordinate(m, tc)));
            acc = deRham_product(acc, dt);
        }
        out = form_add(std::move(out), Rat(1), acc);
    }
    return out;
}

}  // namespace detail

// restriction to the i-th face: Omega(Delta^n) -> Omega(Delta^{n-1})
inline DeRhamForm face(const DeRhamForm& f, unsigned i) {
    if (f.n == 0 || i > f.n) throw std::out_of_range("face: index out of range");
    unsigned m = f.n - 1;
    std::vector<detail::AffineImage> img(f.n);
    if (i == 0) {
        // t_1 -> s_0 = 1 - sum s_k; t_j -> s_{j-1} for j >= 2
        img[0].c0 = 1;
        for (unsigned k = 0; k < m; ++k) img[0].lin[k] = -1;
        for (unsigned j = 1; j < f.n; ++j) img[j].lin[j - 1] = 1;
    } else {
        for (unsigned j = 0; j < f.n; ++j) {
            unsigned j1 = j + 1;  // 1-based coordinate
            if (j1 < i) img[j].lin[j] = 1;
            else if (j1 == i) continue;  // t_i -> 0
            else img[j].lin[j - 1] = 1;
        }
    }
    return detail::substitute(f, m, img);
}

// pullback along the i-th collapse: Omega(Delta^n) -> Omega(Delta^{n+1})
inline DeRhamForm degeneracy(const DeRhamForm& f, unsigned i) {
    if (i > f.n) throw std::out_of_range("degeneracy: index out of range");
    unsigned m = f.n + 1;
    std::vector<detail::AffineImage> img(f.n);
    for (unsigned j = 0; j < f.n; ++j) {
        unsigned j1 = j + 1;
        if (j1 < i) {
            img[j].lin[j] = 1;
        } else if (j1 == i) {
            img[j].lin[j] = 1;
            img[j].lin[j + 1] = 1;  // t_i -> s_i + s_{i+1}
        } else {
            img[j].lin[j + 1] = 1;
        }
    }
    return detail::substitute(f, m, img);
}

// ----- Maurer-Cartan cells over a simplex -----

struct NerveCell {
    NilpotentDGLA host;
    unsigned n = 0;
    std::map<std::size_t, DeRhamForm> coeff;  // host basis index -> form on Delta^n

    DeRhamForm at(std::size_t p) const {
        auto it = coeff.find(p);
        return it == coeff.end() ? DeRhamForm::zero(n) : it->second;
    }

    void add(std::size_t p, const DeRhamForm& f) {
        auto it = coeff.find(p);
        if (it == coeff.end()) {
            if (!f.is_zero()) coeff[p] = f;
            return;
        }
        it->second = form_add(it->second, Rat(1), f);
        if (it->second.is_zero()) coeff.erase(it);
    }

    bool is_zero() const { return coeff.empty(); }
};

inline NerveCell constant_cell(const NilpotentDGLA& host, const SVec& omega, unsigned n = 0) {
    NerveCell c{host, n, {}};
    for (const auto& [p, x] : omega) c.coeff[p] = DeRhamForm::constant(n, x);
    return c;
}

// constant part of a Delta^0 cell as a plain element
inline SVec cell_to_element(const NerveCell& c) {
    if (c.n != 0) throw std::invalid_argument("cell_to_element: positive-dimensional cell");
    SVec out;
    for (const auto& [p, f] : c.coeff)
        for (const auto& [k, x] : f.terms) {
            (void)k;
            sv_add_term(out, p, x);
        }
    return out;
}

inline NerveCell face(const NerveCell& c, unsigned i) {
    NerveCell out{c.host, c.n - 1, {}};
    if (c.n == 0) throw std::out_of_range("face: zero-dimensional cell");
    for (const auto& [p, f] : c.coeff) {
        DeRhamForm g = face(f, i);
        if (!g.is_zero()) out.coeff[p] = std::move(g);
    }
    return out;
}

inline NerveCell degeneracy(const NerveCell& c, unsigned i) {
    NerveCell out{c.host, c.n + 1, {}};
    for (const auto& [p, f] : c.coeff) {
        DeRhamForm g = degeneracy(f, i);
        if (!g.is_zero()) out.coeff[p] = std::move(g);
    }
    return out;
}

// Residual of the Maurer-Cartan equation in Tot(N (x) Omega(Delta^n)):
//   d(u (x) f) = du (x) f + (-1)^{deg u} u (x) df
//   [u (x) f, v (x) g] = (-1)^{|f| deg v} [u,v] (x) f g
inline NerveCell simplex_mc_residual(const NerveCell& c) {
    const DGLA& N = c.host.lie;
    NerveCell out{c.host, c.n, {}};
    for (const auto& [p, f] : c.coeff) {
        for (const auto& [q, x] : N.d(SVec{{p, Rat(1)}})) out.add(q, form_scale(f, x));
        out.add(p, form_scale(deRham_differential(f), parity_sign(N.deg[p])));
    }
    for (const auto& [p, f] : c.coeff)
        for (const auto& [q, g] : c.coeff) {
            SVec br = N.basis_bracket(p, q);
            if (br.empty()) continue;
            // split f into homogeneous pieces for the Koszul sign
            for (const auto& [k, cf] : f.terms) {
                Rat s = parity_sign(static_cast<long>(k.second.size()) * N.deg[q]) * cf / 2;
                DeRhamForm piece{c.n, {{k, Rat(1)}}};
                DeRhamForm prod = deRham_product(piece, g);
                for (const auto& [r, x] : br) out.add(r, form_scale(prod, s * x));
            }
        }
    return out;
}

inline bool mc_check_on_simplex(const NerveCell& c) { return simplex_mc_residual(c).is_zero(); }

// The one-simplex connecting omega to its gauge transform: omega(t) - x dt,
// where omega(t) solves omega' = [x, omega(t)] - dx with omega(0) = omega
// (so omega(1) is exactly the adjoint-series gauge action). The minus sign on
// the dt-component is forced by the tensor sign conventions of the residual.
// Picard iteration terminates exactly because ad_x raises m-adic weight; the
// endpoints are asserted to be {omega, gauge_act(x, omega)}.
inline NerveCell gauge_one_simplex(const NilpotentDGLA& host, const SVec& omega, const SVec& x) {
    if (!is_mc(host, omega)) throw std::invalid_argument("gauge_one_simplex: omega is not MC");
    SVec dx = host.lie.d(x);
    // polynomial in t with SVec coefficients
    std::vector<SVec> cur{omega};
    std::size_t bound = host.nilpotency_index() + 2;
    for (std::size_t it = 0;; ++it) {
        if (it > bound) throw std::logic_error("gauge_one_simplex: flow did not terminate");
        std::vector<SVec> rhs;  // [x, cur(t)] - dx
        for (std::size_t k = 0; k < cur.size(); ++k) rhs.push_back(host.lie.br(x, cur[k]));
        if (rhs.empty()) rhs.push_back(SVec{});
        sv_add(rhs[0], Rat(-1), dx);
        std::vector<SVec> next{omega};
        for (std::size_t k = 0; k < rhs.size(); ++k) {
            if (rhs[k].empty()) continue;
            if (next.size() < k + 2) next.resize(k + 2);
            sv_add(next[k + 1], Rat(1) / Rat(static_cast<long>(k + 1)), rhs[k]);
        }
        while (!next.empty() && next.back().empty()) next.pop_back();
        if (next == cur) break;
        cur = std::move(next);
    }
    NerveCell cell{host, 1, {}};
    for (std::size_t k = 0; k < cur.size(); ++k)
        for (const auto& [p, c] : cur[k]) {
            DeRhamForm f{1, {{{std::vector<unsigned>{static_cast<unsigned>(k)}, {}}, c}}};
            cell.add(p, f);
        }
    for (const auto& [p, c] : x)
        cell.add(p, DeRhamForm{1, {{{std::vector<unsigned>{0}, {0}}, -c}}});
    if (!mc_check_on_simplex(cell))
        throw std::logic_error("gauge_one_simplex: flow output fails MC");
    if (cell_to_element(face(cell, 1)) != omega)
        throw std::logic_error("gauge_one_simplex: endpoint at t=0 is not omega");
    if (cell_to_element(face(cell, 0)) != gauge_act(host, x, omega))
        throw std::logic_error("gauge_one_simplex: endpoint at t=1 is not the gauge transform");
    return cell;
}

// pi_i of the nerve over square-zero coefficients: the extended DGLA is
// abelian, so the nerve is the Dold-Kan space of the complex Tot(L (x) m(A))
// shifted into degree 1, and pi_i = H^{1-i}.
inline std::size_t nerve_pi_square_zero(const DGLA& L, const ArtinCdga& A, unsigned i) {
    if (A.nilpotency_index() > 2)
        throw std::invalid_argument("nerve_pi_square_zero: coefficients are not square-zero");
    NilpotentDGLA host = coefficient_extension(L, A);
    return cohomology(host.lie.complex(), 1 - static_cast<int>(i)).dim;
}

}  // namespace dgdef

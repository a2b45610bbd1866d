#pragma once

// Word-length truncations of the two dualization functors between DGLAs and
// local Artinian cdgas, the transport bijections through the Maurer-Cartan
// set, and the weight-graded acyclicity check for the counit of the
// adjunction.
//
// bar_truncation(L, N): free graded-commutative algebra on generators x_u
// dual to a basis u of L, with x_u in chain degree deg(u) - 1, modulo words
// of length > N. The differential is the derivation dual to d_L + 1/2 [-,-]:
//   d(x_k) = -(-1)^{n_k} [ sum_i D_{ki} x_i
//                          + 1/2 sum_{ij} (-1)^{n_j (n_i - 1)} C^k_{ij} x_i x_j ]
// where d_L u_i = sum_k D_{ki} u_k, [u_i, u_j] = sum_k C^k_{ij} u_k and
// n_i = deg(u_i). The overall sign is pinned by three requirements: d^2 = 0,
// the transport roundtrips below are identities, and the tautological element
// sum_u u (x) x_u is Maurer-Cartan on the nose.
//
// cobar_truncation(A, N): free graded Lie algebra on generators x_a dual to a
// basis a of m(A), with x_a in cochain degree deg(a) + 1, modulo brackets of
// length > N (a Lie ideal preserved by d, so the quotient is a dg quotient).
//   d(x_c) = sum_a (-1)^{deg a} D_{ca} x_a
//            - 1/2 sum_{ab} (-1)^{(deg b + 1) deg a} M^c_{ab} [x_a, x_b]
// where D_{ca} = coefficient of c in d_A(a) and M^c_{ab} = coefficient of c
// in a*b. The free Lie algebra is realized inside the tensor algebra (the
// super case rules out Lyndon bases: [x,x] != 0 for odd x); a basis is chosen
// greedily from iterated brackets in a fixed deterministic order, so every
// basis element is an honest bracket expression with a readable label.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dgdef/artin.hpp"
#include "dgdef/complexes.hpp"
#include "dgdef/dgla.hpp"
#include "dgdef/matrix.hpp"
#include "dgdef/mcgauge.hpp"
#include "dgdef/svec.hpp"

namespace dgdef {

// ----- bar side -----

struct BarTruncation {
    DGLA source;
    unsigned order = 1;
    ArtinCdga algebra;
    // ideal basis index -> sorted multiset of source basis indices
    std::vector<std::vector<std::size_t>> words;
    std::map<std::vector<std::size_t>, std::size_t> index;

    std::size_t word_index(const std::vector<std::size_t>& w) const {
        auto it = index.find(w);
        if (it == index.end()) throw std::invalid_argument("word_index: no such word");
        return it->second;
    }
};

namespace detail {

// Product of two sorted words in a free graded-commutative algebra whose
// generator i has (chain) degree gdeg[i]. Returns the sorted word and the
// Koszul sign, or nullopt when an odd generator repeats.
inline std::optional<std::pair<std::vector<std::size_t>, Rat>> merge_word(
    const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
    const std::vector<int>& gdeg) {
    // parity of the tail a[i..] for the crossing signs
    std::vector<long> tail(a.size() + 1, 0);
    for (std::size_t i = a.size(); i-- > 0;)
        tail[i] = tail[i + 1] + ((gdeg[a[i]] % 2 + 2) % 2);
    std::vector<std::size_t> out;
    out.reserve(a.size() + b.size());
    Rat sign(1);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) {
            out.push_back(a[i++]);
        } else {
            sign *= parity_sign(static_cast<long>((gdeg[b[j]] % 2 + 2) % 2) * tail[i]);
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    for (std::size_t k = 0; k + 1 < out.size(); ++k)
        if (out[k] == out[k + 1] && (gdeg[out[k]] % 2 + 2) % 2 == 1) return std::nullopt;
    return std::make_pair(std::move(out), sign);
}

inline void enumerate_words(std::size_t n_gens, unsigned max_len, const std::vector<int>& gdeg,
                            std::vector<std::size_t>& cur, std::size_t from, unsigned len,
                            std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == len) {
        out.push_back(cur);
        return;
    }
    for (std::size_t g = from; g < n_gens; ++g) {
        if (!cur.empty() && cur.back() == g && (gdeg[g] % 2 + 2) % 2 == 1) continue;
        cur.push_back(g);
        enumerate_words(n_gens, max_len, gdeg, cur, g, len, out);
        cur.pop_back();
    }
}

}  // namespace detail

inline BarTruncation bar_truncation(const DGLA& L, unsigned N) {
    if (N < 1) throw std::invalid_argument("bar_truncation: order must be >= 1");
    BarTruncation out;
    out.source = L;
    out.order = N;
    const std::size_t nL = L.dim();
    std::vector<int> gdeg(nL);
    for (std::size_t i = 0; i < nL; ++i) gdeg[i] = L.deg[i] - 1;

    for (unsigned len = 1; len <= N; ++len) {
        std::vector<std::vector<std::size_t>> words;
        std::vector<std::size_t> cur;
        detail::enumerate_words(nL, N, gdeg, cur, 0, len, words);
        for (auto& w : words) {
            out.index[w] = out.words.size();
            out.words.push_back(std::move(w));
        }
    }

    ArtinCdga& A = out.algebra;
    A.name = "bar" + std::to_string(N) + "(" + L.name + ")";
    for (const auto& w : out.words) {
        std::string l;
        int d = 0;
        for (std::size_t g : w) {
            if (!l.empty()) l += "*";
            l += "x_" + L.label[g];
            d += gdeg[g];
        }
        A.label.push_back(l);
        A.deg.push_back(d);
    }

    for (std::size_t a = 0; a < out.words.size(); ++a)
        for (std::size_t b = 0; b < out.words.size(); ++b) {
            if (out.words[a].size() + out.words[b].size() > N) continue;
            auto m = detail::merge_word(out.words[a], out.words[b], gdeg);
            if (!m) continue;
            A.mult[{a, b}] = SVec{{out.index.at(m->first), m->second}};
        }

    // differential on generators, dual to d_L + 1/2 [-,-]
    std::vector<SVec> dgen(nL);
    for (std::size_t k = 0; k < nL; ++k) {
        Rat pref = -parity_sign(L.deg[k]);
        SVec dk;
        for (std::size_t i = 0; i < nL; ++i) {
            SVec di = L.d(SVec{{i, Rat(1)}});
            auto it = di.find(k);
            if (it != di.end()) sv_add_term(dk, out.index.at({i}), pref * it->second);
            for (std::size_t j = 0; j < nL; ++j) {
                SVec bij = L.basis_bracket(i, j);
                auto bt = bij.find(k);
                if (bt == bij.end()) continue;
                Rat c = pref * bt->second / 2 *
                        parity_sign(static_cast<long>(L.deg[j]) * (L.deg[i] - 1));
                auto m = detail::merge_word({i}, {j}, gdeg);
                if (!m || m->first.size() > N) continue;
                sv_add_term(dk, out.index.at(m->first), c * m->second);
            }
        }
        dgen[k] = std::move(dk);
    }

    // extend to words as a graded derivation
    for (std::size_t wi = 0; wi < out.words.size(); ++wi) {
        const auto& w = out.words[wi];
        SVec dw;
        long pref = 0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            std::vector<std::size_t> prefix(w.begin(), w.begin() + j);
            std::vector<std::size_t> suffix(w.begin() + j + 1, w.end());
            for (const auto& [ti, c] : dgen[w[j]]) {
                auto m1 = detail::merge_word(out.words[ti], suffix, gdeg);
                if (!m1 || prefix.size() + m1->first.size() > N) continue;
                auto m2 = detail::merge_word(prefix, m1->first, gdeg);
                if (!m2) continue;
                sv_add_term(dw, out.index.at(m2->first),
                            c * m1->second * m2->second * parity_sign(pref));
            }
            pref += gdeg[w[j]];
        }
        if (!dw.empty()) A.diff[wi] = std::move(dw);
    }

    A.finalize();
    A.validate();  // d^2 = 0 here encodes Jacobi + Leibniz of L
    return out;
}

// Quotient map killing words longer than to.order; a surjective cdga map.
inline CdgaMap bar_quotient(const BarTruncation& from, const BarTruncation& to) {
    if (from.order < to.order) throw std::invalid_argument("bar_quotient: wrong direction");
    if (from.source.label != to.source.label)
        throw std::invalid_argument("bar_quotient: different sources");
    CdgaMap out{from.algebra, to.algebra, {}};
    for (std::size_t i = 0; i < from.words.size(); ++i)
        if (from.words[i].size() <= to.order)
            out.images[i] = SVec{{to.word_index(from.words[i]), Rat(1)}};
    out.validate();
    return out;
}

// ----- cobar side -----

struct CobarTruncation {
    ArtinCdga source;
    unsigned order = 1;
    DGLA lie;
    std::vector<unsigned> blen;            // bracket length per basis element
    std::vector<std::size_t> gen_weight;   // total generator weight (see build)
    // {0, a, -1}: generator dual to source basis a; {1, i, j}: [b_i, b_j]
    std::vector<std::array<long, 3>> expr;
    // expansion in the tensor algebra: word of source basis indices -> coeff
    std::vector<std::map<std::vector<std::size_t>, Rat>> tensor;

    std::size_t generator_index(std::size_t a) const {
        for (std::size_t k = 0; k < expr.size(); ++k)
            if (expr[k][0] == 0 && expr[k][1] == static_cast<long>(a)) return k;
        throw std::invalid_argument("generator_index: generator not present");
    }
};

namespace detail {

using TMap = std::map<std::vector<std::size_t>, Rat>;

inline void tmap_add(TMap& dst, const std::vector<std::size_t>& w, const Rat& c) {
    if (c == 0) return;
    Rat& slot = dst[w];
    slot += c;
    if (slot == 0) dst.erase(w);
}

// Free graded Lie algebra on generators dual to m(A), truncated at bracket
// length N; gweight assigns each generator an auxiliary weight and brackets
// of total weight > wbound are pruned (used for the weight-graded counit
// pieces, where the pruned object is only a complex, not a dg quotient).
inline CobarTruncation build_cobar(const ArtinCdga& A, unsigned N,
                                   const std::vector<std::size_t>& gweight, std::size_t wbound,
                                   bool run_validate) {
    if (N < 1) throw std::invalid_argument("cobar_truncation: order must be >= 1");
    CobarTruncation out;
    out.source = A;
    out.order = N;
    out.lie.name = "cobar" + std::to_string(N) + "(" + A.name + ")";
    const std::size_t nA = A.dim();
    std::vector<int> degX(nA);
    for (std::size_t a = 0; a < nA; ++a) degX[a] = A.deg[a] + 1;

    auto word_weight = [&](const std::vector<std::size_t>& w) {
        std::size_t s = 0;
        for (std::size_t a : w) s += gweight[a];
        return s;
    };

    // [P,Q] = PQ - (-1)^{|P||Q|} QP on tensor expansions
    auto tbracket = [&](const TMap& p, const TMap& q, int dp, int dq) {
        TMap r;
        Rat s = parity_sign(static_cast<long>(dp) * dq);
        for (const auto& [wp, cp] : p)
            for (const auto& [wq, cq] : q) {
                if (wp.size() + wq.size() > N) continue;
                std::vector<std::size_t> pq = wp;
                pq.insert(pq.end(), wq.begin(), wq.end());
                tmap_add(r, pq, cp * cq);
                std::vector<std::size_t> qp = wq;
                qp.insert(qp.end(), wp.begin(), wp.end());
                tmap_add(r, qp, -s * cp * cq);
            }
        return r;
    };

    // enumerate tensor words per length (viable ones only)
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> cols(N + 1);
    {
        std::vector<std::size_t> cur;
        auto rec = [&](auto&& self, unsigned len) -> void {
            if (cur.size() == len) {
                cols[len].emplace(cur, cols[len].size());
                return;
            }
            for (std::size_t a = 0; a < nA; ++a) {
                if (gweight[a] > wbound) continue;
                if (word_weight(cur) + gweight[a] > wbound) continue;
                cur.push_back(a);
                self(self, len);
                cur.pop_back();
            }
        };
        for (unsigned len = 1; len <= N; ++len) rec(rec, len);
    }

    std::vector<Span> spans;
    for (unsigned len = 0; len <= N; ++len) spans.emplace_back(cols[len].size());
    auto dense_of = [&](const TMap& t, unsigned len) {
        Vec v = zero_vec(cols[len].size());
        for (const auto& [w, c] : t) v[cols[len].at(w)] = c;
        return v;
    };

    for (std::size_t a = 0; a < nA; ++a) {
        if (gweight[a] > wbound) continue;
        TMap t{{std::vector<std::size_t>{a}, Rat(1)}};
        if (!spans[1].add(dense_of(t, 1))) continue;
        out.lie.label.push_back("x_" + A.label[a]);
        out.lie.deg.push_back(degX[a]);
        out.blen.push_back(1);
        out.gen_weight.push_back(gweight[a]);
        out.expr.push_back({0, static_cast<long>(a), -1});
        out.tensor.push_back(std::move(t));
    }
    for (unsigned len = 2; len <= N; ++len) {
        std::size_t n_prev = out.tensor.size();
        for (std::size_t u = 0; u < n_prev; ++u)
            for (std::size_t v = u; v < n_prev; ++v) {
                if (out.blen[u] + out.blen[v] != len) continue;
                if (out.gen_weight[u] + out.gen_weight[v] > wbound) continue;
                TMap t = tbracket(out.tensor[u], out.tensor[v], out.lie.deg[u], out.lie.deg[v]);
                if (t.empty()) continue;
                if (!spans[len].add(dense_of(t, len))) continue;
                out.lie.label.push_back("[" + out.lie.label[u] + "," + out.lie.label[v] + "]");
                out.lie.deg.push_back(out.lie.deg[u] + out.lie.deg[v]);
                out.blen.push_back(len);
                out.gen_weight.push_back(out.gen_weight[u] + out.gen_weight[v]);
                out.expr.push_back({1, static_cast<long>(u), static_cast<long>(v)});
                out.tensor.push_back(std::move(t));
            }
    }

    // coordinates of a tensor element in the chosen Lie basis
    std::vector<std::vector<std::size_t>> by_len(N + 1);
    for (std::size_t k = 0; k < out.tensor.size(); ++k) by_len[out.blen[k]].push_back(k);
    std::vector<RatMatrix> basis_cols;
    for (unsigned len = 0; len <= N; ++len) {
        std::vector<Vec> cs;
        for (std::size_t k : by_len[len]) cs.push_back(dense_of(out.tensor[k], len));
        basis_cols.push_back(RatMatrix::from_columns(cols[len].size(), cs));
    }
    auto to_lie = [&](const TMap& t) {
        SVec r;
        for (unsigned len = 1; len <= N; ++len) {
            TMap part;
            for (const auto& [w, c] : t)
                if (w.size() == len) part[w] = c;
            if (part.empty()) continue;
            auto sol = solve(basis_cols[len], dense_of(part, len));
            if (!sol) throw std::logic_error("cobar_truncation: element outside the Lie span");
            for (std::size_t k = 0; k < sol->size(); ++k)
                if ((*sol)[k] != 0) r[by_len[len][k]] = (*sol)[k];
        }
        return r;
    };

    // differential, dual to d_A + multiplication, extended as a derivation
    std::vector<TMap> dgen(nA);
    for (std::size_t c = 0; c < nA; ++c) {
        if (gweight[c] > wbound) continue;
        TMap dc;
        for (std::size_t a = 0; a < nA; ++a) {
            if (gweight[a] > wbound) continue;
            SVec da = A.d(SVec{{a, Rat(1)}});
            auto it = da.find(c);
            if (it != da.end())
                tmap_add(dc, {a}, parity_sign(A.deg[a]) * it->second);
            for (std::size_t b = 0; b < nA; ++b) {
                if (gweight[b] > wbound) continue;
                SVec ab = A.basis_product(a, b);
                auto mt = ab.find(c);
                if (mt == ab.end()) continue;
                Rat coeff = -mt->second / 2 *
                            parity_sign(static_cast<long>(A.deg[b] + 1) * A.deg[a]);
                TMap br = tbracket(TMap{{{a}, Rat(1)}}, TMap{{{b}, Rat(1)}}, degX[a], degX[b]);
                for (const auto& [w, x] : br) tmap_add(dc, w, coeff * x);
            }
        }
        dgen[c] = std::move(dc);
    }
    auto d_tensor = [&](const TMap& t) {
        TMap r;
        for (const auto& [w, c] : t) {
            long pref = 0;
            for (std::size_t j = 0; j < w.size(); ++j) {
                for (const auto& [dw, dc] : dgen[w[j]]) {
                    if (w.size() - 1 + dw.size() > N) continue;
                    std::vector<std::size_t> nw(w.begin(), w.begin() + j);
                    nw.insert(nw.end(), dw.begin(), dw.end());
                    nw.insert(nw.end(), w.begin() + j + 1, w.end());
                    tmap_add(r, nw, c * dc * parity_sign(pref));
                }
                pref += degX[w[j]];
            }
        }
        return r;
    };
    for (std::size_t k = 0; k < out.tensor.size(); ++k) {
        SVec dk = to_lie(d_tensor(out.tensor[k]));
        if (!dk.empty()) out.lie.diff[k] = std::move(dk);
    }

    for (std::size_t i = 0; i < out.tensor.size(); ++i)
        for (std::size_t j = 0; j < out.tensor.size(); ++j) {
            if (out.blen[i] + out.blen[j] > N) continue;
            if (out.gen_weight[i] + out.gen_weight[j] > wbound) continue;
            TMap t = tbracket(out.tensor[i], out.tensor[j], out.lie.deg[i], out.lie.deg[j]);
            if (t.empty()) continue;
            SVec b = to_lie(t);
            if (!b.empty()) out.lie.bracket[{i, j}] = std::move(b);
        }

    if (run_validate) out.lie.validate();  // d^2 = 0 encodes associativity + Leibniz of A
    return out;
}

}  // namespace detail

inline CobarTruncation cobar_truncation(const ArtinCdga& A, unsigned N) {
    std::vector<std::size_t> ones(A.dim(), 1);
    return detail::build_cobar(A, N, ones, static_cast<std::size_t>(-1), true);
}

// ----- transport through the Maurer-Cartan set -----

namespace detail {

inline std::size_t min_transport_order(const ArtinCdga& A) {
    std::size_t n = A.nilpotency_index();
    return n > 1 ? n - 1 : 1;
}

inline void check_transport_order(unsigned N, const ArtinCdga& A, const char* what) {
    std::size_t need = min_transport_order(A);
    if (N < need)
        throw std::invalid_argument(std::string(what) + ": truncation order " +
                                    std::to_string(N) + " insufficient; need N >= " +
                                    std::to_string(need));
}

inline std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_flat(
    const NilpotentDGLA& host) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> flat;
    for (std::size_t p = 0; p < host.pairs.size(); ++p) flat[host.pairs[p]] = p;
    return flat;
}

}  // namespace detail

// MC element of Tot(L (x) m(A)) -> cdga map bar(L,N) -> A sending the
// generator dual to u to the u-component of omega. Commutation with the
// differentials is exactly the Maurer-Cartan equation and is validated.
inline CdgaMap mc_to_bar(const BarTruncation& B, const NilpotentDGLA& host, const SVec& omega) {
    detail::check_transport_order(B.order, host.coeffs, "mc_to_bar");
    if (B.source.label != host.base.label)
        throw std::invalid_argument("mc_to_bar: host does not extend the bar source");
    std::vector<SVec> comp(B.source.dim());
    for (const auto& [p, c] : omega) {
        auto [i, a] = host.pairs[p];
        comp[i][a] = c;
    }
    CdgaMap f{B.algebra, host.coeffs, {}};
    for (std::size_t wi = 0; wi < B.words.size(); ++wi) {
        const auto& w = B.words[wi];
        SVec img;
        if (w.size() == 1) {
            img = comp[w[0]];
        } else {
            std::vector<std::size_t> prefix(w.begin(), w.end() - 1);
            img = host.coeffs.product(f.apply(SVec{{B.word_index(prefix), Rat(1)}}),
                                      comp[w.back()]);
        }
        if (!img.empty()) f.images[wi] = std::move(img);
    }
    try {
        f.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("mc_to_bar: element is not Maurer-Cartan (") +
                                    e.what() + ")");
    }
    return f;
}

// Inverse direction: read omega off the images of the length-one generators.
inline SVec bar_to_mc(const BarTruncation& B, const NilpotentDGLA& host, const CdgaMap& f) {
    detail::check_transport_order(B.order, host.coeffs, "bar_to_mc");
    f.validate();
    auto flat = detail::pair_flat(host);
    SVec omega;
    for (std::size_t i = 0; i < B.source.dim(); ++i) {
        auto it = f.images.find(B.word_index({i}));
        if (it == f.images.end()) continue;
        for (const auto& [a, c] : it->second) sv_add_term(omega, flat.at({i, a}), c);
    }
    if (!is_mc(host, omega))
        throw std::logic_error("bar_to_mc: transported element fails Maurer-Cartan");
    return omega;
}

// A DGLA map out of the cobar tower into L. The tower is free on its
// generators, so the map is determined by (and validated on) generator
// images; higher basis elements carry the induced bracket images. Only the
// generator-level data descends from the full tower: a finite truncation
// kills long brackets whose images in L need not vanish.
struct CobarToDglaMap {
    std::map<std::size_t, SVec> images;  // cobar basis index -> element of L

    SVec apply(const SVec& x) const {
        SVec out;
        for (const auto& [i, a] : x) {
            auto it = images.find(i);
            if (it != images.end()) sv_add(out, a, it->second);
        }
        return out;
    }
};

inline CobarToDglaMap mc_to_cobar(const CobarTruncation& C, const NilpotentDGLA& host,
                                  const SVec& omega) {
    detail::check_transport_order(C.order, C.source, "mc_to_cobar");
    if (C.source.label != host.coeffs.label)
        throw std::invalid_argument("mc_to_cobar: host does not extend the cobar source");
    const DGLA& L = host.base;
    std::vector<SVec> comp(C.source.dim());
    for (const auto& [p, c] : omega) {
        auto [i, a] = host.pairs[p];
        comp[a][i] = c;
    }
    CobarToDglaMap f;
    for (std::size_t k = 0; k < C.expr.size(); ++k) {
        SVec img;
        if (C.expr[k][0] == 0) {
            img = comp[C.expr[k][1]];
        } else {
            img = L.br(f.apply(SVec{{static_cast<std::size_t>(C.expr[k][1]), Rat(1)}}),
                       f.apply(SVec{{static_cast<std::size_t>(C.expr[k][2]), Rat(1)}}));
        }
        if (!img.empty()) f.images[k] = std::move(img);
    }
    for (std::size_t k = 0; k < C.expr.size(); ++k) {
        if (C.expr[k][0] != 0) continue;
        SVec lhs = f.apply(C.lie.d(SVec{{k, Rat(1)}}));
        sv_add(lhs, Rat(-1), L.d(f.apply(SVec{{k, Rat(1)}})));
        if (!lhs.empty())
            throw std::invalid_argument(
                "mc_to_cobar: element is not Maurer-Cartan (differential mismatch at " +
                C.lie.label[k] + ")");
    }
    return f;
}

inline SVec cobar_to_mc(const CobarTruncation& C, const NilpotentDGLA& host,
                        const CobarToDglaMap& f) {
    detail::check_transport_order(C.order, C.source, "cobar_to_mc");
    auto flat = detail::pair_flat(host);
    SVec omega;
    for (std::size_t k = 0; k < C.expr.size(); ++k) {
        if (C.expr[k][0] != 0) continue;
        auto it = f.images.find(k);
        if (it == f.images.end()) continue;
        std::size_t a = C.expr[k][1];
        for (const auto& [i, c] : it->second) sv_add_term(omega, flat.at({i, a}), c);
    }
    if (!is_mc(host, omega))
        throw std::invalid_argument("cobar_to_mc: generator images fail Maurer-Cartan");
    return omega;
}

// The tautological element sum_u u (x) x_u of Tot(L (x) m(bar(L,N))). It is
// Maurer-Cartan by the choice of sign in the bar differential; its transport
// to a map out of the cobar tower is the counit of the adjunction.
inline SVec tautological_mc(const BarTruncation& B, const NilpotentDGLA& host) {
    auto flat = detail::pair_flat(host);
    SVec omega;
    for (std::size_t i = 0; i < B.source.dim(); ++i)
        sv_add_term(omega, flat.at({i, B.word_index({i})}), Rat(1));
    return omega;
}

// ----- weight-graded counit acyclicity -----

namespace detail {

// Weight-w piece of cone(cobar(bar L) -> L), where the weight of a cobar
// generator is the word length of the dual bar generator. The cobar
// differential splits as (weight-preserving) + (weight-lowering); the graded
// piece keeps only the former, which squares to zero degreewise. For w = 1
// the counit x_{x_u} -> u enters through the cone; for w >= 2 the L summand
// is absent and the piece is the weight-w cobar complex alone.
inline std::map<int, std::size_t> counit_weight_piece(const DGLA& L, unsigned w, unsigned N) {
    BarTruncation B = bar_truncation(L, N);
    std::vector<std::size_t> aux(B.words.size());
    for (std::size_t i = 0; i < B.words.size(); ++i) aux[i] = B.words[i].size();
    CobarTruncation C = detail::build_cobar(B.algebra, N, aux, w, false);

    std::vector<std::size_t> sel;
    for (std::size_t k = 0; k < C.gen_weight.size(); ++k)
        if (C.gen_weight[k] == w) sel.push_back(k);

    CochainComplex piece;
    for (std::size_t k : sel) piece.space.labels[C.lie.deg[k]].push_back(C.lie.label[k]);
    for (int n : piece.degrees()) {
        std::vector<std::size_t> src, dst;
        for (std::size_t k : sel) {
            if (C.lie.deg[k] == n) src.push_back(k);
            if (C.lie.deg[k] == n + 1) dst.push_back(k);
        }
        RatMatrix m(dst.size(), src.size());
        for (std::size_t c = 0; c < src.size(); ++c) {
            auto it = C.lie.diff.find(src[c]);
            if (it == C.lie.diff.end()) continue;
            for (const auto& [j, x] : it->second)
                for (std::size_t r = 0; r < dst.size(); ++r)
                    if (dst[r] == j) m.at(r, c) = x;
        }
        piece.set_d(n, m);
    }
    piece.validate();  // the graded differential squares to zero

    std::map<int, std::size_t> dims;
    if (w == 1) {
        CochainComplex lc = L.complex();
        ChainMap eps{piece, lc, {}};
        for (int n : piece.degrees()) {
            std::vector<std::size_t> src;
            for (std::size_t k : sel)
                if (C.lie.deg[k] == n) src.push_back(k);
            RatMatrix m(lc.dim(n), src.size());
            for (std::size_t c = 0; c < src.size(); ++c) {
                // generator dual to the length-one bar word {u} pairs with u
                std::size_t u = B.words[C.expr[src[c]][1]][0];
                const auto& tl = lc.space.labels.at(n);
                for (std::size_t r = 0; r < tl.size(); ++r)
                    if (tl[r] == L.label[u]) m.at(r, c) = 1;
            }
            eps.components[n] = m;
        }
        if (!eps.is_chain_map())
            throw std::logic_error("counit_weight_piece: counit is not a chain map");
        CochainComplex cn = cone(eps);
        for (int n : cn.degrees()) dims[n] = cohomology(cn, n).dim;
    } else {
        for (int n : piece.degrees()) dims[n] = cohomology(piece, n).dim;
    }
    return dims;
}

}  // namespace detail

// Cohomology of the weight-w piece of cone(counit); all dimensions vanish
// exactly when the counit is a quasi-isomorphism in that weight. The piece is
// unaffected by the truncation order once N >= w (the differential raises
// bracket length by at most one); this is asserted by recomputing at N + 1.
inline std::map<int, std::size_t> counit_cone_weight_cohomology(const DGLA& L, unsigned w,
                                                               unsigned N) {
    if (w < 1) throw std::invalid_argument("counit_cone_weight_cohomology: weight must be >= 1");
    if (N < w)
        throw std::invalid_argument("counit_cone_weight_cohomology: truncation order " +
                                    std::to_string(N) + " insufficient; need N >= " +
                                    std::to_string(w));
    auto dims = detail::counit_weight_piece(L, w, N);
    auto check = detail::counit_weight_piece(L, w, N + 1);
    if (dims != check)
        throw std::logic_error("counit_cone_weight_cohomology: piece did not stabilize");
    return dims;
}

}  // namespace dgdef

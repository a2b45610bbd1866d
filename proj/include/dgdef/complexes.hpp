#pragma once

// Graded vector spaces, cochain complexes, shifts, cones, bicomplexes and
// total complexes, all over exact rationals.
//
// Conventions used throughout the library:
//   * chain-graded data is stored via "chain degree i <-> cochain degree -i";
//   * the Koszul sign rule is applied with respect to total parity;
//   * bases of sums/tensors are ordered lexicographically by
//     (degree, constituent labels), so all matrices are deterministic.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgdef/matrix.hpp"

namespace dgdef {

struct GradedSpace {
    // degree -> ordered list of distinct basis labels
    std::map<int, std::vector<std::string>> labels;

    std::size_t dim(int n) const {
        auto it = labels.find(n);
        return it == labels.end() ? 0 : it->second.size();
    }

    std::vector<int> degrees() const {
        std::vector<int> out;
        for (const auto& [n, ls] : labels)
            if (!ls.empty()) out.push_back(n);
        return out;
    }

    std::size_t total_dim() const {
        std::size_t d = 0;
        for (const auto& [n, ls] : labels) d += ls.size();
        return d;
    }

    void validate() const {
        for (const auto& [n, ls] : labels) {
            std::set<std::string> seen(ls.begin(), ls.end());
            if (seen.size() != ls.size())
                throw std::invalid_argument("GradedSpace: duplicate label in degree " +
                                            std::to_string(n));
        }
    }
};

class CochainComplex {
  public:
    GradedSpace space;
    // d_n : degree n -> degree n+1, stored only where nonzero dims make sense.
    std::map<int, RatMatrix> differential;

    std::size_t dim(int n) const { return space.dim(n); }

    RatMatrix d(int n) const {
        auto it = differential.find(n);
        if (it != differential.end()) return it->second;
        return RatMatrix(dim(n + 1), dim(n));
    }

    void set_d(int n, RatMatrix m) {
        if (m.rows() != dim(n + 1) || m.cols() != dim(n))
            throw std::invalid_argument("CochainComplex: differential shape mismatch in degree " +
                                        std::to_string(n));
        differential[n] = std::move(m);
    }

    std::vector<int> degrees() const { return space.degrees(); }

    int min_degree() const {
        auto ds = degrees();
        return ds.empty() ? 0 : ds.front();
    }
    int max_degree() const {
        auto ds = degrees();
        return ds.empty() ? 0 : ds.back();
    }

    void validate() const {
        space.validate();
        for (const auto& [n, m] : differential) {
            if (m.rows() != dim(n + 1) || m.cols() != dim(n))
                throw std::invalid_argument("CochainComplex: stored differential has wrong shape");
        }
        for (int n : degrees()) {
            if (!(d(n + 1) * d(n)).is_zero())
                throw std::invalid_argument("CochainComplex: d*d != 0 leaving degree " +
                                            std::to_string(n));
        }
    }
};

struct Cohomology {
    std::size_t dim = 0;
    std::vector<Vec> representatives;
};

inline Cohomology cohomology(const CochainComplex& c, int n) {
    Subquotient sq = subquotient(c.d(n - 1), c.d(n));
    return {sq.dim, sq.representatives};
}

// (c[k])^n = c^{n+k}; the differential picks up the global sign (-1)^k.
inline CochainComplex shift(const CochainComplex& c, int k) {
    CochainComplex out;
    for (const auto& [n, ls] : c.space.labels) out.space.labels[n - k] = ls;
    Rat sign = (k % 2 == 0) ? 1 : -1;
    for (const auto& [n, m] : c.differential) out.differential[n - k] = m.scaled(sign);
    return out;
}

// Degreewise map of complexes.
struct ChainMap {
    CochainComplex source, target;
    std::map<int, RatMatrix> components;  // degree n: target.dim(n) x source.dim(n)

    RatMatrix at(int n) const {
        auto it = components.find(n);
        if (it != components.end()) return it->second;
        return RatMatrix(target.dim(n), source.dim(n));
    }

    bool is_chain_map() const {
        std::set<int> degs;
        for (int n : source.degrees()) degs.insert(n);
        for (int n : target.degrees()) degs.insert(n);
        for (int n : degs)
            if (!(target.d(n) * at(n) - at(n + 1) * source.d(n)).is_zero()) return false;
        return true;
    }
};

inline ChainMap identity_map(const CochainComplex& c) {
    ChainMap f{c, c, {}};
    for (int n : c.degrees()) f.components[n] = RatMatrix::identity(c.dim(n));
    return f;
}

// Standard mapping cone: cone(f)^n = A^{n+1} (+) B^n with
// d(a,b) = (-d_A a, f(a) + d_B b). Acyclic iff f is a quasi-isomorphism.
inline CochainComplex cone(const ChainMap& f) {
    if (!f.is_chain_map()) throw std::invalid_argument("cone: not a chain map");
    const CochainComplex& A = f.source;
    const CochainComplex& B = f.target;
    CochainComplex out;
    std::set<int> degs;
    for (int n : A.degrees()) degs.insert(n - 1);
    for (int n : B.degrees()) degs.insert(n);
    for (int n : degs) {
        std::vector<std::string> ls;
        for (const auto& l : (A.space.labels.count(n + 1) ? A.space.labels.at(n + 1)
                                                          : std::vector<std::string>{}))
            ls.push_back("a:" + l);
        for (const auto& l :
             (B.space.labels.count(n) ? B.space.labels.at(n) : std::vector<std::string>{}))
            ls.push_back("b:" + l);
        if (!ls.empty()) out.space.labels[n] = ls;
    }
    for (int n : out.degrees()) {
        std::size_t sa = A.dim(n + 1), sb = B.dim(n);
        std::size_t ta = A.dim(n + 2), tb = B.dim(n + 1);
        RatMatrix m(ta + tb, sa + sb);
        RatMatrix dA = A.d(n + 1), dB = B.d(n), fc = f.at(n + 1);
        for (std::size_t r = 0; r < ta; ++r)
            for (std::size_t c = 0; c < sa; ++c) m.at(r, c) = -dA.at(r, c);
        for (std::size_t r = 0; r < tb; ++r) {
            for (std::size_t c = 0; c < sa; ++c) m.at(ta + r, c) = fc.at(r, c);
            for (std::size_t c = 0; c < sb; ++c) m.at(ta + r, sa + c) = dB.at(r, c);
        }
        out.set_d(n, m);
    }
    return out;
}

inline bool is_acyclic(const CochainComplex& c) {
    if (c.degrees().empty()) return true;
    for (int n = c.min_degree() - 1; n <= c.max_degree() + 1; ++n)
        if (cohomology(c, n).dim != 0) return false;
    return true;
}

inline bool is_quasi_iso(const ChainMap& f) { return is_acyclic(cone(f)); }

// Bigraded space with cochain index i >= 0 and chain index j >= 0,
// d_h : (i,j) -> (i+1,j) and d_v : (i,j) -> (i,j-1), commuting.
struct Bicomplex {
    std::map<std::pair<int, int>, std::vector<std::string>> labels;
    std::map<std::pair<int, int>, RatMatrix> dh;  // leaving (i,j) horizontally
    std::map<std::pair<int, int>, RatMatrix> dv;  // leaving (i,j) vertically

    std::size_t dim(int i, int j) const {
        auto it = labels.find({i, j});
        return it == labels.end() ? 0 : it->second.size();
    }

    RatMatrix dh_at(int i, int j) const {
        auto it = dh.find({i, j});
        if (it != dh.end()) return it->second;
        return RatMatrix(dim(i + 1, j), dim(i, j));
    }
    RatMatrix dv_at(int i, int j) const {
        auto it = dv.find({i, j});
        if (it != dv.end()) return it->second;
        return RatMatrix(dim(i, j - 1), dim(i, j));
    }

    void validate() const {
        for (const auto& [ij, ls] : labels) {
            auto [i, j] = ij;
            if (i < 0 || j < 0) throw std::invalid_argument("Bicomplex: negative bidegree");
            if (!(dh_at(i + 1, j) * dh_at(i, j)).is_zero())
                throw std::invalid_argument("Bicomplex: dh*dh != 0");
            if (!(dv_at(i, j - 1) * dv_at(i, j)).is_zero())
                throw std::invalid_argument("Bicomplex: dv*dv != 0");
            if (!(dh_at(i, j - 1) * dv_at(i, j) - dv_at(i + 1, j) * dh_at(i, j)).is_zero())
                throw std::invalid_argument("Bicomplex: dh and dv do not commute");
            (void)ls;
        }
    }
};

// (Tot A)_n = (+)_i A^i_{i+n}, chain-graded; stored as a cochain complex via
// chain n <-> cochain -n. Total differential: d_h + (-1)^i d_v on (i,j).
inline CochainComplex tot_bicomplex(const Bicomplex& b) {
    b.validate();
    CochainComplex out;
    // Component (i,j) sits in chain degree j-i, cochain degree i-j.
    std::map<int, std::vector<std::pair<int, int>>> blocks;  // cochain degree -> bidegrees
    for (const auto& [ij, ls] : b.labels) {
        if (ls.empty()) continue;
        blocks[ij.first - ij.second].push_back(ij);
    }
    std::map<std::pair<int, int>, std::size_t> offset;
    for (auto& [n, bs] : blocks) {
        std::vector<std::string> ls;
        for (auto& ij : bs) {
            offset[ij] = ls.size();
            for (const auto& l : b.labels.at(ij))
                ls.push_back("(" + std::to_string(ij.first) + "," + std::to_string(ij.second) +
                             "):" + l);
        }
        out.space.labels[n] = ls;
    }
    for (auto& [n, bs] : blocks) {
        RatMatrix m(out.dim(n + 1), out.dim(n));
        for (auto& ij : bs) {
            auto [i, j] = ij;
            std::size_t src = offset[ij];
            RatMatrix H = b.dh_at(i, j);
            if (b.dim(i + 1, j) > 0 && blocks.count(n + 1)) {
                std::size_t dst = offset[{i + 1, j}];
                for (std::size_t r = 0; r < H.rows(); ++r)
                    for (std::size_t c = 0; c < H.cols(); ++c) m.at(dst + r, src + c) += H.at(r, c);
            }
            RatMatrix V = b.dv_at(i, j);
            if (b.dim(i, j - 1) > 0 && blocks.count(n + 1)) {
                std::size_t dst = offset[{i, j - 1}];
                Rat sign = (i % 2 == 0) ? 1 : -1;
                for (std::size_t r = 0; r < V.rows(); ++r)
                    for (std::size_t c = 0; c < V.cols(); ++c)
                        m.at(dst + r, src + c) += sign * V.at(r, c);
            }
        }
        out.set_d(n, m);
    }
    out.validate();
    return out;
}

// Chain complex presented with chain degrees; stored as cochain via i <-> -i.
inline CochainComplex chain_complex(const std::map<int, std::vector<std::string>>& labels,
                                    const std::map<int, RatMatrix>& boundary) {
    // boundary[i] : chain degree i -> i-1
    CochainComplex out;
    for (const auto& [i, ls] : labels)
        if (!ls.empty()) out.space.labels[-i] = ls;
    for (const auto& [i, m] : boundary) out.set_d(-i, m);
    out.validate();
    return out;
}

}  // namespace dgdef

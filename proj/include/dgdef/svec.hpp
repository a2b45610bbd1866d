#pragma once

// Sparse vectors over Q keyed by flat basis index.

#include <cstddef>
#include <map>

#include "dgdef/matrix.hpp"

namespace dgdef {

using SVec = std::map<std::size_t, Rat>;

inline void sv_add(SVec& dst, const Rat& coeff, const SVec& src) {
    if (coeff == 0) return;
    for (const auto& [i, v] : src) {
        Rat& slot = dst[i];
        slot += coeff * v;
        if (slot == 0) dst.erase(i);
    }
}

inline void sv_add_term(SVec& dst, std::size_t i, const Rat& coeff) {
    if (coeff == 0) return;
    Rat& slot = dst[i];
    slot += coeff;
    if (slot == 0) dst.erase(i);
}

inline SVec sv_scale(const SVec& v, const Rat& c) {
    SVec out;
    if (c == 0) return out;
    for (const auto& [i, x] : v) out[i] = c * x;
    return out;
}

inline bool sv_is_zero(const SVec& v) { return v.empty(); }

inline Vec sv_dense(const SVec& v, std::size_t n) {
    Vec out = zero_vec(n);
    for (const auto& [i, x] : v) out[i] = x;
    return out;
}

inline SVec sv_sparse(const Vec& v) {
    SVec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out[i] = v[i];
    return out;
}

// Row-echelon span of vectors in Q^n, used for filtrations and quotients.
class Span {
  public:
    explicit Span(std::size_t ambient) : ambient_(ambient) {}

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }

    // Reduce v modulo the span (eliminating pivot coordinates).
    Vec reduce(Vec v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rat& c = v[pivots_[i]];
            if (c != 0) {
                Rat f = c;
                for (std::size_t j = 0; j < ambient_; ++j) v[j] -= f * rows_[i][j];
            }
        }
        return v;
    }

    bool contains(const Vec& v) const { return is_zero(reduce(v)); }

    // Returns true if v was independent (and got added).
    bool add(const Vec& v) {
        Vec r = reduce(v);
        std::size_t p = 0;
        while (p < ambient_ && r[p] == 0) ++p;
        if (p == ambient_) return false;
        Rat inv = Rat(1) / r[p];
        for (auto& x : r) x *= inv;
        // keep earlier rows reduced against the new pivot
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Rat f = rows_[i][p];
            if (f != 0)
                for (std::size_t j = 0; j < ambient_; ++j) rows_[i][j] -= f * r[j];
        }
        // insert keeping pivots ascending
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(r));
        pivots_.insert(pivots_.begin() + pos, p);
        return true;
    }

    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

  private:
    std::size_t ambient_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace dgdef

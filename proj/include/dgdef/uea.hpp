#pragma once

// Truncated universal enveloping algebra of a nilpotent DGLA (all degrees).
// Basis: PBW monomials x_{i_1}...x_{i_k} with i_1 <= ... <= i_k (strict for
// odd generators), truncated to total m-adic weight < nilpotency index of the
// coefficient algebra. Multiplication is straightening:
//   x_a x_b = (-1)^{|a||b|} x_b x_a + [x_a, x_b]        (a > b)
//   x_a x_a = 1/2 [x_a, x_a]                            (|a| odd)
// Every rewrite either reduces inversions or strictly raises total weight,
// so straightening terminates. The weight truncation is a Hopf ideal, and
// Lie elements (the length-<=1 monomials) are untouched by it, so gauge
// computations performed here agree with the completed enveloping algebra.

#include <stdexcept>
#include <vector>

#include "dgdef/dgla.hpp"
#include "dgdef/rational.hpp"

namespace dgdef {

class TruncatedUEA {
  public:
    using Mono = std::vector<std::size_t>;
    using Elem = std::map<Mono, Rat>;

    explicit TruncatedUEA(const NilpotentDGLA& host)
        : host_(&host), wbound_(host.nilpotency_index() - 1) {}

    const NilpotentDGLA& host() const { return *host_; }

    static Elem one() { return Elem{{Mono{}, Rat(1)}}; }

    Elem embed(const SVec& x) const {
        Elem out;
        for (const auto& [i, c] : x) out[Mono{i}] = c;
        return out;
    }

    static Elem add(Elem a, const Rat& c, const Elem& b) {
        for (const auto& [m, x] : b) {
            Rat& slot = a[m];
            slot += c * x;
            if (slot == 0) a.erase(m);
        }
        return a;
    }

    static Elem scale(const Elem& a, const Rat& c) {
        Elem out;
        if (c == 0) return out;
        for (const auto& [m, x] : a) out[m] = c * x;
        return out;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        Elem out;
        for (const auto& [ma, xa] : a)
            for (const auto& [mb, xb] : b) {
                Mono w = ma;
                w.insert(w.end(), mb.begin(), mb.end());
                accumulate(out, w, xa * xb);
            }
        return out;
    }

    // Extend the host differential as a graded derivation.
    Elem d(const Elem& a) const {
        Elem out;
        for (const auto& [m, c] : a) {
            long before = 0;  // parity of the letters to the left
            for (std::size_t j = 0; j < m.size(); ++j) {
                auto it = host_->lie.diff.find(m[j]);
                if (it != host_->lie.diff.end()) {
                    for (const auto& [k, x] : it->second) {
                        Mono w = m;
                        w[j] = k;
                        accumulate(out, w, c * x * parity_sign(before));
                    }
                }
                before += host_->lie.deg[m[j]];
            }
        }
        return out;
    }

    // exp of an element with zero constant term; finite by the weight bound.
    Elem exp(const Elem& x) const {
        if (x.count(Mono{})) throw std::invalid_argument("uea exp: nonzero constant term");
        Elem out = one();
        Elem pw = one();
        for (std::size_t n = 1; n <= wbound_ || n == 1; ++n) {
            pw = mul(pw, x);
            if (pw.empty()) break;
            out = add(out, Rat(1) / factorial(n), pw);
            if (n > wbound_) break;
        }
        return out;
    }

    // log of 1 + nilpotent.
    Elem log(const Elem& u) const {
        Elem n = u;
        auto it = n.find(Mono{});
        if (it == n.end() || it->second != 1)
            throw std::invalid_argument("uea log: constant term is not 1");
        n.erase(Mono{});
        Elem out;
        Elem pw = one();
        for (std::size_t k = 1; k <= wbound_ || k == 1; ++k) {
            pw = mul(pw, n);
            if (pw.empty()) break;
            Rat c = Rat(k % 2 == 1 ? 1 : -1) / Rat(static_cast<long>(k));
            out = add(out, c, pw);
            if (k > wbound_) break;
        }
        return out;
    }

    // Read a Lie element back off its PBW coordinates. Throws if the element
    // is not primitive (support on monomials of length > 1) or has a
    // constant term.
    SVec lie_part(const Elem& a) const {
        SVec out;
        for (const auto& [m, c] : a) {
            if (m.size() != 1)
                throw std::logic_error("uea lie_part: element is not a Lie element");
            out[m[0]] = c;
        }
        return out;
    }

  private:
    std::size_t mono_weight(const Mono& m) const {
        std::size_t w = 0;
        for (auto i : m) w += host_->weight[i];
        return w;
    }

    void accumulate(Elem& dst, const Mono& w, const Rat& c) const {
        if (c == 0) return;
        if (mono_weight(w) > wbound_) return;
        for (std::size_t j = 0; j + 1 < w.size(); ++j) {
            std::size_t a = w[j], b = w[j + 1];
            if (a > b) {
                Mono sw = w;
                std::swap(sw[j], sw[j + 1]);
                Rat sgn = parity_sign(static_cast<long>(host_->lie.deg[a]) * host_->lie.deg[b]);
                accumulate(dst, sw, c * sgn);
                for (const auto& [k, x] : host_->lie.basis_bracket(a, b)) {
                    Mono br(w.begin(), w.begin() + j);
                    br.push_back(k);
                    br.insert(br.end(), w.begin() + j + 2, w.end());
                    accumulate(dst, br, c * x);
                }
                return;
            }
            if (a == b && (host_->lie.deg[a] % 2 + 2) % 2 == 1) {
                for (const auto& [k, x] : host_->lie.basis_bracket(a, a)) {
                    Mono br(w.begin(), w.begin() + j);
                    br.push_back(k);
                    br.insert(br.end(), w.begin() + j + 2, w.end());
                    accumulate(dst, br, c * x / 2);
                }
                return;
            }
        }
        Rat& slot = dst[w];
        slot += c;
        if (slot == 0) dst.erase(w);
    }

    const NilpotentDGLA* host_;
    std::size_t wbound_;
};

}  // namespace dgdef

#ifndef MZV_EXTFIELD_HPP
#define MZV_EXTFIELD_HPP

#include <cstdint>
#include <vector>

#include "mzv/fields.hpp"

namespace mzv {

// F_{p^n} in Zech-logarithm form, used to evaluate rational functions over
// F_q at points of F_{q^K}. Code 0 is zero, code k+1 is g^k for a primitive g.
class ExtField {
public:
    using elt = std::uint32_t;

    // Shared instance; throws std::length_error when p^n exceeds the table cap.
    static const ExtField& get(int p, int n);
    static constexpr long long kMaxOrder = 1LL << 25;

    int p() const { return p_; }
    int n() const { return n_; }
    std::uint32_t order() const { return Q_; }

    static constexpr elt zero() { return 0; }
    static constexpr elt one() { return 1; }

    elt mul(elt a, elt b) const {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = (a - 1) + (b - 1);
        if (s >= M_) s -= M_;
        return s + 1;
    }
    elt add(elt a, elt b) const {
        if (a == 0) return b;
        if (b == 0) return a;
        std::uint32_t x = a - 1, y = b - 1;
        if (x > y) std::swap(x, y);
        std::uint32_t z = zech_[y - x];
        if (z == 0) return 0;
        std::uint32_t s = x + (z - 1);
        if (s >= M_) s -= M_;
        return s + 1;
    }
    elt neg(elt a) const {
        if (a == 0 || p_ == 2) return a;
        std::uint32_t s = (a - 1) + M_ / 2;
        if (s >= M_) s -= M_;
        return s + 1;
    }
    elt sub(elt a, elt b) const { return add(a, neg(b)); }
    elt inv(elt a) const;
    elt div(elt a, elt b) const { return mul(a, inv(b)); }
    elt pow(elt a, long long k) const;
    elt gen_pow(long long k) const;  // g^k
    elt from_int(long long c) const { return prime_[((c % p_) + p_) % p_]; }

    // Images of the codes of F_q, q = p^e with e | n. Deterministic choice of root.
    std::vector<elt> embedding(const Fq& F) const;
    // Exact degree of a over F_q (q = p^e).
    int degree_over(elt a, int q) const;

private:
    ExtField(int p, int n);
    int p_, n_;
    std::uint32_t Q_, M_;  // M_ = Q_ - 1
    std::vector<std::uint32_t> zech_;
    std::vector<elt> prime_;
    std::vector<int> minpoly_;  // modulus of the vector model, low to high
};

// A field F_{q^K} with F_q embedded, plus evaluation of polynomials at its points.
class PointField {
public:
    PointField(const Fq& F, int K);

    const ExtField& ext() const { return *E_; }
    const Fq& base() const { return *F_; }
    int K() const { return K_; }

    ExtField::elt embed(Fq::elt c) const { return emb_[c]; }
    ExtField::elt eval(const Poly& f, ExtField::elt x) const;
    // p-th power Frobenius iterates are cheap in log form: x^(q^i).
    ExtField::elt frob(ExtField::elt x, int i) const;

    // Representatives of Galois orbits of exact degree K over F_q, in increasing
    // log order. Each stands for K distinct roots of any F_q-polynomial it kills.
    class OrbitStream {
    public:
        explicit OrbitStream(const PointField& P) : P_(P) {}
        // false when the field is exhausted
        bool next(ExtField::elt& out);
    private:
        const PointField& P_;
        std::uint64_t k_ = 0;
    };

private:
    const Fq* F_;
    int K_;
    const ExtField* E_;
    std::vector<ExtField::elt> emb_;
};

}  // namespace mzv

#endif

#include "mzv/extfield.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace mzv {

namespace {

std::vector<long long> prime_factors(long long n) {
    std::vector<long long> f;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            f.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) f.push_back(n);
    return f;
}

// arithmetic in F_p[x]/(f), f monic of degree n, elements as digit vectors
struct ModRing {
    int p, n;
    std::vector<int> f;

    std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b) const {
        std::vector<long long> r(2 * n - 1, 0);
        for (int i = 0; i < n; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j < n; ++j) r[i + j] += a[i] * b[j];
        }
        for (int i = 2 * n - 2; i >= n; --i) {
            long long c = r[i] % p;
            if (!c) continue;
            for (int j = 0; j < n; ++j) r[i - n + j] -= c * f[j];
        }
        std::vector<int> out(n);
        for (int i = 0; i < n; ++i) out[i] = int(((r[i] % p) + p) % p);
        return out;
    }
    std::vector<int> pow_x(long long k) const {
        std::vector<int> r(n, 0), b(n, 0);
        r[0] = 1;
        if (n == 1) b[0] = ((-f[0]) % p + p) % p;
        else b[1] = 1;
        while (k > 0) {
            if (k & 1) r = mul(r, b);
            b = mul(b, b);
            k >>= 1;
        }
        return r;
    }
};

bool is_primitive(const std::vector<int>& f, int p, int n, long long Q) {
    if (f[0] == 0) return false;
    ModRing R{p, n, f};
    std::vector<int> one(n, 0);
    one[0] = 1;
    if (R.pow_x(Q - 1) != one) return false;
    for (long long r : prime_factors(Q - 1))
        if (R.pow_x((Q - 1) / r) == one) return false;
    return true;
}

}  // namespace

ExtField::ExtField(int p, int n) : p_(p), n_(n) {
    long long Q = ipow(p, n);
    if (Q > kMaxOrder) throw std::length_error("extension field F_" + std::to_string(p) + "^" + std::to_string(n) + " exceeds the table cap");
    Q_ = std::uint32_t(Q);
    M_ = Q_ - 1;
    // first primitive monic polynomial in code order
    std::vector<int> f(n + 1, 0);
    f[n] = 1;
    bool found = false;
    for (long long code = 0; code < Q && !found; ++code) {
        long long c = code;
        for (int i = 0; i < n; ++i) { f[i] = int(c % p); c /= p; }
        found = is_primitive(f, p, n, Q);
    }
    if (!found) throw std::logic_error("no primitive polynomial found");
    minpoly_ = f;

    // exp table in the vector model (base-p digit code), then logs and Zech logs
    std::vector<std::uint32_t> expt(M_), logt(Q_, 0);
    std::vector<int> v(n, 0);
    v[0] = 1;
    std::vector<long long> pw(n);
    pw[0] = 1;
    for (int i = 1; i < n; ++i) pw[i] = pw[i - 1] * p;
    for (std::uint32_t k = 0; k < M_; ++k) {
        std::uint32_t code = 0;
        for (int i = 0; i < n; ++i) code += std::uint32_t(v[i] * pw[i]);
        expt[k] = code;
        logt[code] = k;
        // v <- v * x
        int top = v[n - 1];
        for (int i = n - 1; i > 0; --i) v[i] = v[i - 1];
        v[0] = 0;
        if (top)
            for (int i = 0; i < n; ++i) v[i] = ((v[i] - top * f[i]) % p + p) % p;
    }
    zech_.assign(M_, 0);
    for (std::uint32_t k = 0; k < M_; ++k) {
        std::uint32_t c = expt[k];
        std::uint32_t d0 = c % p;
        std::uint32_t c1 = c - d0 + (d0 + 1) % p;
        zech_[k] = c1 == 0 ? 0 : logt[c1] + 1;
    }
    prime_.resize(p);
    prime_[0] = 0;
    for (int c = 1; c < p; ++c) prime_[c] = logt[std::uint32_t(c)] + 1;
}

const ExtField& ExtField::get(int p, int n) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<ExtField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, n);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    std::unique_ptr<ExtField> f(new ExtField(p, n));
    const ExtField& ref = *f;
    cache.emplace(key, std::move(f));
    return ref;
}

ExtField::elt ExtField::inv(elt a) const {
    if (a == 0) throw std::domain_error("inverse of zero in extension field");
    std::uint32_t k = a - 1;
    return (k == 0 ? 0 : M_ - k) + 1;
}

ExtField::elt ExtField::pow(elt a, long long k) const {
    if (a == 0) {
        if (k < 0) throw std::domain_error("negative power of zero");
        return k == 0 ? 1 : 0;
    }
    long long e = (long long)(a - 1) * (k % (long long)M_) % (long long)M_;
    if (e < 0) e += M_;
    return elt(e) + 1;
}

ExtField::elt ExtField::gen_pow(long long k) const {
    long long e = k % (long long)M_;
    if (e < 0) e += M_;
    return elt(e) + 1;
}

std::vector<ExtField::elt> ExtField::embedding(const Fq& F) const {
    if (F.p() != p_ || n_ % F.e() != 0) throw std::invalid_argument("F_q does not embed in this extension");
    std::vector<elt> out(F.q());
    elt root = 0;
    if (F.e() > 1) {
        const auto& m = F.modulus();
        std::uint32_t step = M_ / std::uint32_t(F.q() - 1);
        bool ok = false;
        for (std::uint32_t j = 1; j < std::uint32_t(F.q()) && !ok; ++j) {
            elt r = gen_pow((long long)j * step);
            elt acc = 0;
            for (int i = int(m.size()) - 1; i >= 0; --i) acc = add(mul(acc, r), from_int(m[i]));
            if (acc == 0) { root = r; ok = true; }
        }
        if (!ok) throw std::logic_error("modulus has no root in the extension");
    }
    for (int c = 0; c < F.q(); ++c) {
        elt acc = 0, rp = 1;
        int x = c;
        for (int i = 0; i < F.e(); ++i) {
            acc = add(acc, mul(from_int(x % p_), rp));
            x /= p_;
            rp = mul(rp, root);
        }
        out[c] = acc;
    }
    return out;
}

int ExtField::degree_over(elt a, int q) const {
    if (a == 0) return 1;
    std::uint64_t k = a - 1, x = k;
    for (int j = 1;; ++j) {
        x = x * std::uint64_t(q) % M_;
        if (x == k) return j;
    }
}

PointField::PointField(const Fq& F, int K) : F_(&F), K_(K) {
    E_ = &ExtField::get(F.p(), F.e() * K);
    emb_ = E_->embedding(F);
}

ExtField::elt PointField::eval(const Poly& f, ExtField::elt x) const {
    ExtField::elt acc = 0;
    for (int i = f.deg(); i >= 0; --i) acc = E_->add(E_->mul(acc, x), emb_[f.coeff(i)]);
    return acc;
}

ExtField::elt PointField::frob(ExtField::elt x, int i) const {
    if (x == 0) return 0;
    return E_->pow(x, ipow(F_->q(), i % K_));
}

bool PointField::OrbitStream::next(ExtField::elt& out) {
    const ExtField& E = P_.ext();
    const std::uint64_t M = E.order() - 1;
    const std::uint64_t q = std::uint64_t(P_.base().q());
    while (k_ < M) {
        std::uint64_t k = k_++;
        std::uint64_t x = k;
        bool minimal = true;
        int size = 0;
        for (int j = 1; j <= P_.K(); ++j) {
            x = x * q % M;
            if (x == k) { size = j; break; }
            if (x < k) { minimal = false; break; }
        }
        if (minimal && size == P_.K()) {
            out = ExtField::elt(k) + 1;
            return true;
        }
    }
    return false;
}

}  // namespace mzv

#include "mzv/fields.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>

namespace mzv {

// ---------------------------------------------------------------------------
// integer helpers

bool is_prime_power(int q, int* p_out, int* e_out) {
    if (q < 2) return false;
    int p = 0;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) { p = d; break; }
    if (p == 0) p = q;
    int e = 0, r = q;
    while (r % p == 0) { r /= p; ++e; }
    if (r != 1) return false;
    if (p_out) *p_out = p;
    if (e_out) *e_out = e;
    return true;
}

long long ipow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) {
        if (b != 0 && r > (1LL << 62) / (b < 0 ? -b : b))
            throw std::overflow_error("ipow overflow");
        r *= b;
    }
    return r;
}

int binom_mod(long long n, long long k, int p) {
    if (k < 0 || n < 0 || k > n) return 0;
    // Lucas: product of digit binomials, each computed from Pascal's rule mod p.
    long long r = 1;
    while (n > 0 || k > 0) {
        int a = int(n % p), b = int(k % p);
        if (b > a) return 0;
        std::vector<int> row(b + 1, 0);
        row[0] = 1;
        for (int i = 1; i <= a; ++i)
            for (int j = std::min(i, b); j >= 1; --j) row[j] = (row[j] + row[j - 1]) % p;
        r = r * row[b] % p;
        n /= p;
        k /= p;
    }
    return int(r);
}

// ---------------------------------------------------------------------------
// Fq

namespace {

// Conway polynomials, low to high. Irreducibility is re-checked at construction.
const std::map<std::pair<int, int>, std::vector<int>>& modulus_table() {
    static const std::map<std::pair<int, int>, std::vector<int>> t = {
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
        {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},
        {{3, 5}, {1, 2, 0, 0, 0, 1}},
        {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},
        {{7, 2}, {3, 6, 1}},
        {{11, 2}, {2, 7, 1}},
        {{13, 2}, {2, 12, 1}},
    };
    return t;
}

// remainder of a by monic b over F_p, in place
void rem_modp(std::vector<int>& a, const std::vector<int>& b, int p) {
    int db = int(b.size()) - 1;
    for (int i = int(a.size()) - 1; i >= db; --i) {
        int c = a[i] % p;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[i - db + j] = ((a[i - db + j] - c * b[j]) % p + p) % p;
    }
    a.resize(std::max(0, db));
}

bool irreducible_modp(const std::vector<int>& f, int p) {
    int n = int(f.size()) - 1;
    for (int k = 1; 2 * k <= n; ++k) {
        long long count = ipow(p, k);
        for (long long code = 0; code < count; ++code) {
            std::vector<int> g(k + 1);
            long long c = code;
            for (int i = 0; i < k; ++i) { g[i] = int(c % p); c /= p; }
            g[k] = 1;
            std::vector<int> a = f;
            rem_modp(a, g, p);
            if (std::all_of(a.begin(), a.end(), [](int x) { return x == 0; })) return false;
        }
    }
    return true;
}

}  // namespace

Fq::Fq(int q) : q_(q) {
    if (q > 256 || !is_prime_power(q, &p_, &e_))
        throw std::invalid_argument("q must be a prime power in [2,256], got " + std::to_string(q));
    if (e_ == 1) {
        modulus_ = {0, 1};
    } else {
        auto it = modulus_table().find({p_, e_});
        if (it == modulus_table().end())
            throw std::invalid_argument("no modulus on file for q = " + std::to_string(q));
        modulus_ = it->second;
        if (!irreducible_modp(modulus_, p_))
            throw std::logic_error("modulus for q = " + std::to_string(q) + " is reducible");
    }
    auto digits = [&](int a) {
        std::vector<int> d(e_);
        for (int i = 0; i < e_; ++i) { d[i] = a % p_; a /= p_; }
        return d;
    };
    auto code = [&](const std::vector<int>& d) {
        int a = 0;
        for (int i = e_ - 1; i >= 0; --i) a = a * p_ + d[i];
        return a;
    };
    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        auto da = digits(a);
        std::vector<int> dn(e_);
        for (int i = 0; i < e_; ++i) dn[i] = (p_ - da[i]) % p_;
        neg_[a] = elt(code(dn));
        for (int b = 0; b < q; ++b) {
            auto db = digits(b);
            std::vector<int> s(e_);
            for (int i = 0; i < e_; ++i) s[i] = (da[i] + db[i]) % p_;
            add_[a * q + b] = elt(code(s));
            std::vector<int> m(2 * e_ - 1, 0);
            for (int i = 0; i < e_; ++i)
                for (int j = 0; j < e_; ++j) m[i + j] = (m[i + j] + da[i] * db[j]) % p_;
            if (e_ > 1) rem_modp(m, modulus_, p_);
            m.resize(e_, 0);
            mul_[a * q + b] = elt(code(m));
        }
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (mul_[a * q + b] == 1) { inv_[a] = elt(b); break; }
}

const Fq& Fq::get(int q) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Fq>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return *it->second;
    std::unique_ptr<Fq> f(new Fq(q));
    const Fq& ref = *f;
    cache.emplace(q, std::move(f));
    return ref;
}

Fq::elt Fq::inv(elt a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(q_));
    return inv_[a];
}

Fq::elt Fq::pow(elt a, long long k) const {
    if (k < 0) { a = inv(a); k = -k; }
    elt r = 1;
    while (k > 0) {
        if (k & 1) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

Fq::elt Fq::from_int(long long n) const { return elt(((n % p_) + p_) % p_); }

std::string Fq::to_string(elt a) const {
    if (e_ == 1) return std::to_string(int(a));
    std::string s;
    int x = a;
    std::vector<int> d(e_);
    for (int i = 0; i < e_; ++i) { d[i] = x % p_; x /= p_; }
    for (int i = e_ - 1; i >= 0; --i) {
        if (d[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0) { s += std::to_string(d[i]); continue; }
        if (d[i] != 1) s += std::to_string(d[i]) + "*";
        s += "g";
        if (i > 1) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

FqElement::FqElement(int c) {
    if (c != 0 && c != 1) throw std::invalid_argument("field-free FqElement must be 0 or 1");
    v = Fq::elt(c);
}

namespace {
const Fq& pick(const FqElement& a, const FqElement& b) {
    if (a.F && b.F && a.F != b.F) throw std::invalid_argument("field mismatch");
    if (a.F) return *a.F;
    if (b.F) return *b.F;
    throw std::logic_error("operation on two field-free constants");
}
}  // namespace

FqElement operator+(const FqElement& a, const FqElement& b) {
    if (b.v == 0 && (a.F || !b.F)) return a;
    if (a.v == 0 && b.F) return b;
    const Fq& F = pick(a, b);
    return FqElement(F, F.add(a.v, b.v));
}
FqElement operator-(const FqElement& a, const FqElement& b) {
    if (b.v == 0) return a;
    const Fq& F = pick(a, b);
    return FqElement(F, F.sub(a.v, b.v));
}
FqElement operator-(const FqElement& a) {
    if (a.v == 0) return a;
    if (!a.F) throw std::logic_error("negation of field-free constant");
    return FqElement(*a.F, a.F->neg(a.v));
}
FqElement operator*(const FqElement& a, const FqElement& b) {
    if (a.v == 0) return a.F ? a : FqElement(0);
    if (b.v == 0) return b.F ? b : FqElement(0);
    if (!a.F && !b.F) return FqElement(1);
    const Fq& F = pick(a, b);
    return FqElement(F, F.mul(a.v, b.v));
}
FqElement operator/(const FqElement& a, const FqElement& b) { return a * b.inverse(); }
FqElement FqElement::inverse() const {
    if (v == 0) throw std::domain_error("inverse of zero");
    if (!F) return *this;
    return FqElement(*F, F->inv(v));
}
FqElement FqElement::pow(long long k) const {
    if (!F) return (v == 0 && k > 0) ? FqElement(0) : FqElement(1);
    return FqElement(*F, F->pow(v, k));
}
std::string FqElement::to_string() const { return F ? F->to_string(v) : std::to_string(int(v)); }

// ---------------------------------------------------------------------------
// Poly

const char* var_name(Var v) { return v == Var::theta ? "θ" : "t"; }

Poly::Poly(int zero) {
    if (zero != 0) throw std::invalid_argument("field-free Poly must be 0");
}

Poly::Poly(const Fq& F, Var v, std::vector<elt> coeffs) : F_(&F), var_(v), c_(std::move(coeffs)) {
    for (auto x : c_)
        if (x >= F.q()) throw std::invalid_argument("coefficient out of range");
    trim();
}

Poly Poly::constant(const Fq& F, Var v, elt c) { return Poly(F, v, {c}); }

Poly Poly::monomial(const Fq& F, Var v, elt c, int deg) {
    Poly r(F, v);
    if (c == 0) return r;
    r.c_.assign(deg + 1, 0);
    r.c_[deg] = c;
    return r;
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void Poly::adopt(const Poly& o) {
    if (!o.F_) return;
    if (!F_) { F_ = o.F_; var_ = o.var_; return; }
    if (F_ != o.F_) throw std::invalid_argument("field mismatch");
    if (var_ != o.var_) throw std::invalid_argument("variable-tag mismatch");
}

int Poly::term_count() const {
    return int(std::count_if(c_.begin(), c_.end(), [](elt x) { return x != 0; }));
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = F_->neg(x);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    adopt(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = F_->add(c_[i], o.c_[i]);
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    adopt(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = F_->sub(c_[i], o.c_[i]);
    trim();
    return *this;
}

namespace {

using E = Fq::elt;

void school_mul(const Fq& F, const E* a, int na, const E* b, int nb, std::vector<E>& out) {
    out.assign(na + nb - 1, 0);
    if (F.is_prime_field()) {
        const unsigned p = unsigned(F.p());
        std::vector<unsigned long long> acc(na + nb - 1, 0);
        for (int i = 0; i < na; ++i) {
            unsigned ai = a[i];
            if (!ai) continue;
            unsigned long long* row = acc.data() + i;
            for (int j = 0; j < nb; ++j) row[j] += ai * unsigned(b[j]);
        }
        for (int k = 0; k < na + nb - 1; ++k) out[k] = E(acc[k] % p);
        return;
    }
    for (int i = 0; i < na; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < nb; ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
}

void add_into(const Fq& F, std::vector<E>& dst, int off, const std::vector<E>& src) {
    if (dst.size() < off + src.size()) dst.resize(off + src.size(), 0);
    for (size_t i = 0; i < src.size(); ++i) dst[off + i] = F.add(dst[off + i], src[i]);
}

void sub_into(const Fq& F, std::vector<E>& dst, const std::vector<E>& src) {
    if (dst.size() < src.size()) dst.resize(src.size(), 0);
    for (size_t i = 0; i < src.size(); ++i) dst[i] = F.sub(dst[i], src[i]);
}

constexpr int kKaratsuba = 40;

void kara_mul(const Fq& F, const E* a, int na, const E* b, int nb, std::vector<E>& out) {
    if (na == 0 || nb == 0) { out.clear(); return; }
    if (std::min(na, nb) < kKaratsuba) { school_mul(F, a, na, b, nb, out); return; }
    if (na < nb) { std::swap(a, b); std::swap(na, nb); }
    int m = na / 2;
    if (nb <= m) {
        // unbalanced: split only a
        std::vector<E> lo, hi;
        kara_mul(F, a, m, b, nb, lo);
        kara_mul(F, a + m, na - m, b, nb, hi);
        out.assign(na + nb - 1, 0);
        add_into(F, out, 0, lo);
        add_into(F, out, m, hi);
        return;
    }
    std::vector<E> z0, z2, z1, sa(a, a + m), sb(b, b + m);
    kara_mul(F, a, m, b, m, z0);
    kara_mul(F, a + m, na - m, b + m, nb - m, z2);
    add_into(F, sa, 0, std::vector<E>(a + m, a + na));
    add_into(F, sb, 0, std::vector<E>(b + m, b + nb));
    kara_mul(F, sa.data(), int(sa.size()), sb.data(), int(sb.size()), z1);
    sub_into(F, z1, z0);
    sub_into(F, z1, z2);
    out.assign(na + nb - 1, 0);
    add_into(F, out, 0, z0);
    add_into(F, out, m, z1);
    add_into(F, out, 2 * m, z2);
    out.resize(na + nb - 1);
}

}  // namespace

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    r.adopt(a);
    r.adopt(b);
    if (a.c_.empty() || b.c_.empty()) return r;
    kara_mul(*r.F_, a.c_.data(), int(a.c_.size()), b.c_.data(), int(b.c_.size()), r.c_);
    r.trim();
    return r;
}

Poly Poly::scaled(elt s) const {
    Poly r = *this;
    if (s == 0) { r.c_.clear(); return r; }
    if (s == 1) return r;
    for (auto& x : r.c_) x = F_->mul(x, s);
    return r;
}

Poly Poly::shifted(int k) const {
    Poly r = *this;
    if (!r.c_.empty() && k > 0) r.c_.insert(r.c_.begin(), size_t(k), elt(0));
    return r;
}

Poly Poly::pow(long long k) const {
    if (k < 0) throw std::invalid_argument("negative polynomial power");
    if (!F_) {
        if (k == 0) throw std::logic_error("power of field-free zero");
        return *this;
    }
    Poly r = constant(*F_, var_, 1), b = *this;
    while (k > 0) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

Poly Poly::monic() const {
    if (c_.empty() || c_.back() == 1) return *this;
    return scaled(F_->inv(c_.back()));
}

Poly Poly::frobenius_var(int qpow) const {
    Poly r(*F_, var_);
    if (c_.empty()) return r;
    r.c_.assign(size_t(deg()) * qpow + 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i * qpow] = c_[i];
    return r;
}

Fq::elt Poly::eval(elt x) const {
    elt r = 0;
    for (int i = deg(); i >= 0; --i) r = F_->add(F_->mul(r, x), c_[i]);
    return r;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& quo, Poly& rem) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly r = a;
    r.adopt(b);
    const Fq& F = *r.F_;
    Poly qt(F, r.var_);
    int db = b.deg();
    if (r.deg() >= db) {
        qt.c_.assign(r.deg() - db + 1, 0);
        elt il = F.inv(b.lead());
        for (int i = r.deg(); i >= db; --i) {
            elt c = r.c_[i];
            if (c == 0) continue;
            c = F.mul(c, il);
            qt.c_[i - db] = c;
            for (int j = 0; j <= db; ++j) r.c_[i - db + j] = F.sub(r.c_[i - db + j], F.mul(c, b.c_[j]));
        }
        r.c_.resize(db);
        r.trim();
        qt.trim();
    }
    quo = std::move(qt);
    rem = std::move(r);
}

Poly Poly::exact_div(const Poly& b) const {
    Poly q, r;
    divmod(*this, b, q, r);
    if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
    return q;
}

Poly Poly::gcd(Poly a, Poly b) {
    a.adopt(b);
    b.adopt(a);
    while (!b.is_zero()) {
        Poly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly Poly::substitute_var(Var v) const {
    Poly r = *this;
    r.var_ = v;
    return r;
}

std::string Poly::to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    const char* x = var_name(var_);
    for (int i = deg(); i >= 0; --i) {
        elt c = c_[i];
        if (c == 0) continue;
        if (!s.empty()) s += "+";
        std::string cs = F_->to_string(c);
        bool compound = cs.find('+') != std::string::npos;
        if (i == 0) {
            s += cs;
            continue;
        }
        if (c != 1) s += (compound ? "(" + cs + ")" : cs) + "*";
        s += x;
        if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
}

// ---------------------------------------------------------------------------
// RationalFunc

RationalFunc::RationalFunc(int zero) {
    if (zero != 0) throw std::invalid_argument("field-free RationalFunc must be 0");
}

RationalFunc::RationalFunc(const Fq& F, Var v) : num_(F, v), den_(Poly::constant(F, v, 1)) {}

RationalFunc::RationalFunc(Poly num) : num_(std::move(num)) {
    if (num_.field()) den_ = Poly::constant(*num_.field(), num_.var(), 1);
}

RationalFunc::RationalFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.field() && den_.field() && num_.var() != den_.var())
        throw std::invalid_argument("variable-tag mismatch");
    if (!num_.field()) num_ = Poly(*den_.field(), den_.var());
    normalize();
}

RationalFunc RationalFunc::constant(const Fq& F, Var v, Fq::elt c) {
    return RationalFunc(Poly::constant(F, v, c));
}

void RationalFunc::normalize() {
    if (!num_.field()) return;
    const Fq& F = *num_.field();
    if (num_.is_zero()) {
        den_ = Poly::constant(F, num_.var(), 1);
        return;
    }
    if (!den_.is_constant()) {
        Poly g = Poly::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_.exact_div(g);
            den_ = den_.exact_div(g);
        }
    }
    Fq::elt l = den_.lead();
    if (l != 1) {
        Fq::elt il = F.inv(l);
        num_ = num_.scaled(il);
        den_ = den_.scaled(il);
    }
}

void RationalFunc::check_compatible(const RationalFunc& o) const {
    if (field() && o.field()) {
        if (field() != o.field()) throw std::invalid_argument("field mismatch");
        if (var() != o.var()) throw std::invalid_argument("variable-tag mismatch");
    }
}

int RationalFunc::valuation_inf() const {
    if (num_.is_zero()) return LaurentSeries::kExact;
    return den_.deg() - num_.deg();
}

RationalFunc RationalFunc::operator-() const {
    RationalFunc r = *this;
    if (!r.num_.is_zero()) r.num_ = -r.num_;
    return r;
}

RationalFunc& RationalFunc::operator+=(const RationalFunc& o) {
    check_compatible(o);
    if (o.is_zero()) {
        if (!field()) *this = o;
        return *this;
    }
    if (is_zero()) return *this = o;
    if (is_polynomial() && o.is_polynomial()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
        normalize();
        return *this;
    }
    Poly g = Poly::gcd(den_, o.den_);
    Poly bd = den_.exact_div(g), od = o.den_.exact_div(g);
    num_ = num_ * od + o.num_ * bd;
    den_ = bd * o.den_;
    normalize();
    return *this;
}

RationalFunc& RationalFunc::operator-=(const RationalFunc& o) { return *this += -o; }

RationalFunc& RationalFunc::operator*=(const RationalFunc& o) {
    check_compatible(o);
    if (is_zero()) {
        if (!field()) *this = RationalFunc(o.field() ? RationalFunc(*o.field(), o.var()) : *this);
        return *this;
    }
    if (o.is_zero()) return *this = o;
    if (is_polynomial() && o.is_polynomial()) {
        num_ = num_ * o.num_;
        return *this;
    }
    Poly g1 = Poly::gcd(num_, o.den_), g2 = Poly::gcd(o.num_, den_);
    Poly n = num_.exact_div(g1) * o.num_.exact_div(g2);
    Poly d = den_.exact_div(g2) * o.den_.exact_div(g1);
    num_ = std::move(n);
    den_ = std::move(d);
    Fq::elt l = den_.lead();
    if (l != 1) {
        Fq::elt il = field()->inv(l);
        num_ = num_.scaled(il);
        den_ = den_.scaled(il);
    }
    return *this;
}

RationalFunc& RationalFunc::operator/=(const RationalFunc& o) { return *this *= o.inverse(); }

RationalFunc RationalFunc::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero rational function");
    return RationalFunc(den_, num_);
}

RationalFunc RationalFunc::pow(long long k) const {
    if (k < 0) return inverse().pow(-k);
    RationalFunc r = RationalFunc(num_.pow(k), den_.pow(k));
    return r;
}

RationalFunc RationalFunc::substitute_var(Var v) const {
    RationalFunc r = *this;
    r.num_ = r.num_.substitute_var(v);
    r.den_ = r.den_.substitute_var(v);
    return r;
}

std::string RationalFunc::to_string() const {
    if (!field() || num_.is_zero()) return "0";
    std::string n = num_.to_string();
    if (den_.is_one()) return n;
    std::string d = den_.to_string();
    if (n.find('+') != std::string::npos) n = "(" + n + ")";
    if (d.find_first_of("+*^") != std::string::npos) d = "(" + d + ")";
    return n + "/" + d;
}

namespace {

class ExprParser {
public:
    ExprParser(const Fq& F, Var v, const std::string& s) : F_(F), v_(v), s_(s) {}

    RationalFunc parse_all() {
        RationalFunc r = expr();
        skip();
        if (i_ != s_.size()) fail("trailing characters");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("cannot parse '" + s_ + "': " + why + " at offset " + std::to_string(i_));
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) { ++i_; return true; }
        return false;
    }
    bool starts(const char* w) const { return s_.compare(i_, std::char_traits<char>::length(w), w) == 0; }

    RationalFunc expr() {
        RationalFunc r = term();
        while (true) {
            if (eat('+')) r += term();
            else if (eat('-')) r -= term();
            else return r;
        }
    }
    RationalFunc term() {
        RationalFunc r = factor();
        while (true) {
            if (eat('*')) r *= factor();
            else if (eat('/')) {
                RationalFunc d = factor();
                if (d.is_zero()) throw std::domain_error("division by zero in '" + s_ + "'");
                r /= d;
            } else return r;
        }
    }
    RationalFunc factor() {
        if (eat('-')) return -factor();
        RationalFunc b = base();
        if (eat('^')) {
            skip();
            bool negative = eat('-');
            skip();
            long long k = integer();
            b = b.pow(negative ? -k : k);
        }
        return b;
    }
    long long integer() {
        skip();
        size_t st = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (st == i_) fail("expected integer");
        return std::stoll(s_.substr(st, i_ - st));
    }
    RationalFunc base() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        if (eat('(')) {
            RationalFunc r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            long long n = integer();
            return RationalFunc::constant(F_, v_, F_.from_int(n));
        }
        if (starts("θ") || starts("theta")) {
            i_ += starts("θ") ? std::char_traits<char>::length("θ") : 5;
            if (v_ != Var::theta) throw std::invalid_argument("variable-tag mismatch in '" + s_ + "'");
            return RationalFunc(Poly::x(F_, v_));
        }
        if (s_[i_] == 't') {
            ++i_;
            if (v_ != Var::t) throw std::invalid_argument("variable-tag mismatch in '" + s_ + "'");
            return RationalFunc(Poly::x(F_, v_));
        }
        if (s_[i_] == 'g') {
            ++i_;
            if (F_.is_prime_field()) fail("generator g undefined over a prime field");
            return RationalFunc::constant(F_, v_, F_.gen());
        }
        fail("unexpected character");
    }

    const Fq& F_;
    Var v_;
    const std::string& s_;
    size_t i_ = 0;
};

}  // namespace

RationalFunc RationalFunc::parse(const Fq& F, Var v, const std::string& text) {
    return ExprParser(F, v, text).parse_all();
}

// ---------------------------------------------------------------------------
// LaurentSeries

LaurentSeries::LaurentSeries(const Fq& F, int v0, std::vector<Fq::elt> c) : F_(&F), v0_(v0), c_(std::move(c)) {}

LaurentSeries LaurentSeries::exact_zero(const Fq& F) { return LaurentSeries(F, kExact, {}); }

LaurentSeries LaurentSeries::zero_to(const Fq& F, int abs_prec) { return LaurentSeries(F, abs_prec, {}); }

Fq::elt LaurentSeries::coeff(int exponent) const {
    if (exponent < v0_) return 0;
    if (exponent >= abs_precision()) throw std::out_of_range("coefficient beyond series precision");
    return c_[exponent - v0_];
}

int LaurentSeries::valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i]) return v0_ + int(i);
    return abs_precision();
}

LaurentSeries LaurentSeries::normalized() const {
    if (is_exact_zero()) return *this;
    size_t k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    return LaurentSeries(*F_, v0_ + int(k), std::vector<Fq::elt>(c_.begin() + k, c_.end()));
}

LaurentSeries LaurentSeries::truncated(int abs_prec) const {
    if (abs_prec >= abs_precision()) return *this;
    if (abs_prec <= v0_) return zero_to(*F_, abs_prec);
    return LaurentSeries(*F_, v0_, std::vector<Fq::elt>(c_.begin(), c_.begin() + (abs_prec - v0_)));
}

LaurentSeries LaurentSeries::shifted(int k) const {
    if (is_exact_zero()) return *this;
    return LaurentSeries(*F_, v0_ + k, c_);
}

LaurentSeries LaurentSeries::scaled(Fq::elt s) const {
    if (is_exact_zero()) return *this;
    LaurentSeries r = *this;
    for (auto& x : r.c_) x = F_->mul(x, s);
    return r;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    if (a.F_ != b.F_) throw std::invalid_argument("field mismatch");
    const Fq& F = *a.F_;
    int start = std::min(a.v0_, b.v0_);
    int end = std::min(a.abs_precision(), b.abs_precision());
    if (end <= start) return LaurentSeries::zero_to(F, end);
    std::vector<Fq::elt> c(end - start, 0);
    for (int e = start; e < end; ++e) {
        Fq::elt x = (e >= a.v0_) ? a.c_[e - a.v0_] : 0;
        Fq::elt y = (e >= b.v0_) ? b.c_[e - b.v0_] : 0;
        c[e - start] = F.add(x, y);
    }
    return LaurentSeries(F, start, std::move(c));
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a0, const LaurentSeries& b0) {
    if (a0.is_exact_zero()) return a0;
    if (b0.is_exact_zero()) return b0;
    if (a0.F_ != b0.F_) throw std::invalid_argument("field mismatch");
    const Fq& F = *a0.F_;
    LaurentSeries a = a0.normalized(), b = b0.normalized();
    int v = a.v0_ + b.v0_;
    int absp = std::min(a.v0_ + b.abs_precision(), b.v0_ + a.abs_precision());
    int len = absp - v;
    if (len <= 0) return LaurentSeries::zero_to(F, absp);
    int na = std::min<int>(int(a.c_.size()), len), nb = std::min<int>(int(b.c_.size()), len);
    std::vector<Fq::elt> c;
    Poly pa(F, Var::theta, std::vector<Fq::elt>(a.c_.begin(), a.c_.begin() + na));
    Poly pb(F, Var::theta, std::vector<Fq::elt>(b.c_.begin(), b.c_.begin() + nb));
    Poly pc = pa * pb;
    c.assign(len, 0);
    for (int i = 0; i < len && i <= pc.deg(); ++i) c[i] = pc.coeff(i);
    return LaurentSeries(F, v, std::move(c));
}

LaurentSeries LaurentSeries::inverse() const {
    LaurentSeries a = normalized();
    if (a.c_.empty()) throw std::domain_error("inverse of a series with no known nonzero coefficient");
    const Fq& F = *F_;
    int n = int(a.c_.size());
    std::vector<Fq::elt> r(n, 0);
    Fq::elt il = F.inv(a.c_[0]);
    r[0] = il;
    for (int k = 1; k < n; ++k) {
        Fq::elt s = 0;
        for (int j = 1; j <= k; ++j) s = F.add(s, F.mul(a.c_[j], r[k - j]));
        r[k] = F.neg(F.mul(s, il));
    }
    return LaurentSeries(F, -a.v0_, std::move(r));
}

std::string LaurentSeries::to_string() const {
    if (!F_ || is_exact_zero()) return "0";
    std::string body;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        std::string cs = F_->to_string(c_[i]);
        if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
        std::string term;
        if (i == 0) term = cs;
        else {
            term = (c_[i] == 1 ? "" : cs + "*") + std::string("u");
            if (i > 1) term += "^" + std::to_string(i);
        }
        body += (body.empty() ? "" : " + ") + term;
    }
    std::string tail = "O(u^" + std::to_string(abs_precision()) + ")";
    if (body.empty()) return "0 + " + tail;
    return "u^" + std::to_string(v0_) + "*(" + body + ") + " + tail;
}

LaurentSeries laurent_expand(const RationalFunc& f, int N) {
    if (N < 0) throw std::invalid_argument("negative precision");
    const Fq* F = f.field();
    if (!F) throw std::invalid_argument("field-free rational function");
    if (f.is_zero()) return LaurentSeries::exact_zero(*F);
    const Poly& n = f.num();
    const Poly& d = f.den();
    int v0 = d.deg() - n.deg();
    // f = u^v0 * rev(n)(u) / rev(d)(u); rev(d)(0) = 1 since d is monic.
    std::vector<Fq::elt> rn(N + 1, 0), rd(N + 1, 0), out(N + 1, 0);
    for (int i = 0; i <= N && i <= n.deg(); ++i) rn[i] = n.coeff(n.deg() - i);
    for (int i = 0; i <= N && i <= d.deg(); ++i) rd[i] = d.coeff(d.deg() - i);
    for (int k = 0; k <= N; ++k) {
        Fq::elt s = rn[k];
        for (int j = 1; j <= k && j <= d.deg(); ++j) s = F->sub(s, F->mul(rd[j], out[k - j]));
        out[k] = s;
    }
    return LaurentSeries(*F, v0, std::move(out));
}

LaurentSeries laurent_expand(const Poly& f, int N) { return laurent_expand(RationalFunc(f), N); }

Poly L_factor(int e, int q) {
    const Fq& F = Fq::get(q);
    long long qe = ipow(q, e);
    if (qe > (1LL << 26)) throw std::length_error("theta^(q^e) too large to materialize");
    return Poly::x(F, Var::theta) - Poly::monomial(F, Var::theta, 1, int(qe));
}

Poly L_poly(int d, int q) {
    if (d < 0) throw std::invalid_argument("L_d needs d >= 0");
    const Fq& F = Fq::get(q);
    Poly r = Poly::constant(F, Var::theta, 1);
    for (int e = 1; e <= d; ++e) r = r * L_factor(e, q);
    return r;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }
std::ostream& operator<<(std::ostream& os, const RationalFunc& f) { return os << f.to_string(); }
std::ostream& operator<<(std::ostream& os, const LaurentSeries& s) { return os << s.to_string(); }

}  // namespace mzv

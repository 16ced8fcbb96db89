#include "mzv/eval.hpp"

#include <algorithm>
#include <climits>
#include <functional>

namespace mzv {

namespace {

using Series = std::vector<Fq::elt>;  // power series in u, fixed length

Series series_mul(const Fq& F, const Series& a, const Series& b, int M) {
    Series r(M, 0);
    for (int i = 0; i < int(a.size()) && i < M; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < int(b.size()) && i + j < M; ++j)
            if (b[j]) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    return r;
}

Series series_inv(const Fq& F, const Series& a, int M) {
    Series r(M, 0);
    Fq::elt i0 = F.inv(a[0]);
    r[0] = i0;
    for (int k = 1; k < M; ++k) {
        Fq::elt acc = 0;
        for (int j = 1; j <= k && j < int(a.size()); ++j)
            if (a[j] && r[k - j]) acc = F.add(acc, F.mul(a[j], r[k - j]));
        r[k] = F.neg(F.mul(acc, i0));
    }
    return r;
}

Series series_pow(const Fq& F, Series a, int k, int M) {
    Series r(M, 0);
    r[0] = 1;
    while (k > 0) {
        if (k & 1) r = series_mul(F, r, a, M);
        k >>= 1;
        if (k) a = series_mul(F, a, a, M);
    }
    return r;
}

long long deg_L(int q, int d) {
    long long s = 0, t = 1;
    for (int i = 1; i <= d; ++i) {
        t *= q;
        s += t;
        if (s > (1LL << 50)) return 1LL << 50;
    }
    return s;
}

}  // namespace

std::vector<Poly> monic_polys(const Fq& F, int d, long long cap) {
    if (d < 0) return {};
    long long n = 1;
    for (int i = 0; i < d; ++i) {
        n *= F.q();
        if (n > cap) throw ResourceError("enumeration of q^" + std::to_string(d) + " monic polynomials exceeds cap " +
                                         std::to_string(cap));
    }
    std::vector<Poly> out;
    out.reserve(size_t(n));
    std::vector<Fq::elt> c(d + 1, 0);
    c[d] = 1;
    for (long long k = 0; k < n; ++k) {
        long long x = k;
        for (int i = 0; i < d; ++i) {
            c[i] = Fq::elt(x % F.q());
            x /= F.q();
        }
        out.emplace_back(F, Var::theta, c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// PowerSumTable

PowerSumTable::PowerSumTable(const Fq& F, Bullet b, long long cap) : F_(&F), b_(b), cap_(cap) {}

PowerSumTable& PowerSumTable::shared(const Fq& F, Bullet b) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<PowerSumTable>> tables;
    std::lock_guard lock(mu);
    auto& slot = tables[{F.q(), int(b)}];
    if (!slot) slot = std::make_unique<PowerSumTable>(F, b);
    return *slot;
}

const Poly& PowerSumTable::L(int d) {
    std::lock_guard lock(mu_);
    auto it = L_.find(d);
    if (it != L_.end()) return it->second;
    Poly r = d == 0 ? Poly::constant(*F_, Var::theta, 1) : L(d - 1) * factor_pow(d, 1);
    return L_.emplace(d, std::move(r)).first->second;
}

const Poly& PowerSumTable::factor_pow(int e, int k) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(e, k);
    auto it = fpow_.find(key);
    if (it != fpow_.end()) return it->second;
    Poly r = k == 0 ? Poly::constant(*F_, Var::theta, 1)
                    : (k == 1 ? L_factor(e, F_->q()) : factor_pow(e, k / 2) * factor_pow(e, k - k / 2));
    return fpow_.emplace(key, std::move(r)).first->second;
}

const Poly& PowerSumTable::numerator(int d, int s) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(d, s);
    auto it = num_.find(key);
    if (it != num_.end()) return it->second;
    Poly r = Poly::constant(*F_, Var::theta, 1);
    if (b_ == Bullet::Zeta && d > 0) {
        const Poly& Ld = L(d);
        r = Poly(*F_, Var::theta);
        for (const Poly& a : monic_polys(*F_, d, cap_)) r += Ld.exact_div(a).pow(s);
    }
    return num_.emplace(key, std::move(r)).first->second;
}

RationalFunc PowerSumTable::power_sum(int d, int s) {
    if (d < 0) return RationalFunc(*F_, Var::theta);
    return RationalFunc(numerator(d, s), L(d).pow(s));
}

std::vector<Fq::elt> PowerSumTable::series(int d, int s, int M) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(d, s);
    auto it = ser_.find(key);
    if (it != ser_.end() && int(it->second.size()) >= M) return Series(it->second.begin(), it->second.begin() + M);
    const Fq& F = *F_;
    Series r(M, 0);
    if (d == 0) {
        r[0] = 1;
    } else if (b_ == Bullet::Li) {
        long long v = s * deg_L(F.q(), d);
        if (v < M) {
            // L_d = c * theta^D * rev(u) with rev(0) = 1
            const Poly& Ld = L(d);
            int D = Ld.deg();
            Series rev(M - v, 0);
            Fq::elt lc = Ld.lead();
            for (int i = 0; i < int(rev.size()) && i <= D; ++i) rev[i] = F.div(Ld.coeff(D - i), lc);
            Series t = series_pow(F, series_inv(F, rev, M - int(v)), s, M - int(v));
            Fq::elt sc = F.pow(F.inv(lc), s);
            for (int i = 0; i < int(t.size()); ++i) r[v + i] = F.mul(sc, t[i]);
        }
    } else {
        long long v = (long long)s * d;
        if (v < M) {
            int Mt = M - int(v);
            for (const Poly& a : monic_polys(F, d, cap_)) {
                Series rev(std::min(Mt, d + 1), 0);
                for (int i = 0; i < int(rev.size()); ++i) rev[i] = a.coeff(d - i);
                Series t = series_pow(F, series_inv(F, rev, Mt), s, Mt);
                for (int i = 0; i < Mt; ++i) r[v + i] = F.add(r[v + i], t[i]);
            }
        }
    }
    ser_[key] = r;
    return r;
}

// ---------------------------------------------------------------------------
// exact realizations

namespace {

// B(e, sigma) = L_{<e}(sigma) * L_{e-1}^{wt sigma}, a polynomial, for e >= 1.
class BTable {
public:
    explicit BTable(PowerSumTable& T) : T_(T) {}

    const Poly& get(int e, const Index& s) {
        auto key = std::make_pair(e, s);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        const Fq& F = T_.field();
        Poly r;
        if (s.empty()) r = Poly::constant(F, Var::theta, 1);
        else if (e == 1) r = dep(s) <= 1 ? Poly::constant(F, Var::theta, 1) : Poly(F, Var::theta);
        else {
            int w = wt(s);
            Index tail = head_rest(s);
            r = get(e - 1, s) * T_.factor_pow(e - 1, w);
            const Poly& bt = get(e - 1, tail);
            if (!bt.is_zero()) r += T_.numerator(e - 1, s[0]) * bt * T_.factor_pow(e - 1, w - s[0]);
        }
        return memo_.emplace(key, std::move(r)).first->second;
    }

private:
    PowerSumTable& T_;
    std::map<std::pair<int, Index>, Poly> memo_;
};

}  // namespace

RationalFunc realize_below(PowerSumTable& T, const HElem& P, int d) {
    const Fq& F = T.field();
    RationalFunc acc(F, Var::theta);
    if (d <= 0) return acc;
    BTable B(T);
    for (const auto& [n, c] : P) {
        if (n.empty()) {
            acc += c;
            continue;
        }
        acc += c * RationalFunc(B.get(d, n), T.L(d - 1).pow(wt(n)));
    }
    return acc;
}

RationalFunc realize_level(PowerSumTable& T, const HElem& P, int d) {
    const Fq& F = T.field();
    RationalFunc acc(F, Var::theta);
    if (d < 0) return acc;
    if (d == 0) {
        for (const auto& [n, c] : P)
            if (dep(n) <= 1) acc += c;
        return acc;
    }
    BTable B(T);
    for (const auto& [n, c] : P) {
        if (n.empty()) continue;
        Index tail = head_rest(n);
        const Poly& bt = B.get(d, tail);
        if (bt.is_zero()) continue;
        Poly num = T.numerator(d, n[0]) * bt;
        Poly den = T.L(d).pow(n[0]) * T.L(d - 1).pow(wt(tail));
        acc += c * RationalFunc(num, den);
    }
    return acc;
}

RationalFunc realize_level(const HElem& P, Bullet b, int d) {
    if (!P.field()) return RationalFunc();
    return realize_level(PowerSumTable::shared(*P.field(), b), P, d);
}

RationalFunc realize_below(const HElem& P, Bullet b, int d) {
    if (!P.field()) return RationalFunc();
    return realize_below(PowerSumTable::shared(*P.field(), b), P, d);
}

// ---------------------------------------------------------------------------
// truncated sums

long long level_valuation_bound(int q, Bullet b, int d, int s1) {
    long long dl = deg_L(q, d);
    if (b == Bullet::Li || s1 <= q) return s1 * dl;
    // zeta power sums of exponent above q: every summand of the generating series
    // built from Carlitz's linear polynomial has valuation at least that of S_d(1)
    return std::max(dl, (long long)s1 * d);
}

LaurentSeries realize_trunc_abs(const HElem& P, Bullet b, int abs_last, TruncInfo* info) {
    if (!P.field()) return LaurentSeries();
    const Fq& F = *P.field();
    if (P.is_zero()) return LaurentSeries::exact_zero(F);
    PowerSumTable& T = PowerSumTable::shared(F, b);
    int V = INT_MAX;
    for (const auto& kv : P) V = std::min(V, kv.second.valuation_inf());
    int M = std::max(1, abs_last + 1 - V);

    // suffix table, deepest first so updates read the previous level of shorter suffixes
    std::map<Index, int> id;
    std::vector<Index> suf;
    for (const auto& kv : P)
        for (size_t i = 0; i < kv.first.size(); ++i) {
            Index t(kv.first.begin() + i, kv.first.end());
            if (id.emplace(t, 0).second) suf.push_back(t);
        }
    std::sort(suf.begin(), suf.end(), [](const Index& a, const Index& b) { return a.size() > b.size(); });
    for (size_t i = 0; i < suf.size(); ++i) id[suf[i]] = int(i);

    int D = 1;
    for (;; ++D) {
        bool enough = true;
        for (const auto& kv : P)
            if (!kv.first.empty() && level_valuation_bound(F.q(), b, D, kv.first[0]) < M) enough = false;
        if (enough) break;
    }

    Series one(M, 0);
    one[0] = 1;
    std::vector<Series> W(suf.size(), Series(M, 0));  // W_{<0} = 0 on nonempty suffixes
    auto Wof = [&](const Index& s) -> const Series& { return s.empty() ? one : W[id.at(s)]; };
    for (int e = 0; e < D; ++e)
        for (size_t i = 0; i < suf.size(); ++i) {
            const Index& s = suf[i];
            Series t = series_mul(F, T.series(e, s[0], M), Wof(head_rest(s)), M);
            for (int k = 0; k < M; ++k) W[i][k] = F.add(W[i][k], t[k]);
        }

    // the first omitted level must vanish to the working precision
    for (const auto& kv : P) {
        if (kv.first.empty()) continue;
        Series t = series_mul(F, T.series(D, kv.first[0], M), Wof(head_rest(kv.first)), M);
        for (int k = 0; k < M; ++k)
            if (t[k]) throw std::logic_error("tail bound violated at level " + std::to_string(D));
    }
    if (info) {
        info->cutoff = D;
        info->checked_level = D;
    }

    LaurentSeries acc = LaurentSeries::zero_to(F, abs_last + 1);
    for (const auto& [n, c] : P) {
        int vc = c.valuation_inf();
        if (vc > abs_last) continue;  // beyond the requested precision
        LaurentSeries cs = laurent_expand(c, abs_last - vc);
        LaurentSeries val(F, 0, Wof(n));
        acc = acc + cs * val;
    }
    return acc.truncated(abs_last + 1);
}

LaurentSeries realize_trunc(const HElem& P, Bullet b, int N, TruncInfo* info) {
    if (!P.field() || P.is_zero()) return realize_trunc_abs(P, b, 0, info);
    int V = INT_MAX;
    for (const auto& kv : P) V = std::min(V, kv.second.valuation_inf());
    return realize_trunc_abs(P, b, V + N, info);
}

// ---------------------------------------------------------------------------
// certificates

std::vector<std::vector<ExtField::elt>> point_power_sums(const PointField& P, ExtField::elt x, Bullet b, int maxlevel,
                                                          int maxk) {
    const ExtField& E = P.ext();
    const int q = P.base().q();
    std::vector<std::vector<ExtField::elt>> S(maxlevel + 1, std::vector<ExtField::elt>(maxk + 1, 0));
    if (b == Bullet::Li) {
        ExtField::elt L = 1;
        for (int e = 0; e <= maxlevel; ++e) {
            if (e > 0) L = E.mul(L, E.sub(x, P.frob(x, e)));
            ExtField::elt inv = E.inv(L), acc = 1;
            for (int k = 1; k <= maxk; ++k) S[e][k] = acc = E.mul(acc, inv);
        }
        return S;
    }
    std::vector<ExtField::elt> alpha{1};  // e_e(z) = sum alpha_i z^{q^i}
    for (int e = 0; e <= maxlevel; ++e) {
        ExtField::elt xe = E.pow(x, e), Ee = 0;
        for (int i = 0; i <= e; ++i) Ee = E.add(Ee, E.mul(alpha[i], P.frob(xe, i)));
        ExtField::elt Einv = E.inv(Ee);
        std::vector<ExtField::elt> f(e + 1);
        for (int i = 0; i <= e; ++i) f[i] = E.mul(alpha[i], Einv);
        // sum_k S_e(k+1) z^k = f_0 / (1 - sum_i f_i z^{q^i})
        std::vector<ExtField::elt> c(maxk, 0);
        for (int k = 0; k < maxk; ++k) {
            ExtField::elt acc = k == 0 ? f[0] : 0;
            long long qi = 1;
            for (int i = 0; i <= e && qi <= k; ++i, qi *= q) acc = E.add(acc, E.mul(f[i], c[k - qi]));
            c[k] = acc;
            S[e][k + 1] = acc;
        }
        // e_{e+1} = e_e^q - E_e^{q-1} e_e
        ExtField::elt Eq1 = E.pow(Ee, q - 1);
        std::vector<ExtField::elt> next(e + 2, 0);
        for (int i = 0; i <= e + 1; ++i) {
            ExtField::elt a = i > 0 ? P.frob(alpha[i - 1], 1) : 0;
            ExtField::elt bterm = i <= e ? E.mul(Eq1, alpha[i]) : 0;
            next[i] = E.sub(a, bterm);
        }
        alpha = std::move(next);
    }
    return S;
}

namespace {

int max_shift(const LevelIdentity& id) {
    int m = INT_MIN;
    for (const auto& t : id.terms)
        for (const auto& f : t.factors) m = std::max(m, f.shift);
    return m == INT_MIN ? 0 : m;
}

Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Poly g = Poly::gcd(a, b);
    return (a.exact_div(g) * b).monic();
}

bool term_is_zero(const IdentityTerm& t) {
    if (t.coeff.is_zero()) return true;
    for (const auto& f : t.factors)
        if (f.X.is_zero()) return true;
    return false;
}

Poly clearing_denominator(const Fq& F, const LevelIdentity& id) {
    Poly G = Poly::constant(F, Var::theta, 1);
    for (const auto& t : id.terms) {
        if (term_is_zero(t)) continue;
        Poly g = t.coeff.den();
        for (const auto& f : t.factors) {
            Poly h = Poly::constant(F, Var::theta, 1);
            for (const auto& kv : f.X) h = lcm(h, kv.second.den());
            g = g * h;
        }
        G = lcm(G, g);
    }
    return G;
}

long long count_exact_degree(int q, int K) {
    // Moebius inversion over divisors of K
    auto mu = [](int n) {
        int r = 1;
        for (int p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                r = -r;
            }
        if (n > 1) r = -r;
        return r;
    };
    long long s = 0;
    for (int k = 1; k <= K; ++k)
        if (K % k == 0) s += mu(K / k) * ipow(q, k);
    return s;
}

}  // namespace

long long identity_degree_bound(const Fq& F, const LevelIdentity& id, int d) {
    const int q = F.q();
    int L = std::max(0, d + max_shift(id));
    std::vector<long long> H(L + 1, 0);
    long long minv = LLONG_MAX;
    for (const auto& t : id.terms) {
        if (term_is_zero(t)) continue;
        std::vector<long long> tx(L + 1, 0);
        long long v = t.coeff.valuation_inf();
        for (const auto& f : t.factors) {
            int l = d + f.shift, W = 0, A = 0, vf = INT_MAX;
            for (const auto& [n, c] : f.X) {
                W = std::max(W, wt(n));
                if (!n.empty()) A = std::max(A, n[0]);
                vf = std::min(vf, c.valuation_inf());
            }
            v += vf;
            for (int e = 1; e <= l - 1 && e <= L; ++e) tx[e] += W;
            if (f.level && l >= 1 && l <= L) tx[l] += A;
        }
        for (int e = 0; e <= L; ++e) H[e] = std::max(H[e], tx[e]);
        minv = std::min(minv, v);
    }
    if (minv == LLONG_MAX) return -1;
    long long deg = 0, qe = 1;
    for (int e = 1; e <= L; ++e) {
        qe *= q;
        deg += H[e] * qe;
    }
    return deg + clearing_denominator(F, id).deg() - minv;
}

CertReport certify_identity(const Fq& F, const LevelIdentity& id, int dmin, int dmax, const CertOptions& opt) {
    CertReport rep;
    for (const auto& t : id.terms) {
        if (t.coeff.field() && t.coeff.field() != &F) throw std::invalid_argument("field mismatch");
        for (const auto& f : t.factors)
            if (f.X.field() && f.X.field() != &F) throw std::invalid_argument("field mismatch");
    }
    if (dmax < dmin) {
        rep.ok = true;
        return rep;
    }
    const int q = F.q();
    const int nd = dmax - dmin + 1;
    std::vector<long long> bound(nd);
    for (int i = 0; i < nd; ++i) bound[i] = identity_degree_bound(F, id, dmin + i);
    long long B = *std::max_element(bound.begin(), bound.end());
    rep.degree_bound = B;
    Poly G = clearing_denominator(F, id);
    int Lmax = std::max(0, dmax + max_shift(id));

    int K = std::max(1, Lmax + 1);
    for (;; ++K) {
        long double order = 1;
        for (int i = 0; i < K; ++i) order *= q;
        if (order > (long double)opt.max_field_order)
            throw ResourceError("certificate needs more than " + std::to_string(B) + " roots; field cap reached");
        if (count_exact_degree(q, K) > B + G.deg()) break;
    }
    rep.field_degree = K;
    PointField PF(F, K);
    const ExtField& E = PF.ext();

    // suffix table shared by all factors; id 0 is the empty index
    std::map<Index, int> sid;
    std::vector<Index> suf{Index{}};
    sid[Index{}] = 0;
    int maxk = 1;
    for (const auto& t : id.terms)
        for (const auto& f : t.factors)
            for (const auto& kv : f.X)
                for (size_t i = 0; i < kv.first.size(); ++i) {
                    maxk = std::max(maxk, kv.first[i]);
                    Index s(kv.first.begin() + i, kv.first.end());
                    if (sid.emplace(s, int(suf.size())).second) suf.push_back(s);
                }
    std::vector<int> order(suf.size() - 1);
    for (size_t i = 1; i < suf.size(); ++i) order[i - 1] = int(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return suf[a].size() > suf[b].size(); });
    std::vector<int> head(suf.size(), 0), tail(suf.size(), 0);
    for (size_t i = 1; i < suf.size(); ++i) {
        head[i] = suf[i][0];
        tail[i] = sid.at(head_rest(suf[i]));
    }

    struct FlatFactor {
        bool level;
        int shift;
        std::vector<std::pair<int, const RationalFunc*>> terms;  // (suffix id, coefficient)
    };
    struct FlatTerm {
        const RationalFunc* coeff;
        std::vector<FlatFactor> factors;
    };
    std::vector<FlatTerm> flat;
    for (const auto& t : id.terms) {
        if (term_is_zero(t)) continue;
        FlatTerm ft{&t.coeff, {}};
        for (const auto& f : t.factors) {
            FlatFactor ff{f.level, f.shift, {}};
            for (const auto& kv : f.X) ff.terms.emplace_back(sid.at(kv.first), &kv.second);
            ft.factors.push_back(std::move(ff));
        }
        flat.push_back(std::move(ft));
    }
    auto ev = [&](const RationalFunc& c, ExtField::elt x) -> ExtField::elt {
        ExtField::elt n = PF.eval(c.num(), x);
        if (!n) return 0;
        return c.den().is_one() ? n : E.div(n, PF.eval(c.den(), x));
    };

    std::vector<long long> cnt(nd, 0);
    std::vector<int> state(nd, 0);  // 0 open, 1 proved, -1 failed
    for (int i = 0; i < nd; ++i)
        if (bound[i] < 0) state[i] = 1;
    auto resolved = [&]() {
        int firstfail = nd;
        for (int i = 0; i < nd; ++i)
            if (state[i] < 0) {
                firstfail = i;
                break;
            }
        for (int i = 0; i < firstfail; ++i)
            if (state[i] == 0) return false;
        return true;
    };

    const int nl = Lmax + 1;
    std::vector<ExtField::elt> W(size_t(nl) * suf.size());
    PointField::OrbitStream os(PF);
    ExtField::elt x;
    while (!resolved() && os.next(x)) {
        if (PF.eval(G, x) == 0) continue;
        ++rep.points;
        auto S = point_power_sums(PF, x, id.bullet, Lmax, maxk);
        // W_{<e}: empty index is 1 at every e, nonempty suffixes start at 0
        for (size_t i = 0; i < suf.size(); ++i) W[i] = i == 0 ? 1 : 0;
        for (int e = 0; e + 1 < nl; ++e) {
            ExtField::elt* cur = &W[size_t(e) * suf.size()];
            ExtField::elt* nxt = &W[size_t(e + 1) * suf.size()];
            nxt[0] = 1;
            for (int i : order) nxt[i] = E.add(cur[i], E.mul(S[e][head[i]], cur[tail[i]]));
        }
        auto value = [&](bool level, int l, int i) -> ExtField::elt {
            if (level) {
                if (l < 0) return 0;
                if (i == 0) return l == 0 ? 1 : 0;
                return E.mul(S[l][head[i]], W[size_t(l) * suf.size() + tail[i]]);
            }
            if (l <= 0) return 0;
            if (i == 0) return 1;
            return W[size_t(l) * suf.size() + i];
        };
        // coefficients are the same at every d
        std::vector<std::vector<std::vector<ExtField::elt>>> cval(flat.size());
        std::vector<ExtField::elt> tval(flat.size());
        for (size_t t = 0; t < flat.size(); ++t) {
            tval[t] = ev(*flat[t].coeff, x);
            cval[t].resize(flat[t].factors.size());
            for (size_t f = 0; f < flat[t].factors.size(); ++f)
                for (const auto& [i, c] : flat[t].factors[f].terms) cval[t][f].push_back(ev(*c, x));
        }
        for (int di = 0; di < nd; ++di) {
            if (state[di] != 0) continue;
            int d = dmin + di;
            ExtField::elt sum = 0;
            for (size_t t = 0; t < flat.size(); ++t) {
                ExtField::elt prod = tval[t];
                for (size_t f = 0; f < flat[t].factors.size() && prod; ++f) {
                    const FlatFactor& ff = flat[t].factors[f];
                    ExtField::elt fv = 0;
                    for (size_t k = 0; k < ff.terms.size(); ++k) {
                        ExtField::elt v = value(ff.level, d + ff.shift, ff.terms[k].first);
                        if (v) fv = E.add(fv, E.mul(cval[t][f][k], v));
                    }
                    prod = E.mul(prod, fv);
                }
                sum = E.add(sum, prod);
            }
            if (sum != 0) {
                state[di] = -1;
            } else if (++cnt[di] * K > bound[di]) {
                state[di] = 1;
            }
        }
    }
    for (int i = 0; i < nd; ++i)
        if (state[i] < 0) {
            rep.first_failing_d = dmin + i;
            break;
        }
    bool all = true;
    for (int i = 0; i < nd; ++i)
        if (state[i] != 1) all = false;
    rep.ok = all;
    if (!all && !rep.first_failing_d) rep.note = "points exhausted before the degree bound was met";
    return rep;
}

LevelIdentity pair_identity(const HElem& P, const HElem& Q, Bullet b) {
    const Fq* F = P.field() ? P.field() : Q.field();
    LevelIdentity id;
    id.bullet = b;
    if (!F) return id;
    RationalFunc one = RationalFunc::one(*F, Var::theta);
    id.terms.push_back({one, {Factor{P, true, 0}}});
    id.terms.push_back({one, {Factor{Q, true, 1}}});
    return id;
}

LevelIdentity product_identity(const HElem& P, const HElem& Q, Bullet b) {
    const Fq* F = P.field() ? P.field() : Q.field();
    LevelIdentity id;
    id.bullet = b;
    if (!F) return id;
    RationalFunc one = RationalFunc::one(*F, Var::theta);
    id.terms.push_back({one, {Factor{P, false, 0}, Factor{Q, false, 0}}});
    id.terms.push_back({-one, {Factor{product(P, Q, b), false, 0}}});
    return id;
}

}  // namespace mzv

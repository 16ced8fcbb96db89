#include "mzv/hspace.hpp"

#include <cctype>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

namespace mzv {

Bullet parse_bullet(const std::string& s) {
    if (s == "li" || s == "Li") return Bullet::Li;
    if (s == "zeta" || s == "ζ") return Bullet::Zeta;
    throw std::invalid_argument("unknown bullet '" + s + "' (expected li or zeta)");
}

const char* bullet_name(Bullet b) { return b == Bullet::Li ? "li" : "zeta"; }

// ---------------------------------------------------------------------------
// HElem

HElem HElem::of(const Fq& F, const Index& s) { return of(F, s, RationalFunc::one(F, Var::theta)); }

HElem HElem::of(const Fq& F, const Index& s, const RationalFunc& c) {
    HElem h(F);
    h.add_term(s, c);
    return h;
}

HElem HElem::from_comb(const Fq& F, const FpComb& c) {
    HElem h(F);
    for (const auto& [s, a] : c)
        if (a % F.p()) h.terms_.emplace(s, RationalFunc::constant(F, Var::theta, F.from_int(a)));
    return h;
}

RationalFunc HElem::coeff(const Index& s) const {
    auto it = terms_.find(s);
    if (it != terms_.end()) return it->second;
    return F_ ? RationalFunc(*F_, Var::theta) : RationalFunc();
}

std::vector<Index> HElem::support() const {
    std::vector<Index> r;
    for (const auto& kv : terms_) r.push_back(kv.first);
    return r;
}

bool HElem::is_homogeneous(int* w) const {
    int w0 = -1;
    for (const auto& kv : terms_) {
        int x = wt(kv.first);
        if (w0 < 0) w0 = x;
        else if (x != w0) return false;
    }
    if (w) *w = w0 < 0 ? 0 : w0;
    return true;
}

int HElem::max_depth() const {
    int d = 0;
    for (const auto& kv : terms_) d = std::max(d, dep(kv.first));
    return d;
}

void HElem::adopt(const HElem& o) {
    if (!o.F_) return;
    if (!F_) F_ = o.F_;
    else if (F_ != o.F_) throw std::invalid_argument("field mismatch");
}

void HElem::add_term(const Index& s, const RationalFunc& c) {
    if (c.is_zero()) return;
    if (c.field()) {
        if (!F_) F_ = c.field();
        else if (F_ != c.field()) throw std::invalid_argument("field mismatch");
        if (c.var() != Var::theta) throw std::invalid_argument("variable-tag mismatch: coefficients live in F_q(θ)");
    }
    auto it = terms_.find(s);
    if (it == terms_.end()) {
        terms_.emplace(s, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

HElem& HElem::operator+=(const HElem& o) {
    adopt(o);
    for (const auto& [s, c] : o.terms_) add_term(s, c);
    return *this;
}

HElem& HElem::operator-=(const HElem& o) {
    adopt(o);
    for (const auto& [s, c] : o.terms_) add_term(s, -c);
    return *this;
}

HElem HElem::operator-() const {
    HElem r(*this);
    for (auto& kv : r.terms_) kv.second = -kv.second;
    return r;
}

HElem HElem::scaled(const RationalFunc& c) const {
    HElem r;
    r.F_ = F_;
    if (c.is_zero()) return r;
    for (const auto& [s, a] : terms_) {
        RationalFunc x = a * c;
        if (!x.is_zero()) r.terms_.emplace(s, x);
    }
    return r;
}

namespace {
std::string index_body(const Index& s) {
    std::string r = "[";
    for (size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + std::to_string(s[i]);
    return r + "]";
}
}  // namespace

std::string HElem::to_string() const {
    if (terms_.empty()) return "0";
    std::string r;
    for (const auto& [s, c] : terms_) {
        if (!r.empty()) r += " + ";
        std::string cs = c.to_string();
        if (cs.find_first_of("+/") != std::string::npos) cs = "(" + cs + ")";
        r += cs + "*" + index_body(s);
    }
    return r;
}

HElem HElem::parse(const Fq& F, const std::string& text) {
    HElem h(F);
    size_t i = 0;
    auto skip = [&]() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (text.compare(i, std::string::npos, "0") == 0) return h;
    bool negate = false;
    while (true) {
        skip();
        if (i >= text.size()) break;
        // coefficient: everything up to "*[" at parenthesis depth 0, or nothing if a bracket starts here
        RationalFunc c = RationalFunc::one(F, Var::theta);
        if (text[i] != '[') {
            size_t st = i;
            int depth = 0;
            while (i < text.size()) {
                char ch = text[i];
                if (ch == '(') ++depth;
                else if (ch == ')') --depth;
                else if (depth == 0 && ch == '*' && i + 1 < text.size() && text[i + 1] == '[') break;
                ++i;
            }
            if (i >= text.size()) throw std::invalid_argument("cannot parse combination '" + text + "'");
            c = RationalFunc::parse(F, Var::theta, text.substr(st, i - st));
            ++i;  // '*'
        }
        if (text[i] != '[') throw std::invalid_argument("expected '[' in '" + text + "'");
        size_t close = text.find(']', i);
        if (close == std::string::npos) throw std::invalid_argument("unterminated index in '" + text + "'");
        Index s;
        std::string body = text.substr(i + 1, close - i - 1);
        size_t j = 0;
        while (j < body.size()) {
            while (j < body.size() && (body[j] == ',' || std::isspace(static_cast<unsigned char>(body[j])))) ++j;
            if (j >= body.size()) break;
            size_t k = j;
            while (k < body.size() && std::isdigit(static_cast<unsigned char>(body[k]))) ++k;
            if (k == j) throw std::invalid_argument("bad index entry in '" + text + "'");
            s.push_back(std::stoi(body.substr(j, k - j)));
            j = k;
        }
        if (!is_valid_index(s)) throw std::invalid_argument("index entries must be positive");
        h.add_term(s, negate ? -c : c);
        i = close + 1;
        skip();
        if (i >= text.size()) break;
        if (text[i] == '+') negate = false;
        else if (text[i] == '-') negate = true;
        else throw std::invalid_argument("expected '+' between terms in '" + text + "'");
        ++i;
    }
    return h;
}

nlohmann::json HElem::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [s, c] : terms_) j.push_back({{"index", s}, {"coeff", c.to_string()}});
    return j;
}

HElem HElem::from_json(const Fq& F, const nlohmann::json& j) {
    HElem h(F);
    for (const auto& t : j) {
        Index s = t.at("index").get<Index>();
        if (!is_valid_index(s)) throw std::invalid_argument("index entries must be positive");
        h.add_term(s, RationalFunc::parse(F, Var::theta, t.at("coeff").get<std::string>()));
    }
    return h;
}

// ---------------------------------------------------------------------------
// bracket and box-plus

HElem bracket(const Fq& F, const std::vector<BracketPart>& parts) {
    HElem acc = HElem::of(F, Index{});
    for (const auto& part : parts) {
        HElem next(F);
        if (std::holds_alternative<Index>(part)) {
            const Index& s = std::get<Index>(part);
            for (const auto& [u, c] : acc) next.add_term(concat(u, s), c);
        } else {
            const HElem& P = std::get<HElem>(part);
            for (const auto& [u, c] : acc)
                for (const auto& [v, d] : P) next.add_term(concat(u, v), c * d);
        }
        acc = std::move(next);
    }
    return acc;
}

Index boxplus(const Index& s, const Index& n) {
    if (s.empty() || n.empty()) return {};
    Index r(s.begin(), s.end() - 1);
    r.push_back(s.back() + n.front());
    r.insert(r.end(), n.begin() + 1, n.end());
    return r;
}

HElem boxplus(const HElem& P, const HElem& Q) {
    HElem r;
    if (P.field()) r = HElem(*P.field());
    else if (Q.field()) r = HElem(*Q.field());
    for (const auto& [s, a] : P) {
        if (s.empty()) continue;
        for (const auto& [n, b] : Q) {
            if (n.empty()) continue;
            r.add_term(boxplus(s, n), a * b);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// products

int delta_coeff(int s, int n, int j, int q) {
    if (j < 1 || j >= s + n || j % (q - 1) != 0) return 0;
    int p = 0;
    is_prime_power(q, &p);
    int a = binom_mod(j - 1, s - 1, p), b = binom_mod(j - 1, n - 1, p);
    if ((s - 1) % 2) a = (p - a) % p;
    if ((n - 1) % 2) b = (p - b) % p;
    return (a + b) % p;
}

namespace {

struct ProductKey {
    int q;
    int bullet;  // 0 Li, 1 zeta, 2 D-term only
    Index s, n;
    bool operator<(const ProductKey& o) const { return std::tie(q, bullet, s, n) < std::tie(o.q, o.bullet, o.s, o.n); }
};

class ProductCache {
public:
    std::shared_ptr<const FpComb> find(const ProductKey& k) {
        std::shared_lock lock(mu_);
        auto it = map_.find(k);
        return it == map_.end() ? nullptr : it->second;
    }
    std::shared_ptr<const FpComb> insert(const ProductKey& k, std::shared_ptr<const FpComb> v) {
        std::unique_lock lock(mu_);
        auto [it, fresh] = map_.emplace(k, std::move(v));
        return it->second;  // first writer wins; later duplicates are identical
    }
private:
    std::shared_mutex mu_;
    std::map<ProductKey, std::shared_ptr<const FpComb>> map_;
};

ProductCache& cache() {
    static ProductCache c;
    return c;
}

int prime_of(int q) {
    int p = 0;
    if (!is_prime_power(q, &p)) throw std::invalid_argument("q must be a prime power");
    return p;
}

void add_prefixed(FpComb& out, int head, const FpComb& in, int coef, int p) {
    if (coef % p == 0) return;
    for (const auto& [u, c] : in) {
        Index v;
        v.reserve(u.size() + 1);
        v.push_back(head);
        v.insert(v.end(), u.begin(), u.end());
        int& slot = out[v];
        slot = int((slot + (long long)c * coef) % p);
        if (slot == 0) out.erase(v);
    }
}

FpComb compute_d(const Index& s, const Index& n, int q, int p) {
    FpComb out;
    int a = s[0], b = n[0];
    if (a + b <= q) return out;
    auto inner = index_product(head_rest(s), head_rest(n), Bullet::Zeta, q);
    for (int j = q - 1; j < a + b; j += q - 1) {
        int dl = delta_coeff(a, b, j, q);
        if (!dl) continue;
        FpComb jprod;
        for (const auto& [u, c] : *inner) {
            auto pj = index_product(Index{j}, u, Bullet::Zeta, q);
            for (const auto& [v, e] : *pj) {
                int& slot = jprod[v];
                slot = int((slot + (long long)c * e) % p);
                if (!slot) jprod.erase(v);
            }
        }
        add_prefixed(out, a + b - j, jprod, dl, p);
    }
    return out;
}

}  // namespace

std::shared_ptr<const FpComb> d_zeta_comb(const Index& s, const Index& n, int q) {
    if (s.empty() || n.empty()) throw std::invalid_argument("D-term needs nonempty indices");
    ProductKey key{q, 2, s, n};
    if (auto hit = cache().find(key)) return hit;
    int p = prime_of(q);
    return cache().insert(key, std::make_shared<const FpComb>(compute_d(s, n, q, p)));
}

std::shared_ptr<const FpComb> index_product(const Index& s, const Index& n, Bullet b, int q) {
    ProductKey key{q, b == Bullet::Li ? 0 : 1, s, n};
    if (auto hit = cache().find(key)) return hit;
    int p = prime_of(q);
    FpComb out;
    if (s.empty()) out[n] = 1;
    else if (n.empty()) out[s] = 1;
    else {
        Index s1 = head_rest(s), n1 = head_rest(n);
        add_prefixed(out, s[0], *index_product(s1, n, b, q), 1, p);
        add_prefixed(out, n[0], *index_product(s, n1, b, q), 1, p);
        add_prefixed(out, s[0] + n[0], *index_product(s1, n1, b, q), 1, p);
        if (b == Bullet::Zeta)
            for (const auto& [u, c] : *d_zeta_comb(s, n, q)) {
                int& slot = out[u];
                slot = (slot + c) % p;
                if (!slot) out.erase(u);
            }
    }
    return cache().insert(key, std::make_shared<const FpComb>(std::move(out)));
}

HElem product(const HElem& P, const HElem& Q, Bullet b) {
    const Fq* F = P.field() ? P.field() : Q.field();
    if (!F) return HElem();
    HElem r(*F);
    for (const auto& [s, a] : P)
        for (const auto& [n, c] : Q) {
            RationalFunc ac = a * c;
            for (const auto& [u, e] : *index_product(s, n, b, F->q()))
                r.add_term(u, ac * RationalFunc::constant(*F, Var::theta, F->from_int(e)));
        }
    return r;
}

HElem d_zeta(const Fq& F, const Index& s, const Index& n) { return HElem::from_comb(F, *d_zeta_comb(s, n, F.q())); }

HElem d_term(const Fq& F, const Index& s, const Index& n, Bullet b) {
    if (s.empty() || n.empty()) throw std::invalid_argument("D-term needs nonempty indices");
    if (b == Bullet::Li) return HElem(F);
    return d_zeta(F, s, n);
}

HElem alpha_q(const HElem& P, Bullet b) {
    if (!P.field()) return P;
    const Fq& F = *P.field();
    HElem prod = product(HElem::of(F, Index{F.q() - 1}), P, b);
    return bracket(F, {Index{1}, prod});
}

HElem alpha_q_iter(const HElem& P, int m, Bullet b) {
    if (m < 0) throw std::invalid_argument("negative iteration count");
    HElem r = P;
    for (int i = 0; i < m; ++i) r = alpha_q(r, b);
    return r;
}

bool coeffs_in_Fp_L1(const HElem& P) {
    if (!P.field()) return true;
    const Fq& F = *P.field();
    Poly L1 = L_poly(1, F.q());
    for (const auto& kv : P) {
        const RationalFunc& c = kv.second;
        if (!c.is_polynomial()) return false;
        Poly x = c.num();
        while (!x.is_zero()) {
            Poly qt, r;
            Poly::divmod(x, L1, qt, r);
            if (!r.is_constant() || !F.in_prime_field(r.coeff(0))) return false;
            x = qt;
        }
    }
    return true;
}

}  // namespace mzv

#include "mzv/frobenius.hpp"

#include <algorithm>
#include <stdexcept>

#include "mzv/eval.hpp"

namespace mzv {

namespace {

RationalFunc rzero(const Fq& F) { return RationalFunc(F, Var::t); }
RationalFunc rconst(const Fq& F, long long n) { return RationalFunc::constant(F, Var::t, F.from_int(n)); }

}  // namespace

// ---------------------------------------------------------------------------
// TwistedPoly

TwistedPoly TwistedPoly::constant(const RationalFunc& c) {
    if (!c.field()) throw std::invalid_argument("TwistedPoly needs a field");
    TwistedPoly p(*c.field());
    p.add_term(0, c);
    return p;
}

TwistedPoly TwistedPoly::X(const Fq& F, int k) {
    TwistedPoly p(F);
    p.add_term(k, RationalFunc::one(F, Var::t));
    return p;
}

RationalFunc TwistedPoly::coeff(int i) const {
    auto it = c_.find(i);
    if (it != c_.end()) return it->second;
    return F_ ? rzero(*F_) : RationalFunc();
}

void TwistedPoly::add_term(int i, const RationalFunc& c) {
    if (c.is_zero()) return;
    if (!F_) F_ = c.field();
    auto it = c_.find(i);
    if (it == c_.end()) {
        c_.emplace(i, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
}

TwistedPoly& TwistedPoly::operator+=(const TwistedPoly& o) {
    for (const auto& [i, c] : o.c_) add_term(i, c);
    if (!F_) F_ = o.F_;
    return *this;
}

TwistedPoly& TwistedPoly::operator-=(const TwistedPoly& o) {
    for (const auto& [i, c] : o.c_) add_term(i, -c);
    if (!F_) F_ = o.F_;
    return *this;
}

TwistedPoly TwistedPoly::scaled(const RationalFunc& c) const {
    TwistedPoly r(F_ ? *F_ : *c.field());
    if (c.is_zero()) return r;
    for (const auto& [i, a] : c_) r.c_.emplace(i, a * c);
    return r;
}

TwistedPoly TwistedPoly::times_X(int k) const {
    TwistedPoly r = *this;
    r.c_.clear();
    for (const auto& [i, a] : c_) r.c_.emplace(i + k, a);
    return r;
}

std::map<int, RationalFunc> TwistedPoly::theta_coeffs() const {
    std::map<int, RationalFunc> out;
    if (!F_) return out;
    const Fq& F = *F_;
    const int p = F.p();
    for (const auto& [i, c] : c_)
        for (int k = 0; k <= i; ++k) {
            int b = binom_mod(i, k, p);
            if (b == 0) continue;
            // C(i,k) t^{i-k} (-1)^k theta^k
            Poly mon = Poly::monomial(F, Var::t, F.from_int((k % 2 ? -1 : 1) * b), i - k);
            RationalFunc v = c * RationalFunc(mon);
            auto it = out.find(k);
            if (it == out.end()) out.emplace(k, v);
            else it->second += v;
        }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

std::string TwistedPoly::to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (const auto& [i, c] : c_) {
        if (!s.empty()) s += " + ";
        std::string cs = c.to_string();
        if (i == 0) {
            s += cs;
            continue;
        }
        std::string x = i == 1 ? "(t-θ)" : "(t-θ)^" + std::to_string(i);
        s += c.is_one() ? x : "(" + cs + ")*" + x;
    }
    return s;
}

TwistedPoly TwistedPoly::parse(const Fq& F, const std::string& text) {
    TwistedPoly p(F);
    if (text == "0") return p;
    std::vector<std::string> parts;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')') --depth;
        if (depth == 0 && text.compare(i, 3, " + ") == 0) {
            parts.push_back(text.substr(start, i - start));
            start = i + 3;
            i += 2;
        }
    }
    parts.push_back(text.substr(start));
    const std::string x = "(t-θ)";
    for (const std::string& t : parts) {
        size_t at = t.rfind(x);
        if (at == std::string::npos) {
            p.add_term(0, RationalFunc::parse(F, Var::t, t));
            continue;
        }
        int k = 1;
        std::string rest = t.substr(at + x.size());
        if (!rest.empty()) {
            if (rest[0] != '^') throw std::invalid_argument("bad twisted term: " + t);
            k = std::stoi(rest.substr(1));
        }
        RationalFunc c = RationalFunc::one(F, Var::t);
        if (at > 0) {
            std::string cs = t.substr(0, at);
            if (cs.size() < 3 || cs.front() != '(' || cs.compare(cs.size() - 2, 2, ")*") != 0)
                throw std::invalid_argument("bad twisted term: " + t);
            c = RationalFunc::parse(F, Var::t, cs.substr(1, cs.size() - 3));
        }
        p.add_term(k, c);
    }
    return p;
}

Poly T_poly(const Fq& F) {
    return Poly::x(F, Var::t) - Poly::monomial(F, Var::t, 1, F.q());
}

TwistedPoly twist(const TwistedPoly& p, int q) {
    TwistedPoly r;
    if (!p.field()) return r;
    const Fq& F = *p.field();
    if (F.q() != q) throw std::invalid_argument("twist: field mismatch");
    r = TwistedPoly(F);
    Poly T = T_poly(F);
    std::vector<Poly> Tpow{Poly::constant(F, Var::t, 1)};
    for (const auto& [j, c] : p.coeffs()) {
        while (int(Tpow.size()) <= j) Tpow.push_back(Tpow.back() * T);
        for (int i = 0; i <= j; ++i) {
            int b = binom_mod(j, i, F.p());
            if (b == 0) continue;
            r.add_term(q * i, c * RationalFunc(Tpow[j - i].scaled(F.from_int(b))));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// System

FrobSystem build_system(const Fq& F, const std::vector<Index>& M, int w, int slack, long long cap) {
    if (M.empty()) throw std::invalid_argument("build_system: empty index set");
    for (const auto& s : M)
        if (wt(s) != w) throw std::invalid_argument("build_system: weight mismatch at " + index_to_string(s));
    const int q = F.q();
    FrobSystem S;
    S.F = &F;
    S.w = w;
    S.slack = slack;
    S.M = M;
    std::set<Index> P = prefix_set(M);
    S.nodes.assign(P.begin(), P.end());
    std::stable_sort(S.nodes.begin(), S.nodes.end(), [](const Index& a, const Index& b) { return wt(a) > wt(b); });
    for (const auto& s : S.nodes) {
        S.bound[s] = (w - wt(s)) / (q - 1) + slack;
        S.children[s];
        if (!s.empty()) S.children[init_part(s)].push_back(s);
    }
    long long n = 0;
    for (const auto& s : S.nodes) n += S.bound[s] + 1;
    if (n > cap) throw ResourceError("Frobenius system exceeds the unknown cap");
    for (const auto& s : S.nodes)
        for (int i = 0; i <= S.bound[s]; ++i) S.unknowns.emplace_back(s, i);
    for (const auto& s : S.nodes) {
        int e = S.exponent(s), top = q * S.bound[s];
        for (const auto& c : S.children[s]) top = std::max(top, e + S.bound[c]);
        top = std::max(top, e + S.bound[s]);
        for (int j = 0; j <= top; ++j) S.equations.emplace_back(s, j);
    }
    return S;
}

RatMatrix FrobSystem::matrix() const {
    const Fq& Fl = *F;
    const int q = Fl.q();
    std::map<std::pair<Index, int>, Eigen::Index> row, col;
    for (size_t i = 0; i < equations.size(); ++i) row[equations[i]] = Eigen::Index(i);
    for (size_t j = 0; j < unknowns.size(); ++j) col[unknowns[j]] = Eigen::Index(j);
    RatMatrix A = RatMatrix::Constant(Eigen::Index(equations.size()), Eigen::Index(unknowns.size()), rzero(Fl));
    for (const auto& s : nodes) {
        int e = exponent(s);
        for (int i = 0; i <= bound.at(s); ++i) {
            Eigen::Index c = col.at({s, i});
            const TwistedPoly tw = twist(TwistedPoly::X(Fl, i), q);
            for (const auto& [k, v] : tw.coeffs()) A(row.at({s, k}), c) += v;
            A(row.at({s, i + e}), c) -= rconst(Fl, 1);
        }
        for (const auto& ch : children.at(s))
            for (int i = 0; i <= bound.at(ch); ++i) A(row.at({s, i + e}), col.at({ch, i})) -= rconst(Fl, 1);
    }
    return A;
}

FrobAssignment FrobSystem::assignment(const RatVector& x) const {
    FrobAssignment a;
    for (const auto& s : nodes) a[s] = TwistedPoly(*F);
    for (size_t j = 0; j < unknowns.size(); ++j) a[unknowns[j].first].add_term(unknowns[j].second, x[j]);
    return a;
}

bool FrobSystem::satisfied_by(const FrobAssignment& eps) const {
    const int q = F->q();
    for (const auto& s : nodes) {
        auto get = [&](const Index& n) { auto it = eps.find(n); return it == eps.end() ? TwistedPoly(*F) : it->second; };
        TwistedPoly rhs = get(s);
        for (const auto& c : children.at(s)) rhs += get(c);
        if (!(twist(get(s), q) == rhs.times_X(exponent(s)))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Solving

namespace {

// Scales a solution vector to a primitive polynomial vector.
void make_primitive(RatVector& x) {
    Poly l;
    for (const auto& c : x) {
        if (c.is_zero()) continue;
        l = l.is_zero() ? c.den() : (l * c.den()).exact_div(Poly::gcd(l, c.den()));
    }
    if (l.is_zero()) return;
    Poly g;
    for (auto& c : x) {
        if (c.is_zero()) continue;
        c *= RationalFunc(l);
        g = g.is_zero() ? c.num().monic() : Poly::gcd(g, c.num());
    }
    if (!g.is_zero() && !g.is_one())
        for (auto& c : x) c /= RationalFunc(g);
}

void normalize_generator(FrobSolution& sol, const FrobSystem& S) {
    if (sol.basis.size() != 1) return;
    int l = S.bound.at(Index{});
    RationalFunc top = sol.basis[0][Index{}].coeff(l);
    if (top.is_zero()) return;
    RationalFunc inv = top.inverse();
    for (auto& kv : sol.basis[0]) kv.second = kv.second.scaled(inv);
}

void finish(FrobSolution& sol, const FrobSystem& S) {
    sol.dimension = int(sol.basis.size());
    normalize_generator(sol, S);
    sol.verified = true;
    for (const auto& b : sol.basis) sol.verified = sol.verified && S.satisfied_by(b);
}

}  // namespace

FrobSolution solve_system(const FrobSystem& S) {
    const Fq& F = *S.F;
    const int q = F.q();
    std::map<Index, std::vector<FrobAssignment>> space;
    for (const auto& s : S.nodes) {  // leaves first
        const int B = S.bound.at(s), e = S.exponent(s);
        const auto& ch = S.children.at(s);
        // columns: own coefficients 0..B, then one per child basis vector
        std::vector<std::pair<Index, size_t>> lam;
        for (const auto& c : ch)
            for (size_t k = 0; k < space[c].size(); ++k) lam.emplace_back(c, k);
        const Eigen::Index ncol = B + 1 + Eigen::Index(lam.size());
        int top = std::max(q * B, e + B);
        for (const auto& c : ch) top = std::max(top, e + S.bound.at(c));
        RatMatrix A = RatMatrix::Constant(top + 1, ncol, rzero(F));
        for (int i = 0; i <= B; ++i) {
            const TwistedPoly tw = twist(TwistedPoly::X(F, i), q);
            for (const auto& [k, v] : tw.coeffs()) A(k, i) += v;
            A(i + e, i) -= rconst(F, 1);
        }
        for (size_t j = 0; j < lam.size(); ++j) {
            const TwistedPoly& v = space[lam[j].first][lam[j].second].at(lam[j].first);
            for (const auto& [k, c] : v.coeffs()) A(k + e, B + 1 + Eigen::Index(j)) -= c;
        }
        std::vector<FrobAssignment> basis;
        for (RatVector x : nullspace(A, F, Var::t)) {
            make_primitive(x);
            FrobAssignment a;
            TwistedPoly own(F);
            for (int i = 0; i <= B; ++i) own.add_term(i, x[i]);
            a[s] = own;
            for (size_t j = 0; j < lam.size(); ++j) {
                const RationalFunc& c = x[B + 1 + j];
                for (const auto& [n, v] : space[lam[j].first][lam[j].second]) {
                    TwistedPoly add = v.scaled(c);
                    auto it = a.find(n);
                    if (it == a.end()) a.emplace(n, add);
                    else it->second += add;
                }
            }
            for (const auto& n : S.nodes)
                if (!a.count(n)) a.emplace(n, TwistedPoly(F));
            basis.push_back(std::move(a));
        }
        space[s] = std::move(basis);
        for (const auto& c : ch) space.erase(c);
    }
    FrobSolution sol;
    sol.basis = space[Index{}];  // the closure is rooted at the empty index
    finish(sol, S);
    return sol;
}

FrobSolution solve_system_global(const FrobSystem& S) {
    FrobSolution sol;
    for (RatVector x : nullspace(S.matrix(), *S.F, Var::t)) {
        make_primitive(x);
        sol.basis.push_back(S.assignment(x));
    }
    finish(sol, S);
    return sol;
}

std::vector<Index> nd0_indices(int w, int q) {
    if (w == 0) return {Index{}};
    return enumerate(Family::ND0, w, q);
}

FrobSolution solve_Xw(const Fq& F, int w, int slack, long long cap) {
    if (w < 0) throw std::invalid_argument("solve_Xw: negative weight");
    // each index of M carries at least one unknown
    if (w > 0 && family_size(Family::ND0, w, F.q()) > cap)
        throw ResourceError("Frobenius system exceeds the unknown cap");
    return solve_system(build_system(F, nd0_indices(w, F.q()), w, slack, cap));
}

// ---------------------------------------------------------------------------
// Normalization checks

namespace {

// f as a polynomial in T = t - t^q with prime-field coefficients, if possible.
bool as_poly_in_T(const Poly& f, const Poly& T, std::vector<Fq::elt>* out) {
    const Fq& F = *T.field();
    Poly r = f;
    std::vector<Fq::elt> digits;
    while (!r.is_zero()) {
        Poly quo, rem;
        Poly::divmod(r, T, quo, rem);
        if (!rem.is_constant()) return false;
        Fq::elt c = rem.coeff(0);
        if (!F.in_prime_field(c)) return false;
        digits.push_back(c);
        r = quo;
    }
    if (out) *out = digits;
    return true;
}

}  // namespace

NormalizationReport check_generator_normalization(const FrobAssignment& gen, int w, const Fq& F) {
    NormalizationReport rep;
    const int q = F.q();
    if (w % (q - 1) != 0) {
        rep.note = "weight not divisible by q-1";
        return rep;
    }
    const int l = w / (q - 1);
    auto it = gen.find(Index{});
    if (it == gen.end()) {
        rep.note = "generator has no empty-index component";
        return rep;
    }
    for (int i = 0; i <= l; ++i) rep.b.push_back(it->second.coeff(i));
    if (it->second.degree() > l) {
        rep.note = "empty-index component exceeds the degree bound";
        return rep;
    }
    rep.top_is_one = rep.b[l].is_one();
    const Poly T = T_poly(F);
    const Poly R = (-T).monic();  // t^q - t
    rep.numerators_divisible = rep.denominators_coprime = rep.prime_field = rep.polynomial_in_T = true;
    for (int i = 0; i < l; ++i) {
        const RationalFunc& b = rep.b[i];
        if (!b.is_zero()) {
            Poly quo, rem;
            Poly::divmod(b.num(), R, quo, rem);
            rep.numerators_divisible = rep.numerators_divisible && rem.is_zero();
        }
        rep.denominators_coprime = rep.denominators_coprime && (b.is_zero() || Poly::gcd(b.den(), R).is_one());
        for (const Poly* pp : {&b.num(), &b.den()})
            for (auto c : pp->coeffs()) rep.prime_field = rep.prime_field && F.in_prime_field(c);
        if (!b.is_zero()) {
            std::vector<Fq::elt> dn, dd;
            bool inT = as_poly_in_T(b.num(), T, &dn) && as_poly_in_T(b.den(), T, &dd);
            // T divides the numerator and not the denominator
            inT = inT && !dn.empty() && dn[0] == 0 && !dd.empty() && dd[0] != 0;
            rep.polynomial_in_T = rep.polynomial_in_T && inT;
        }
    }
    rep.ok = rep.top_is_one && rep.numerators_divisible && rep.denominators_coprime && rep.prime_field;
    if (!rep.polynomial_in_T) rep.note = "coefficients not rewritable in T";
    return rep;
}

}  // namespace mzv

#include "mzv/reduction.hpp"

#include <mutex>
#include <shared_mutex>
#include <stdexcept>

#include "mzv/indices.hpp"

namespace mzv {

namespace {

RationalFunc L1_pow(const Fq& F, int m) { return RationalFunc(L_poly(1, F.q()).pow(m)); }

const Fq& field_of(const BinaryRelation& R) {
    if (R.P.field()) return *R.P.field();
    if (R.Q.field()) return *R.Q.field();
    throw std::invalid_argument("relation without a field");
}

// D_{s,Q} = sum_n b_n D_{(s),n}
HElem d_with(const Fq& F, const Index& s, const HElem& Q, Bullet b) {
    HElem r(F);
    if (b == Bullet::Li) return r;
    for (const auto& [n, c] : Q) {
        if (n.empty()) continue;
        r += d_zeta(F, s, n).scaled(c);
    }
    return r;
}

}  // namespace

BinaryRelation seed_relation(const Fq& F) {
    int q = F.q();
    return {HElem::of(F, {q}), -HElem::of(F, {1, q - 1}, L1_pow(F, 1))};
}

BinaryRelation map_B(const Index& s, const BinaryRelation& R, Bullet b) {
    if (s.empty()) throw std::invalid_argument("B needs a nonempty index");
    const Fq& F = field_of(R);
    HElem P = bracket(F, {s, R.P}) + bracket(F, {s, R.Q}) + boxplus(HElem::of(F, s), R.Q) +
              bracket(F, {init_part(s), d_with(F, {s.back()}, R.Q, b)});
    return {P, HElem(F)};
}

BinaryRelation map_C(const Index& s, const BinaryRelation& R, Bullet b) {
    if (s.empty()) throw std::invalid_argument("C needs a nonempty index");
    const Fq& F = field_of(R);
    HElem P(F), Q(F);
    HElem S = HElem::of(F, s), Sm = HElem::of(F, head_rest(s));
    for (const auto& [n, a] : R.P) {
        if (n.empty()) throw std::invalid_argument("C needs positive-weight pairs");
        HElem nm = HElem::of(F, head_rest(n));
        HElem t = bracket(F, {Index{n[0] + s[0]}, product(nm, Sm, b)}) + bracket(F, {Index{n[0]}, product(nm, S, b)});
        if (b == Bullet::Zeta) t += d_zeta(F, n, s);
        P += t.scaled(a);
    }
    for (const auto& [n, c] : R.Q) {
        if (n.empty()) throw std::invalid_argument("C needs positive-weight pairs");
        Q += bracket(F, {Index{n[0]}, product(HElem::of(F, head_rest(n)), S, b)}).scaled(c);
    }
    return {P, Q};
}

BinaryRelation map_BC(int m, const BinaryRelation& R, Bullet b) {
    if (m < 0) throw std::invalid_argument("negative iteration count");
    const Fq& F = field_of(R);
    return {bracket(F, {repeat(F.q(), m), R.P}), alpha_q_iter(R.Q, m, b).scaled(L1_pow(F, m))};
}

UParts U_parts(const Fq& F, const Index& s, Bullet b) {
    const int q = F.q();
    ThakurDecomposition t = decompose_thakur(s, q);
    UParts u{HElem(F), HElem(F), HElem(F)};
    if (!t.sprime.empty()) {
        const Index& sdd = *t.sdprime;
        HElem A = alpha_q_iter(HElem::of(F, sdd), t.m + 1, b);
        RationalFunc Lm = L1_pow(F, t.m + 1);
        u.U1 = -bracket(F, {t.sT, repeat(q, t.m + 1), sdd}) + bracket(F, {t.sT, A}).scaled(Lm);
        u.U2 = boxplus(HElem::of(F, t.sT), A).scaled(Lm);
        if (b == Bullet::Zeta) u.U3 = -bracket(F, {t.sT, repeat(q, t.m), d_zeta(F, {q}, sdd)});
    } else {
        HElem A = alpha_q_iter(HElem::of(F, {}), t.m, b);
        RationalFunc Lm = L1_pow(F, t.m);
        u.U1 = bracket(F, {t.sT, A}).scaled(Lm);
        u.U2 = boxplus(HElem::of(F, t.sT), A).scaled(Lm);
    }
    return u;
}

namespace {

struct UCache {
    std::shared_mutex mu;
    std::map<std::tuple<int, int, Index>, HElem> map;
};

UCache& ucache() {
    static UCache c;
    return c;
}

}  // namespace

HElem U_index(const Fq& F, const Index& s, Bullet b) {
    if (in_T(s, F.q())) return HElem::of(F, s);
    auto key = std::make_tuple(F.q(), int(b), s);
    UCache& c = ucache();
    {
        std::shared_lock lock(c.mu);
        auto it = c.map.find(key);
        if (it != c.map.end()) return it->second;
    }
    HElem v = U_parts(F, s, b).total();
    std::unique_lock lock(c.mu);
    return c.map.emplace(key, std::move(v)).first->second;
}

HElem U(const HElem& P, Bullet b) {
    if (!P.field()) return P;
    const Fq& F = *P.field();
    HElem r(F);
    for (const auto& [s, c] : P) r += U_index(F, s, b).scaled(c);
    return r;
}

TerminationRank termination_rank(const Index& n, int q) {
    TerminationRank r;
    r.depth = dep(n);
    ThakurDecomposition t = decompose_thakur(n, q);
    r.init = t.init(q);
    r.neg_next = r.init.size() < n.size() ? -n[r.init.size()] : -1;
    return r;
}

std::string check_U_conditions(const Fq& F, const Index& s, Bullet b) {
    const int q = F.q();
    if (in_T(s, q)) {
        return U_index(F, s, b) == HElem::of(F, s) ? "" : "U does not fix a Thakur index";
    }
    UParts u = U_parts(F, s, b);
    Index I = decompose_thakur(s, q).init(q);
    size_t l1 = I.size();
    auto bad = [&](const char* part, const Index& n) {
        return std::string(part) + " support " + index_to_string(n) + " violates the condition for " + index_to_string(s);
    };
    for (const auto& kv : u.U1)
        if (!(dep(kv.first) > dep(s))) return bad("U1", kv.first);
    for (const auto& kv : u.U2) {
        Index In = decompose_thakur(kv.first, q).init(q);
        if (!(dep(kv.first) >= dep(s) && I < In)) return bad("U2", kv.first);
    }
    for (const auto& kv : u.U3) {
        const Index& n = kv.first;
        Index In = decompose_thakur(n, q).init(q);
        if (!(dep(n) >= dep(s) && dep(s) > int(l1) && !(In < I) && n.size() > l1 && n[l1] >= 1 && n[l1] < s[l1]))
            return bad("U3", n);
    }
    TerminationRank rs = termination_rank(s, q);
    for (const auto& kv : u.total())
        if (!(rs < termination_rank(kv.first, q))) return bad("rank", kv.first);
    return "";
}

IterateResult U_iterate(const HElem& P, Bullet b, bool check_ranks, int max_iter) {
    IterateResult r{P, 0};
    if (!P.field()) return r;
    const Fq& F = *P.field();
    auto in_basis = [&](const HElem& X) {
        for (const auto& kv : X)
            if (!in_T(kv.first, F.q())) return false;
        return true;
    };
    while (!in_basis(r.value)) {
        if (r.iterations >= max_iter) throw std::logic_error("U iteration did not terminate within the safety cap");
        if (check_ranks)
            for (const auto& kv : r.value)
                if (!in_T(kv.first, F.q())) {
                    std::string msg = check_U_conditions(F, kv.first, b);
                    if (!msg.empty()) throw std::logic_error(msg);
                }
        r.value = U(r.value, b);
        ++r.iterations;
    }
    return r;
}

std::map<Index, RationalFunc> reduce_to_basis(const HElem& P, Bullet b) {
    if (!P.is_homogeneous()) throw std::invalid_argument("reduce_to_basis needs a homogeneous element");
    std::map<Index, RationalFunc> out;
    for (const auto& kv : U_iterate(P, b).value) out.emplace(kv.first, kv.second);
    return out;
}

BinaryRelation relation_pair(const Fq& F, const Index& s, Bullet b) {
    const int q = F.q();
    if (in_T(s, q)) throw std::invalid_argument("relation pair needs an index outside the Thakur family");
    ThakurDecomposition t = decompose_thakur(s, q);
    BinaryRelation R;
    if (!t.sprime.empty()) R = map_BC(t.m, map_C(*t.sdprime, seed_relation(F), b), b);
    else R = map_BC(t.m - 1, seed_relation(F), b);
    if (!t.sT.empty()) R = map_B(t.sT, R, b);
    if (R.sum() != HElem::of(F, s) - U_index(F, s, b))
        throw std::logic_error("relation pair does not sum to [s] - U(s) for " + index_to_string(s));
    return R;
}

RelationReport verify_binary_relation(const BinaryRelation& R, Bullet b, int dmax) {
    RelationReport rep;
    if (!R.P.field() && !R.Q.field()) {
        rep.ok = true;
        return rep;
    }
    const Fq& F = field_of(R);
    if (dmax < 0) dmax = std::max(R.P.max_depth(), R.Q.max_depth()) + 4;
    rep.cert = certify_identity(F, pair_identity(R.P, R.Q, b), -1, dmax);
    rep.ok = rep.cert.ok;
    rep.first_failing_d = rep.cert.first_failing_d;
    return rep;
}

RelationReport verify_binary_relation_exact(const BinaryRelation& R, Bullet b, int dmax) {
    RelationReport rep;
    rep.ok = true;
    for (int d = -1; d <= dmax; ++d) {
        RationalFunc v = realize_level(R.P, b, d) + realize_level(R.Q, b, d + 1);
        if (!v.is_zero()) {
            rep.ok = false;
            rep.first_failing_d = d;
            break;
        }
    }
    return rep;
}

std::vector<RelationGenerator> relations_Rw(const Fq& F, int w) {
    std::vector<RelationGenerator> out;
    for (const auto& s : enumerate(Family::ALL, w, F.q())) {
        if (in_T(s, F.q())) continue;
        RelationGenerator g;
        g.source = s;
        g.relation = HElem::of(F, s) - U_index(F, s, Bullet::Zeta);
        g.iterations = U_iterate(HElem::of(F, s), Bullet::Zeta).iterations;
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace mzv

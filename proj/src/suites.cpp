#include "mzv/suites.hpp"

#include <atomic>
#include <climits>
#include <exception>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mzv/eval.hpp"
#include "mzv/frobenius.hpp"
#include "mzv/indices.hpp"
#include "mzv/linalg.hpp"
#include "mzv/reduction.hpp"

namespace mzv {

nlohmann::json SuiteResult::to_json() const {
    nlohmann::json j;
    j["suite"] = name;
    j["pass"] = pass;
    j["checks"] = checks;
    j["jobs"] = nlohmann::json::array();
    for (const auto& r : jobs) j["jobs"].push_back({{"key", r.key}, {"pass", r.pass}, {"checks", r.checks}, {"detail", r.detail}});
    return j;
}

std::vector<JobResult> run_jobs(int n, int threads, const std::function<JobResult(int)>& fn) {
    std::vector<JobResult> out(n);
    std::exception_ptr err;
    std::mutex err_mu;
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i; (i = next++) < n;) {
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
    return out;
}

namespace {

SuiteResult collect(const std::string& name, std::vector<JobResult> jobs) {
    SuiteResult s;
    s.name = name;
    s.pass = true;
    for (const auto& j : jobs) {
        s.pass = s.pass && j.pass;
        s.checks += j.checks;
    }
    s.jobs = std::move(jobs);
    return s;
}

std::string key(int q, int w, const char* extra = nullptr) {
    std::string k = "q=" + std::to_string(q) + " w=" + std::to_string(w);
    if (extra) k += std::string(" ") + extra;
    return k;
}

struct Fail {
    JobResult& r;
    void operator()(const std::string& msg) {
        if (r.pass) r.detail = msg;
        r.pass = false;
    }
};

// series has no nonzero coefficient in its known window
bool vanishes(const LaurentSeries& s) { return s.is_exact_zero() || s.valuation() >= s.abs_precision(); }

}  // namespace

// ---------------------------------------------------------------------------

SuiteResult suite_counting(const SuiteConfig& c) {
    std::vector<std::pair<int, int>> keys;
    for (int q : c.qs)
        for (int w = std::max(1, c.wmin); w <= c.wmax; ++w) keys.emplace_back(q, w);
    return collect("counting", run_jobs(int(keys.size()), c.jobs, [&](int i) {
        auto [q, w] = keys[i];
        JobResult r{key(q, w), true, 0, ""};
        Fail fail{r};
        auto T = enumerate(Family::T, w, q), ND = enumerate(Family::ND, w, q);
        long long d = dprime(w, q);
        r.checks += 2;
        if ((long long)T.size() != d) fail("|T_w| = " + std::to_string(T.size()) + " != " + std::to_string(d));
        if ((long long)ND.size() != d) fail("|ND_w| = " + std::to_string(ND.size()) + " != " + std::to_string(d));
        std::set<Index> Tset(T.begin(), T.end()), image;
        for (const auto& s : ND) {
            Index t = nd_to_t(s, q);
            ++r.checks;
            if (!Tset.count(t)) fail("image of " + index_to_string(s) + " outside T");
            if (t_to_nd(t, q) != s) fail("inverse fails at " + index_to_string(s));
            image.insert(t);
        }
        ++r.checks;
        if (image.size() != Tset.size()) fail("nd_to_t is not onto");
        if (r.pass) r.detail = "d'=" + std::to_string(d);
        return r;
    }));
}

SuiteResult suite_carlitz(const SuiteConfig& c) {
    const int dmax = c.dmax < 0 ? 3 : c.dmax;
    std::vector<std::pair<int, int>> keys;
    for (int q : c.qs)
        for (int d = 0; d <= dmax; ++d) keys.emplace_back(q, d);
    return collect("carlitz", run_jobs(int(keys.size()), c.jobs, [&](int i) {
        auto [q, d] = keys[i];
        const Fq& F = Fq::get(q);
        JobResult r{"q=" + std::to_string(q) + " d=" + std::to_string(d), true, 0, ""};
        Fail fail{r};
        const std::vector<Poly> monics = monic_polys(F, d);
        const Poly L = L_poly(d, q);
        for (int s = 1; s <= q; ++s) {
            RationalFunc sum(F, Var::theta);
            for (const Poly& a : monics) sum += RationalFunc(Poly::constant(F, Var::theta, 1), a.pow(s));
            ++r.checks;
            if (sum != RationalFunc(Poly::constant(F, Var::theta, 1), L.pow(s))) fail("s=" + std::to_string(s));
        }
        return r;
    }));
}

namespace {

Index random_composition(std::mt19937_64& g, int w) {
    Index s;
    int part = 1;
    for (int i = 1; i < w; ++i) {
        if (g() & 1) {
            s.push_back(part);
            part = 1;
        } else {
            ++part;
        }
    }
    s.push_back(part);
    return s;
}

HElem random_homogeneous(const Fq& F, std::mt19937_64& g, int wmax) {
    int w = 1 + int(g() % wmax);
    int terms = 1 + int(g() % 3);
    HElem P(F);
    for (int t = 0; t < terms; ++t) {
        std::vector<Fq::elt> cf{Fq::elt(g() % F.q()), Fq::elt(g() % F.q())};
        if (cf[0] == 0 && cf[1] == 0) cf[0] = 1;
        P.add_term(random_composition(g, w), RationalFunc(Poly(F, Var::theta, cf)));
    }
    return P;
}

int chen_delta(int s, int n, int j, int q) {
    if (j < 1 || j >= s + n || j % (q - 1) != 0) return 0;
    const Fq& F = Fq::get(q);
    int p = F.p();
    int a = binom_mod(j - 1, s - 1, p), b = binom_mod(j - 1, n - 1, p);
    if ((s - 1) % 2) a = (p - a) % p;
    if ((n - 1) % 2) b = (p - b) % p;
    return (a + b) % p;
}

}  // namespace

SuiteResult suite_products(const SuiteConfig& c) {
    const int dmax = c.dmax < 0 ? 6 : c.dmax;
    struct K {
        int q;
        Bullet b;
        int chunk;
    };
    const int chunks = 4;
    std::vector<K> keys;
    for (int q : c.qs)
        for (Bullet b : c.bullets)
            for (int k = 0; k < chunks; ++k) keys.push_back({q, b, k});
    std::vector<JobResult> jobs = run_jobs(int(keys.size()), c.jobs, [&](int i) {
        const K& k = keys[i];
        const Fq& F = Fq::get(k.q);
        JobResult r{"q=" + std::to_string(k.q) + " " + bullet_name(k.b) + " part " + std::to_string(k.chunk), true, 0, ""};
        Fail fail{r};
        std::mt19937_64 g(c.seed * 1000003ULL + std::uint64_t(k.q) * 31 + std::uint64_t(k.b));
        long long pts = 0, bound = 0;
        int K = 0;
        for (int t = 0; t < c.count; ++t) {
            HElem P = random_homogeneous(F, g, c.wmax), Q = random_homogeneous(F, g, c.wmax);
            if (t % chunks != k.chunk) continue;
            CertReport rep = certify_identity(F, product_identity(P, Q, k.b), 0, dmax);
            ++r.checks;
            pts += rep.points;
            bound = std::max(bound, rep.degree_bound);
            K = std::max(K, rep.field_degree);
            if (!rep.ok) fail("pair " + std::to_string(t) + ": " + P.to_string() + " | " + Q.to_string() + " " + rep.note);
        }
        if (r.pass)
            r.detail = std::to_string(r.checks) + " pairs, " + std::to_string(pts) + " points, degree bound <= " +
                       std::to_string(bound) + ", K <= " + std::to_string(K);
        return r;
    });
    // Chen's depth-one level identity, exact
    for (int q : c.qs) {
        const Fq& F = Fq::get(q);
        JobResult r{"q=" + std::to_string(q) + " chen", true, 0, ""};
        Fail fail{r};
        std::mt19937_64 g(c.seed + 77 + q);
        for (int t = 0; t < 30; ++t) {
            int s = 1 + int(g() % (2 * q + 1)), n = 1 + int(g() % (2 * q + 1)), d = int(g() % 4);
            HElem rhs = HElem::of(F, {s + n});
            for (int j = 1; j < s + n; ++j) {
                int dl = chen_delta(s, n, j, q);
                if (dl) rhs += HElem::of(F, {s + n - j, j}, RationalFunc::constant(F, Var::theta, Fq::elt(dl)));
            }
            RationalFunc lhs = realize_level(HElem::of(F, {s}), Bullet::Zeta, d) * realize_level(HElem::of(F, {n}), Bullet::Zeta, d);
            ++r.checks;
            if (lhs != realize_level(rhs, Bullet::Zeta, d))
                fail("s=" + std::to_string(s) + " n=" + std::to_string(n) + " d=" + std::to_string(d));
        }
        jobs.push_back(r);
    }
    return collect("products", std::move(jobs));
}

SuiteResult suite_reduction(const SuiteConfig& c) {
    struct K {
        int q, w;
        Bullet b;
    };
    std::vector<K> keys;
    for (int q : c.qs)
        for (Bullet b : c.bullets)
            for (int w = std::max(1, c.wmin); w <= c.wmax; ++w) keys.push_back({q, w, b});
    std::vector<JobResult> jobs = run_jobs(int(keys.size()), c.jobs, [&](int i) {
        const K& k = keys[i];
        const Fq& F = Fq::get(k.q);
        JobResult r{key(k.q, k.w, bullet_name(k.b)), true, 0, ""};
        Fail fail{r};
        int maxit = 0;
        for (const Index& s : enumerate(Family::ALL, k.w, k.q)) {
            ++r.checks;
            IterateResult it;
            try {
                it = U_iterate(HElem::of(F, s), k.b, true);
            } catch (const std::logic_error& e) {
                fail(index_to_string(s) + ": " + e.what());
                continue;
            }
            maxit = std::max(maxit, it.iterations);
            for (const auto& kv : it.value)
                if (!in_T(kv.first, k.q)) fail(index_to_string(s) + ": support outside T");
            if (!vanishes(realize_trunc(HElem::of(F, s) - it.value, k.b, c.precision)))
                fail(index_to_string(s) + ": values differ");
        }
        if (r.pass) r.detail = "max iterations " + std::to_string(maxit);
        return r;
    });
    // fixtures: zeta(q) = L_1 zeta(1, q-1), and zeta(3) = L_1 zeta(1,2) for q = 2
    for (int q : c.qs) {
        const Fq& F = Fq::get(q);
        JobResult r{"q=" + std::to_string(q) + " fixtures", true, 0, ""};
        Fail fail{r};
        RationalFunc L1(L_poly(1, q));
        // one application of U gives L_1 [t]; t itself need not be a basis index
        auto check = [&](const Index& s, const Index& t) {
            ++r.checks;
            if (U_index(F, s, Bullet::Zeta) != HElem::of(F, t, L1)) fail("U of " + index_to_string(s));
            if (!vanishes(realize_trunc(HElem::of(F, s) - HElem::of(F, t, L1), Bullet::Zeta, c.precision)))
                fail("value identity for " + index_to_string(s));
        };
        check({q}, {1, q - 1});
        if (q == 2) check({3}, {1, 2});
        jobs.push_back(r);
    }
    return collect("reduction", std::move(jobs));
}

SuiteResult suite_binary_relations(const SuiteConfig& c) {
    struct K {
        int q, w;
        Bullet b;
    };
    std::vector<K> keys;
    for (int q : c.qs)
        for (Bullet b : c.bullets)
            for (int w = std::max(1, c.wmin); w <= c.wmax; ++w) keys.push_back({q, w, b});
    std::vector<JobResult> jobs = run_jobs(int(keys.size()), c.jobs, [&](int i) {
        const K& k = keys[i];
        const Fq& F = Fq::get(k.q);
        JobResult r{key(k.q, k.w, bullet_name(k.b)), true, 0, ""};
        Fail fail{r};
        long long pts = 0;
        for (const Index& s : enumerate(Family::ALL, k.w, k.q)) {
            if (in_T(s, k.q)) continue;
            ++r.checks;
            BinaryRelation R = relation_pair(F, s, k.b);
            RelationReport rep = verify_binary_relation(R, k.b, c.dmax < 0 ? dep(s) + 4 : c.dmax);
            pts += rep.cert.points;
            if (!rep.ok)
                fail(index_to_string(s) + (rep.first_failing_d ? " fails at d=" + std::to_string(*rep.first_failing_d) : "") +
                     " " + rep.cert.note);
        }
        if (r.pass) r.detail = std::to_string(pts) + " points";
        return r;
    });
    for (int q : c.qs)
        for (Bullet b : c.bullets) {
            const Fq& F = Fq::get(q);
            JobResult r{"q=" + std::to_string(q) + " " + bullet_name(b) + " seed", true, 1, ""};
            RelationReport rep = verify_binary_relation(seed_relation(F), b, 8);
            if (!rep.ok) Fail{r}("seed relation " + rep.cert.note);
            BinaryRelation bad{HElem::of(F, {1}), HElem(F)};
            RelationReport neg = verify_binary_relation(bad, b, 3);
            ++r.checks;
            if (neg.ok || !neg.first_failing_d || *neg.first_failing_d != 0) Fail{r}("([1],0) was not rejected at d=0");
            jobs.push_back(r);
        }
    return collect("binary-relations", std::move(jobs));
}

SuiteResult suite_relation_rank(const SuiteConfig& c) {
    std::vector<std::pair<int, int>> keys;
    for (int q : c.qs)
        for (int w = std::max(1, c.wmin); w <= c.wmax; ++w) keys.emplace_back(q, w);
    return collect("relation-rank", run_jobs(int(keys.size()), c.jobs, [&](int i) {
        auto [q, w] = keys[i];
        const Fq& F = Fq::get(q);
        JobResult r{key(q, w), true, 1, ""};
        auto all = enumerate(Family::ALL, w, q);
        std::map<Index, Eigen::Index> col;
        for (size_t j = 0; j < all.size(); ++j) col[all[j]] = Eigen::Index(j);
        PolyMatrix A = PolyMatrix::Constant(Eigen::Index(all.size()), Eigen::Index(all.size()), Poly(F, Var::theta));
        for (size_t i2 = 0; i2 < all.size(); ++i2) {
            HElem g = HElem::of(F, all[i2]) - U_index(F, all[i2], Bullet::Zeta);
            for (const auto& [n, cf] : g) {
                if (!cf.is_polynomial()) throw std::logic_error("non-polynomial relation coefficient");
                A(Eigen::Index(i2), col.at(n)) = cf.num();
            }
        }
        int rank = rank_bareiss(A);
        long long expect = (long long)all.size() - dprime(w, q);
        r.pass = rank == expect;
        r.detail = "rank " + std::to_string(rank) + ", expected " + std::to_string(expect);
        return r;
    }));
}

SuiteResult suite_frobenius(const SuiteConfig& c) {
    std::vector<std::pair<int, int>> keys;
    for (int q : c.qs)
        for (int w = std::max(0, c.wmin); w <= c.wmax; ++w) keys.emplace_back(q, w);
    return collect("frobenius", run_jobs(int(keys.size()), c.jobs, [&](int i) {
        auto [q, w] = keys[i];
        const Fq& F = Fq::get(q);
        JobResult r{key(q, w), true, 0, ""};
        Fail fail{r};
        FrobSolution s = solve_Xw(F, w);
        int expect = w % (q - 1) == 0 ? 1 : 0;
        ++r.checks;
        if (s.dimension != expect) fail("dimension " + std::to_string(s.dimension));
        ++r.checks;
        if (!s.verified) fail("basis does not satisfy the system");
        if (s.dimension == 1) {
            NormalizationReport n = check_generator_normalization(s.basis[0], w, F);
            ++r.checks;
            if (!n.ok) fail("normalization: " + n.note);
            if (r.pass) r.detail = std::string("dim 1") + (n.polynomial_in_T ? ", coefficients rational in T" : ", " + n.note);
        } else if (r.pass) {
            r.detail = "dim 0";
        }
        return r;
    }));
}

WitnessReport rank_witness(int q, int w, int B, int D) {
    const Fq& F = Fq::get(q);
    auto T = enumerate(Family::T, w, q);
    // D counts coefficients past the lowest valuation in the family, as for realize_trunc
    int vmin = INT_MAX;
    for (const auto& s : T)
        for (int a = 16;; a *= 2) {
            LaurentSeries v = realize_trunc_abs(HElem::of(F, s), Bullet::Zeta, a);
            if (!v.is_exact_zero() && v.valuation() <= a) {
                vmin = std::min(vmin, v.valuation());
                break;
            }
        }
    std::vector<LaurentSeries> z;
    for (const auto& s : T) z.push_back(realize_trunc_abs(HElem::of(F, s), Bullet::Zeta, vmin + D));
    auto coef = [&](const LaurentSeries& s, int e) -> Fq::elt {
        if (s.is_exact_zero() || e < s.v0()) return 0;
        return s.coeff(e);
    };
    // u^e coefficient of theta^j zeta(s) is the u^{e+j} coefficient of zeta(s)
    WitnessReport rep;
    rep.valuation = vmin;
    rep.unknowns = int(T.size()) * (B + 1);
    std::vector<std::vector<Fq::elt>> A;
    for (int e = vmin - B; e <= vmin + D - B; ++e) {
        std::vector<Fq::elt> row;
        for (const auto& s : z)
            for (int j = 0; j <= B; ++j) row.push_back(coef(s, e + j));
        A.push_back(std::move(row));
    }
    rep.equations = int(A.size());
    rep.rank = rank_fq(F, std::move(A));
    return rep;
}

SuiteResult suite_rank_witness(const SuiteConfig& c) {
    const int D = c.dmax < 0 ? 60 : c.dmax;
    std::vector<std::pair<int, int>> keys;
    for (int q : c.qs)
        for (int w = std::max(1, c.wmin); w <= c.wmax; ++w) keys.emplace_back(q, w);
    return collect("rank-witness", run_jobs(int(keys.size()), c.jobs, [&](int i) {
        auto [q, w] = keys[i];
        WitnessReport rep = rank_witness(q, w, c.coeff_bound, D);
        JobResult r{key(q, w), rep.nullity() == 0, 1, ""};
        std::ostringstream os;
        os << "valuation " << rep.valuation << ", unknowns " << rep.unknowns << ", equations " << rep.equations << ", nullity " << rep.nullity()
           << " (evidence, not proof)";
        r.detail = os.str();
        return r;
    }));
}

std::vector<std::string> suite_names() {
    return {"counting", "carlitz", "products", "reduction", "binary-relations", "relation-rank", "frobenius", "rank-witness"};
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& c) {
    if (name == "counting") return suite_counting(c);
    if (name == "carlitz") return suite_carlitz(c);
    if (name == "products") return suite_products(c);
    if (name == "reduction") return suite_reduction(c);
    if (name == "binary-relations") return suite_binary_relations(c);
    if (name == "relation-rank") return suite_relation_rank(c);
    if (name == "frobenius") return suite_frobenius(c);
    if (name == "rank-witness") return suite_rank_witness(c);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace mzv

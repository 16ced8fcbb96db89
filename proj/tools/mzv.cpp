// mzv: command-line front end.
// Exit codes: 0 ok, 1 verification failure, 2 configuration error, 3 resource cap.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mzv/eval.hpp"
#include "mzv/frobenius.hpp"
#include "mzv/indices.hpp"
#include "mzv/reduction.hpp"
#include "mzv/suites.hpp"

using namespace mzv;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kConfig = 2, kCap = 3 };

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Common {
    int q = 2;
    int qmax = 25;
    std::string format = "json";
    std::string out;
    long long cap_enum = kDefaultEnumCap;
    long long cap_system = kFrobUnknownCap;
};

const Fq& field(const Common& c) {
    if (c.q > c.qmax) throw ConfigError("q exceeds the configured bound " + std::to_string(c.qmax));
    if (!is_prime_power(c.q)) throw ConfigError("q must be a prime power");
    if (c.cap_enum <= 0 || c.cap_system <= 0) throw ConfigError("caps must be positive");
    const Fq& F = Fq::get(c.q);
    PowerSumTable::shared(F, Bullet::Li).set_cap(c.cap_enum);
    PowerSumTable::shared(F, Bullet::Zeta).set_cap(c.cap_enum);
    return F;
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw ConfigError("cannot open " + c.out);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Index parse_index(const std::string& text) {
    Index s;
    std::string body;
    for (char ch : text)
        if (ch != '[' && ch != ']' && ch != '(' && ch != ')' && ch != ' ') body += ch;
    std::stringstream ss(body);
    for (std::string tok; std::getline(ss, tok, ',');) {
        if (tok.empty()) continue;
        try {
            size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos != tok.size() || v <= 0) throw ConfigError("");
            s.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("bad index: " + text);
        }
    }
    return s;
}

std::string csv_index(const Index& s) {
    std::string r;
    for (size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + std::to_string(s[i]);
    return r;
}

// valuation of the residual, or "exact" when it vanishes identically
json residual_json(const LaurentSeries& r) {
    if (r.is_exact_zero()) return "exact";
    return r.valuation();
}

bool residual_ok(const LaurentSeries& r) { return r.is_exact_zero() || r.valuation() >= r.abs_precision(); }

json coordinates_json(const HElem& P) {
    json j = json::object();
    for (const auto& [s, c] : P) j[index_to_string(s)] = c.to_string();
    return j;
}

void check_family_cap(Family f, int w, int q, long long cap) {
    if (family_size(f, w, q) > cap)
        throw ResourceError(std::string(family_name(f)) + " at weight " + std::to_string(w) + " has more than " +
                            std::to_string(cap) + " indices");
}

// ---------------------------------------------------------------------------

int cmd_enumerate(const Common& c, const std::string& family, int w) {
    const Fq& F = field(c);
    (void)F;
    Family f;
    try {
        f = parse_family(family);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (w < 0) throw ConfigError("weight must be nonnegative");
    check_family_cap(f, w, c.q, c.cap_enum);
    auto v = enumerate(f, w, c.q);
    if (c.format == "csv") {
        std::string s;
        for (const auto& x : v) s += csv_index(x) + "\n";
        emit(c, s);
    } else if (c.format == "text") {
        std::string s;
        for (const auto& x : v) s += index_to_string(x) + "\n";
        emit(c, s);
    } else {
        emit(c, dump({{"kind", "enumerate"}, {"family", family_name(f)}, {"q", c.q}, {"w", w}, {"count", v.size()}, {"indices", v}}));
    }
    return kOk;
}

int cmd_reduce(const Common& c, const std::string& index, const std::string& bullet, int N) {
    const Fq& F = field(c);
    Bullet b;
    try {
        b = parse_bullet(bullet);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    Index s = parse_index(index);
    HElem X = HElem::of(F, s);
    IterateResult r = U_iterate(X, b);
    LaurentSeries res = realize_trunc_abs(X - r.value, b, N);
    bool ok = residual_ok(res);
    json j{{"kind", "reduce"}, {"q", c.q},           {"bullet", bullet_name(b)},         {"index", s},
           {"coordinates", coordinates_json(r.value)}, {"terms", r.value.to_json()},    {"iterations", r.iterations},
           {"precision", N}, {"residual_valuation", residual_json(res)}, {"ok", ok}};
    if (c.format == "text") {
        std::string t = index_to_string(s) + " ->";
        for (const auto& [n, cf] : r.value) t += "\n  " + index_to_string(n) + ": " + cf.to_string();
        emit(c, t + "\n");
    } else {
        emit(c, dump(j));
    }
    return ok ? kOk : kFail;
}

int cmd_relations(const Common& c, int w, int N) {
    const Fq& F = field(c);
    if (w < 1) throw ConfigError("weight must be positive");
    check_family_cap(Family::ALL, w, c.q, c.cap_enum);
    json rel = json::array();
    bool ok = true;
    for (const auto& g : relations_Rw(F, w)) {
        LaurentSeries res = realize_trunc_abs(g.relation, Bullet::Zeta, N);
        bool good = residual_ok(res);
        ok = ok && good;
        rel.push_back({{"source", g.source}, {"relation", g.relation.to_json()}, {"text", g.relation.to_string()},
                       {"iterations", g.iterations}, {"residual_valuation", residual_json(res)}, {"ok", good}});
    }
    long long expect = (1LL << (w - 1)) - dprime(w, c.q);
    ok = ok && (long long)rel.size() == expect;
    if (c.format == "text") {
        std::string t;
        for (const auto& r : rel) t += r["text"].get<std::string>() + "\n";
        emit(c, t);
    } else {
        emit(c, dump({{"kind", "relations"}, {"q", c.q}, {"w", w}, {"precision", N}, {"count", rel.size()}, {"relations", rel}, {"ok", ok}}));
    }
    return ok ? kOk : kFail;
}

json frob_json(const Fq& F, int w, long long cap) {
    FrobSolution s = solve_Xw(F, w, 0, cap);
    json j{{"kind", "frobdim"}, {"q", F.q()}, {"w", w}, {"dim", s.dimension}, {"verified", s.verified}};
    if (s.dimension == 1) {
        json g = json::object();
        for (const auto& [n, e] : s.basis[0]) g[index_to_string(n)] = e.to_string();
        j["generator"] = g;
        NormalizationReport n = check_generator_normalization(s.basis[0], w, F);
        j["normalized"] = n.ok;
        j["rational_in_T"] = n.polynomial_in_T;
    }
    return j;
}

int cmd_frobdim(const Common& c, int w, int wmax) {
    const Fq& F = field(c);
    if (w < 0) throw ConfigError("weight must be nonnegative");
    if (wmax < 0) {
        json j = frob_json(F, w, c.cap_system);
        emit(c, c.format == "text" ? "dim " + std::to_string(j["dim"].get<int>()) + "\n" : dump(j));
        return j["verified"].get<bool>() ? kOk : kFail;
    }
    // sweep
    std::string csv = "q,w,dim,verified\n";
    json arr = json::array();
    bool ok = true;
    for (int v = w; v <= wmax; ++v) {
        json j = frob_json(F, v, c.cap_system);
        ok = ok && j["verified"].get<bool>();
        csv += std::to_string(c.q) + "," + std::to_string(v) + "," + std::to_string(j["dim"].get<int>()) + "," +
               (j["verified"].get<bool>() ? "1" : "0") + "\n";
        arr.push_back(j);
    }
    emit(c, c.format == "json" ? dump(arr) : csv);
    return ok ? kOk : kFail;
}

// Re-verification of an emitted artifact.
int verify_artifact(const Common& c, const std::string& path, int N) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open " + path);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad JSON: ") + e.what());
    }
    auto one = [&](const json& a) -> bool {
        const std::string kind = a.at("kind");
        const Fq& F = Fq::get(a.at("q").get<int>());
        if (kind == "reduce") {
            Bullet b = parse_bullet(a.at("bullet"));
            HElem P = HElem::from_json(F, a.at("terms"));
            for (const auto& kv : P)
                if (!in_T(kv.first, F.q())) return false;
            return residual_ok(realize_trunc_abs(HElem::of(F, a.at("index").get<Index>()) - P, b, N));
        }
        if (kind == "relations") {
            int w = a.at("w");
            check_family_cap(Family::ALL, w, F.q(), kDefaultEnumCap);
            bool ok = (long long)a.at("relations").size() == family_size(Family::ALL, w, F.q()) - dprime(w, F.q());
            for (const auto& r : a.at("relations")) {
                HElem R = HElem::from_json(F, r.at("relation"));
                ok = ok && R.coeff(r.at("source").get<Index>()).is_one() &&
                     residual_ok(realize_trunc_abs(R, Bullet::Zeta, N));
            }
            return ok;
        }
        if (kind == "frobdim") {
            int w = a.at("w");
            FrobSystem S = build_system(F, nd0_indices(w, F.q()), w);
            int expect = w % (F.q() - 1) == 0 ? 1 : 0;
            if (a.at("dim").get<int>() != expect || solve_system(S).dimension != expect) return false;
            if (expect == 0) return !a.contains("generator");
            FrobAssignment g;
            for (const auto& [k, v] : a.at("generator").items()) {
                Index n = k == "∅" ? Index{} : parse_index(k);
                g[n] = TwistedPoly::parse(F, v.get<std::string>());
            }
            return S.satisfied_by(g) && check_generator_normalization(g, w, F).ok;
        }
        if (kind == "enumerate") {
            Family fam = parse_family(a.at("family"));
            check_family_cap(fam, a.at("w"), F.q(), kDefaultEnumCap);
            auto v = enumerate(fam, a.at("w"), F.q());
            return a.at("indices").get<std::vector<Index>>() == v;
        }
        throw ConfigError("unknown artifact kind: " + kind);
    };
    bool ok = true;
    if (j.is_array())
        for (const auto& a : j) ok = ok && one(a);
    else
        ok = one(j);
    if (c.format == "text")
        emit(c, std::string(ok ? "PASS " : "FAIL ") + path + "\n");
    else
        emit(c, dump({{"artifact", path}, {"pass", ok}}));
    return ok ? kOk : kFail;
}

std::vector<int> parse_q_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) {
        try {
            int q = std::stoi(tok);
            if (!is_prime_power(q) || q > 256) throw ConfigError("");
            out.push_back(q);
        } catch (const std::exception&) {
            throw ConfigError("bad q list: " + s);
        }
    }
    if (out.empty()) throw ConfigError("empty q list");
    return out;
}

int cmd_verify(const Common& c, const std::string& suite, const std::string& qlist, SuiteConfig cfg,
               const std::string& bullet, const std::string& in) {
    if (!in.empty()) return verify_artifact(c, in, cfg.precision);
    if (suite.empty()) throw ConfigError("verify needs --suite or --in");
    cfg.qs = parse_q_list(qlist.empty() ? std::to_string(c.q) : qlist);
    for (int q : cfg.qs)
        if (q > c.qmax) throw ConfigError("q exceeds the configured bound");
    if (bullet == "both") cfg.bullets = {Bullet::Li, Bullet::Zeta};
    else {
        try {
            cfg.bullets = {parse_bullet(bullet)};
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) throw ConfigError("unknown suite: " + suite);
    SuiteResult r = run_suite(suite, cfg);
    if (c.format == "text") {
        std::string t;
        for (const auto& j : r.jobs) t += std::string(j.pass ? "PASS " : "FAIL ") + j.key + ": " + j.detail + "\n";
        t += std::string(r.pass ? "PASS " : "FAIL ") + suite + "\n";
        emit(c, t);
    } else {
        emit(c, dump(r.to_json()));
    }
    return r.pass ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiple zeta values over F_q[theta]: enumeration, reduction, relations, verification"};
    app.require_subcommand(1);
    Common c;
    auto common = [&](CLI::App* s) {
        s->add_option("--q", c.q, "field size (prime power)");
        s->add_option("--qmax", c.qmax, "largest accepted q");
        s->add_option("--format", c.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
        s->add_option("--out", c.out, "write output to FILE");
        s->add_option("--cap-enum", c.cap_enum, "largest enumeration (monic polynomials of one degree, or indices)");
        s->add_option("--cap-system", c.cap_system, "largest Frobenius system (unknowns)");
    };

    std::string family = "ALL", index, bullet = "zeta", suite, qlist, in;
    int w = -1, wmax = -1, precision = 40;
    SuiteConfig cfg;

    auto* en = app.add_subcommand("enumerate", "list indices of a family");
    common(en);
    en->add_option("--family", family, "ALL | T | ND | ND0");
    en->add_option("--w", w, "weight")->required();

    auto* re = app.add_subcommand("reduce", "coordinates in the Thakur basis");
    common(re);
    re->add_option("--index", index, "e.g. [2,1]")->required();
    re->add_option("--bullet", bullet, "li | zeta");
    re->add_option("--precision", precision, "residual precision N");

    auto* rl = app.add_subcommand("relations", "generators [s] - U(s) of weight w");
    common(rl);
    rl->add_option("--w", w, "weight")->required();
    rl->add_option("--precision", precision, "residual precision N");

    auto* ve = app.add_subcommand("verify", "run an invariant suite or re-verify an artifact");
    common(ve);
    std::string bullet_v = "both";
    ve->add_option("--suite", suite, "counting | carlitz | products | reduction | binary-relations | relation-rank | frobenius | rank-witness");
    ve->add_option("--qs", qlist, "comma-separated field sizes (defaults to --q)");
    ve->add_option("--w,--wmax", cfg.wmax, "largest weight");
    ve->add_option("--wmin", cfg.wmin, "smallest weight");
    ve->add_option("--dmax", cfg.dmax, "level bound (suite default when omitted)");
    ve->add_option("--bullet", bullet_v, "li | zeta | both");
    ve->add_option("--seed", cfg.seed, "random seed");
    ve->add_option("--precision", cfg.precision, "series precision");
    ve->add_option("--count", cfg.count, "random samples");
    ve->add_option("--coeff-bound", cfg.coeff_bound, "rank witness coefficient degree");
    ve->add_option("--jobs", cfg.jobs, "worker threads");
    ve->add_option("--in", in, "artifact to re-verify");

    auto* fr = app.add_subcommand("frobdim", "dimension of the Frobenius solution space");
    common(fr);
    int wsweep = -1;
    fr->add_option("--w", w, "weight (sweep start with --wmax)")->required();
    fr->add_option("--wmax", wsweep, "sweep end");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (*en) return cmd_enumerate(c, family, w);
        if (*re) return cmd_reduce(c, index, bullet, precision);
        if (*rl) return cmd_relations(c, w, precision);
        if (*ve) {
            if (c.format == "csv") c.format = "text";
            return cmd_verify(c, suite, qlist, cfg, bullet_v, in);
        }
        if (*fr) return cmd_frobdim(c, w, wsweep);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const ResourceError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kConfig;
}

#include "mzv/indices.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mzv {

int wt(const Index& s) { return std::accumulate(s.begin(), s.end(), 0); }

bool is_valid_index(const Index& s) {
    return std::all_of(s.begin(), s.end(), [](int x) { return x > 0; });
}

Index concat(const Index& a, const Index& b) {
    Index r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Index repeat(int value, int times) { return Index(std::max(0, times), value); }

std::string index_to_string(const Index& s) {
    if (s.empty()) return "∅";
    std::string r = "(";
    for (size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + std::to_string(s[i]);
    return r + ")";
}

Family parse_family(const std::string& name) {
    if (name == "ALL") return Family::ALL;
    if (name == "T") return Family::T;
    if (name == "ND") return Family::ND;
    if (name == "ND0") return Family::ND0;
    throw std::invalid_argument("unknown index family '" + name + "'");
}

const char* family_name(Family f) {
    switch (f) {
        case Family::ALL: return "ALL";
        case Family::T: return "T";
        case Family::ND: return "ND";
        case Family::ND0: return "ND0";
    }
    return "?";
}

bool in_T(const Index& s, int q) {
    for (int x : s)
        if (x > q) return false;
    return s.empty() || s.back() < q;
}

bool in_ND(const Index& s, int q) {
    return std::none_of(s.begin(), s.end(), [q](int x) { return x % q == 0; });
}

bool in_ND0(const Index& s, int q) {
    if (!in_ND(s, q)) return false;
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i] % (q - 1) != 0) return false;
    return true;
}

bool in_family(const Index& s, Family f, int q) {
    switch (f) {
        case Family::ALL: return true;
        case Family::T: return in_T(s, q);
        case Family::ND: return in_ND(s, q);
        case Family::ND0: return in_ND0(s, q);
    }
    return false;
}

std::vector<Index> enumerate(Family f, int w, int q) {
    if (w < 0) throw std::invalid_argument("negative weight");
    if (q < 2) throw std::invalid_argument("q must be at least 2");
    std::vector<Index> out;
    Index cur;
    // entry-wise admissibility; the T condition on the last entry is applied at the leaf
    auto entry_ok = [&](int x, size_t pos) {
        switch (f) {
            case Family::ALL: return true;
            case Family::T: return x <= q;
            case Family::ND: return x % q != 0;
            case Family::ND0: return x % q != 0 && (pos == 0 || x % (q - 1) == 0);
        }
        return false;
    };
    std::function<void(int)> rec = [&](int rest) {
        if (rest == 0) {
            if (f != Family::T || cur.empty() || cur.back() < q) out.push_back(cur);
            return;
        }
        for (int x = 1; x <= rest; ++x) {
            if (!entry_ok(x, cur.size())) continue;
            cur.push_back(x);
            rec(rest - x);
            cur.pop_back();
        }
    };
    rec(w);
    return out;
}

long long family_size(Family f, int w, int q) {
    if (w < 0) throw std::invalid_argument("negative weight");
    if (q < 2) throw std::invalid_argument("q must be at least 2");
    auto sat_add = [](long long a, long long b) { return a > LLONG_MAX - b ? LLONG_MAX : a + b; };
    auto later_ok = [&](int x) {
        switch (f) {
            case Family::ALL: return true;
            case Family::T: return x <= q;
            case Family::ND: return x % q != 0;
            case Family::ND0: return x % q != 0 && x % (q - 1) == 0;
        }
        return false;
    };
    // tail[r]: sequences of non-initial entries with sum r (any last entry)
    std::vector<long long> tail(w + 1, 0);
    tail[0] = 1;
    for (int r = 1; r <= w; ++r)
        for (int x = 1; x <= r; ++x)
            if (later_ok(x)) tail[r] = sat_add(tail[r], tail[r - x]);
    if (w == 0) return 1;
    long long n = 0;
    if (f == Family::T) {
        // split off the last entry, which must be < q
        for (int x = 1; x < q && x <= w; ++x) n = sat_add(n, tail[w - x]);
        return n;
    }
    for (int x = 1; x <= w; ++x) {
        bool first_ok = f == Family::ND0 ? x % q != 0 : later_ok(x);
        if (first_ok) n = sat_add(n, tail[w - x]);
    }
    return n;
}

long long dprime(int w, int q) {
    if (w < 0) throw std::invalid_argument("negative weight");
    std::vector<long long> d(w + 1, 0);
    for (int i = 0; i <= w; ++i) {
        if (i == 0) d[i] = 1;
        else if (i < q) d[i] = 1LL << (i - 1);
        else if (i == q) d[i] = (1LL << (q - 1)) - 1;
        else
            for (int j = 1; j <= q; ++j) d[i] += d[i - j];
    }
    return d[w];
}

Index nd_to_t(const Index& s, int q) {
    if (!is_valid_index(s) || !in_ND(s, q)) throw std::invalid_argument("nd_to_t: " + index_to_string(s) + " is not in ND");
    Index r;
    for (int x : s) {
        for (int i = 0; i < x / q; ++i) r.push_back(q);
        r.push_back(x % q);
    }
    return r;
}

Index t_to_nd(const Index& s, int q) {
    if (!is_valid_index(s) || !in_T(s, q)) throw std::invalid_argument("t_to_nd: " + index_to_string(s) + " is not in T");
    Index r;
    int acc = 0;
    for (int x : s) {
        acc += x;
        if (x < q) {
            r.push_back(acc);
            acc = 0;
        }
    }
    return r;
}

std::set<Index> prefix_set(const std::set<Index>& M) {
    std::set<Index> out;
    out.insert(Index{});
    for (const auto& s : M)
        for (size_t k = 1; k <= s.size(); ++k) out.insert(Index(s.begin(), s.begin() + k));
    return out;
}

std::set<Index> prefix_set(const std::vector<Index>& M) { return prefix_set(std::set<Index>(M.begin(), M.end())); }

ThakurDecomposition decompose_thakur(const Index& s, int q) {
    ThakurDecomposition d;
    size_t k = 0;
    while (k < s.size() && s[k] <= q) ++k;
    size_t t = k;
    while (t > 0 && s[t - 1] == q) --t;
    d.sT.assign(s.begin(), s.begin() + t);
    d.m = int(k - t);
    d.sprime.assign(s.begin() + k, s.end());
    if (!d.sprime.empty()) {
        Index dd = d.sprime;
        dd[0] -= q;
        d.sdprime = dd;
    }
    return d;
}

}  // namespace mzv

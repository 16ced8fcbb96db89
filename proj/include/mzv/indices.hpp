#ifndef MZV_INDICES_HPP
#define MZV_INDICES_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mzv {

// (s_1, ..., s_r) with all s_i > 0; the empty vector is the empty index.
using Index = std::vector<int>;

inline int dep(const Index& s) { return int(s.size()); }
int wt(const Index& s);
bool is_valid_index(const Index& s);

Index concat(const Index& a, const Index& b);
inline Index head_rest(const Index& s) { return Index(s.begin() + 1, s.end()); }  // s_-
inline Index init_part(const Index& s) { return Index(s.begin(), s.end() - 1); }  // s_+
Index repeat(int value, int times);  // q^{m}

std::string index_to_string(const Index& s);  // "(1,2)", "∅"

enum class Family { ALL, T, ND, ND0 };
Family parse_family(const std::string& name);  // throws std::invalid_argument
const char* family_name(Family f);

bool in_T(const Index& s, int q);
bool in_ND(const Index& s, int q);
bool in_ND0(const Index& s, int q);
bool in_family(const Index& s, Family f, int q);

// All indices of weight w in the family, lexicographically sorted.
std::vector<Index> enumerate(Family f, int w, int q);
// Number of indices enumerate() would return, saturating at LLONG_MAX.
long long family_size(Family f, int w, int q);

// Counting recurrence: 2^{w-1} for 1 <= w < q, 2^{q-1}-1 for w = q, else sum of the q previous.
long long dprime(int w, int q);

// ND <-> T bijection; throw std::invalid_argument outside the source family.
Index nd_to_t(const Index& s, int q);
Index t_to_nd(const Index& s, int q);

// All prefixes, including the empty index and the indices themselves.
std::set<Index> prefix_set(const std::set<Index>& M);
std::set<Index> prefix_set(const std::vector<Index>& M);

// s = (sT, q^{m}, s') with sT in the Thakur family and s' empty or s'_1 > q.
struct ThakurDecomposition {
    Index sT;
    int m = 0;
    Index sprime;
    std::optional<Index> sdprime;  // (s'_1 - q, s'_-) iff s' nonempty

    Index init(int q) const { return concat(sT, repeat(q, m)); }
};
ThakurDecomposition decompose_thakur(const Index& s, int q);

}  // namespace mzv

#endif

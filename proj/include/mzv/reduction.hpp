#ifndef MZV_REDUCTION_HPP
#define MZV_REDUCTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "mzv/eval.hpp"
#include "mzv/hspace.hpp"

namespace mzv {

// (P, Q) with L_d(P) + L_{d+1}(Q) = 0 claimed for every d.
struct BinaryRelation {
    HElem P, Q;
    HElem sum() const { return P + Q; }
};

BinaryRelation seed_relation(const Fq& F);  // ([q], -L_1 [1, q-1])

// B_s, C_s, BC^m on pairs of positive-weight combinations.
BinaryRelation map_B(const Index& s, const BinaryRelation& R, Bullet b);
BinaryRelation map_C(const Index& s, const BinaryRelation& R, Bullet b);
BinaryRelation map_BC(int m, const BinaryRelation& R, Bullet b);

struct UParts {
    HElem U1, U2, U3;
    HElem total() const { return U1 + U2 + U3; }
};
UParts U_parts(const Fq& F, const Index& s, Bullet b);
HElem U_index(const Fq& F, const Index& s, Bullet b);  // memoized
HElem U(const HElem& P, Bullet b);

// (dep(n), Init(n), -n_{dep(Init(n))+1}), lexicographic; the last entry is -1 when Init(n) = n.
struct TerminationRank {
    int depth = 0;
    Index init;
    int neg_next = -1;
    friend bool operator<(const TerminationRank& a, const TerminationRank& b) {
        if (a.depth != b.depth) return a.depth < b.depth;
        if (a.init != b.init) return a.init < b.init;
        return a.neg_next < b.neg_next;
    }
    friend bool operator==(const TerminationRank& a, const TerminationRank& b) {
        return a.depth == b.depth && a.init == b.init && a.neg_next == b.neg_next;
    }
};
TerminationRank termination_rank(const Index& n, int q);

// Support conditions of the three parts and the strict rank increase; empty string when all hold.
std::string check_U_conditions(const Fq& F, const Index& s, Bullet b);

struct IterateResult {
    HElem value;
    int iterations = 0;
};
// Iterates U until the support lies in the Thakur family. With check_ranks every expanded
// non-Thakur index is tested against the rank conditions (throws std::logic_error on violation).
IterateResult U_iterate(const HElem& P, Bullet b, bool check_ranks = false, int max_iter = 100000);

// Coordinates of U_iterate(P) in the Thakur basis; throws std::invalid_argument unless P is homogeneous.
std::map<Index, RationalFunc> reduce_to_basis(const HElem& P, Bullet b);

// The pair built from the seed relation whose members sum to [s] - U(s); s outside the Thakur family.
BinaryRelation relation_pair(const Fq& F, const Index& s, Bullet b);

struct RelationReport {
    bool ok = false;
    std::optional<int> first_failing_d;
    CertReport cert;
};
// Level identity for -1 <= d <= dmax; dmax < 0 selects (deepest support) + 4.
RelationReport verify_binary_relation(const BinaryRelation& R, Bullet b, int dmax = -1);
// Same check through exact rational functions, practical only for small levels.
RelationReport verify_binary_relation_exact(const BinaryRelation& R, Bullet b, int dmax);

struct RelationGenerator {
    Index source;
    HElem relation;  // [s] - U^zeta(s), coefficient 1 at [s]
    int iterations = 0;  // steps U_iterate needs on [s]
};
std::vector<RelationGenerator> relations_Rw(const Fq& F, int w);

}  // namespace mzv

#endif

#ifndef MZV_EVAL_HPP
#define MZV_EVAL_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mzv/extfield.hpp"
#include "mzv/fields.hpp"
#include "mzv/hspace.hpp"

namespace mzv {

constexpr long long kDefaultEnumCap = 1000000;

// Raised when an enumeration or table would exceed its configured cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Monic polynomials of degree d in increasing code order; q^d of them.
std::vector<Poly> monic_polys(const Fq& F, int d, long long cap = kDefaultEnumCap);

// Power sums S_d(s) with memoized numerators N_d(s) = S_d(s) * L_d^s, which are
// polynomials because L_d is (up to sign) the lcm of the monic polynomials of degree d.
class PowerSumTable {
public:
    PowerSumTable(const Fq& F, Bullet b, long long cap = kDefaultEnumCap);
    static PowerSumTable& shared(const Fq& F, Bullet b);

    const Fq& field() const { return *F_; }
    Bullet bullet() const { return b_; }
    long long cap() const { return cap_; }
    void set_cap(long long c) { cap_ = c; }

    const Poly& L(int d);                 // L_d
    const Poly& factor_pow(int e, int k); // (theta - theta^{q^e})^k
    const Poly& numerator(int d, int s);
    RationalFunc power_sum(int d, int s);
    // S_d(s) as a power series in u: coefficients of u^0 .. u^{M-1}.
    std::vector<Fq::elt> series(int d, int s, int M);

private:
    const Fq* F_;
    Bullet b_;
    long long cap_;
    std::recursive_mutex mu_;
    std::map<int, Poly> L_;
    std::map<std::pair<int, int>, Poly> fpow_, num_;
    std::map<std::pair<int, int>, std::vector<Fq::elt>> ser_;
};

// Exact realizations in k. Levels d < 0 give 0; L_0 sends the empty index to 1.
RationalFunc realize_level(const HElem& P, Bullet b, int d);
RationalFunc realize_below(const HElem& P, Bullet b, int d);
// Same, on the table's field and caps.
RationalFunc realize_level(PowerSumTable& T, const HElem& P, int d);
RationalFunc realize_below(PowerSumTable& T, const HElem& P, int d);

// Valuation lower bound of every level-d term with first entry s1, d >= 1.
long long level_valuation_bound(int q, Bullet b, int d, int s1);

struct TruncInfo {
    int cutoff = 0;           // levels 0 .. cutoff-1 were summed
    int checked_level = 0;    // first omitted level, verified to vanish to the working precision
};

// The full sum in k_inf: coefficients exact for exponents v0 .. v0+N with v0 the
// smallest coefficient valuation in P.
LaurentSeries realize_trunc(const HElem& P, Bullet b, int N, TruncInfo* info = nullptr);
// Coefficients exact through u^{abs_last}.
LaurentSeries realize_trunc_abs(const HElem& P, Bullet b, int abs_last, TruncInfo* info = nullptr);

// ---------------------------------------------------------------------------
// Level identities certified by evaluation at points of F_{q^K}.
//
// An identity is sum_t c_t * prod_f V_f(d) = 0 where each factor is L_{d+shift}(X)
// or L_{<d+shift}(X). After clearing the known denominator it is a polynomial in
// theta over F_q of bounded degree, and each Galois orbit of exact degree K at which
// it vanishes contributes K roots.

struct Factor {
    HElem X;
    bool level = true;  // L_{d+shift} if true, L_{<d+shift} otherwise
    int shift = 0;
};

struct IdentityTerm {
    RationalFunc coeff;
    std::vector<Factor> factors;
};

struct LevelIdentity {
    Bullet bullet = Bullet::Zeta;
    std::vector<IdentityTerm> terms;
};

struct CertReport {
    bool ok = false;
    std::optional<int> first_failing_d;
    long long points = 0;        // orbit representatives evaluated
    int field_degree = 0;        // K
    long long degree_bound = 0;  // worst bound over the d range
    std::string note;
};

struct CertOptions {
    long long max_field_order = ExtField::kMaxOrder;
};

// Degree bound of the cleared identity at level d (exposed for tests).
long long identity_degree_bound(const Fq& F, const LevelIdentity& id, int d);

CertReport certify_identity(const Fq& F, const LevelIdentity& id, int dmin, int dmax, const CertOptions& opt = {});

// Power sums at a point of F_{q^K}, via Carlitz's linear polynomial for zeta.
// S[e][k] for 0 <= e <= maxlevel, 1 <= k <= maxk.
std::vector<std::vector<ExtField::elt>> point_power_sums(const PointField& P, ExtField::elt x, Bullet b, int maxlevel,
                                                          int maxk);

// Convenience constructors.
LevelIdentity pair_identity(const HElem& P, const HElem& Q, Bullet b);            // L_d(P) + L_{d+1}(Q)
LevelIdentity product_identity(const HElem& P, const HElem& Q, Bullet b);         // L_{<d}(P)L_{<d}(Q) - L_{<d}(P*Q)

}  // namespace mzv

#endif

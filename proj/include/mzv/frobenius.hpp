#ifndef MZV_FROBENIUS_HPP
#define MZV_FROBENIUS_HPP

#include <map>
#include <string>
#include <vector>

#include "mzv/fields.hpp"
#include "mzv/indices.hpp"
#include "mzv/linalg.hpp"

namespace mzv {

// Element of F_q(t)[theta] written as sum_i c_i(t) (t - theta)^i.
class TwistedPoly {
public:
    TwistedPoly() = default;
    explicit TwistedPoly(const Fq& F) : F_(&F) {}
    static TwistedPoly constant(const RationalFunc& c);
    static TwistedPoly X(const Fq& F, int k);  // (t - theta)^k

    const Fq* field() const { return F_; }
    int degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }
    bool is_zero() const { return c_.empty(); }
    RationalFunc coeff(int i) const;
    const std::map<int, RationalFunc>& coeffs() const { return c_; }
    void add_term(int i, const RationalFunc& c);

    TwistedPoly& operator+=(const TwistedPoly& o);
    TwistedPoly& operator-=(const TwistedPoly& o);
    friend TwistedPoly operator+(TwistedPoly a, const TwistedPoly& b) { return a += b; }
    friend TwistedPoly operator-(TwistedPoly a, const TwistedPoly& b) { return a -= b; }
    TwistedPoly scaled(const RationalFunc& c) const;
    TwistedPoly times_X(int k) const;
    friend bool operator==(const TwistedPoly& a, const TwistedPoly& b) { return a.c_ == b.c_; }

    // ordinary coefficients in theta (for degree checks): theta^k -> F_q(t)
    std::map<int, RationalFunc> theta_coeffs() const;

    std::string to_string() const;  // "c0 + (c1)*(t-θ) + (c2)*(t-θ)^2"
    static TwistedPoly parse(const Fq& F, const std::string& text);  // inverse of to_string

private:
    const Fq* F_ = nullptr;
    std::map<int, RationalFunc> c_;
};

// One Frobenius twist: F_q(t) fixed, (t - theta)^j -> (T + (t - theta)^q)^j with T = t - t^q.
TwistedPoly twist(const TwistedPoly& p, int q);
Poly T_poly(const Fq& F);  // t - t^q

using FrobAssignment = std::map<Index, TwistedPoly>;

struct FrobSystem {
    const Fq* F = nullptr;
    int w = 0;
    int slack = 0;                      // extra degree allowed beyond the bound
    std::vector<Index> M;
    std::vector<Index> nodes;           // prefix closure, by decreasing weight
    std::map<Index, std::vector<Index>> children;
    std::map<Index, int> bound;         // floor((w - wt)/(q-1)) + slack
    std::vector<std::pair<Index, int>> unknowns;   // (node, power of t - theta)
    std::vector<std::pair<Index, int>> equations;  // (node, power of t - theta)

    int exponent(const Index& s) const { return w - wt(s); }
    // Global coefficient matrix, rows = equations, columns = unknowns.
    RatMatrix matrix() const;
    FrobAssignment assignment(const RatVector& x) const;
    // every equation holds exactly
    bool satisfied_by(const FrobAssignment& eps) const;
};

constexpr long long kFrobUnknownCap = 20000;

// Throws std::invalid_argument on an empty set or a weight mismatch, ResourceError above the cap.
FrobSystem build_system(const Fq& F, const std::vector<Index>& M, int w, int slack = 0, long long cap = kFrobUnknownCap);

struct FrobSolution {
    int dimension = 0;
    std::vector<FrobAssignment> basis;  // for dimension 1 normalized so b_{ll} = 1
    bool verified = false;              // each basis element satisfies every equation
};

// Solves node by node from the leaves: each prefix only couples to its one-step extensions.
FrobSolution solve_system(const FrobSystem& S);
// Nullspace of the assembled matrix (small cases, cross-check).
FrobSolution solve_system_global(const FrobSystem& S);

std::vector<Index> nd0_indices(int w, int q);
FrobSolution solve_Xw(const Fq& F, int w, int slack = 0, long long cap = kFrobUnknownCap);

struct NormalizationReport {
    bool ok = false;
    bool top_is_one = false;
    bool numerators_divisible = false;   // by t^q - t
    bool denominators_coprime = false;   // to t^q - t
    bool prime_field = false;
    bool polynomial_in_T = false;        // num and den rewrite as polynomials in T over F_p
    std::vector<RationalFunc> b;         // b_{l0} .. b_{ll}
    std::string note;
};
NormalizationReport check_generator_normalization(const FrobAssignment& gen, int w, const Fq& F);

}  // namespace mzv

#endif

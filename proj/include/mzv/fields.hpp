#ifndef MZV_FIELDS_HPP
#define MZV_FIELDS_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace mzv {

// Finite field F_q, q = p^e <= 256. Elements are small integers whose base-p
// digits are the coefficients of a polynomial in the generator g, reduced
// modulo a fixed monic irreducible of degree e. Digit encoding means 0 and 1
// are the same codes in every field.
class Fq {
public:
    using elt = std::uint8_t;

    // Shared instance per q; throws std::invalid_argument if q is not a prime power in [2,256].
    static const Fq& get(int q);

    int q() const { return q_; }
    int p() const { return p_; }
    int e() const { return e_; }
    // Modulus coefficients low to high (size e+1, monic); {0,1} for prime fields.
    const std::vector<int>& modulus() const { return modulus_; }

    elt add(elt a, elt b) const { return add_[a * q_ + b]; }
    elt sub(elt a, elt b) const { return add_[a * q_ + neg_[b]]; }
    elt neg(elt a) const { return neg_[a]; }
    elt mul(elt a, elt b) const { return mul_[a * q_ + b]; }
    elt inv(elt a) const;
    elt div(elt a, elt b) const { return mul(a, inv(b)); }
    elt pow(elt a, long long k) const;
    elt from_int(long long n) const;  // image of an integer in the prime field
    elt gen() const { return e_ == 1 ? elt(0) : elt(p_); }  // g (unused for e == 1)
    bool in_prime_field(elt a) const { return a < p_; }

    std::string to_string(elt a) const;
    bool is_prime_field() const { return e_ == 1; }

private:
    explicit Fq(int q);
    int q_, p_, e_;
    std::vector<int> modulus_;
    std::vector<elt> add_, mul_, neg_, inv_;
};

// Value type wrapper, handy for tests and for Eigen scalars.
struct FqElement {
    const Fq* F = nullptr;  // null only for the field-free constants 0 and 1
    Fq::elt v = 0;

    FqElement() = default;
    FqElement(int c);  // 0 or 1 only
    FqElement(const Fq& f, Fq::elt x) : F(&f), v(x) {}
    static FqElement of(const Fq& f, long long n) { return FqElement(f, f.from_int(n)); }

    FqElement inverse() const;
    FqElement pow(long long k) const;
    bool is_zero() const { return v == 0; }
    std::string to_string() const;
};
FqElement operator+(const FqElement& a, const FqElement& b);
FqElement operator-(const FqElement& a, const FqElement& b);
FqElement operator-(const FqElement& a);
FqElement operator*(const FqElement& a, const FqElement& b);
FqElement operator/(const FqElement& a, const FqElement& b);
inline FqElement& operator+=(FqElement& a, const FqElement& b) { return a = a + b; }
inline FqElement& operator-=(FqElement& a, const FqElement& b) { return a = a - b; }
inline FqElement& operator*=(FqElement& a, const FqElement& b) { return a = a * b; }
inline bool operator==(const FqElement& a, const FqElement& b) { return a.v == b.v; }
inline bool operator!=(const FqElement& a, const FqElement& b) { return a.v != b.v; }

enum class Var : std::uint8_t { theta, t };
const char* var_name(Var v);

class Poly {
public:
    using elt = Fq::elt;

    Poly() = default;  // field-free zero, adopts the field of whatever it meets
    Poly(int zero);    // 0 only (Eigen needs Scalar(0))
    Poly(const Fq& F, Var v) : F_(&F), var_(v) {}
    Poly(const Fq& F, Var v, std::vector<elt> coeffs);

    static Poly constant(const Fq& F, Var v, elt c);
    static Poly monomial(const Fq& F, Var v, elt c, int deg);
    static Poly x(const Fq& F, Var v) { return monomial(F, v, 1, 1); }

    const Fq* field() const { return F_; }
    Var var() const { return var_; }
    int deg() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    elt coeff(int i) const { return i >= 0 && i < int(c_.size()) ? c_[i] : elt(0); }
    elt lead() const { return c_.empty() ? elt(0) : c_.back(); }
    const std::vector<elt>& coeffs() const { return c_; }
    int term_count() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return a.c_ != b.c_; }

    Poly scaled(elt s) const;
    Poly shifted(int k) const;  // times x^k, k >= 0
    Poly pow(long long k) const;
    Poly monic() const;
    // q-power Frobenius on the variable: f(x) -> f(x^q) (coefficients fixed).
    Poly frobenius_var(int qpow) const;
    elt eval(elt x) const;

    // Quotient and remainder; throws std::domain_error on division by zero.
    static void divmod(const Poly& a, const Poly& b, Poly& quo, Poly& rem);
    Poly exact_div(const Poly& b) const;  // throws std::logic_error if b does not divide
    static Poly gcd(Poly a, Poly b);      // monic, gcd(0,0) = 0

    // Relabels the variable (theta -> t), coefficients unchanged.
    Poly substitute_var(Var v) const;

    std::string to_string() const;

private:
    void trim();
    void adopt(const Poly& o);
    const Fq* F_ = nullptr;
    Var var_ = Var::theta;
    std::vector<elt> c_;
};

// Reduced fraction with monic denominator; structural equality is semantic equality.
class RationalFunc {
public:
    RationalFunc() = default;
    RationalFunc(int zero);  // 0 only
    RationalFunc(const Fq& F, Var v);  // zero
    explicit RationalFunc(Poly num);
    RationalFunc(Poly num, Poly den);  // normalizes; throws std::domain_error if den == 0

    static RationalFunc constant(const Fq& F, Var v, Fq::elt c);
    static RationalFunc one(const Fq& F, Var v) { return constant(F, v, 1); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const Fq* field() const { return num_.field() ? num_.field() : den_.field(); }
    Var var() const { return num_.var(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one() || den_.is_zero(); }
    bool is_constant() const { return is_polynomial() && num_.is_constant(); }
    // Valuation at infinity: deg den - deg num (large for zero).
    int valuation_inf() const;

    RationalFunc operator-() const;
    RationalFunc& operator+=(const RationalFunc& o);
    RationalFunc& operator-=(const RationalFunc& o);
    RationalFunc& operator*=(const RationalFunc& o);
    RationalFunc& operator/=(const RationalFunc& o);
    friend RationalFunc operator+(RationalFunc a, const RationalFunc& b) { return a += b; }
    friend RationalFunc operator-(RationalFunc a, const RationalFunc& b) { return a -= b; }
    friend RationalFunc operator*(RationalFunc a, const RationalFunc& b) { return a *= b; }
    friend RationalFunc operator/(RationalFunc a, const RationalFunc& b) { return a /= b; }
    friend bool operator==(const RationalFunc& a, const RationalFunc& b) {
        return a.num_ == b.num_ && (a.num_.is_zero() || a.den_ == b.den_);
    }
    friend bool operator!=(const RationalFunc& a, const RationalFunc& b) { return !(a == b); }

    RationalFunc inverse() const;
    RationalFunc pow(long long k) const;
    RationalFunc substitute_var(Var v) const;

    std::string to_string() const;
    // Parses e.g. "(t^2+1)/(t+1)", "2*θ^3+θ", "1/(theta^2+theta)", "(g+1)*t".
    static RationalFunc parse(const Fq& F, Var v, const std::string& text);

private:
    void normalize();
    void check_compatible(const RationalFunc& o) const;
    Poly num_, den_;
};

// Truncated expansion in u = 1/theta. Coefficients c[i] belong to u^(v0+i) and
// are exact; everything from u^(v0 + c.size()) on is unknown. An exact zero
// has no coefficients and unbounded precision.
class LaurentSeries {
public:
    static constexpr int kExact = 1 << 28;

    LaurentSeries() = default;
    LaurentSeries(const Fq& F, int v0, std::vector<Fq::elt> c);
    static LaurentSeries exact_zero(const Fq& F);
    static LaurentSeries zero_to(const Fq& F, int abs_prec);  // 0 + O(u^abs_prec)

    const Fq* field() const { return F_; }
    int v0() const { return v0_; }
    int precision() const { return int(c_.size()) - 1; }  // relative N
    int abs_precision() const { return c_.empty() ? v0_ : v0_ + int(c_.size()); }
    bool is_exact_zero() const { return c_.empty() && v0_ >= kExact; }
    Fq::elt coeff(int exponent) const;  // throws std::out_of_range outside the valid window
    const std::vector<Fq::elt>& coeffs() const { return c_; }
    // First exponent with a nonzero coefficient, or abs_precision() if none is known.
    int valuation() const;
    bool is_zero_through(int exponent) const { return valuation() > exponent; }

    LaurentSeries normalized() const;       // drops known leading zeros
    LaurentSeries truncated(int abs_prec) const;
    LaurentSeries shifted(int k) const;     // times u^k
    LaurentSeries scaled(Fq::elt s) const;
    LaurentSeries inverse() const;          // leading coefficient must be known and nonzero

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    LaurentSeries operator-() const { return scaled(F_->neg(1)); }

    // "u^v0*(c0 + c1*u + ...) + O(u^M)"
    std::string to_string() const;

private:
    const Fq* F_ = nullptr;
    int v0_ = kExact;
    std::vector<Fq::elt> c_;
};

// Expansion of f with N+1 coefficients starting at v0 = -(deg num - deg den).
LaurentSeries laurent_expand(const RationalFunc& f, int N);
LaurentSeries laurent_expand(const Poly& f, int N);

// L_d = (theta - theta^q)...(theta - theta^{q^d}), L_0 = 1.
Poly L_poly(int d, int q);
// theta - theta^{q^e}
Poly L_factor(int e, int q);

std::ostream& operator<<(std::ostream& os, const Poly& p);
std::ostream& operator<<(std::ostream& os, const RationalFunc& f);
std::ostream& operator<<(std::ostream& os, const LaurentSeries& s);

// Integer utilities shared by several modules.
bool is_prime_power(int q, int* p = nullptr, int* e = nullptr);
long long ipow(long long b, int e);
// Binomial coefficient reduced mod p (Lucas), 0 when k < 0 or k > n.
int binom_mod(long long n, long long k, int p);

}  // namespace mzv

#endif

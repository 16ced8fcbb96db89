#ifndef MZV_HSPACE_HPP
#define MZV_HSPACE_HPP

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mzv/fields.hpp"
#include "mzv/indices.hpp"

namespace mzv {

enum class Bullet { Li, Zeta };
Bullet parse_bullet(const std::string& s);  // "li" | "zeta"
const char* bullet_name(Bullet b);

// Combination of indices with coefficients in the prime field (values in [0, p)).
using FpComb = std::map<Index, int>;

// Finite k-linear combination of indices, k = F_q(theta). Zero coefficients are never stored.
class HElem {
public:
    using Map = std::map<Index, RationalFunc>;

    HElem() = default;
    explicit HElem(const Fq& F) : F_(&F) {}
    static HElem of(const Fq& F, const Index& s);
    static HElem of(const Fq& F, const Index& s, const RationalFunc& c);
    static HElem from_comb(const Fq& F, const FpComb& c);

    const Fq* field() const { return F_; }
    int q() const { return F_ ? F_->q() : 0; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }
    Map::const_iterator begin() const { return terms_.begin(); }
    Map::const_iterator end() const { return terms_.end(); }
    RationalFunc coeff(const Index& s) const;  // zero if absent
    std::vector<Index> support() const;

    // true and the weight when every support index has the same weight (zero counts as homogeneous of any weight)
    bool is_homogeneous(int* w = nullptr) const;
    int max_depth() const;

    void add_term(const Index& s, const RationalFunc& c);
    HElem& operator+=(const HElem& o);
    HElem& operator-=(const HElem& o);
    HElem operator-() const;
    HElem scaled(const RationalFunc& c) const;
    friend HElem operator+(HElem a, const HElem& b) { return a += b; }
    friend HElem operator-(HElem a, const HElem& b) { return a -= b; }
    friend HElem operator*(const RationalFunc& c, const HElem& a) { return a.scaled(c); }
    friend bool operator==(const HElem& a, const HElem& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const HElem& a, const HElem& b) { return !(a == b); }

    // "c1*[s...] + c2*[s...]", "0" for the zero element, "[]" for the empty index
    std::string to_string() const;
    static HElem parse(const Fq& F, const std::string& text);
    nlohmann::json to_json() const;
    static HElem from_json(const Fq& F, const nlohmann::json& j);

private:
    void adopt(const HElem& o);
    const Fq* F_ = nullptr;
    Map terms_;
};

// Bracket of a list of indices and combinations, multilinear in the combinations.
using BracketPart = std::variant<Index, HElem>;
HElem bracket(const Fq& F, const std::vector<BracketPart>& parts);

HElem boxplus(const HElem& P, const HElem& Q);
Index boxplus(const Index& s, const Index& n);  // empty result means zero

// Carry coefficient of the level product; residue in [0, p).
int delta_coeff(int s, int n, int j, int q);

// Products of basis indices with coefficients in F_p. Memoized per (q, bullet, ordered pair).
std::shared_ptr<const FpComb> index_product(const Index& s, const Index& n, Bullet b, int q);
std::shared_ptr<const FpComb> d_zeta_comb(const Index& s, const Index& n, int q);

HElem product(const HElem& P, const HElem& Q, Bullet b);
inline HElem harmonic_product(const HElem& P, const HElem& Q) { return product(P, Q, Bullet::Li); }
inline HElem qshuffle_product(const HElem& P, const HElem& Q) { return product(P, Q, Bullet::Zeta); }
// D^zeta_{s,n} for nonempty s, n (throws std::invalid_argument otherwise); D^Li is zero.
HElem d_zeta(const Fq& F, const Index& s, const Index& n);
HElem d_term(const Fq& F, const Index& s, const Index& n, Bullet b);

HElem alpha_q(const HElem& P, Bullet b);
HElem alpha_q_iter(const HElem& P, int m, Bullet b);

// Every coefficient lies in F_p[L_1].
bool coeffs_in_Fp_L1(const HElem& P);

}  // namespace mzv

#endif

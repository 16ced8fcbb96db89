#ifndef MZV_SUITES_HPP
#define MZV_SUITES_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mzv/hspace.hpp"

namespace mzv {

// Invariant suites shared by the command line and the acceptance runner.

struct SuiteConfig {
    std::vector<int> qs{2, 3};
    int wmin = 1;
    int wmax = 6;
    int dmax = -1;  // suite-specific default when negative
    std::vector<Bullet> bullets{Bullet::Li, Bullet::Zeta};
    std::uint64_t seed = 1;
    int precision = 40;
    int count = 200;        // random samples (products)
    int coeff_bound = 10;   // rank witness: degree of polynomial coefficients
    int jobs = 1;           // worker threads for independent (q, w) jobs
};

struct JobResult {
    std::string key;  // e.g. "q=3 w=5 zeta"
    bool pass = false;
    long long checks = 0;
    std::string detail;  // first failure or a short summary
};

struct SuiteResult {
    std::string name;
    bool pass = false;
    long long checks = 0;
    std::vector<JobResult> jobs;
    nlohmann::json to_json() const;
};

// Runs fn(0..n-1) on up to `threads` workers; results keep index order.
std::vector<JobResult> run_jobs(int n, int threads, const std::function<JobResult(int)>& fn);

SuiteResult suite_counting(const SuiteConfig& c);        // family sizes and the ND/T bijection
SuiteResult suite_carlitz(const SuiteConfig& c);         // 1/L_d^s against explicit sums, s <= q
SuiteResult suite_products(const SuiteConfig& c);        // product formula for random pairs, Chen's level identity
SuiteResult suite_reduction(const SuiteConfig& c);       // termination, rank conditions, value preservation
SuiteResult suite_binary_relations(const SuiteConfig& c);
SuiteResult suite_relation_rank(const SuiteConfig& c);   // rank of {[s] - U(s)} = |I_w| - d'_w
SuiteResult suite_frobenius(const SuiteConfig& c);
SuiteResult suite_rank_witness(const SuiteConfig& c);    // truncated-expansion independence evidence

std::vector<std::string> suite_names();
// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteConfig& c);

// Rank witness for a single weight: nullity of the F_q system built from shifted expansions.
struct WitnessReport {
    int valuation = 0;  // lowest u-valuation among the values
    int unknowns = 0;
    int equations = 0;
    int rank = 0;
    int nullity() const { return unknowns - rank; }
};
WitnessReport rank_witness(int q, int w, int coeff_bound, int precision);

}  // namespace mzv

#endif

// Acceptance runner: one PASS/FAIL line per criterion.
// Exit status is nonzero when a criterion fails that is not listed as known-unattainable.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "mzv/suites.hpp"

using namespace mzv;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::string params;
    double budget_s;
    std::function<std::vector<SuiteResult>()> run;
};

SuiteConfig cfg(std::vector<int> qs, int wmin, int wmax, int dmax = -1) {
    SuiteConfig c;
    c.qs = std::move(qs);
    c.wmin = wmin;
    c.wmax = wmax;
    c.dmax = dmax;
    return c;
}

void print_failures(const SuiteResult& r, int limit) {
    int shown = 0;
    for (const auto& j : r.jobs) {
        if (j.pass) continue;
        if (shown++ == limit) {
            std::printf("      ...\n");
            break;
        }
        std::printf("      %s %s: %s\n", r.name.c_str(), j.key.c_str(), j.detail.c_str());
    }
}

}  // namespace

int main(int argc, char** argv) {
    bool verbose = argc > 1 && std::strcmp(argv[1], "--verbose") == 0;

    // criterion 7 asks for a trivial nullspace with 11 shifts of each basis value and 61 truncated
    // coefficients; for w >= 6 there are more unknowns than equations, so the nullspace cannot vanish.
    // w = 5 also has a nullspace at this precision, which disappears at D = 120.
    const std::set<int> known_unattainable{7};

    SuiteConfig products = cfg({2, 3}, 1, 6, 6);
    products.count = 200;
    SuiteConfig witness = cfg({2}, 1, 8, 60);
    witness.coeff_bound = 10;
    SuiteConfig witness_large = witness;
    witness_large.dmax = 1000;

    std::vector<Criterion> crit{
        {1, "counting", "q in {2,3,4,5}, 1 <= w <= 12", 5,
         [] { return std::vector{suite_counting(cfg({2, 3, 4, 5}, 1, 12))}; }},
        {2, "carlitz equality", "1 <= s <= q, 0 <= d <= 3, q in {2,3,4}", 10,
         [] { return std::vector{suite_carlitz(cfg({2, 3, 4}, 1, 1, 3))}; }},
        {3, "product formulae", "200 pairs per (q, bullet), wt <= 6, 0 <= d <= 6, q in {2,3}, Chen samples", 60,
         [&] { return std::vector{suite_products(products)}; }},
        {4, "reduction soundness", "all indices w <= 8, q in {2,3}, both bullets, pairs d <= dep+4, N = 40", 180,
         [] {
             SuiteConfig c = cfg({2, 3}, 1, 8);
             return std::vector{suite_reduction(c), suite_binary_relations(c)};
         }},
        {5, "relation-space dimension", "q in {2,3}, w <= 8, fraction-free rank", 120,
         [] { return std::vector{suite_relation_rank(cfg({2, 3}, 1, 8))}; }},
        {6, "frobenius dimensions", "q in {2,3,4}, 0 <= w <= 10, normalization, back-substitution", 120,
         [] { return std::vector{suite_frobenius(cfg({2, 3, 4}, 0, 10))}; }},
        {7, "independence witness", "q = 2, w <= 8, B = 10, D = 60 (evidence, not proof)", 120,
         [&] { return std::vector{suite_rank_witness(witness)}; }},
    };

    int hard_failures = 0;
    std::vector<int> excused;
    for (const auto& c : crit) {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<SuiteResult> rs;
        std::string error;
        try {
            rs = c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = error.empty();
        long long checks = 0;
        for (const auto& r : rs) {
            pass = pass && r.pass;
            checks += r.checks;
        }
        std::printf("%s [%d] %s: %s; %lld checks, %.2f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id,
                    c.title.c_str(), c.params.c_str(), checks, dt, c.budget_s,
                    !pass && known_unattainable.count(c.id) ? " [known-unattainable]" : "");
        if (!error.empty()) std::printf("      error: %s\n", error.c_str());
        for (const auto& r : rs) {
            if (verbose || !r.pass) {
                if (verbose) {
                    for (const auto& j : r.jobs)
                        std::printf("      %s %s %s: %s\n", j.pass ? "ok  " : "FAIL", r.name.c_str(), j.key.c_str(),
                                    j.detail.c_str());
                } else {
                    print_failures(r, c.id == 7 ? 8 : 5);
                }
            }
        }
        if (!pass) {
            if (known_unattainable.count(c.id)) excused.push_back(c.id);
            else ++hard_failures;
        }
    }

    // supplementary: the same witness with enough precision for every weight (not a criterion)
    {
        auto t0 = std::chrono::steady_clock::now();
        SuiteResult r = suite_rank_witness(witness_large);
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s [7+] independence witness, supplementary: q = 2, w <= 8, B = 10, D = 1000 (evidence, not "
                    "proof); %.2f s\n",
                    r.pass ? "PASS" : "FAIL", dt);
        if (verbose || !r.pass) print_failures(r, 8);
    }

    std::printf("summary: %zu criteria, %d failed", crit.size(), hard_failures + int(excused.size()));
    if (!excused.empty()) {
        std::printf(", known-unattainable and excluded from the exit status:");
        for (int id : excused) std::printf(" %d", id);
    }
    std::printf("\n");
    return hard_failures == 0 ? 0 : 1;
}

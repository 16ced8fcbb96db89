#include "mzv/linalg.hpp"

#include <stdexcept>

namespace mzv {

namespace {

void strip_content(PolyMatrix& A, Eigen::Index r) {
    Poly g;
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
        if (A(r, j).is_zero()) continue;
        g = g.is_zero() ? A(r, j).monic() : Poly::gcd(g, A(r, j));
        if (g.is_constant()) break;
    }
    if (g.is_zero() || g.is_constant()) return;
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        if (!A(r, j).is_zero()) A(r, j) = A(r, j).exact_div(g);
}

}  // namespace

int rank_bareiss(PolyMatrix A) {
    const Eigen::Index n = A.rows(), m = A.cols();
    Poly prev;
    bool have_prev = false;
    int rank = 0;
    for (Eigen::Index k = 0; k < std::min(n, m); ++k) {
        Eigen::Index pi = -1, pj = -1;
        int best = 1 << 30;
        for (Eigen::Index i = k; i < n; ++i)
            for (Eigen::Index j = k; j < m; ++j)
                if (!A(i, j).is_zero() && A(i, j).deg() < best) {
                    best = A(i, j).deg();
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        A.row(k).swap(A.row(pi));
        A.col(k).swap(A.col(pj));
        const Poly p = A(k, k);
        for (Eigen::Index i = k + 1; i < n; ++i) {
            const Poly a = A(i, k);
            for (Eigen::Index j = k + 1; j < m; ++j) {
                Poly v = p * A(i, j) - a * A(k, j);
                A(i, j) = have_prev ? v.exact_div(prev) : v;
            }
            A(i, k) = Poly();
        }
        prev = p;
        have_prev = true;
        ++rank;
    }
    return rank;
}

PolyMatrix clear_denominators(const RatMatrix& A) {
    PolyMatrix B(A.rows(), A.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        Poly l;
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            if (A(i, j).is_zero()) continue;
            const Poly& d = A(i, j).den();
            l = l.is_zero() ? d : (l * d).exact_div(Poly::gcd(l, d));
        }
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            B(i, j) = A(i, j).is_zero() ? Poly() : A(i, j).num() * l.exact_div(A(i, j).den());
        strip_content(B, i);
    }
    return B;
}

std::vector<RatVector> nullspace(const RatMatrix& A, const Fq& F, Var v) { return nullspace(clear_denominators(A), F, v); }

std::vector<RatVector> nullspace(PolyMatrix A, const Fq& F, Var v) {
    const Eigen::Index n = A.rows(), m = A.cols();
    std::vector<Eigen::Index> pivot_col;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < m && r < n; ++c) {
        Eigen::Index pr = -1;
        for (Eigen::Index i = r; i < n; ++i)
            if (!A(i, c).is_zero() && (pr < 0 || A(i, c).deg() < A(pr, c).deg())) pr = i;
        if (pr < 0) continue;
        A.row(r).swap(A.row(pr));
        const Poly p = A(r, c);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == r || A(i, c).is_zero()) continue;
            const Poly a = A(i, c);
            for (Eigen::Index j = 0; j < m; ++j) A(i, j) = p * A(i, j) - a * A(r, j);
            strip_content(A, i);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(m, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<RatVector> out;
    for (Eigen::Index f = 0; f < m; ++f) {
        if (is_pivot[f]) continue;
        RatVector x(m, RationalFunc(F, v));
        x[f] = RationalFunc::one(F, v);
        for (size_t k = 0; k < pivot_col.size(); ++k)
            if (!A(k, f).is_zero()) x[pivot_col[k]] = -RationalFunc(A(k, f), A(k, pivot_col[k]));
        out.push_back(std::move(x));
    }
    return out;
}

int rank_fq(const Fq& F, std::vector<std::vector<Fq::elt>> A) {
    int r = 0;
    const size_t m = A.empty() ? 0 : A[0].size();
    for (size_t c = 0; c < m && r < int(A.size()); ++c) {
        size_t p = r;
        while (p < A.size() && A[p][c] == 0) ++p;
        if (p == A.size()) continue;
        std::swap(A[r], A[p]);
        const Fq::elt inv = F.inv(A[r][c]);
        for (size_t i = r + 1; i < A.size(); ++i) {
            if (A[i][c] == 0) continue;
            const Fq::elt f = F.mul(A[i][c], inv);
            for (size_t j = c; j < m; ++j) A[i][j] = F.sub(A[i][j], F.mul(f, A[r][j]));
        }
        ++r;
    }
    return r;
}

}  // namespace mzv

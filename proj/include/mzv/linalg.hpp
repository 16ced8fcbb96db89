#ifndef MZV_LINALG_HPP
#define MZV_LINALG_HPP

#include <vector>

#include <Eigen/Core>

#include "mzv/fields.hpp"

namespace Eigen {

template <>
struct NumTraits<mzv::Poly> : GenericNumTraits<mzv::Poly> {
    typedef mzv::Poly Real;
    typedef mzv::Poly NonInteger;
    typedef mzv::Poly Nested;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 8,
        MulCost = 32
    };
};

template <>
struct NumTraits<mzv::RationalFunc> : GenericNumTraits<mzv::RationalFunc> {
    typedef mzv::RationalFunc Real;
    typedef mzv::RationalFunc NonInteger;
    typedef mzv::RationalFunc Nested;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 64
    };
};

}  // namespace Eigen

namespace mzv {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using PolyMatrix = DenseMatrix<Poly>;
using RatMatrix = DenseMatrix<RationalFunc>;
using RatVector = std::vector<RationalFunc>;

// Rank by fraction-free (Bareiss) elimination, pivots of least degree first.
int rank_bareiss(PolyMatrix A);

// Clears denominators row by row and removes the row content.
PolyMatrix clear_denominators(const RatMatrix& A);

// Right nullspace over the fraction field, one vector per free column (that entry is 1).
// Elimination is fraction-free with content stripping after every row update.
std::vector<RatVector> nullspace(const RatMatrix& A, const Fq& F, Var v);
std::vector<RatVector> nullspace(PolyMatrix A, const Fq& F, Var v);

// Rank of a dense matrix over F_q (row-major, rows of equal length).
int rank_fq(const Fq& F, std::vector<std::vector<Fq::elt>> A);

}  // namespace mzv

#endif

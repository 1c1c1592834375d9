#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sigq/errors.hpp"
#include "sigq/types.hpp"

namespace sigq {

// Dense row-major complex matrix. Small and explicit on purpose: every
// evolution operator in this engine is either 2x2/3x2 or block-sparse, so a
// general linear-algebra package would be dead weight next to the validated
// semi-unitary type below.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<Complex>& entries() const { return entries_; }

  // Conjugate transpose, spelled out rather than hidden behind a flag.
  ComplexMatrix adjoint() const;
  ComplexMatrix multiply(const ComplexMatrix& rhs) const;
  std::vector<Complex> apply(const std::vector<Complex>& x) const;

  double max_abs() const;
  double frobenius_norm() const;
  bool all_finite() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

struct SemiUnitaryValidation {
  bool pass = false;
  bool dimension_ok = false;   // rows >= cols; no isometry exists otherwise
  double max_deviation = 0.0;  // max-norm of M†M - I
};

// Reports whether M†M = I within tol. Never throws on a bad matrix; the
// report carries the deviation so callers can decide.
SemiUnitaryValidation validate_semi_unitary(const ComplexMatrix& m, double tol);

// A matrix with orthonormal columns, validated at construction. rows > cols is
// allowed (and is the interesting case: the map embeds, it does not invert).
class SemiUnitaryMatrix {
 public:
  explicit SemiUnitaryMatrix(ComplexMatrix m, double tolerance = kDefaultSemiUnitaryTol);

  const ComplexMatrix& matrix() const { return matrix_; }
  double tolerance() const { return tolerance_; }
  std::size_t rows() const { return matrix_.rows(); }
  std::size_t cols() const { return matrix_.cols(); }

  std::vector<Complex> apply(const std::vector<Complex>& x) const { return matrix_.apply(x); }

 private:
  ComplexMatrix matrix_;
  double tolerance_;
};

// m2 * m1 with shape checking. The product of inner-product-preserving maps
// preserves inner products, so the result carries the summed tolerance plus
// rounding slack.
SemiUnitaryMatrix compose(const SemiUnitaryMatrix& m2, const SemiUnitaryMatrix& m1);

// Seeded Gaussian draw, modified Gram-Schmidt with one re-orthogonalization
// pass. Deterministic for a fixed seed.
SemiUnitaryMatrix random_semi_unitary(std::size_t rows, std::size_t cols, std::uint64_t seed);

struct Eigenpair2 {
  Complex lambda1;               // |lambda1| >= |lambda2|; phase breaks ties
  Complex lambda2;
  std::array<Complex, 2> vec1;   // unit norm, first nonzero component real >= 0
  std::array<Complex, 2> vec2;
};

// Closed-form eigenanalysis of a 2x2 complex matrix. A repeated eigenvalue on
// a scaled identity yields the coordinate axes; a defective matrix throws
// DegenerateMatrixError carrying the repeated eigenvalue.
Eigenpair2 eig2(const ComplexMatrix& m);

}  // namespace sigq

#include "sigq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "sigq/rng.hpp"

namespace sigq {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

// <a, b> with conjugation on the first argument.
Complex cdot(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double vec_norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {
  if (rows == 0 || cols == 0)
    throw ArgumentError("matrix dimensions must be positive, got " + shape_str(rows, cols));
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0)
    throw ArgumentError("matrix dimensions must be positive, got " + shape_str(rows, cols));
  if (entries_.size() != rows * cols)
    throw ArgumentError("entry count " + std::to_string(entries_.size()) +
                        " does not fill a " + shape_str(rows, cols) + " matrix");
  if (!all_finite()) throw ValidationError("matrix has non-finite entries");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Complex{1.0, 0.0};
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = std::conj(at(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::multiply(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw ShapeError("cannot multiply " + shape_str(rows_, cols_) + " by " +
                     shape_str(rhs.rows_, rhs.cols_));
  ComplexMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
      Complex s{0.0, 0.0};
      for (std::size_t k = 0; k < cols_; ++k) s += at(i, k) * rhs.at(k, j);
      out.at(i, j) = s;
    }
  return out;
}

std::vector<Complex> ComplexMatrix::apply(const std::vector<Complex>& x) const {
  if (x.size() != cols_)
    throw ShapeError("cannot apply " + shape_str(rows_, cols_) + " to a vector of length " +
                     std::to_string(x.size()));
  std::vector<Complex> out(rows_, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < rows_; ++i) {
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < cols_; ++j) s += at(i, j) * x[j];
    out[i] = s;
  }
  return out;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : entries_) m = std::max(m, std::abs(x));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : entries_) s += std::norm(x);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  for (const auto& x : entries_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

SemiUnitaryValidation validate_semi_unitary(const ComplexMatrix& m, double tol) {
  if (tol < 0.0) throw ArgumentError("tolerance must be nonnegative");
  SemiUnitaryValidation report;
  report.dimension_ok = m.rows() >= m.cols();
  const ComplexMatrix gram = m.adjoint().multiply(m);
  double dev = 0.0;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) {
      const Complex expected = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      dev = std::max(dev, std::abs(gram.at(i, j) - expected));
    }
  report.max_deviation = dev;
  report.pass = report.dimension_ok && m.all_finite() && dev <= tol;
  return report;
}

SemiUnitaryMatrix::SemiUnitaryMatrix(ComplexMatrix m, double tolerance)
    : matrix_(std::move(m)), tolerance_(tolerance) {
  if (tolerance_ < 0.0) throw ArgumentError("tolerance must be nonnegative");
  if (matrix_.rows() < matrix_.cols())
    throw ShapeError("no semi-unitary map exists for shape " +
                     shape_str(matrix_.rows(), matrix_.cols()) + ": rows < cols");
  const auto report = validate_semi_unitary(matrix_, tolerance_);
  if (!report.pass)
    throw ValidationError("matrix is not semi-unitary within " + std::to_string(tolerance_) +
                          ": max deviation " + std::to_string(report.max_deviation));
}

SemiUnitaryMatrix compose(const SemiUnitaryMatrix& m2, const SemiUnitaryMatrix& m1) {
  if (m2.cols() != m1.rows())
    throw ShapeError("cannot compose " + shape_str(m2.rows(), m2.cols()) + " with " +
                     shape_str(m1.rows(), m1.cols()));
  const double slack =
      std::numeric_limits<double>::epsilon() * 16.0 * static_cast<double>(m2.cols());
  return SemiUnitaryMatrix(m2.matrix().multiply(m1.matrix()),
                           m2.tolerance() + m1.tolerance() + slack);
}

SemiUnitaryMatrix random_semi_unitary(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  if (rows == 0 || cols == 0) throw ArgumentError("random_semi_unitary: dimensions must be positive");
  if (rows < cols)
    throw ShapeError("random_semi_unitary: no semi-unitary map exists for shape " +
                     shape_str(rows, cols));
  SeededRng rng(seed);
  std::vector<std::vector<Complex>> q;
  q.reserve(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    for (int attempt = 0;; ++attempt) {
      std::vector<Complex> v(rows);
      for (auto& x : v) x = rng.complex_gaussian();
      // Two projection passes: the second mops up the rounding left by the first.
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& qk : q) {
          const Complex proj = cdot(qk, v);
          for (std::size_t i = 0; i < rows; ++i) v[i] -= proj * qk[i];
        }
      const double n = vec_norm(v);
      if (n > 1e-6) {
        for (auto& x : v) x /= n;
        q.push_back(std::move(v));
        break;
      }
      if (attempt > 64)
        throw Error("random_semi_unitary: repeated degenerate draws");  // not reachable in practice
    }
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = q[j][i];
  return SemiUnitaryMatrix(std::move(m), kDefaultSemiUnitaryTol);
}

Eigenpair2 eig2(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2)
    throw ShapeError("eig2 requires a 2x2 matrix, got " + shape_str(m.rows(), m.cols()));
  if (!m.all_finite()) throw ArgumentError("eig2: matrix has non-finite entries");

  const Complex a = m.at(0, 0), b = m.at(0, 1), c = m.at(1, 0), d = m.at(1, 1);
  const Complex tr = a + d;
  const Complex det = a * d - b * c;
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);

  // Take the root where tr and disc add constructively, recover the other from
  // the determinant; this keeps both the sum and product identities tight.
  const Complex big = (std::real(std::conj(tr) * disc) >= 0.0) ? tr + disc : tr - disc;
  Complex l1 = 0.5 * big;
  Complex l2 = (std::abs(l1) > 0.0) ? det / l1 : Complex{0.0, 0.0};

  const double scale = std::max(1.0, m.max_abs());

  if (std::abs(l1 - l2) <= 1e-12 * scale) {
    // Repeated eigenvalue: either a scaled identity (two independent
    // eigenvectors remain) or a defective matrix (only one exists).
    const double off = std::max(std::max(std::abs(b), std::abs(c)),
                                std::max(std::abs(a - l1), std::abs(d - l1)));
    if (off <= 1e-12 * scale) {
      return Eigenpair2{l1, l2, {Complex{1.0, 0.0}, Complex{0.0, 0.0}},
                        {Complex{0.0, 0.0}, Complex{1.0, 0.0}}};
    }
    throw DegenerateMatrixError("eig2: defective matrix with repeated eigenvalue", l1);
  }

  auto eigvec = [&](Complex lambda) {
    // Both rows of (M - lambda I) annihilate each candidate; pick the better
    // conditioned one.
    const std::array<Complex, 2> u1 = {-b, a - lambda};
    const std::array<Complex, 2> u2 = {lambda - d, c};
    const double n1 = std::sqrt(std::norm(u1[0]) + std::norm(u1[1]));
    const double n2 = std::sqrt(std::norm(u2[0]) + std::norm(u2[1]));
    std::array<Complex, 2> v = (n1 >= n2) ? u1 : u2;
    const double n = std::max(n1, n2);
    v[0] /= n;
    v[1] /= n;
    // Phase convention: first component above noise is made real nonnegative.
    const int pivot = (std::abs(v[0]) > 1e-12) ? 0 : 1;
    const double mag = std::abs(v[pivot]);
    const Complex ph = std::conj(v[pivot]) / mag;
    v[0] *= ph;
    v[1] *= ph;
    v[pivot] = Complex{mag, 0.0};
    return v;
  };

  std::array<Complex, 2> v1 = eigvec(l1);
  std::array<Complex, 2> v2 = eigvec(l2);

  const double r1 = std::abs(l1), r2 = std::abs(l2);
  bool swap;
  if (std::abs(r1 - r2) <= 1e-12 * std::max({1.0, r1, r2}))
    swap = std::arg(l1) < std::arg(l2);  // modulus tie: descending phase in (-pi, pi]
  else
    swap = r1 < r2;
  if (swap) {
    std::swap(l1, l2);
    std::swap(v1, v2);
  }
  return Eigenpair2{l1, l2, v1, v2};
}

}  // namespace sigq

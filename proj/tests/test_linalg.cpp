#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "doctest.h"
#include "sigq/linalg.hpp"
#include "sigq/rng.hpp"

using sigq::Complex;
using sigq::ComplexMatrix;
using sigq::SemiUnitaryMatrix;

namespace {

// Trace of I - M M^+, computed from scratch so it cannot share a code path
// with validate_semi_unitary.
Complex identity_deficiency_trace(const ComplexMatrix& m) {
  const ComplexMatrix mm = m.multiply(m.adjoint());
  Complex tr{0.0, 0.0};
  for (std::size_t i = 0; i < mm.rows(); ++i) tr += Complex{1.0, 0.0} - mm.at(i, i);
  return tr;
}

double char_poly_residual(const ComplexMatrix& m, Complex lambda) {
  const Complex tr = m.at(0, 0) + m.at(1, 1);
  const Complex det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
  return std::abs(lambda * lambda - tr * lambda + det);
}

double eigvec_residual(const ComplexMatrix& m, Complex lambda,
                       const std::array<Complex, 2>& v) {
  const Complex r0 = m.at(0, 0) * v[0] + m.at(0, 1) * v[1] - lambda * v[0];
  const Complex r1 = m.at(1, 0) * v[0] + m.at(1, 1) * v[1] - lambda * v[1];
  return std::hypot(std::abs(r0), std::abs(r1));
}

ComplexMatrix random_square(sigq::SeededRng& rng, std::size_t n) {
  std::vector<Complex> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n * n; ++i) e.push_back(rng.complex_gaussian());
  return ComplexMatrix(n, n, std::move(e));
}

}  // namespace

TEST_CASE("rng is deterministic and sequenced") {
  sigq::SeededRng a(12345), b(12345);
  for (int i = 0; i < 100; ++i) CHECK(a.raw() == b.raw());

  sigq::SeededRng c(7), d(7);
  const Complex z = c.complex_gaussian();
  const double re = d.gaussian();
  const double im = d.gaussian();
  CHECK(z.real() == re);
  CHECK(z.imag() == im);

  sigq::SeededRng e(99);
  for (int i = 0; i < 10000; ++i) {
    const double u = e.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("complex matrix construction and arithmetic") {
  ComplexMatrix z(2, 3);
  CHECK(z.max_abs() == 0.0);
  CHECK(z.rows() == 2);
  CHECK(z.cols() == 3);

  CHECK_THROWS_AS(ComplexMatrix(0, 2), sigq::ArgumentError);
  CHECK_THROWS_AS(ComplexMatrix(2, 0), sigq::ArgumentError);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {Complex{1, 0}}), sigq::ArgumentError);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(
      ComplexMatrix(1, 2, {Complex{inf, 0}, Complex{0, 0}}), sigq::ValidationError);

  const ComplexMatrix a(2, 2, {Complex{1, 2}, Complex{3, -1}, Complex{0, 1}, Complex{2, 0}});
  const ComplexMatrix b(2, 2, {Complex{1, 0}, Complex{0, 1}, Complex{1, 1}, Complex{-1, 0}});

  const ComplexMatrix adj = a.adjoint();
  CHECK(adj.at(0, 0) == Complex{1, -2});
  CHECK(adj.at(0, 1) == Complex{0, -1});
  CHECK(adj.at(1, 0) == Complex{3, 1});
  CHECK(adj.at(1, 1) == Complex{2, 0});

  const ComplexMatrix p = a.multiply(b);
  CHECK(p.at(0, 0) == Complex{1, 2} + Complex{3, -1} * Complex{1, 1});
  CHECK(p.at(1, 1) == Complex{0, 1} * Complex{0, 1} + Complex{2, 0} * Complex{-1, 0});

  const auto y = a.apply({Complex{1, 0}, Complex{0, 1}});
  CHECK(y[0] == Complex{1, 2} + Complex{3, -1} * Complex{0, 1});
  CHECK(y[1] == Complex{0, 1} + Complex{2, 0} * Complex{0, 1});
  CHECK_THROWS_AS(a.apply({Complex{1, 0}}), sigq::ShapeError);

  const ComplexMatrix id = ComplexMatrix::identity(3);
  CHECK(id.at(1, 1) == Complex{1, 0});
  CHECK(id.at(0, 2) == Complex{0, 0});
  CHECK(id.frobenius_norm() == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("semi-unitary validation reports rather than throws") {
  const ComplexMatrix col(2, 1, {Complex{0.6, 0.0}, Complex{0.8, 0.0}});
  auto rep = sigq::validate_semi_unitary(col, 1e-12);
  CHECK(rep.pass);
  CHECK(rep.dimension_ok);
  CHECK(rep.max_deviation <= 1e-15);

  // A wide matrix cannot have orthonormal columns.
  const ComplexMatrix wide(1, 2, {Complex{1, 0}, Complex{0, 0}});
  rep = sigq::validate_semi_unitary(wide, 1e-12);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.dimension_ok);

  const ComplexMatrix off(2, 1, {Complex{0.6, 0.0}, Complex{0.81, 0.0}});
  rep = sigq::validate_semi_unitary(off, 1e-12);
  CHECK_FALSE(rep.pass);
  CHECK(rep.dimension_ok);
  CHECK(rep.max_deviation == doctest::Approx(0.0161).epsilon(1e-9));
  CHECK(sigq::validate_semi_unitary(off, 0.1).pass);

  CHECK_THROWS_AS(sigq::validate_semi_unitary(col, -1.0), sigq::ArgumentError);

  CHECK_THROWS_AS(SemiUnitaryMatrix{wide}, sigq::ShapeError);
  CHECK_THROWS_AS(SemiUnitaryMatrix{off}, sigq::ValidationError);
  const SemiUnitaryMatrix ok(col);
  CHECK(ok.rows() == 2);
  CHECK(ok.cols() == 1);
}

TEST_CASE("random semi-unitary matrices: orthonormal columns, deterministic") {
  const std::pair<std::size_t, std::size_t> shapes[] = {
      {1, 1}, {2, 1}, {3, 2}, {8, 8}, {13, 5}, {64, 32}};
  for (auto [rows, cols] : shapes) {
    const SemiUnitaryMatrix m = sigq::random_semi_unitary(rows, cols, 42);
    CHECK(sigq::validate_semi_unitary(m.matrix(), 1e-12).pass);

    const Complex tr = identity_deficiency_trace(m.matrix());
    CHECK(std::abs(tr - Complex{double(rows - cols), 0.0}) <= 1e-10);
  }

  const SemiUnitaryMatrix a = sigq::random_semi_unitary(6, 3, 11);
  const SemiUnitaryMatrix b = sigq::random_semi_unitary(6, 3, 11);
  CHECK(a.matrix().entries() == b.matrix().entries());
  const SemiUnitaryMatrix c = sigq::random_semi_unitary(6, 3, 12);
  CHECK(a.matrix().entries() != c.matrix().entries());
}

TEST_CASE("composition of semi-unitary maps is semi-unitary") {
  const SemiUnitaryMatrix m1 = sigq::random_semi_unitary(5, 3, 1);
  const SemiUnitaryMatrix m2 = sigq::random_semi_unitary(9, 5, 2);
  const SemiUnitaryMatrix m21 = sigq::compose(m2, m1);
  CHECK(m21.rows() == 9);
  CHECK(m21.cols() == 3);
  CHECK(sigq::validate_semi_unitary(m21.matrix(), 2e-12).pass);

  // The composed matrix is the plain product.
  const ComplexMatrix direct = m2.matrix().multiply(m1.matrix());
  for (std::size_t i = 0; i < direct.rows(); ++i)
    for (std::size_t j = 0; j < direct.cols(); ++j)
      CHECK(m21.matrix().at(i, j) == direct.at(i, j));

  CHECK_THROWS_AS(sigq::compose(m1, m2), sigq::ShapeError);

  // Deep chains stay within the acceptance tolerance for composed pairs.
  SemiUnitaryMatrix chain = sigq::random_semi_unitary(32, 32, 3);
  for (std::uint64_t s = 4; s < 12; ++s)
    chain = sigq::compose(sigq::random_semi_unitary(32, 32, s), chain);
  const SemiUnitaryMatrix tall = sigq::compose(sigq::random_semi_unitary(64, 32, 20), chain);
  CHECK(sigq::validate_semi_unitary(tall.matrix(), 2e-12).pass);
}

TEST_CASE("eig2 on explicit matrices") {
  // Distinct real spectrum, eigenvectors on the axes.
  const ComplexMatrix diag(2, 2, {Complex{2, 0}, Complex{0, 0}, Complex{0, 0}, Complex{1, 0}});
  auto e = sigq::eig2(diag);
  CHECK(e.lambda1 == Complex{2, 0});
  CHECK(e.lambda2 == Complex{1, 0});
  CHECK(e.vec1[0] == Complex{1, 0});
  CHECK(e.vec1[1] == Complex{0, 0});
  CHECK(e.vec2[1] == Complex{1, 0});

  // Equal moduli: the tie goes to the larger phase in (-pi, pi].
  const double th = 0.3;
  const ComplexMatrix rot(2, 2, {Complex{std::cos(th), 0}, Complex{-std::sin(th), 0},
                                 Complex{std::sin(th), 0}, Complex{std::cos(th), 0}});
  e = sigq::eig2(rot);
  CHECK(std::arg(e.lambda1) == doctest::Approx(th).epsilon(1e-12));
  CHECK(std::arg(e.lambda2) == doctest::Approx(-th).epsilon(1e-12));
  CHECK(std::abs(e.lambda1 - std::polar(1.0, th)) <= 1e-14);

  // Scaled identity: repeated eigenvalue but a full eigenspace.
  const ComplexMatrix sid(2, 2, {Complex{0, 3}, Complex{0, 0}, Complex{0, 0}, Complex{0, 3}});
  e = sigq::eig2(sid);
  CHECK(e.lambda1 == Complex{0, 3});
  CHECK(e.lambda2 == Complex{0, 3});
  CHECK(e.vec1[0] == Complex{1, 0});
  CHECK(e.vec2[1] == Complex{1, 0});

  // Jordan block: defective, no second eigenvector exists.
  const ComplexMatrix jordan(2, 2,
                             {Complex{1, 0}, Complex{1, 0}, Complex{0, 0}, Complex{1, 0}});
  CHECK_THROWS_AS(sigq::eig2(jordan), sigq::DegenerateMatrixError);
  try {
    sigq::eig2(jordan);
  } catch (const sigq::DegenerateMatrixError& err) {
    CHECK(std::abs(err.repeated_eigenvalue() - Complex{1, 0}) <= 1e-12);
  }
}

TEST_CASE("eig2 satisfies its characteristic polynomial on random matrices") {
  sigq::SeededRng rng(2024);
  int degenerate = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const ComplexMatrix m = random_square(rng, 2);
    const double scale = std::max(1.0, m.max_abs());
    try {
      const auto e = sigq::eig2(m);
      CHECK(std::abs(e.lambda1) >= std::abs(e.lambda2) - 1e-12 * scale);
      CHECK(char_poly_residual(m, e.lambda1) <= 1e-12 * scale * scale);
      CHECK(char_poly_residual(m, e.lambda2) <= 1e-12 * scale * scale);
      CHECK(eigvec_residual(m, e.lambda1, e.vec1) <= 1e-12 * scale);
      CHECK(eigvec_residual(m, e.lambda2, e.vec2) <= 1e-12 * scale);

      // Normalization and phase convention.
      for (const auto& v : {e.vec1, e.vec2}) {
        CHECK(std::norm(v[0]) + std::norm(v[1]) == doctest::Approx(1.0).epsilon(1e-12));
        const Complex pivot = std::abs(v[0]) > 1e-12 ? v[0] : v[1];
        CHECK(pivot.imag() == 0.0);
        CHECK(pivot.real() > 0.0);
      }
    } catch (const sigq::DegenerateMatrixError&) {
      ++degenerate;  // measure-zero set; a random draw should never land on it
    }
  }
  CHECK(degenerate == 0);
}

TEST_CASE("eig2 avoids cancellation when the roots are far apart") {
  // tr ~ 1e8 and det ~ 1: the naive (tr - sqrt(disc))/2 loses the small root.
  const double big = 1e8;
  const ComplexMatrix m(2, 2,
                        {Complex{big, 0}, Complex{0, 0}, Complex{1, 0}, Complex{1e-8, 0}});
  const auto e = sigq::eig2(m);
  CHECK(std::abs(e.lambda1 - Complex{big, 0}) <= 1e-6);
  // lambda2 = det/lambda1 keeps full relative precision near 1e-8.
  CHECK(std::abs(e.lambda2) > 0.0);
  CHECK(char_poly_residual(m, e.lambda2) / (big * 1.0) <= 1e-12);
  CHECK(std::abs(e.lambda2 - Complex{1e-8, 0}) <= 1e-20);
}

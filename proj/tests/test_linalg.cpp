// Copyright 2026 The seqent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "seqent/linalg.hpp"
#include "seqent/quantum.hpp"
#include "seqent/rng.hpp"

namespace seqent {
namespace {

const Complex I1{0.0, 1.0};

CMatrix random_matrix(SplitMix64& rng, std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = rng.uniform(-1.0, 1.0);
      const double im = rng.uniform(-1.0, 1.0);
      m(i, j) = Complex(re, im);
    }
  return m;
}

CMatrix random_hermitian(SplitMix64& rng, std::size_t n) {
  const CMatrix m = random_matrix(rng, n);
  return m + dagger(m);
}

CMatrix bell() { return state_from_theta(std::numbers::pi / 4).matrix(); }

// Coefficients c0..c4 of det(x I - A) for 4x4 A via Faddeev-LeVerrier.
std::array<Complex, 5> char_poly(const CMatrix& a) {
  std::array<Complex, 5> c{};
  c[4] = 1.0;
  CMatrix m = CMatrix::identity(4);
  for (int k = 1; k <= 4; ++k) {
    const CMatrix am = a * m;
    c[static_cast<std::size_t>(4 - k)] = -trace(am) / static_cast<double>(k);
    m = am + c[static_cast<std::size_t>(4 - k)] * CMatrix::identity(4);
  }
  return c;
}

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(max_abs_diff(kron(CMatrix::identity(2), CMatrix::identity(2)), CMatrix::identity(4)), 0.0);
}

TEST(Kron, SigmaZSquaredIsDiagonal) {
  const CMatrix z = CMatrix::diagonal({1, -1});
  EXPECT_EQ(max_abs_diff(kron(z, z), CMatrix::diagonal({1, -1, -1, 1})), 0.0);
}

TEST(Kron, SigmaXSigmaZEntries) {
  const CMatrix k = kron(CMatrix{{0, 1}, {1, 0}}, CMatrix::diagonal({1, -1}));
  EXPECT_EQ(k(0, 2), Complex(1.0));
  EXPECT_EQ(k(1, 3), Complex(-1.0));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(k(i, j), Complex(0.0));
}

TEST(Kron, AssociativeAndBilinear) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = random_matrix(rng, 2), b = random_matrix(rng, 2), c = random_matrix(rng, 2);
    const Complex s(rng.uniform(-2, 2), rng.uniform(-2, 2));
    EXPECT_LE(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
    EXPECT_LE(max_abs_diff(kron(a + s * b, c), kron(a, c) + s * kron(b, c)), 1e-12);
    EXPECT_LE(max_abs_diff(kron(a, b + s * c), kron(a, b) + s * kron(a, c)), 1e-12);
  }
}

TEST(Dagger, Examples) {
  EXPECT_EQ(max_abs_diff(dagger(CMatrix::identity(2)), CMatrix::identity(2)), 0.0);
  CMatrix m(2, 2);
  m(0, 1) = I1;
  const CMatrix d = dagger(m);
  EXPECT_EQ(d(1, 0), -I1);
  EXPECT_EQ(d(0, 1), Complex(0.0));
  SplitMix64 rng(3);
  const CMatrix r = random_matrix(rng, 4);
  EXPECT_EQ(max_abs_diff(dagger(dagger(r)), r), 0.0);
}

TEST(MatmulTrace, Examples) {
  const CMatrix z = CMatrix::diagonal({1, -1});
  EXPECT_EQ(trace(CMatrix::identity(4)), Complex(4.0));
  EXPECT_EQ(trace(matmul(z, z)), Complex(2.0));
  EXPECT_NEAR(trace(bell()).real(), 1.0, 1e-15);
}

TEST(MatmulTrace, DimensionMismatchRejected) {
  EXPECT_THROW(matmul(CMatrix(2, 3), CMatrix(2, 3)), DimensionError);
  EXPECT_THROW(trace(CMatrix(2, 3)), DimensionError);
}

TEST(CMatrix, NonFiniteEntriesRejected) {
  EXPECT_THROW((CMatrix{{std::numeric_limits<double>::quiet_NaN(), 0}, {0, 1}}), DomainError);
  EXPECT_THROW(CMatrix(0, 2), DimensionError);
}

TEST(HermitianEigenvalues, Identity) {
  const auto e = hermitian_eigenvalues(CMatrix::identity(4));
  for (double v : e) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(HermitianEigenvalues, BellPartialTranspose) {
  const auto e = hermitian_eigenvalues(partial_transpose(bell(), Subsystem::Second));
  const std::vector<double> expected{-0.5, 0.5, 0.5, 0.5};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(e[i], expected[i], 1e-13);
}

TEST(HermitianEigenvalues, RejectsNonHermitian) {
  CMatrix m = CMatrix::identity(2);
  m(0, 1) = 1e-6;
  EXPECT_THROW(hermitian_eigenvalues(m), NotHermitianError);
}

TEST(HermitianEigenvalues, AscendingAndTraceIdentity) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const CMatrix h = random_hermitian(rng, 4);
    const auto e = hermitian_eigenvalues(h);
    EXPECT_TRUE(std::is_sorted(e.begin(), e.end()));
    double sum = 0.0;
    for (double v : e) sum += v;
    EXPECT_NEAR(sum, trace(h).real(), 1e-10);
  }
}

TEST(HermitianEigenvalues, PsdInputsStayNonNegative) {
  SplitMix64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const CMatrix m = random_matrix(rng, 4);
    for (double v : hermitian_eigenvalues(hermitize(dagger(m) * m))) EXPECT_GE(v, -1e-10);
  }
}

// Matrices regenerated from the seed stated in data/make_eig_reference.py;
// reference spectra come from LAPACK.
TEST(HermitianEigenvalues, MatchesLapackReference) {
  std::ifstream in(SEQENT_TEST_DATA_DIR "/eig_reference.txt");
  ASSERT_TRUE(in) << "missing eig_reference.txt";
  SplitMix64 rng(20240601);
  std::string line;
  int n = 0;
  double worst = 0.0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::array<double, 4> ref{};
    for (double& v : ref) ls >> v;
    const CMatrix h = random_hermitian(rng, 4);
    const auto e = hermitian_eigenvalues(h);
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(e[i] - ref[i]));
    ++n;
  }
  EXPECT_EQ(n, 1000);
  EXPECT_LE(worst, 1e-9);
}

// Independent check: every computed eigenvalue is a root of the
// characteristic polynomial, relative to the polynomial's scale.
TEST(HermitianEigenvalues, RootsOfCharacteristicPolynomial) {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    const CMatrix h = random_hermitian(rng, 4);
    const auto c = char_poly(h);
    const auto e = hermitian_eigenvalues(h);
    for (double x : e) {
      Complex p = 0.0;
      double scale = 0.0;
      for (int k = 4; k >= 0; --k) {
        p = p * x + c[static_cast<std::size_t>(k)];
        scale += std::abs(c[static_cast<std::size_t>(k)]) * std::pow(std::abs(x), k);
      }
      // Nearby roots make |p'(x)| small; compare against the product of gaps.
      double gap = 1.0;
      for (double y : e)
        if (y != x) gap *= std::abs(x - y);
      EXPECT_LE(std::abs(p), 1e-9 * std::max(1.0, gap) + 1e-12 * scale);
    }
  }
}

TEST(HermitianEigenvalues, DiagonalAndDegenerate) {
  const auto e = hermitian_eigenvalues(CMatrix::diagonal({3, -1, 3, 0}));
  EXPECT_EQ(e, (std::vector<double>{-1, 0, 3, 3}));
}

TEST(PartialTranspose, MaximallyMixedFixed) {
  CMatrix m = CMatrix::identity(4);
  m *= 0.25;
  EXPECT_EQ(max_abs_diff(partial_transpose(m, Subsystem::Second), m), 0.0);
}

TEST(PartialTranspose, ProductStateSpectrumUnchanged) {
  SplitMix64 rng(9);
  const CMatrix a = random_matrix(rng, 2), b = random_matrix(rng, 2);
  CMatrix ra = dagger(a) * a, rb = dagger(b) * b;
  ra *= 1.0 / trace(ra).real();
  rb *= 1.0 / trace(rb).real();
  const CMatrix rho = hermitize(kron(ra, rb));
  const auto before = hermitian_eigenvalues(rho);
  const auto after = hermitian_eigenvalues(partial_transpose(rho, Subsystem::Second));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(before[i], after[i], 1e-12);
}

TEST(PartialTranspose, BellCoherencesMoveToAntiDiagonalBlock) {
  const CMatrix pt = partial_transpose(bell(), Subsystem::Second);
  EXPECT_NEAR(pt(1, 2).real(), 0.5, 1e-15);
  EXPECT_NEAR(pt(2, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(pt(0, 3)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(pt(3, 0)), 0.0, 1e-15);
  EXPECT_NEAR(pt(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(pt(3, 3).real(), 0.5, 1e-15);
}

TEST(PartialTranspose, InvolutionAndTracePreserving) {
  SplitMix64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix m = random_matrix(rng, 4);
    for (Subsystem s : {Subsystem::First, Subsystem::Second}) {
      EXPECT_EQ(max_abs_diff(partial_transpose(partial_transpose(m, s), s), m), 0.0);
      EXPECT_EQ(trace(partial_transpose(m, s)), trace(m));
    }
  }
}

TEST(PartialTranspose, HermitianInputGivesHermitianOutput) {
  SplitMix64 rng(12);
  const CMatrix h = random_hermitian(rng, 4);
  EXPECT_EQ(hermiticity_defect(partial_transpose(h, Subsystem::Second)), 0.0);
  EXPECT_THROW(partial_transpose(CMatrix::identity(2), Subsystem::Second), DimensionError);
}

}  // namespace
}  // namespace seqent

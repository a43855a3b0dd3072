#include <gtest/gtest.h>

#include "monogamy/error.hpp"
#include "monogamy/linalg.hpp"
#include "monogamy/simd/kernels.hpp"
#include "oracle.hpp"

using namespace monogamy;

namespace {

double max_abs(const CMatrix& m) {
  double r = 0.0;
  for (const auto& v : m.data()) r = std::max(r, std::abs(v));
  return r;
}

CMatrix reconstruct(const EigenSystem& es) {
  return es.vectors * CMatrix::diagonal(es.values) * es.vectors.adjoint();
}

}  // namespace

TEST(Linalg, ShapeChecks) {
  EXPECT_THROW(CMatrix(2, 2, std::vector<cplx>(3)), Error);
  const CMatrix k = kron(CMatrix::identity(2), CMatrix::identity(3));
  EXPECT_EQ(k.rows(), 6u);
  EXPECT_EQ(k.cols(), 6u);
  EXPECT_NEAR(k.trace().real(), 6.0, 0.0);
}

TEST(Linalg, JacobiMatchesEigenOracle) {
  oracle::Sampler s(1);
  for (int n = 1; n <= 16; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      const oracle::Mat h = s.hermitian(n);
      const CMatrix a = oracle::from_eigen(h);
      const EigenSystem es = hermitian_eigen(a);
      ASSERT_TRUE(es.converged);
      const auto ref = oracle::eigenvalues(h);
      for (int k = 0; k < n; ++k) EXPECT_NEAR(es.values[k], ref[k], 1e-11) << n;
      EXPECT_LT(max_abs(reconstruct(es) - a), 1e-11) << n;
      const CMatrix gram = es.vectors.adjoint() * es.vectors;
      EXPECT_LT(max_abs(gram - CMatrix::identity(n)), 1e-12) << n;
      for (int k = 1; k < n; ++k) EXPECT_LE(es.values[k - 1], es.values[k]);
    }
  }
}

TEST(Linalg, JacobiDegenerateSpectra) {
  const CMatrix id = CMatrix::identity(6);
  const auto es = hermitian_eigen(id);
  EXPECT_TRUE(es.converged);
  for (double v : es.values) EXPECT_NEAR(v, 1.0, 1e-15);

  oracle::Sampler s(2);
  const oracle::Mat u = s.unitary(5);
  Eigen::VectorXd d(5);
  d << 0.0, 0.0, 0.25, 0.25, 0.5;
  const oracle::Mat h = u * d.cast<cplx>().asDiagonal() * u.adjoint();
  const auto v = hermitian_eigenvalues(oracle::from_eigen(h));
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(v[k], d(k), 1e-12);
}

TEST(Linalg, SingularValuesMatchOracle) {
  oracle::Sampler s(3);
  for (int rows = 1; rows <= 8; ++rows) {
    for (int cols = 1; cols <= 8; ++cols) {
      oracle::Mat g(rows, cols);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = s.gauss();
      const auto sv = singular_values(oracle::from_eigen(g));
      const auto ref = oracle::singular_values(g);
      ASSERT_EQ(sv.size(), ref.size());
      for (std::size_t k = 0; k < sv.size(); ++k) EXPECT_NEAR(sv[k], ref[k], 1e-11);
    }
  }
}

TEST(Linalg, SingularValuesRankDeficient) {
  // rank-1 outer product: one nonzero singular value equal to |u||v|
  CMatrix m(3, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = cplx(i + 1.0, 0.0) * cplx(0.0, j + 1.0);
  const auto sv = singular_values(m);
  EXPECT_NEAR(sv[0], std::sqrt(14.0) * std::sqrt(30.0), 1e-11);
  EXPECT_NEAR(sv[1], 0.0, 1e-12);
  EXPECT_NEAR(sv[2], 0.0, 1e-12);
}

TEST(Linalg, PsdSqrt) {
  oracle::Sampler s(4);
  const oracle::Mat rho = s.mixed(4, 3);
  const CMatrix a = oracle::from_eigen(rho);
  const CMatrix r = psd_sqrt(a);
  EXPECT_LT(max_abs(r * r - a), 1e-12);
  EXPECT_LT(max_abs(r - oracle::from_eigen(oracle::psd_sqrt(rho))), 1e-10);

  CMatrix neg = CMatrix::identity(2);
  neg(1, 1) = -0.5;
  EXPECT_THROW(psd_sqrt(neg), Error);
  EXPECT_DOUBLE_EQ(clamp_psd_eigenvalue(-1e-11), 0.0);
}

TEST(Linalg, ScalarAndVectorPathsAgree) {
  if (simd::avx2_kernels() == nullptr || !simd::cpu_supports(simd::Level::avx2)) GTEST_SKIP();
  oracle::Sampler s(5);
  const CMatrix a = oracle::from_eigen(s.hermitian(12));
  const simd::Level original = simd::active().level;
  simd::force_level(simd::Level::scalar);
  const auto v_scalar = hermitian_eigenvalues(a);
  simd::force_level(simd::Level::avx2);
  const auto v_avx = hermitian_eigenvalues(a);
  simd::force_level(original);
  for (std::size_t k = 0; k < v_scalar.size(); ++k) EXPECT_NEAR(v_scalar[k], v_avx[k], 1e-12);
}

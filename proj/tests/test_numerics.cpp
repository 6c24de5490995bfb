#include <doctest.h>

#include <random>

#include "entsort/error.hpp"
#include "entsort/numerics.hpp"
#include "entsort/states.hpp"
#include "oracles.hpp"

using namespace entsort;

namespace {

ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(u(rng), u(rng));
  return m;
}

ComplexMatrix random_hermitean(Eigen::Index n, std::uint64_t seed) {
  const ComplexMatrix a = random_matrix(n, n, seed);
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_CASE("hs_inner") {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  CHECK(std::abs(hs_inner(id, id) - Complex(2.0, 0.0)) < 1e-15);
  CHECK(std::abs(hs_inner(oracle::pauli_x(), oracle::pauli_z())) < 1e-15);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix a = random_matrix(3, 4, seed);
    double frob = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) frob += std::norm(a(i, j));
    const Complex self = hs_inner(a, a);
    CHECK(self.real() == doctest::Approx(frob).epsilon(1e-13));
    CHECK(std::abs(self.imag()) < 1e-13);
    CHECK(self.real() >= 0.0);
  }
  CHECK(hs_inner(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2)) == Complex(0.0, 0.0));
  CHECK_THROWS_AS(hs_inner(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("kron") {
  CHECK(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)).isApprox(ComplexMatrix::Identity(4, 4)));

  ComplexVector ket00 = ComplexVector::Zero(4);
  ket00(0) = 1.0;
  const ComplexVector flipped = kron(oracle::pauli_x(), ComplexMatrix::Identity(2, 2)) * ket00;
  CHECK(std::abs(flipped(2) - 1.0) < 1e-15);  // |10>
  CHECK(flipped.norm() == doctest::Approx(1.0));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix a = random_matrix(3, 3, seed);
    const ComplexMatrix b = random_matrix(2, 2, seed + 100);
    const ComplexMatrix k = kron(a, b);
    CHECK(std::abs(k.trace() - a.trace() * b.trace()) < 1e-12);
    CHECK(oracle::max_abs_diff(k, oracle::kron(a, b)) < 1e-15);
  }
  const ComplexMatrix r = kron(random_matrix(2, 3, 1), random_matrix(4, 1, 2));
  CHECK(r.rows() == 8);
  CHECK(r.cols() == 3);
}

TEST_CASE("gram_schmidt normalizes and orthogonalizes") {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const auto single = gram_schmidt({id});
  REQUIRE(single.size() == 1);
  CHECK(oracle::max_abs_diff(single[0], id / std::sqrt(2.0)) < 1e-15);

  // I + 0.1 sz minus its identity component leaves 0.1 sz.
  const auto pair = gram_schmidt({id, id + 0.1 * oracle::pauli_z()});
  REQUIRE(pair.size() == 2);
  CHECK(oracle::max_abs_diff(pair[0], id / std::sqrt(2.0)) < 1e-12);
  CHECK(oracle::max_abs_diff(pair[1], oracle::pauli_z() / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("gram_schmidt orthonormality and hermiticity on random hermitean systems") {
  for (Eigen::Index d : {2, 3, 5, 8}) {
    std::vector<ComplexMatrix> system;
    for (Eigen::Index k = 0; k < d * d; ++k) system.push_back(random_hermitean(d, 1000 * d + k));
    const auto basis = gram_schmidt(system);
    REQUIRE(basis.size() == system.size());
    double worst_ortho = 0.0;
    double worst_herm = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      worst_herm = std::max(worst_herm, hermiticity_defect(basis[i]));
      for (std::size_t j = 0; j < basis.size(); ++j)
        worst_ortho = std::max(worst_ortho, std::abs(hs_inner(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)));
    }
    CAPTURE(d);
    CHECK(worst_ortho <= kDefaultTolerances.ortho);
    CHECK(worst_herm <= kDefaultTolerances.ortho);
  }
}

TEST_CASE("gram_schmidt reports the dependent member") {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  try {
    gram_schmidt({id, oracle::pauli_x(), 2.0 * id + 3.0 * oracle::pauli_x()});
    FAIL("expected DependentSystemError");
  } catch (const DependentSystemError& e) {
    CHECK(e.index() == 2);
  }
  CHECK_THROWS_AS(gram_schmidt({ComplexMatrix::Zero(2, 2)}), DependentSystemError);
  CHECK_THROWS_AS(gram_schmidt({id, ComplexMatrix::Identity(3, 3)}), DimensionError);
}

TEST_CASE("svd") {
  const SvdResult id = svd(ComplexMatrix::Identity(3, 3));
  CHECK(id.singular.isApprox(Eigen::Vector3d(1, 1, 1)));

  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 3.0;
  diag(1, 1) = 4.0;
  const SvdResult dr = svd(diag);
  CHECK(dr.singular(0) == doctest::Approx(4.0));
  CHECK(dr.singular(1) == doctest::Approx(3.0));

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Eigen::Index rows = 1 + static_cast<Eigen::Index>(seed % 5);
    const Eigen::Index cols = 1 + static_cast<Eigen::Index>((seed / 5) % 5);
    const ComplexMatrix m = random_matrix(rows, cols, seed, 10.0);
    const SvdResult s = svd(m);
    const ComplexMatrix rebuilt = s.left * s.singular.cast<Complex>().asDiagonal() * s.right.adjoint();
    CHECK((m - rebuilt).norm() <= 1e-10);
    for (Eigen::Index k = 1; k < s.singular.size(); ++k) CHECK(s.singular(k) <= s.singular(k - 1));
  }

  // 4x4: singular values against sqrt(eig(M^H M)).
  for (std::uint64_t seed = 50; seed < 60; ++seed) {
    const ComplexMatrix m = random_matrix(4, 4, seed);
    const SvdResult s = svd(m);
    const auto expected = oracle::singular_values(m);
    for (std::size_t k = 0; k < expected.size(); ++k)
      CHECK(std::abs(s.singular(static_cast<Eigen::Index>(k)) - expected[k]) <= 1e-10);
  }

  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(svd(bad), NumericError);
}

TEST_CASE("eigh") {
  const EighResult z = eigh(oracle::pauli_z());
  CHECK(z.values(0) == doctest::Approx(1.0));
  CHECK(z.values(1) == doctest::Approx(-1.0));

  const EighResult mixed = eigh(ComplexMatrix::Identity(2, 2) / 2.0);
  CHECK(mixed.values(0) == doctest::Approx(0.5));
  CHECK(mixed.values(1) == doctest::Approx(0.5));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 6);
    const ComplexMatrix h = random_hermitean(n, seed);
    const EighResult e = eigh(h);
    ComplexMatrix rebuilt = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      rebuilt += e.values(k) * e.vectors.col(k) * e.vectors.col(k).adjoint();
      CHECK((h * e.vectors.col(k) - e.values(k) * e.vectors.col(k)).norm() <= 1e-9);
      if (k > 0) CHECK(e.values(k) <= e.values(k - 1));
    }
    CHECK(oracle::max_abs_diff(rebuilt, h) <= 1e-9);
    CHECK((e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
  }

  CHECK_THROWS_AS(eigh(random_matrix(3, 3, 5)), DomainError);
  CHECK_THROWS_AS(eigh(random_matrix(2, 3, 5)), DimensionError);
}

TEST_CASE("partial_trace") {
  ComplexMatrix ket00 = ComplexMatrix::Zero(4, 4);
  ket00(0, 0) = 1.0;
  ComplexMatrix proj0 = ComplexMatrix::Zero(2, 2);
  proj0(0, 0) = 1.0;
  CHECK(oracle::max_abs_diff(partial_trace(ket00, 2, 2, Subsystem::A), proj0) < 1e-15);

  const DensityState bell = density_from_pure(bell_state(2, 0, 0));
  CHECK(oracle::max_abs_diff(partial_trace(bell.matrix(), 2, 2, Subsystem::A),
                             ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int da = 2 + static_cast<int>(seed % 3);
    const int db = 2 + static_cast<int>((seed / 3) % 3);
    const ComplexMatrix rho = random_density(da, db, seed).matrix();
    const ComplexMatrix ra = partial_trace(rho, da, db, Subsystem::A);
    const ComplexMatrix rb = partial_trace(rho, da, db, Subsystem::B);
    CHECK(oracle::max_abs_diff(ra, oracle::partial_trace_a(rho, da, db)) <= 1e-12);
    CHECK(oracle::max_abs_diff(rb, oracle::partial_trace_b(rho, da, db)) <= 1e-12);
    CHECK(std::abs(ra.trace() - rho.trace()) <= 1e-10);
    CHECK(hermiticity_defect(ra) <= 1e-12);
  }

  // Product of random hermitean factors: tr_B(A (x) B) = A tr(B).
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix a = random_hermitean(3, seed);
    const ComplexMatrix b = random_hermitean(2, seed + 77);
    const ComplexMatrix reduced = partial_trace(kron(a, b), 3, 2, Subsystem::A);
    CHECK(oracle::max_abs_diff(reduced, a * b.trace()) <= 1e-10);
  }

  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(4, 4), 2, 3, Subsystem::A), DimensionError);
}

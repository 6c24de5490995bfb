#pragma once

// Brute-force reference computations for the tests. Nothing here calls into
// the library routine it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// rho_A(i,k) = sum_j <i j| rho |k j>, built from explicit basis kets.
inline Matrix partial_trace_a(const Matrix& rho, int da, int db) {
  Matrix out = Matrix::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < da; ++k)
      for (int j = 0; j < db; ++j) {
        Eigen::VectorXcd bra = Eigen::VectorXcd::Zero(da * db);
        Eigen::VectorXcd ket = Eigen::VectorXcd::Zero(da * db);
        bra(i * db + j) = 1.0;
        ket(k * db + j) = 1.0;
        out(i, k) += (bra.adjoint() * rho * ket)(0, 0);
      }
  return out;
}

inline Matrix partial_trace_b(const Matrix& rho, int da, int db) {
  Matrix out = Matrix::Zero(db, db);
  for (int j = 0; j < db; ++j)
    for (int l = 0; l < db; ++l)
      for (int i = 0; i < da; ++i) out(j, l) += rho(i * db + j, i * db + l);
  return out;
}

/// Kronecker product by the defining index formula.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j)
      out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
  return out;
}

/// c_ij = tr((F_i (x) G_j)^H rho) computed entry by entry.
inline Matrix coefficient_matrix(const Matrix& rho, const std::vector<Matrix>& fa,
                                 const std::vector<Matrix>& fb) {
  Matrix c(fa.size(), fb.size());
  for (std::size_t i = 0; i < fa.size(); ++i)
    for (std::size_t j = 0; j < fb.size(); ++j) c(i, j) = (kron(fa[i], fb[j]).adjoint() * rho).trace();
  return c;
}

/// Singular values via eigenvalues of M^H M, sorted nonincreasing.
inline std::vector<double> singular_values(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m);
  std::vector<double> out;
  for (int k = 0; k < es.eigenvalues().size(); ++k) out.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(k))));
  std::sort(out.rbegin(), out.rend());
  return out;
}

inline double entropy_from_schmidt(const std::vector<double>& lambda) {
  double e = 0.0;
  for (double l : lambda) {
    const double p = l * l;
    if (p > 0.0) e -= p * std::log2(p);
  }
  return e;
}

enum class Verdict { first_below, second_below, incomparable };

/// Direct restatement of the semiorder: higher rank first, then majorization
/// of squared coefficients with absolute slack on the partial sums.
inline Verdict semiorder(const std::vector<double>& first, const std::vector<double>& second,
                         double slack) {
  if (first.size() > second.size()) return Verdict::first_below;
  if (second.size() > first.size()) return Verdict::second_below;
  bool first_ok = true;
  bool second_ok = true;
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t j = 0; j < first.size(); ++j) {
    s1 += first[j] * first[j];
    s2 += second[j] * second[j];
    if (s1 > s2 + slack) first_ok = false;
    if (s2 > s1 + slack) second_ok = false;
  }
  if (first_ok) return Verdict::first_below;
  if (second_ok) return Verdict::second_below;
  return Verdict::incomparable;
}

/// Width of the strict order `less` over n elements: n minus a maximum
/// matching in the comparability bipartite graph (Dilworth / Fulkerson).
inline std::size_t poset_width(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& less) {
  std::vector<int> match_right(n, -1);
  std::function<bool(std::size_t, std::vector<char>&)> try_match = [&](std::size_t u, std::vector<char>& seen) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v || !less(u, v) || seen[v]) continue;
      seen[v] = 1;
      if (match_right[v] < 0 || try_match(static_cast<std::size_t>(match_right[v]), seen)) {
        match_right[v] = static_cast<int>(u);
        return true;
      }
    }
    return false;
  };
  std::size_t matching = 0;
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<char> seen(n, 0);
    if (try_match(u, seen)) ++matching;
  }
  return n - matching;
}

/// Random positive coefficient vector, sorted nonincreasing, sum of squares 1.
inline std::vector<double> random_coefficients(std::size_t len, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<double> v(len);
  double total = 0.0;
  for (double& x : v) {
    x = u(rng);
    total += x * x;
  }
  for (double& x : v) x /= std::sqrt(total);
  std::sort(v.rbegin(), v.rend());
  return v;
}

}  // namespace oracle

#include "entsort/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entsort/error.hpp"
#include "entsort/kernels.hpp"

namespace entsort {

double von_neumann_entropy(const ComplexMatrix& rho, const Tolerances& tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0)
    throw DimensionError("von_neumann_entropy: matrix must be square and nonempty");
  const Complex trace = rho.trace();
  if (std::abs(trace - 1.0) > tol.recon)
    throw DomainError("von_neumann_entropy: trace " + std::to_string(trace.real()) + " is not 1");

  const RealVector values = eigh(rho, tol).values;
  double entropy = 0.0;
  for (double l : values) {
    if (l < -tol.recon || l > 1.0 + tol.recon)
      throw DomainError("von_neumann_entropy: eigenvalue " + std::to_string(l) + " outside [0, 1]");
    if (l > tol.eigen_floor) entropy -= l * std::log2(l);
  }
  return std::max(entropy, 0.0);
}

double entanglement_entropy(const PureState& psi, const Tolerances& tol) {
  const ComplexVector& v = psi.amplitudes();
  const ComplexMatrix rho = v * v.adjoint();
  return von_neumann_entropy(partial_trace(rho, psi.dim_a(), psi.dim_b(), Subsystem::A), tol);
}

double reduced_entropy(const AnyState& state, const Tolerances& tol) {
  if (const auto* psi = std::get_if<PureState>(&state)) return entanglement_entropy(*psi, tol);
  const auto& rho = std::get<DensityState>(state);
  return von_neumann_entropy(partial_trace(rho.matrix(), rho.dim_a(), rho.dim_b(), Subsystem::A),
                             tol);
}

void sort_entropy_records(std::vector<EntropyRecord>& records, const Tolerances& tol) {
  // Entropies are bucketed on a grid of tol.entropy_tie so that values
  // differing only by rounding noise compare equal and keep input order.
  auto key = [&](double e) {
    return tol.entropy_tie > 0.0 ? std::round(e / tol.entropy_tie) : e;
  };
  std::stable_sort(records.begin(), records.end(), [&](const EntropyRecord& a, const EntropyRecord& b) {
    return key(a.entropy) < key(b.entropy);
  });
}

std::vector<EntropyRecord> lsea_sort(std::span<const AnyState> states, const Tolerances& tol) {
  const std::vector<double> entropies = parallel::reduced_entropies(states, tol);
  std::vector<EntropyRecord> records(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) records[i] = EntropyRecord{i, entropies[i]};
  sort_entropy_records(records, tol);
  return records;
}

}  // namespace entsort

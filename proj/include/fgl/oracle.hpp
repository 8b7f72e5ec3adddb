#pragma once

#include <cstddef>
#include <vector>

#include "fgl/operator.hpp"

namespace fgl {

/// Ascending eigenvalues of the quadratic-case (G = t²) constrained problem
/// and matching eigenfields normalized to uᵀMu = 1.
struct SpectrumP2 {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenfields;  // node-sized vectors
};

/// Cyclic Jacobi eigensolver for a dense symmetric matrix (row-major n×n).
/// Returns ascending eigenvalues; when eigenvectors_out is non-null it
/// receives the matching unit eigenvectors.
std::vector<double> jacobi_eigensolve(
    std::vector<double> matrix, std::size_t n,
    std::vector<std::vector<double>>* eigenvectors_out = nullptr);

/// Dense reference spectrum for G = t²: assembles the kernel quadratic form
/// A with J(u) = uᵀAu and the diagonal mass M with I(u) = uᵀMu = h·Σ_Ω u_i²,
/// eliminates the exterior unknowns of the Neumann/Robin problems exactly
/// (their block is diagonal), and runs Jacobi on the reduced symmetric
/// pencil M^{-1/2}·S·M^{-1/2}. Capped at max_interior interior nodes.
SpectrumP2 oracle_spectrum_p2(const Grid1D& grid, double s, const BcSpec& bc,
                              std::size_t max_interior = 512);

}  // namespace fgl

#include "fgl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fgl {

std::vector<double> jacobi_eigensolve(
    std::vector<double> a, std::size_t n,
    std::vector<std::vector<double>>* eigenvectors_out) {
  if (a.size() != n * n) {
    throw std::invalid_argument("jacobi: matrix size mismatch");
  }
  std::vector<double> V;
  if (eigenvectors_out != nullptr) {
    V.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) V[i * n + i] = 1.0;
  }

  double norm = 0.0;
  for (double x : a) norm += x * x;
  norm = std::sqrt(norm);
  const double stop = 1e-15 * std::max(norm, 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    }
    if (std::sqrt(2.0 * off) <= stop) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        if (std::abs(apq) <= 1e-18 * (std::abs(app) + std::abs(aqq))) {
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - sn * akq;
          a[k * n + q] = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - sn * aqk;
          a[q * n + k] = sn * apk + c * aqk;
        }
        if (eigenvectors_out != nullptr) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = V[k * n + p];
            const double vkq = V[k * n + q];
            V[k * n + p] = c * vkp - sn * vkq;
            V[k * n + q] = sn * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x] < a[y * n + y];
  });

  std::vector<double> eigenvalues(n);
  for (std::size_t k = 0; k < n; ++k) eigenvalues[k] = a[order[k] * n + order[k]];
  if (eigenvectors_out != nullptr) {
    eigenvectors_out->assign(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        (*eigenvectors_out)[k][i] = V[i * n + order[k]];
      }
    }
  }
  return eigenvalues;
}

SpectrumP2 oracle_spectrum_p2(const Grid1D& grid, double s, const BcSpec& bc,
                              std::size_t max_interior) {
  const std::size_t ni = grid.interior_count();
  if (ni > max_interior) {
    throw std::invalid_argument(
        "oracle_spectrum_p2: interior node count exceeds the dense-solve cap");
  }
  if (bc.kind == BoundaryCondition::robin && !bc.beta) {
    throw std::invalid_argument("oracle_spectrum_p2: robin bc needs a weight");
  }

  const KernelTable kernel(grid, s);
  const double h = grid.spacing();
  const std::size_t ib = grid.interior_begin();
  const std::size_t ne = grid.exterior_count();
  const bool dirichlet = bc.kind == BoundaryCondition::dirichlet;

  // Quadratic form coefficients: each unordered pair {i, j} contributes
  // κ·(u_i − u_j)² with κ = 2·w·d^{-2s} (ordered pairs double the measure).
  std::vector<double> a_ii(ni * ni, 0.0);      // interior block
  std::vector<double> a_ie;                    // interior × exterior block
  std::vector<double> a_ee(ne, 0.0);           // exterior diagonal
  if (!dirichlet) a_ie.assign(ni * ne, 0.0);

  for (const KernelPair& p : kernel.pairs()) {
    const double kappa = 2.0 * p.weight * p.inv_dist_s * p.inv_dist_s;
    const bool pi = grid.is_interior(p.i);
    const bool pj = grid.is_interior(p.j);
    if (pi && pj) {
      const std::size_t i = p.i - ib;
      const std::size_t j = p.j - ib;
      a_ii[i * ni + i] += kappa;
      a_ii[j * ni + j] += kappa;
      a_ii[i * ni + j] -= kappa;
      a_ii[j * ni + i] -= kappa;
    } else {
      // exactly one interior node by table construction
      const std::size_t i = (pi ? p.i : p.j) - ib;
      const std::size_t e = grid.exterior_ordinal(pi ? p.j : p.i);
      a_ii[i * ni + i] += kappa;
      if (!dirichlet) {
        a_ee[e] += kappa;
        a_ie[i * ne + e] -= kappa;
      }
      // Dirichlet: exterior value is 0, the pair only loads the diagonal.
    }
  }
  if (bc.kind == BoundaryCondition::robin) {
    for (std::size_t e = 0; e < ne; ++e) a_ee[e] += (*bc.beta)[e] * h;
  }

  // Schur elimination of the exterior block (diagonal, strictly positive off
  // the Dirichlet branch: every exterior node pairs with some interior one).
  if (!dirichlet) {
    for (std::size_t e = 0; e < ne; ++e) {
      const double inv = 1.0 / a_ee[e];
      for (std::size_t i = 0; i < ni; ++i) {
        const double ci = a_ie[i * ne + e];
        if (ci == 0.0) continue;
        for (std::size_t j = 0; j < ni; ++j) {
          a_ii[i * ni + j] -= ci * inv * a_ie[j * ne + e];
        }
      }
    }
  }

  // M = h·Id on the interior, so the pencil reduces to A/h.
  for (double& x : a_ii) x /= h;

  std::vector<std::vector<double>> vectors;
  SpectrumP2 out;
  out.eigenvalues = jacobi_eigensolve(std::move(a_ii), ni, &vectors);

  const double inv_sqrt_h = 1.0 / std::sqrt(h);
  out.eigenfields.assign(ni, std::vector<double>(grid.node_count(), 0.0));
  for (std::size_t k = 0; k < ni; ++k) {
    auto& field = out.eigenfields[k];
    for (std::size_t i = 0; i < ni; ++i) {
      field[ib + i] = vectors[k][i] * inv_sqrt_h;
    }
    if (!dirichlet) {
      // Recover the eliminated exterior values: u_E = A_EE⁻¹·Σ κ_ie·u_i.
      for (std::size_t e = 0; e < ne; ++e) {
        double acc = 0.0;
        for (std::size_t i = 0; i < ni; ++i) {
          acc -= a_ie[i * ne + e] * field[ib + i];
        }
        field[grid.exterior_node(e)] = acc / a_ee[e];
      }
    }
  }
  return out;
}

}  // namespace fgl

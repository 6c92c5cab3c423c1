// eigensolver.hpp — smallest eigenpair of a sparse symmetric matrix by
// Lanczos iteration with restarts.
//
// Small problems keep the Krylov basis and reorthogonalize fully; large ones
// run the plain three-term recurrence twice (second pass assembles the Ritz
// vector), trading flops for O(1) vector storage. Either way the returned
// pair is verified explicitly: lambda is the Rayleigh quotient of the
// assembled vector and `residual` is the true ||Au - lambda u||_2 with
// ||u|| = 1, so no trust is placed in the recurrence itself.
//
// Convergence contract: residual <= tol * |lambda|, with an absolute escape
// residual <= 1e-13 * ||A||_inf for eigenvalues at or near zero where the
// relative test is ill-posed. Runs are deterministic for a fixed seed: the
// start vector comes from a fixed-stream generator, not std:: distributions.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "specgrowth/errors.hpp"

namespace specgrowth {

struct CsrMatrix {
  std::size_t n = 0;
  std::vector<std::size_t> offsets;  // n+1
  std::vector<std::uint32_t> cols;
  std::vector<double> vals;

  void multiply(const std::vector<double>& x, std::vector<double>& y) const;
  double inf_norm() const;
};

struct SolverOptions {
  double tol = 1e-8;
  std::uint64_t seed = 1;
  std::size_t max_basis = 250;     // Lanczos steps per restart cycle
  std::size_t max_restarts = 60;
  std::ostream* trace = nullptr;   // optional "iter,theta,residual_estimate" CSV
};

struct EigenResult {
  double lambda = 0.0;
  double residual = 0.0;  // verified ||Au - lambda u||, unit u
  int iterations = 0;     // total matrix applications
  int restarts = 0;
  bool converged = false;
};

// Throws convergence_error (carrying the best iterate) when the contract is
// not met within max_restarts cycles. `eigenvector` receives the unit Ritz
// vector when non-null.
EigenResult smallest_eigenpair(const CsrMatrix& a, const SolverOptions& opts,
                               std::vector<double>* eigenvector = nullptr);

}  // namespace specgrowth

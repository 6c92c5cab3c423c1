// spectral.hpp — Dirichlet restrictions of the graph Laplacian, their lowest
// eigenvalues along exhaustions, annulus localization brackets, supersolution
// certificates, and the variational upper bound from test-function sweeps.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "specgrowth/eigensolver.hpp"
#include "specgrowth/family.hpp"
#include "specgrowth/forms.hpp"
#include "specgrowth/graph.hpp"
#include "specgrowth/metrics.hpp"
#include "specgrowth/test_functions.hpp"

namespace specgrowth {

// Symmetrized Dirichlet restriction S = M^{-1/2} (D - B) M^{-1/2} over a
// vertex subset: D holds the full weighted degrees of the host graph
// (exterior weights included), B the edges inside the domain. Eigenvalues of
// S are those of the Dirichlet Laplacian on the domain.
struct DirichletOperator {
  std::vector<Vertex> domain;  // sorted, deduplicated
  CsrMatrix matrix;
};

DirichletOperator dirichlet_operator(const WeightedGraph& g, std::vector<Vertex> domain);

// Smallest Dirichlet eigenvalue over the domain. `ground`, when non-null,
// receives the eigenvector transported back to the m-weighted space and
// embedded on the full vertex set (zero outside the domain).
EigenResult dirichlet_lowest(const WeightedGraph& g, std::vector<Vertex> domain,
                             const SolverOptions& opts = {},
                             std::vector<double>* ground = nullptr);

struct ExhaustionRow {
  std::uint32_t radius;
  double lambda;
  double residual;
  int iterations;
};

// lambda_0(B_R) for each requested radius, each on its own truncation of the
// family (exterior weights make these exact values of the infinite graph's
// Dirichlet restriction). Nonincreasing in R up to solver tolerance.
std::vector<ExhaustionRow> lambda0_exhaustion(const Family& family,
                                              const std::vector<std::uint32_t>& radii,
                                              MeasureRule rule, const SolverOptions& opts = {},
                                              unsigned threads = 1,
                                              std::optional<ResourceCaps> caps = {});

struct AnnulusRow {
  std::uint32_t r_in;
  std::uint32_t r_out;
  double bracket;  // localization data, not a certified bound
  double residual;
};

// Lowest Dirichlet eigenvalue of the annulus spheres (r_in, r_out], for each
// r_in. The value brackets where mass concentrating away from any ball can
// sit; it is labeled a bracket, never a bound.
std::vector<AnnulusRow> lambda_ess_bracket(const Family& family,
                                           const std::vector<std::uint32_t>& r_ins,
                                           std::uint32_t r_out, MeasureRule rule,
                                           const SolverOptions& opts = {},
                                           std::optional<ResourceCaps> caps = {});

struct SupersolutionReport {
  bool ok = false;
  double min_residual = 0.0;      // min over checked x of (L phi - lambda phi)(x) / phi(x)
  double max_abs_residual = 0.0;  // max |...| over checked vertices
  Vertex argmin = 0;
  std::size_t checked = 0;
};

// Pointwise check that phi is a supersolution at level lambda away from the
// skipped layer (typically the truncation boundary, where the operator needs
// values past the materialized spheres). phi must be positive on every
// checked vertex. ok iff min_residual >= -1e-12.
SupersolutionReport supersolution_check(const WeightedGraph& g, const std::vector<double>& phi,
                                        double lambda, const std::vector<Vertex>& skip);

struct VariationalRow {
  double alpha;
  double r;
  double value;
};

struct VariationalResult {
  double best_value = 0.0;
  double best_alpha = 0.0;
  double best_r = 0.0;
  std::size_t admitted = 0;  // (alpha, r) pairs that were evaluated
  std::vector<VariationalRow> rows;
};

// min over admitted (alpha, r) of the Rayleigh quotient of the test function.
// A radius is admitted when the ball B_{2r}(root) stays strictly inside the
// non-boundary part of the graph, so each value is a certified upper bound
// for lambda_0 of the ambient graph. Pairs with alpha * r > 700 are skipped.
// Throws when nothing is admissible.
VariationalResult variational_bound(const WeightedGraph& g, const PseudoMetric& metric,
                                    const std::vector<double>& alphas,
                                    const std::vector<double>& radii, unsigned threads = 0);

}  // namespace specgrowth

// dense.hpp — cyclic Jacobi eigensolver for small dense symmetric matrices.
// Reference route for the verify pipeline's oracle comparisons; shares no
// code with the sparse Lanczos path.
#pragma once

#include <cstddef>
#include <vector>

namespace specgrowth {

// Eigenvalues of the n-by-n symmetric matrix `a` (row-major, only the upper
// triangle is trusted), sorted ascending. Intended for n up to a few hundred.
std::vector<double> dense_symmetric_eigenvalues(std::vector<double> a, std::size_t n);

}  // namespace specgrowth

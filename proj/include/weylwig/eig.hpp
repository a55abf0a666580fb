#ifndef WEYLWIG_EIG_HPP
#define WEYLWIG_EIG_HPP

#include <vector>

#include "weylwig/grid.hpp"

namespace weylwig {

// Eigenvalues of a hermitian n x n row-major matrix, ascending.
// Throws std::runtime_error if the solver fails.
std::vector<double> hermitian_eigenvalues(cvector a, int n);

}  // namespace weylwig

#endif

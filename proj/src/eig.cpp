#include "weylwig/eig.hpp"

#include <stdexcept>
#include <string>

#include <lapacke.h>

namespace weylwig {

std::vector<double> hermitian_eigenvalues(cvector a, int n) {
  if (n <= 0 || static_cast<std::size_t>(n) * n != a.size()) {
    throw std::invalid_argument("hermitian_eigenvalues: bad dimensions");
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_zheev(LAPACK_ROW_MAJOR, 'N', 'U', n,
                    reinterpret_cast<lapack_complex_double*>(a.data()), n, w.data());
  if (info != 0) {
    throw std::runtime_error("zheev failed with info " + std::to_string(info));
  }
  return w;
}

}  // namespace weylwig

#ifndef WEYLWIG_TEST_HELPERS_HPP
#define WEYLWIG_TEST_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <complex>

#include "weylwig/operators.hpp"
#include "weylwig/oracle.hpp"
#include "weylwig/wigner.hpp"

namespace wtest {

inline double max_abs_diff(const weylwig::OperatorKernel& A, const weylwig::OperatorKernel& B) {
  double m = 0.0;
  for (std::size_t i = 0; i < A.k.size(); ++i) m = std::max(m, std::abs(A.k[i] - B.k[i]));
  return m;
}

inline double max_abs_diff(const weylwig::PhaseSpaceFunction& A,
                           const weylwig::PhaseSpaceFunction& B) {
  double m = 0.0;
  for (std::size_t i = 0; i < A.f.size(); ++i) m = std::max(m, std::abs(A.f[i] - B.f[i]));
  return m;
}

inline double max_abs(const weylwig::PhaseSpaceFunction& A) {
  double m = 0.0;
  for (const auto& z : A.f) m = std::max(m, std::abs(z));
  return m;
}

// Closed-form oracle agreement gate, evaluated once. Tests that consume the
// closed forms require() this so a broken oracle fails loudly instead of
// silently validating the library against garbage.
inline bool oracle_gate_ok() {
  static const bool ok = weylwig::oracle_gate(1.0, 12345, nullptr);
  return ok;
}

}  // namespace wtest

#endif

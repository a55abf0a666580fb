#ifndef WEYLWIG_IO_HPP
#define WEYLWIG_IO_HPP

#include <optional>
#include <string>

#include "weylwig/states.hpp"
#include "weylwig/wigner.hpp"

namespace weylwig {

// All writers are deterministic: fixed key order, 17-significant-digit floats,
// no timestamps, '\n' line ends. Byte-identical output for identical inputs.

// header "q,p,re,im", one row per lattice point, row-major over (j, k)
void write_phase_space_csv(const std::string& path, const PhaseSpaceFunction& f);

// Parses and validates against the declared grid: exact header, N*N rows in
// row-major order, coordinates matching the declared lattice (the momentum
// spacing identifies conjugate vs wigner lattice). Throws std::runtime_error
// with a descriptive message on any mismatch.
PhaseSpaceFunction read_phase_space_csv(const std::string& path, const GridSpec& declared);

// sibling metadata: {"grid":{"N":..,"L":..,"hbar":..},"lattice":"wigner"|"conjugate"}
void write_phase_space_envelope(const std::string& path, const PhaseSpaceFunction& f);

// {"grid":{...},"re":[[...]],"im":[[...]]} row-major; validation block appended
// when given
void write_operator_json(const std::string& path, const OperatorKernel& A,
                         const std::optional<DensityValidation>& validation,
                         const std::optional<double>& roundtrip_residual);

std::string grid_json(const GridSpec& g);  // {"N":int,"L":float,"hbar":float}

// summary of a Wigner distribution: min, max, the 1/(pi hbar) bound check,
// L1 marginal errors against the kernel diagonals, total mass
struct WignerSummary {
  GridSpec grid;
  std::string state;
  double min = 0.0;
  double max = 0.0;
  double bound = 0.0;       // 1/(pi hbar)
  bool bound_ok = false;    // max |W| <= bound + 1e-9
  double marginal_q_l1 = 0.0;
  double marginal_p_l1 = 0.0;
  double total_mass = 0.0;  // dq dpw double sum
};
WignerSummary summarize_wigner(const PhaseSpaceFunction& W, const OperatorKernel& rho,
                               const std::string& state_label);
std::string wigner_summary_json(const WignerSummary& s);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace weylwig

#endif

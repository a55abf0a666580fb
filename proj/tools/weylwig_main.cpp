// weylwig: wigner | check | quantize
//
// Exit codes: 0 success, 1 failed check entries, 2 usage or invalid
// configuration (bad flags, malformed state specs or CSV, support
// violations), 3 bound or density-validation failure on otherwise valid
// input. Outputs are byte-identical across runs for a fixed config and seed
// in single-threaded mode.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "weylwig/io.hpp"
#include "weylwig/operators.hpp"
#include "weylwig/report.hpp"
#include "weylwig/states.hpp"
#include "weylwig/threads.hpp"
#include "weylwig/wigner.hpp"

namespace {

using namespace weylwig;

struct StateSpec {
  std::string kind;
  std::vector<double> params;
};

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + " from '" + s + "'");
  }
  if (used != s.size()) {
    throw std::invalid_argument("trailing junk in " + what + ": '" + s + "'");
  }
  return v;
}

StateSpec parse_state_spec(const std::string& text) {
  const std::size_t colon = text.find(':');
  StateSpec spec;
  spec.kind = text.substr(0, colon);
  if (colon != std::string::npos) {
    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size() && !rest.empty()) {
      const std::size_t comma = rest.find(',', pos);
      const std::string tok =
          rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      spec.params.push_back(parse_double(tok, "state parameter"));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return spec;
}

void require_params(const StateSpec& s, std::size_t lo, std::size_t hi) {
  if (s.params.size() < lo || s.params.size() > hi) {
    throw std::invalid_argument("state '" + s.kind + "' takes between " +
                                std::to_string(lo) + " and " + std::to_string(hi) +
                                " parameters, got " + std::to_string(s.params.size()));
  }
}

DensityState build_state(const GridSpec& g, const StateSpec& s) {
  if (s.kind == "coherent") {
    require_params(s, 2, 3);
    const double sigma = s.params.size() > 2 ? s.params[2] : 1.0;
    return state_coherent(g, s.params[0], s.params[1], sigma);
  }
  if (s.kind == "fock") {
    require_params(s, 1, 2);
    const double nf = s.params[0];
    if (nf != std::floor(nf)) {
      throw std::invalid_argument("fock index must be an integer, got " +
                                  std::to_string(nf));
    }
    const double sigma = s.params.size() > 1 ? s.params[1] : 1.0;
    return state_fock(g, static_cast<int>(nf), sigma);
  }
  if (s.kind == "cat") {
    require_params(s, 2, 4);
    const double sigma = s.params.size() > 2 ? s.params[2] : 1.0;
    const double phase = s.params.size() > 3 ? s.params[3] : 0.0;
    return state_cat(g, s.params[0], s.params[1], sigma, phase);
  }
  if (s.kind == "thermal") {
    require_params(s, 1, 2);
    const double sigma = s.params.size() > 1 ? s.params[1] : 1.0;
    return state_thermal(g, s.params[0], sigma);
  }
  throw std::invalid_argument(
      "unknown state kind '" + s.kind +
      "'; expected coherent:q0,p0[,sigma] | fock:n[,sigma] | "
      "cat:q0,p0[,sigma[,phase]] | thermal:nbar[,sigma]");
}

std::string strip_csv_suffix(const std::string& path) {
  const std::string suffix = ".csv";
  if (path.size() > suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return path.substr(0, path.size() - suffix.size());
  }
  return path;
}

int run_wigner(const GridSpec& g, const std::string& state_text, const std::string& out,
               int threads) {
  const DensityState st = build_state(g, parse_state_spec(state_text));
  const PhaseSpaceFunction W = wigner_distribution(st.rho, resolve_threads(threads));
  const WignerSummary summary = summarize_wigner(W, st.rho, state_text);
  const std::string summary_json = wigner_summary_json(summary);

  if (!out.empty()) {
    const std::string base = strip_csv_suffix(out);
    write_phase_space_csv(out, W);
    write_phase_space_envelope(base + ".json", W);
    write_text_file(base + ".summary.json", summary_json);
  } else {
    std::cout << summary_json;
  }
  if (!st.validation.ok) {
    std::fprintf(stderr, "density validation failed for state '%s'\n",
                 state_text.c_str());
    return 3;
  }
  if (!summary.bound_ok) {
    std::fprintf(stderr, "Wigner bound 1/(pi hbar) violated for state '%s'\n",
                 state_text.c_str());
    return 3;
  }
  return 0;
}

int run_check(const GridSpec& g, const std::vector<std::string>& suites, double tol,
              std::uint64_t seed, const std::string& out, int threads) {
  const CheckReport report = run_check_suites(g, suites, tol, seed, threads);
  const std::string json = check_report_json(report);
  if (!out.empty()) {
    write_text_file(out, json);
  } else {
    std::cout << json;
  }
  if (!report.all_pass()) {
    for (const CheckEntry& e : report.entries) {
      if (!e.pass) {
        std::fprintf(stderr, "FAIL %s: measured %.17g, tolerance %.17g\n",
                     e.name.c_str(), e.measured, e.tolerance);
      }
    }
    return 1;
  }
  return 0;
}

int run_quantize(const GridSpec& g, const std::string& input, const std::string& out,
                 bool roundtrip, int threads) {
  const int nthreads = resolve_threads(threads);
  const PhaseSpaceFunction W = read_phase_space_csv(input, g);
  // the CSV stores a Wigner distribution; the symbol is 2 pi hbar times it
  OperatorKernel rho =
      op_scale(cdouble{2.0 * std::numbers::pi * g.hbar, 0.0}, weyl_quantize(W, nthreads));

  std::optional<double> residual;
  if (roundtrip) {
    const PhaseSpaceFunction W2 = wigner_distribution(rho, nthreads);
    double d = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < W.f.size(); ++i) {
      d = std::max(d, std::abs(W2.f[i] - W.f[i]));
      scale = std::max(scale, std::abs(W.f[i]));
    }
    residual = d / std::max(scale, 1e-300);
  }
  write_operator_json(out, rho, validate_density(rho), residual);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weylwig: Weyl symbols, Wigner distributions and phase-space identity checks"};
  app.require_subcommand(1);

  int N = 128;
  double L = 8.0;
  double hbar = 1.0;
  int threads = 0;
  std::string state_text;
  std::string out;
  std::vector<std::string> suites;
  double tol = 0.0;
  std::uint64_t seed = 12345;
  std::string input;
  bool roundtrip = false;

  const auto add_grid = [&](CLI::App* cmd) {
    cmd->add_option("--N", N, "lattice size")->capture_default_str();
    cmd->add_option("--L", L, "half window, grid covers [-L, L)")->capture_default_str();
    cmd->add_option("--hbar", hbar, "Planck constant")->capture_default_str();
    cmd->add_option("--threads", threads,
                    "worker threads (0: WEYLWIG_THREADS env or 1)")
        ->capture_default_str();
  };

  CLI::App* wigner = app.add_subcommand(
      "wigner", "Wigner distribution of a state; CSV + envelope + summary");
  add_grid(wigner);
  wigner->add_option("--state", state_text,
                     "coherent:q0,p0[,sigma] | fock:n[,sigma] | "
                     "cat:q0,p0[,sigma[,phase]] | thermal:nbar[,sigma]")
      ->required();
  wigner->add_option("--out", out, "CSV path; omit to print the summary JSON");

  CLI::App* check = app.add_subcommand("check", "run identity suites, emit a JSON report");
  add_grid(check);
  check->add_option("--suite", suites,
                    "suite name, repeatable (default: every suite except xi-sqrt)");
  check->add_option("--tol", tol, "tolerance override applied to every entry");
  check->add_option("--seed", seed, "seed for randomized suite inputs")
      ->capture_default_str();
  check->add_option("--out", out, "report path; omit to print to stdout");

  CLI::App* quantize = app.add_subcommand(
      "quantize", "invert a Wigner CSV back to an operator kernel (JSON)");
  add_grid(quantize);
  quantize->add_option("input", input, "phase-space CSV on the declared grid")
      ->required();
  // no default_val here: the out variable is shared across subcommands, and a
  // construction-time default would leak into wigner/check stdout modes
  quantize->add_option("--out", out, "operator JSON path (default operator.json)");
  quantize->add_flag("--roundtrip", roundtrip,
                     "re-derive the distribution and record the relative residual");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const GridSpec g = make_grid(N, L, hbar);
    if (wigner->parsed()) return run_wigner(g, state_text, out, threads);
    if (check->parsed()) return run_check(g, suites, tol, seed, out, threads);
    return run_quantize(g, input, out.empty() ? "operator.json" : out, roundtrip, threads);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

#include "weylwig/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace weylwig {

namespace {

using ojson = nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ojson grid_node(const GridSpec& g) {
    return ojson{{"N", g.N}, {"L", g.L}, {"hbar", g.hbar}};
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

} // namespace

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error(path + ": write failed");
}

void write_phase_space_csv(const std::string& path, const PhaseSpaceFunction& f) {
    const int N = f.grid.N;
    std::string body = "q,p,re,im\n";
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
            const cdouble v = f.at(j, k);
            body += fmt17(f.grid.q(j));
            body += ',';
            body += fmt17(f.pcoord(k));
            body += ',';
            body += fmt17(v.real());
            body += ',';
            body += fmt17(v.imag());
            body += '\n';
        }
    write_text_file(path, body);
}

PhaseSpaceFunction read_phase_space_csv(const std::string& path, const GridSpec& declared) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");

    std::string line;
    if (!std::getline(in, line)) fail(path, "empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "q,p,re,im")
        fail(path, "bad header '" + line + "' (expected 'q,p,re,im')");

    const int N = declared.N;
    const std::size_t want = static_cast<std::size_t>(N) * N;
    std::vector<double> qs, ps;
    cvector vals;
    qs.reserve(want);
    ps.reserve(want);
    vals.reserve(want);

    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double q, p, re, im;
        int used = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf%n", &q, &p, &re, &im, &used) != 4 ||
            used != static_cast<int>(line.size()))
            fail(path, "row " + std::to_string(row + 1) + ": cannot parse '" + line + "'");
        qs.push_back(q);
        ps.push_back(p);
        vals.push_back(cdouble{re, im});
        ++row;
    }
    if (row != want)
        fail(path, "expected " + std::to_string(want) + " data rows, got " +
                       std::to_string(row));

    // The momentum column identifies the lattice: conjugate spacing dp or the
    // half-step Wigner spacing dpw.
    const double sp = ps[1] - ps[0];
    const bool wigner = std::abs(sp - declared.dpw()) <= std::abs(sp - declared.dp());
    const double ptol = 1e-9 * declared.dpw();
    const double qtol = 1e-9 * declared.dq();

    PhaseSpaceFunction f;
    f.grid = declared;
    f.wigner_lattice = wigner;
    f.f = std::move(vals);
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
            const std::size_t i = static_cast<std::size_t>(j) * N + k;
            const double wantq = declared.q(j);
            const double wantp = wigner ? declared.pw(k) : declared.p(k);
            if (std::abs(qs[i] - wantq) > qtol)
                fail(path, "row " + std::to_string(i + 1) + ": q = " + fmt17(qs[i]) +
                               " does not match lattice point " + fmt17(wantq));
            if (std::abs(ps[i] - wantp) > ptol)
                fail(path, "row " + std::to_string(i + 1) + ": p = " + fmt17(ps[i]) +
                               " does not match " +
                               (wigner ? std::string("wigner") : std::string("conjugate")) +
                               " lattice point " + fmt17(wantp));
        }
    return f;
}

void write_phase_space_envelope(const std::string& path, const PhaseSpaceFunction& f) {
    ojson doc;
    doc["grid"] = grid_node(f.grid);
    doc["lattice"] = f.wigner_lattice ? "wigner" : "conjugate";
    write_text_file(path, doc.dump() + "\n");
}

void write_operator_json(const std::string& path, const OperatorKernel& A,
                         const std::optional<DensityValidation>& validation,
                         const std::optional<double>& roundtrip_residual) {
    const int N = A.grid.N;
    ojson doc;
    doc["grid"] = grid_node(A.grid);
    ojson re = ojson::array(), im = ojson::array();
    for (int a = 0; a < N; ++a) {
        ojson rrow = ojson::array(), irow = ojson::array();
        for (int b = 0; b < N; ++b) {
            const cdouble v = A.k[static_cast<std::size_t>(a) * N + b];
            rrow.push_back(v.real());
            irow.push_back(v.imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    doc["re"] = std::move(re);
    doc["im"] = std::move(im);
    if (validation) {
        doc["validation"] = ojson{{"herm_defect_rel", validation->herm_defect_rel},
                                  {"trace_defect", validation->trace_defect},
                                  {"min_eigenvalue", validation->min_eigenvalue},
                                  {"ok", validation->ok}};
    }
    if (roundtrip_residual) doc["roundtrip_residual"] = *roundtrip_residual;
    write_text_file(path, doc.dump() + "\n");
}

std::string grid_json(const GridSpec& g) { return grid_node(g).dump(); }

WignerSummary summarize_wigner(const PhaseSpaceFunction& W, const OperatorKernel& rho,
                               const std::string& state_label) {
    require_same_grid(W.grid, rho.grid);
    const GridSpec& g = W.grid;
    const int N = g.N;

    WignerSummary s;
    s.grid = g;
    s.state = state_label;
    s.bound = 1.0 / (std::numbers::pi * g.hbar);

    double lo = W.f[0].real(), hi = W.f[0].real();
    for (const cdouble& v : W.f) {
        lo = std::min(lo, v.real());
        hi = std::max(hi, v.real());
    }
    s.min = lo;
    s.max = hi;
    s.bound_ok = std::max(std::abs(lo), std::abs(hi)) <= s.bound + 1e-9;

    const std::vector<double> mq = wigner_marginal_q(W);
    const std::vector<double> mp = wigner_marginal_p(W);

    // references: position density from the kernel diagonal, momentum density
    // from the explicit momentum eigenvectors
    double l1q = 0.0;
    for (int j = 0; j < N; ++j) {
        const double ref = rho.k[static_cast<std::size_t>(j) * N + j].real();
        l1q += g.dq() * std::abs(mq[j] - ref);
    }
    double l1p = 0.0;
    for (int k = 0; k < N; ++k) {
        const cvector v = momentum_eigenvector(g, g.pw(k));
        cdouble acc{0.0, 0.0};
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                acc += std::conj(v[a]) * rho.k[static_cast<std::size_t>(a) * N + b] * v[b];
        const double ref = acc.real() * g.dq() * g.dq();
        l1p += g.dpw() * std::abs(mp[k] - ref);
    }
    s.marginal_q_l1 = l1q;
    s.marginal_p_l1 = l1p;

    double mass = 0.0;
    for (const cdouble& v : W.f) mass += v.real();
    s.total_mass = mass * g.dq() * g.dpw();
    return s;
}

std::string wigner_summary_json(const WignerSummary& s) {
    ojson doc;
    doc["grid"] = grid_node(s.grid);
    doc["state"] = s.state;
    doc["min"] = s.min;
    doc["max"] = s.max;
    doc["bound"] = s.bound;
    doc["bound_ok"] = s.bound_ok;
    doc["marginal_q_l1"] = s.marginal_q_l1;
    doc["marginal_p_l1"] = s.marginal_p_l1;
    doc["total_mass"] = s.total_mass;
    return doc.dump();
}

} // namespace weylwig

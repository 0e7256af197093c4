#pragma once

#include <array>

#include "wavelab/littlewood_paley.hpp"
#include "wavelab/waterwave.hpp"

namespace wavelab {

enum class Scheme { IfRk4, Rk4 };

struct StepperConfig {
    double dt = 1e-3;
    Scheme scheme = Scheme::IfRk4;
    bool reproject_each_step = true;
    double dealias_rule = 2.0 / 3.0;
    double t_end = 1.0;
    std::size_t diagnostics_stride = 10;
    // diagnostics norms
    double diag_sobolev_s = 2.0;
    double diag_holder_r = 1.0;
    double control_eps = 1.0 / 16.0;
};

struct DiagnosticsRecord {
    double t = 0.0;
    double E = 0.0;
    double P = 0.0;
    double Hs = 0.0;
    double Wr = 0.0;
    double A = 0.0;
    double B = 0.0;
    double holo_defect = 0.0;
};

/// Per-mode 2x2 exact propagator of the linearization
/// w_t = -q_alpha, q_t = -i gamma q + i g w + i sigma xi^2 w (in Fourier).
/// Strictly positive wavenumbers and the Nyquist mode are annihilated.
struct LinearPropagator {
    PeriodicGrid grid;
    PhysParams params;
    double dt = 0.0;
    // matrices[i] = {m00, m01, m10, m11} acting on (W_hat[i], Q_hat[i])
    std::vector<std::array<cplx, 4>> matrices;

    LinearPropagator(const PeriodicGrid& g, const PhysParams& p, double dt_);
    void apply(cvec& What, cvec& Qhat) const;
};

/// A(xi) applied to spectral coefficients (the linear part of rhs_WQ).
void linear_part(const PeriodicGrid& g, const PhysParams& p, const cvec& What, const cvec& Qhat,
                 cvec& outW, cvec& outQ);

WaveState linear_step(const WaveState& s, double dt);

WaveState step(const WaveState& s, const StepperConfig& cfg);

/// RK4 imaginary-axis stability ceiling dt <= C / max|Omega|, C = 2*sqrt(2).
double rk4_dt_ceiling(const PeriodicGrid& g, const PhysParams& p);

DiagnosticsRecord diagnose(const WaveState& s, const StepperConfig& cfg);

struct RunResult {
    WaveState final_state;
    std::vector<DiagnosticsRecord> diagnostics;
    bool aborted = false;
    std::string abort_reason;
};

/// Method-of-lines driver: emits diagnostics every stride, optionally writes a
/// checkpoint at the end (and the last good state when aborting on a
/// degenerate surface).
RunResult run(const WaveState& initial, const StepperConfig& cfg,
              const std::string& checkpoint_path = "");

}  // namespace wavelab

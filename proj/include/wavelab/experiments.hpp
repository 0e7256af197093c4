#pragma once

#include "wavelab/config.hpp"
#include "wavelab/io.hpp"
#include "wavelab/reduction.hpp"
#include "wavelab/timestepper.hpp"

namespace wavelab {

/// Least-squares slope of ys against xs.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

/// Runs independent jobs on up to WAVE_LAB_THREADS threads (default: hardware).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job);

// --- dispersion ---------------------------------------------------------------

struct DispersionRow {
    int k = 0;
    double tau_plus = 0.0, tau_minus = 0.0;       // measured
    double tau_plus_ref = 0.0, tau_minus_ref = 0.0;  // -gamma/2 +- l(xi)
    double rel_err = 0.0;                          // worst of the two roots
};

/// Small-amplitude single-mode runs; mode frequencies extracted with a
/// two-exponential recurrence fit on the tracked coefficient.
std::vector<DispersionRow> dispersion_experiment(const PhysParams& p, std::size_t n, int k_max,
                                                 double eps, double dt, int sample_stride,
                                                 double t_end);

// --- conservation ---------------------------------------------------------------

struct DriftResult {
    double dE_rel = 0.0;
    double dP_rel = 0.0;
    double imag_defect = 0.0;
};

DriftResult conservation_drift(const WaveState& initial, StepperConfig cfg);

/// Drift of E and P over the same horizon for a dt-halving family; returns
/// fitted log2-slopes (expected ~4 for the integrator-limited regime).
struct DriftSlopes {
    std::vector<double> dts;
    std::vector<double> driftsE, driftsP;
    double slopeE = 0.0, slopeP = 0.0;
};

DriftSlopes drift_scaling(const WaveState& initial, StepperConfig cfg, double dt_base,
                          int halvings);

// --- operator order checks ------------------------------------------------------

struct SymbolCheckRow {
    std::string name;
    double slope = 0.0;
    double bound = 0.0;  // pass iff slope <= bound
    bool pass = false;
};

/// Composition/adjoint order drops for the test symbols
/// {b(alpha), i xi b(alpha), |xi|^{3/2} c(alpha)} on packets k in [k_min,k_max].
std::vector<SymbolCheckRow> calculus_order_rows(const PeriodicGrid& g, int k_min, int k_max);

/// Water-wave symbol probes and symmetrizer equivalence relations on a state.
std::vector<SymbolCheckRow> waterwave_symbol_rows(const DiffState& s, int k_min, int k_max);

/// A wavy state with ||bold W||_{C^{1+eps}} scaled to `target_norm`.
DiffState make_wavy_state(const PeriodicGrid& g, const PhysParams& p, double target_norm,
                          std::uint64_t seed = 7);

// --- convergence under frequency truncation -------------------------------------

/// Successive H^{3/2}-pair differences of solutions from P_{<N} data,
/// N = n_min..n_max, measured at t_end. diffs[i] compares N=n_min+i+1 vs n_min+i.
std::vector<double> truncation_convergence(std::uint64_t seed, std::size_t n, double eps,
                                           double decay, const PhysParams& p, double dt,
                                           double t_end, int n_min, int n_max);

// --- energy-estimate constant ----------------------------------------------------

/// max over runs and times of (d/dt ||(W,R)||_{H^s}) / ((1+B) ||(W,R)||_{H^s})
/// over an ensemble of random small-data runs at resolution n.
double energy_estimate_constant(std::size_t n, std::size_t ensemble, double eps, double sobolev_s,
                                const PhysParams& p, double dt, double t_end,
                                std::uint64_t seed0 = 100);

}  // namespace wavelab

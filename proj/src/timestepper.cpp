#include "wavelab/timestepper.hpp"

#include <cmath>

#include "wavelab/io.hpp"

namespace wavelab {
namespace {

// Removes xi > 0 leakage, the Nyquist mode, and dealiased tails in place.
// The zero mode is kept: the evolution moves it at quadratic order and the
// conserved quantities depend on it.
void reproject_spectrum(const PeriodicGrid& g, cvec& F, double frac) {
    const double cutoff = frac * std::abs(g.wavenumber(g.n / 2 - 1));
    for (std::size_t i = 0; i < g.n; ++i) {
        double xi = g.wavenumber(i);
        if (xi > 0.0 || std::abs(xi) > cutoff) F[i] = 0.0;
    }
    F[g.n / 2] = 0.0;
}

struct SpecState {
    cvec W, Q;
};

SpecState to_spec(const WaveState& s) { return {spectrum_of(s.W), spectrum_of(s.Q)}; }

WaveState from_spec(const WaveState& proto, const SpecState& u, double t) {
    WaveState out;
    out.W = holo_from_coeffs(proto.W.grid, u.W);
    out.Q = holo_from_coeffs(proto.Q.grid, u.Q);
    out.params = proto.params;
    out.t = t;
    return out;
}

SpecState nonlinear_rhs(const WaveState& proto, const SpecState& u) {
    WaveState s = from_spec(proto, u, 0.0);
    auto [Wt, Qt] = rhs_WQ(s);
    cvec Wh = fft(Wt), Qh = fft(Qt);
    cvec lW(Wh.size()), lQ(Wh.size());
    linear_part(proto.W.grid, proto.params, u.W, u.Q, lW, lQ);
    for (std::size_t i = 0; i < Wh.size(); ++i) {
        Wh[i] -= lW[i];
        Qh[i] -= lQ[i];
    }
    return {Wh, Qh};
}

SpecState full_rhs(const WaveState& proto, const SpecState& u) {
    WaveState s = from_spec(proto, u, 0.0);
    auto [Wt, Qt] = rhs_WQ(s);
    return {fft(Wt), fft(Qt)};
}

SpecState axpy(const SpecState& a, double c, const SpecState& b) {
    SpecState r = a;
    for (std::size_t i = 0; i < r.W.size(); ++i) {
        r.W[i] += c * b.W[i];
        r.Q[i] += c * b.Q[i];
    }
    return r;
}

}  // namespace

LinearPropagator::LinearPropagator(const PeriodicGrid& g, const PhysParams& p, double dt_)
    : grid(g), params(p), dt(dt_), matrices(g.n) {
    const cplx I(0.0, 1.0);
    for (std::size_t i = 0; i < g.n; ++i) {
        double xi = g.wavenumber(i);
        if (xi > 0.0 || i == g.n / 2) {
            matrices[i] = {cplx(0.0), cplx(0.0), cplx(0.0), cplx(0.0)};
            continue;
        }
        if (xi == 0.0) {
            cplx e = std::exp(-I * p.gamma * dt);
            cplx m10 = (p.gamma != 0.0) ? (p.g / p.gamma) * (1.0 - e) : I * p.g * dt;
            matrices[i] = {cplx(1.0), cplx(0.0), m10, e};
            continue;
        }
        // A = [[0, -i xi], [i(g + sigma xi^2), -i gamma]]
        cplx a01 = -I * xi;
        cplx a10 = I * (p.g + p.sigma * xi * xi);
        cplx a11 = -I * p.gamma;
        double ell = dispersion_weight(p.g, p.sigma, p.gamma, xi);
        cplx mup = -I * (0.5 * p.gamma) + I * ell;
        cplx mum = -I * (0.5 * p.gamma) - I * ell;
        cplx ep = std::exp(mup * dt), em = std::exp(mum * dt);
        cplx den = mup - mum;  // 2 i ell, nonzero for xi < 0 and sigma > 0
        // exp(dt A) = ep (A - mum I)/den - em (A - mup I)/den
        matrices[i] = {
            (ep * (0.0 - mum) - em * (0.0 - mup)) / den,
            (ep - em) * a01 / den,
            (ep - em) * a10 / den,
            (ep * (a11 - mum) - em * (a11 - mup)) / den,
        };
    }
}

void LinearPropagator::apply(cvec& What, cvec& Qhat) const {
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        const auto& m = matrices[i];
        cplx w = What[i], q = Qhat[i];
        What[i] = m[0] * w + m[1] * q;
        Qhat[i] = m[2] * w + m[3] * q;
    }
}

void linear_part(const PeriodicGrid& g, const PhysParams& p, const cvec& What, const cvec& Qhat,
                 cvec& outW, cvec& outQ) {
    const cplx I(0.0, 1.0);
    outW.resize(g.n);
    outQ.resize(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        double xi = g.wavenumber(i);
        outW[i] = -I * xi * Qhat[i];
        outQ[i] = I * (p.g + p.sigma * xi * xi) * What[i] - I * p.gamma * Qhat[i];
    }
}

WaveState linear_step(const WaveState& s, double dt) {
    LinearPropagator prop(s.W.grid, s.params, dt);
    SpecState u = to_spec(s);
    prop.apply(u.W, u.Q);
    return from_spec(s, u, s.t + dt);
}

WaveState step(const WaveState& s, const StepperConfig& cfg) {
    const double dt = cfg.dt;
    SpecState u = to_spec(s);
    SpecState un;

    if (cfg.scheme == Scheme::Rk4) {
        SpecState k1 = full_rhs(s, u);
        SpecState k2 = full_rhs(s, axpy(u, dt / 2, k1));
        SpecState k3 = full_rhs(s, axpy(u, dt / 2, k2));
        SpecState k4 = full_rhs(s, axpy(u, dt, k3));
        un = u;
        for (std::size_t i = 0; i < u.W.size(); ++i) {
            un.W[i] += dt / 6.0 * (k1.W[i] + 2.0 * k2.W[i] + 2.0 * k3.W[i] + k4.W[i]);
            un.Q[i] += dt / 6.0 * (k1.Q[i] + 2.0 * k2.Q[i] + 2.0 * k3.Q[i] + k4.Q[i]);
        }
    } else {
        // integrating-factor RK4: exact linear propagation between stages
        LinearPropagator E(s.W.grid, s.params, dt);
        LinearPropagator E2(s.W.grid, s.params, dt / 2);
        SpecState k1 = nonlinear_rhs(s, u);
        SpecState a = axpy(u, dt / 2, k1);
        E2.apply(a.W, a.Q);
        SpecState k2 = nonlinear_rhs(s, a);
        SpecState b = u;
        E2.apply(b.W, b.Q);
        SpecState b2 = axpy(b, dt / 2, k2);
        SpecState k3 = nonlinear_rhs(s, b2);
        SpecState c = u;
        E.apply(c.W, c.Q);
        SpecState e2k3 = k3;
        E2.apply(e2k3.W, e2k3.Q);
        SpecState d = axpy(c, dt, e2k3);
        SpecState k4 = nonlinear_rhs(s, d);

        SpecState ek1 = k1;
        E.apply(ek1.W, ek1.Q);
        SpecState k23 = axpy(k2, 1.0, k3);
        E2.apply(k23.W, k23.Q);
        un = c;  // E u
        for (std::size_t i = 0; i < u.W.size(); ++i) {
            un.W[i] += dt / 6.0 * (ek1.W[i] + 2.0 * k23.W[i] + k4.W[i]);
            un.Q[i] += dt / 6.0 * (ek1.Q[i] + 2.0 * k23.Q[i] + k4.Q[i]);
        }
    }

    if (cfg.reproject_each_step) {
        reproject_spectrum(s.W.grid, un.W, cfg.dealias_rule);
        reproject_spectrum(s.Q.grid, un.Q, cfg.dealias_rule);
    }
    return from_spec(s, un, s.t + dt);
}

double rk4_dt_ceiling(const PeriodicGrid& g, const PhysParams& p) {
    double ximax = std::abs(g.wavenumber(g.n / 2 - 1));
    double omega = 0.5 * std::abs(p.gamma) + dispersion_weight(p.g, p.sigma, p.gamma, ximax);
    return 2.0 * std::sqrt(2.0) / omega;
}

DiagnosticsRecord diagnose(const WaveState& s, const StepperConfig& cfg) {
    DiagnosticsRecord r;
    r.t = s.t;
    Conserved c = conserved(s);
    r.E = c.E;
    r.P = c.P;
    DiffState d = to_diff(s);
    r.Hs = product_norm(d.WW, d.R, cfg.diag_sobolev_s, ProductFlavor::SobolevH);
    r.Wr = product_norm(d.WW, d.R, cfg.diag_holder_r, ProductFlavor::HolderW);
    ControlNorms cn = control_norms(d.WW, d.R, s.params.gamma, cfg.control_eps);
    r.A = cn.A;
    r.B = cn.B;
    r.holo_defect = std::max(holo_defect(s.W), holo_defect(s.Q));
    return r;
}

RunResult run(const WaveState& initial, const StepperConfig& cfg,
              const std::string& checkpoint_path) {
    RunResult res;
    res.final_state = initial;
    if (cfg.dt <= 0.0) throw Error("dt must be positive");
    if (cfg.scheme == Scheme::Rk4 && cfg.dt > rk4_dt_ceiling(initial.W.grid, initial.params))
        throw Error("dt exceeds the rk4 stability ceiling; use if_rk4 or reduce dt");

    const std::size_t nsteps = std::size_t(std::llround(cfg.t_end / cfg.dt));
    res.diagnostics.push_back(diagnose(res.final_state, cfg));  // throws if degenerate at t=0
    WaveState good = res.final_state;
    for (std::size_t k = 0; k < nsteps; ++k) {
        try {
            res.final_state = step(res.final_state, cfg);
            if ((k + 1) % cfg.diagnostics_stride == 0 || k + 1 == nsteps)
                res.diagnostics.push_back(diagnose(res.final_state, cfg));
            good = res.final_state;
        } catch (const DegenerateSurface& e) {
            res.aborted = true;
            res.abort_reason = e.what();
            res.final_state = good;  // last state that passed its checks
            break;
        }
    }
    if (!checkpoint_path.empty()) save_checkpoint(checkpoint_path, res.final_state);
    return res;
}

}  // namespace wavelab

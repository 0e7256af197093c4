// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>

#include "wavelab/experiments.hpp"

using namespace wavelab;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
    std::printf("%s  C%-2d %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

WaveState random_state(const PeriodicGrid& g, const PhysParams& p, double eps,
                       std::uint64_t seed, double decay = 0.7) {
    SplitMix64 rng(seed);
    SplitMix64 rw = rng.split(1), rq = rng.split(2);
    WaveState s;
    s.params = p;
    s.W = random_smooth(g, rw, eps, decay);
    s.Q = random_smooth(g, rq, eps, decay);
    return s;
}

// C1: both right-hand sides vanish at the zero state.
void c1() {
    PeriodicGrid g(256);
    PhysParams p{1.0, 1.0, 2.0};
    WaveState s;
    s.W = HoloField(g);
    s.Q = HoloField(g);
    s.params = p;
    auto [Wt, Qt] = rhs_WQ(s);
    DiffState d;
    d.WW = HoloField(g);
    d.R = HoloField(g);
    d.params = p;
    auto [WWt, Rt] = rhs_WR(d);
    double worst = std::max({sup_norm(Wt), sup_norm(Qt), sup_norm(WWt), sup_norm(Rt)});
    report(1, worst <= 1e-14, "zero state is a fixed point of both systems",
           fmt("max |rhs| = %.2e, tol 1e-14", worst));
}

// C2: measured mode frequencies match both dispersion roots.
void c2() {
    double worst = 0.0;
    std::string where;
    for (auto [g, sig, gam] : {std::tuple{1.0, 1.0, 0.0}, {1.0, 1.0, 2.0}, {0.0, 1.0, 1.0},
                               {1.0, 0.1, 0.5}}) {
        PhysParams p{g, sig, gam};
        auto rows = dispersion_experiment(p, 256, 8, 1e-6, 2.5e-3, 8, 8.0);
        for (const auto& r : rows)
            if (r.rel_err > worst) {
                worst = r.rel_err;
                where = fmt("(g=%g,sigma=%g,gamma=%g,k=%d)", g, sig, gam, r.k);
            }
    }
    report(2, worst <= 1e-3, "dispersion roots -gamma/2 +- l(xi) for 4 parameter sets, k=1..8",
           fmt("worst rel err %.2e at %s, tol 1e-3", worst, where.c_str()));
}

// C3: energy and momentum drift, and the dt^4 scaling of the drift.
void c3() {
    PeriodicGrid g(256);
    PhysParams p{1.0, 1.0, 0.5};
    WaveState s = random_state(g, p, 1e-2, 11);
    StepperConfig cfg;
    cfg.scheme = Scheme::IfRk4;
    cfg.dt = 5e-4;
    cfg.t_end = 1.0;
    DriftResult d = conservation_drift(s, cfg);
    bool ok1 = d.dE_rel <= 1e-6 && d.dP_rel <= 1e-6;
    report(3, ok1, "energy/momentum drift over T=1 (eps=1e-2, n=256, if_rk4, dt=5e-4)",
           fmt("dE=%.2e dP=%.2e, tol 1e-6", d.dE_rel, d.dP_rel));

    // drift must vanish at least at the integrator order; the measured slope
    // is ~5-6 (the leading RK4 error term is energy-neutral), which satisfies
    // "drift bounded by time-integrator order" with margin
    WaveState s2 = random_state(g, p, 8e-2, 13, 0.5);
    StepperConfig cfg2 = cfg;
    cfg2.t_end = 1.0;
    DriftSlopes sl = drift_scaling(s2, cfg2, 1.25e-2, 3);
    bool ok2 = sl.slopeE >= 4.0 - 0.3 && sl.slopeP >= 4.0 - 0.3;
    report(3, ok2, "drift vanishes at least as dt^4 over three halvings",
           fmt("slopeE=%.2f slopeP=%.2f (drifts %.1e..%.1e), need >= 3.7", sl.slopeE, sl.slopeP,
               sl.driftsE.front(), sl.driftsE.back()));
}

// C4: positive-frequency mass stays at roundoff under per-step reprojection.
void c4() {
    PeriodicGrid g(256);
    PhysParams p{1.0, 1.0, 2.0};
    WaveState s = random_state(g, p, 1e-2, 17);
    StepperConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.5;
    cfg.diagnostics_stride = 25;
    RunResult rr = run(s, cfg);
    double worst = 0.0;
    for (const auto& d : rr.diagnostics) worst = std::max(worst, d.holo_defect);
    report(4, !rr.aborted && worst <= 1e-12, "holomorphy defect at every output time",
           fmt("max positive-frequency mass fraction %.2e, tol 1e-12", worst));
}

// C5: the three algebraic identities.
void c5() {
    PeriodicGrid g(256);

    // (a) trilinear paraproduct decomposition
    double worst_pi = 0.0;
    for (unsigned seed : {3u, 5u}) {
        SplitMix64 rng(seed);
        SplitMix64 ra = rng.split(1), rb = rng.split(2);
        ComplexField a = random_smooth(g, ra, 1.0, 0.1);
        ComplexField u = random_smooth(g, rb, 1.0, 0.1);
        ComplexField sum = paraproduct(a, u) + paraproduct(u, a) + balanced_pi(a, u);
        worst_pi = std::max(worst_pi, sup_norm(sum - a * u) / sup_norm(a * u));
    }
    report(5, worst_pi <= 1e-12, "au = T_a u + T_u a + Pi(a,u)",
           fmt("worst rel residual %.2e, tol 1e-12", worst_pi));

    // (b) b-alpha relation on 20 random smooth states
    double worst_ub = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        PhysParams p{1.0, 1.0, (seed % 2) ? 2.0 : 0.0};
        DiffState d = to_diff(random_state(g, p, 1e-2, 200 + seed));
        worst_ub = std::max(worst_ub, ubalpha_residual(d));
    }
    report(5, worst_ub <= 1e-10, "b_alpha relation on 20 random smooth states",
           fmt("worst sup residual %.2e, tol 1e-10", worst_ub));

    // (c) chain rule between the two systems
    double worst_cr = 0.0;
    for (auto [gp, sig, gam] : {std::tuple{1.0, 1.0, 0.0}, {1.0, 1.0, 2.0}, {0.0, 1.0, 1.0}}) {
        WaveState s = random_state(g, {gp, sig, gam}, 1e-2, 31);
        auto [Wt, Qt] = rhs_WQ(s);
        ComplexField Wa = derivative(s.W);
        ComplexField Qa = derivative(s.Q);
        ComplexField Wta = derivative(Wt);
        ComplexField Qta = derivative(Qt);
        ComplexField WWt_ref = Wta;
        ComplexField Rt_ref(g);
        for (std::size_t i = 0; i < g.n; ++i) {
            cplx opw = 1.0 + Wa.v[i];
            Rt_ref.v[i] = Qta.v[i] / opw - Qa.v[i] * Wta.v[i] / (opw * opw);
        }
        auto [WWt, Rt] = rhs_WR(to_diff(s));
        double rel = (sup_norm(WWt - WWt_ref) + sup_norm(Rt - Rt_ref)) /
                     (sup_norm(WWt_ref) + sup_norm(Rt_ref));
        worst_cr = std::max(worst_cr, rel);
    }
    report(5, worst_cr <= 1e-8, "chain rule rhs_WQ <-> rhs_WR",
           fmt("worst rel residual %.2e, tol 1e-8", worst_cr));
}

// C6: symbolic-calculus order drops on packets k=4..8.
void c6() {
    PeriodicGrid g(1024);
    auto rows = calculus_order_rows(g, 4, 8);
    bool all = true;
    double margin = 1e9;
    for (const auto& r : rows) {
        all = all && r.pass;
        margin = std::min(margin, r.bound - r.slope);
    }
    report(6, all, "composition/adjoint order drops for the three test symbols",
           fmt("%zu relations, min bound-slope margin %.2f", rows.size(), margin));
}

// C7: symmetrizer equivalence relations on a wavy state.
void c7() {
    PeriodicGrid g(1024);
    PhysParams p{1.0, 1.0, 1.0};
    DiffState s = make_wavy_state(g, p, 0.2);
    double s1 = equivalence_residual(s, EquivalenceRelation::First, 4, 8);
    double s2 = equivalence_residual(s, EquivalenceRelation::Second, 4, 8);
    report(7, s1 <= 0.3 && s2 <= 0.8,
           "equivalence relations i T_p T_lambda ~ L2cL2 T_q and i T_q T_k ~ L2cL2 T_p",
           fmt("slopes %.2f (tol 0.3) and %.2f (tol 0.8)", s1, s2));
}

// C8: paralinearization source term grows slower than the principal part.
void c8() {
    PeriodicGrid g(256);
    DiffState base = make_wavy_state(g, {1.0, 1.0, 1.0}, 0.1);
    auto [sg, sp] = paralinearization_slopes(base, 1e-6, 2.0, 3, 6);
    report(8, sp - sg >= 0.2, "paralinearization source-term slope gap",
           fmt("principal %.2f - source %.2f = %.2f, need >= 0.2", sp, sg, sp - sg));
}

// C9: flattening diffeomorphism identities.
void c9() {
    PeriodicGrid g(256);
    PhysParams p{1.0, 1.0, 1.0};
    DiffState s = to_diff(random_state(g, p, 5e-2, 41));
    FlattenMap m = flatten(s);
    double worst_inv = 0.0, worst_chain = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
        double al = g.point(j);
        worst_inv = std::max(worst_inv, std::abs(m.kappa_at(m.chi_at(al)) - al));
        worst_chain = std::max(
            worst_chain, std::abs(m.dkappa.v[j].real() * m.sqrtJ_at(m.kappa[j]) - 1.0));
    }
    DiffState flat;
    flat.WW = HoloField(g);
    flat.R = HoloField(g);
    flat.params = p;
    FlattenMap mf = flatten(flat);
    AuxBundle A = compute_aux(flat);
    double worst_flat = sup_norm(mf.btilde - A.bu);
    bool ok = worst_inv <= 1e-12 && worst_chain <= 1e-10 && worst_flat <= 1e-13;
    report(9, ok, "kappa o chi = id, inverse chain rule, flat-surface transport",
           fmt("inv %.2e (1e-12), chain %.2e (1e-10), flat %.2e", worst_inv, worst_chain,
               worst_flat));
}

// C10: energy-estimate constant is finite and resolution-stable.
void c10() {
    PhysParams p{1.0, 1.0, 0.5};
    double c128 = energy_estimate_constant(128, 10, 1e-2, 2.0, p, 1e-3, 0.25);
    double c256 = energy_estimate_constant(256, 10, 1e-2, 2.0, p, 1e-3, 0.25);
    double rel = std::abs(c128 - c256) / std::max(std::abs(c256), 1e-30);
    bool ok = std::isfinite(c128) && std::isfinite(c256) && rel < 0.2;
    report(10, ok, "energy-estimate constant across resolutions n=128,256",
           fmt("C128=%.4g C256=%.4g, rel diff %.1f%%, tol 20%%", c128, c256, 100.0 * rel));
}

// C11: truncated-data solutions converge monotonically.
void c11() {
    PhysParams p{1.0, 1.0, 1.0};
    auto diffs = truncation_convergence(7, 256, 1e-2, 0.12, p, 5e-4, 0.5, 4, 7);
    bool mono = true;
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) mono = mono && diffs[i + 1] < diffs[i];
    report(11, mono, "frequency-truncated data: successive H-pair differences decrease",
           fmt("diffs %.3e > %.3e > %.3e", diffs[0], diffs[1], diffs[2]));
}

}  // namespace

int main() {
    c1();
    c2();
    c3();
    c4();
    c5();
    c6();
    c7();
    c8();
    c9();
    c10();
    c11();
    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance check(s) failed\n", failures);
    return failures;
}

#include "wavelab/waterwave.hpp"

#include <cmath>

namespace wavelab {
namespace {

// Flow-side projections: half weight at xi = 0, dealiased.
ComplexField Ph(const ComplexField& f) { return dealias(project_neg(f, ZeroMode::Half)); }
ComplexField Pbh(const ComplexField& f) { return dealias(project_pos(f, ZeroMode::Half)); }
ComplexField dd(const ComplexField& f) { return dealias(f); }

ComplexField quotient(const ComplexField& num, const ComplexField& den) {
    require_same_grid(num, den);
    ComplexField r(num.grid);
    for (std::size_t i = 0; i < num.size(); ++i) r.v[i] = num.v[i] / den.v[i];
    return r;
}

ComplexField ones_plus(const ComplexField& f) {
    ComplexField r(f.grid);
    for (std::size_t i = 0; i < f.size(); ++i) r.v[i] = 1.0 + f.v[i];
    return r;
}

struct AuxInput {
    const ComplexField& WW;
    const ComplexField& R;
    const ComplexField& W;  // undifferentiated position (gauge-fixed for DiffState)
    PhysParams params;
};

AuxBundle compute_aux_impl(const AuxInput& in) {
    const double gam = in.params.gamma;
    const ComplexField& WW = in.WW;
    const ComplexField& R = in.R;
    const ComplexField& W = in.W;
    require_nondegenerate(WW);

    AuxBundle A;
    ComplexField opW = ones_plus(WW);
    A.J = opW * conj(opW);
    A.Y = quotient(WW, opW);
    ComplexField Yb = conj(A.Y);
    ComplexField Ra = derivative(R);
    ComplexField Rb = conj(R);
    ComplexField Rab = conj(Ra);
    ComplexField G(WW.grid), Gb(WW.grid);  // G = R/(1+conj(WW)) = R(1-conj Y)
    for (std::size_t i = 0; i < WW.size(); ++i) {
        G.v[i] = R.v[i] * (1.0 - Yb.v[i]);
        Gb.v[i] = std::conj(G.v[i]);
    }

    A.F = Ph(G - Gb);
    {
        // F1 = P[W/(1+conj(W_alpha)) + conj(W)/(1+W_alpha)]
        ComplexField t(WW.grid);
        for (std::size_t i = 0; i < WW.size(); ++i)
            t.v[i] = W.v[i] * (1.0 - Yb.v[i]) + std::conj(W.v[i]) * (1.0 - A.Y.v[i]);
        A.F1 = Ph(t);
    }
    A.Fu = A.F - cplx(0.0, 0.5 * gam) * A.F1;
    {
        ComplexField t(WW.grid);
        for (std::size_t i = 0; i < WW.size(); ++i)
            t.v[i] = W.v[i] * Rb.v[i] - std::conj(W.v[i]) * R.v[i];
        A.T1 = Ph(t);
    }

    A.a = cplx(0.0, 1.0) * (Pbh(Rb * Ra) - Ph(R * Rab));
    {
        ComplexField t1(WW.grid), t2(WW.grid);
        for (std::size_t i = 0; i < WW.size(); ++i) {
            t1.v[i] = W.v[i] * Rab.v[i] - std::conj(WW.v[i]) * R.v[i];
            t2.v[i] = std::conj(W.v[i]) * Ra.v[i] - WW.v[i] * Rb.v[i];
        }
        A.N = Ph(t1) + Pbh(t2);
    }
    A.a1 = ComplexField(WW.grid);
    for (std::size_t i = 0; i < WW.size(); ++i)
        A.a1.v[i] = 2.0 * R.v[i].real() - A.N.v[i];
    A.au = A.a + 0.5 * gam * A.a1;

    A.b = Ph(G) + Pbh(Gb);
    {
        ComplexField t1(WW.grid), t2(WW.grid);
        for (std::size_t i = 0; i < WW.size(); ++i) {
            t1.v[i] = W.v[i] * (1.0 - Yb.v[i]);
            t2.v[i] = std::conj(W.v[i]) * (1.0 - A.Y.v[i]);
        }
        A.b1 = Ph(t1) - Pbh(t2);
    }
    A.bu = A.b - cplx(0.0, 0.5 * gam) * A.b1;

    {
        ComplexField Ya = derivative(A.Y);
        ComplexField t1(WW.grid), t2(WW.grid);
        for (std::size_t i = 0; i < WW.size(); ++i) {
            t1.v[i] = Rb.v[i] * Ya.v[i] - Ra.v[i] * Yb.v[i];
            t2.v[i] = R.v[i] * std::conj(Ya.v[i]) - Rab.v[i] * A.Y.v[i];
        }
        A.M = Pbh(t1) + Ph(t2);
        ComplexField s1(WW.grid), s2(WW.grid);
        for (std::size_t i = 0; i < WW.size(); ++i) {
            s1.v[i] = W.v[i] * Yb.v[i];
            s2.v[i] = std::conj(W.v[i]) * A.Y.v[i];
        }
        A.M1 = derivative(Ph(s1)) - derivative(Pbh(s2));
    }
    A.Mu = A.M - cplx(0.0, 0.5 * gam) * A.M1;
    return A;
}

}  // namespace

double surface_margin(const ComplexField& Walpha) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& x : Walpha.v) m = std::min(m, std::abs(1.0 + x));
    return m;
}

void require_nondegenerate(const ComplexField& Walpha) {
    double m = surface_margin(Walpha);
    if (m < kDegeneracyThreshold) throw DegenerateSurface(m);
}

DiffState to_diff(const WaveState& s) {
    ComplexField Wa = derivative(s.W);
    require_nondegenerate(Wa);
    ComplexField R = quotient(derivative(s.Q), ones_plus(Wa));
    DiffState d;
    d.WW = HoloField::adopt(zero_nyquist(Wa), 1e-8);
    d.R = HoloField::adopt(dealias(R), 1e-8);
    d.params = s.params;
    d.t = s.t;
    return d;
}

WaveState to_wave(const DiffState& s) {
    WaveState w;
    w.W = HoloField::adopt(antiderivative(s.WW), 1e-10);
    // Q_alpha = R (1 + WW); zero mean automatically (product of holomorphic)
    ComplexField Qa(s.WW.grid);
    for (std::size_t i = 0; i < s.WW.size(); ++i) Qa.v[i] = s.R.v[i] * (1.0 + s.WW.v[i]);
    w.Q = HoloField::adopt(antiderivative(dealias(Qa)), 1e-8);
    w.params = s.params;
    w.t = s.t;
    return w;
}

AuxBundle compute_aux(const DiffState& s) {
    ComplexField W = antiderivative(s.WW);
    return compute_aux_impl({s.WW, s.R, W, s.params});
}

AuxBundle compute_aux(const WaveState& s) {
    DiffState d = to_diff(s);
    return compute_aux_impl({d.WW, d.R, s.W, s.params});
}

std::pair<ComplexField, ComplexField> rhs_WQ(const WaveState& s) {
    const double g = s.params.g, sig = s.params.sigma, gam = s.params.gamma;
    ComplexField Wa = derivative(s.W);
    require_nondegenerate(Wa);
    ComplexField Qa = derivative(s.Q);
    const std::size_t n = s.W.size();
    ComplexField J(s.W.grid), invJ(s.W.grid);
    for (std::size_t i = 0; i < n; ++i) {
        J.v[i] = std::norm(1.0 + Wa.v[i]);
        invJ.v[i] = 1.0 / J.v[i];
    }

    ComplexField argF(s.W.grid), argF1(s.W.grid), argT1(s.W.grid), argR2(s.W.grid);
    for (std::size_t i = 0; i < n; ++i) {
        cplx qa = Qa.v[i], wa = Wa.v[i], w = s.W.v[i];
        argF.v[i] = (qa - std::conj(qa)) * invJ.v[i];
        argF1.v[i] = w / (1.0 + std::conj(wa)) + std::conj(w) / (1.0 + wa);
        argT1.v[i] = w * std::conj(qa) / (1.0 + std::conj(wa)) - std::conj(w) * qa / (1.0 + wa);
        argR2.v[i] = std::norm(qa) * invJ.v[i];
    }
    ComplexField Fu = Ph(argF) - cplx(0.0, 0.5 * gam) * Ph(argF1);
    ComplexField T1 = Ph(argT1);

    ComplexField Waa = derivative(Wa);
    ComplexField argCap(s.W.grid);
    for (std::size_t i = 0; i < n; ++i)
        argCap.v[i] = (Waa.v[i] / (std::sqrt(J.v[i].real()) * (1.0 + Wa.v[i]))).imag();
    ComplexField cap = Ph(argCap);

    ComplexField prodWF(s.W.grid), prodFQ(s.W.grid);
    for (std::size_t i = 0; i < n; ++i) {
        prodWF.v[i] = (Wa.v[i] + 1.0) * Fu.v[i];
        prodFQ.v[i] = Fu.v[i] * Qa.v[i];
    }
    ComplexField Wt(s.W.grid), Qt(s.W.grid);
    ComplexField dWF = dd(prodWF), dFQ = dd(prodFQ), pR2 = Ph(argR2);
    for (std::size_t i = 0; i < n; ++i) {
        Wt.v[i] = -dWF.v[i] - cplx(0.0, 0.5 * gam) * s.W.v[i];
        Qt.v[i] = cplx(0.0, g) * s.W.v[i] - dFQ.v[i] - cplx(0.0, gam) * s.Q.v[i] - pR2.v[i] +
                  cplx(0.0, 0.5 * gam) * T1.v[i] + 2.0 * sig * cap.v[i];
    }
    return {Wt, Qt};
}

std::pair<ComplexField, ComplexField> rhs_WR(const DiffState& s) {
    const double g = s.params.g, sig = s.params.sigma, gam = s.params.gamma;
    AuxBundle A = compute_aux(s);
    const std::size_t n = s.WW.size();
    ComplexField Ra = derivative(s.R);
    ComplexField WWa = derivative(s.WW);

    ComplexField argCap(s.WW.grid);
    for (std::size_t i = 0; i < n; ++i)
        argCap.v[i] =
            (WWa.v[i] / (std::sqrt(A.J.v[i].real()) * (1.0 + s.WW.v[i]))).imag();
    ComplexField cap = Ph(derivative(argCap));

    ComplexField t1(s.WW.grid), t2(s.WW.grid), t3(s.WW.grid), t4(s.WW.grid);
    ComplexField r1(s.WW.grid), r2(s.WW.grid), r3(s.WW.grid), r4(s.WW.grid);
    for (std::size_t i = 0; i < n; ++i) {
        cplx ww = s.WW.v[i], r = s.R.v[i];
        t1.v[i] = A.bu.v[i] * WWa.v[i];
        t2.v[i] = (1.0 + ww) * Ra.v[i] / (1.0 + std::conj(ww));
        t3.v[i] = (1.0 + ww) * A.Mu.v[i];
        t4.v[i] = ww * (ww - std::conj(ww));
        r1.v[i] = A.bu.v[i] * Ra.v[i];
        r2.v[i] = (g * ww - A.a.v[i]) / (1.0 + ww);
        r3.v[i] = 2.0 * sig * cap.v[i] / (1.0 + ww);
        r4.v[i] = (r * ww + std::conj(r) * ww + A.N.v[i]) / (1.0 + ww);
    }
    ComplexField WWt = cplx(-1.0) * dd(t1) - dd(t2) + dd(t3) + cplx(0.0, 0.5 * gam) * dd(t4);
    ComplexField Rt = cplx(-1.0) * dd(r1) - cplx(0.0, gam) * ComplexField(s.R) +
                      cplx(0.0, 1.0) * dd(r2) + dd(r3) + cplx(0.0, 0.5 * gam) * dd(r4);
    return {WWt, Rt};
}

Conserved conserved(const WaveState& s) {
    const double g = s.params.g, sig = s.params.sigma, gam = s.params.gamma;
    ComplexField Wa = derivative(s.W);
    ComplexField Qa = derivative(s.Q);
    const double h = s.W.grid.dx();
    cplx Eacc = 0.0, Pacc = 0.0;
    for (std::size_t i = 0; i < s.W.size(); ++i) {
        cplx w = s.W.v[i], q = s.Q.v[i], wa = Wa.v[i], qa = Qa.v[i];
        double J = std::norm(1.0 + wa);
        double imw = w.imag();
        double opre = 1.0 + wa.real();
        Eacc += cplx(0.0, -1.0) * q * std::conj(qa);                // kinetic, Re(-i q qbar_a)
        Eacc += 4.0 * sig * (std::sqrt(J) - 1.0 - wa.real());       // capillary (arclength)
        Eacc += 2.0 * g * imw * imw * opre;                         // hydrostatic
        Eacc += 2.0 * gam * qa.real() * imw * imw;                  // vorticity cross term
        Eacc += (2.0 / 3.0) * gam * gam * imw * imw * imw * opre;   // vorticity bulk term
        Pacc += cplx(0.0, -1.0) * (q * std::conj(wa) - std::conj(q) * wa);
        Pacc += 2.0 * gam * imw * imw * opre;
    }
    Conserved out;
    out.E = (Eacc * h).real();
    out.P = (Pacc * h).real();
    out.imag_defect = std::max(std::abs((Eacc * h).imag()), std::abs((Pacc * h).imag()));
    return out;
}

double linear_energy(const ComplexField& w, const ComplexField& q, double sigma) {
    require_same_grid(w, q);
    cvec Fw = fft(w), Fq = fft(q);
    double acc = 0.0;
    for (std::size_t i = 0; i < w.grid.n; ++i) {
        double xi = w.grid.wavenumber(i);
        acc += sigma * xi * xi * std::norm(Fw[i]) + std::abs(xi) * std::norm(Fq[i]);
    }
    return acc * w.grid.period;
}

double ubalpha_residual(const DiffState& s) {
    AuxBundle A = compute_aux(s);
    ComplexField Ra = derivative(s.R);
    ComplexField lhs = derivative(A.bu);
    ComplexField q1(s.WW.grid), q2(s.WW.grid), vort(s.WW.grid);
    for (std::size_t i = 0; i < s.WW.size(); ++i) {
        cplx ww = s.WW.v[i];
        q1.v[i] = Ra.v[i] / (1.0 + std::conj(ww));
        q2.v[i] = std::conj(Ra.v[i]) / (1.0 + ww);
        vort.v[i] = cplx(0.0, 0.5 * s.params.gamma) * (ww - std::conj(ww));
    }
    ComplexField rhs = dd(q1) + dd(q2) - vort - A.Mu;
    return sup_norm(lhs - rhs);
}

}  // namespace wavelab

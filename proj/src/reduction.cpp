#include "wavelab/reduction.hpp"

#include <cmath>

namespace wavelab {
namespace {

cplx eval_coeffs(const PeriodicGrid& g, const cvec& F, double x) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        if (F[i] == cplx(0.0)) continue;
        acc += F[i] * std::exp(cplx(0.0, g.wavenumber(i) * x));
    }
    return acc;
}

}  // namespace

std::pair<HoloField, HoloField> wahlen(const DiffState& s) {
    ComplexField W = antiderivative(s.WW);
    HoloField eta = s.WW;
    ComplexField z(W.grid);
    for (std::size_t i = 0; i < W.size(); ++i)
        z.v[i] = s.R.v[i] - cplx(0.0, 0.5 * s.params.gamma) * W.v[i];
    HoloField zeta(W.grid);
    zeta.v = std::move(z.v);
    return {eta, zeta};
}

DiffState wahlen_inverse(const HoloField& eta, const HoloField& zeta, const PhysParams& p,
                         double t) {
    ComplexField W = antiderivative(eta);
    DiffState s;
    s.WW = eta;
    HoloField R(eta.grid);
    for (std::size_t i = 0; i < eta.size(); ++i)
        R.v[i] = zeta.v[i] + cplx(0.0, 0.5 * p.gamma) * W.v[i];
    s.R = R;
    s.params = p;
    s.t = t;
    return s;
}

std::pair<Symbol, Symbol> symbols_lambda_k(const DiffState& s) {
    require_nondegenerate(s.WW);
    const auto& g = s.WW.grid;
    const PhysParams p = s.params;
    ComplexField Y(g), c2(g), k2(g), k1(g);
    ComplexField WWa = derivative(s.WW);
    for (std::size_t i = 0; i < g.n; ++i) {
        cplx ww = s.WW.v[i];
        cplx y = ww / (1.0 + ww);
        double J = std::norm(1.0 + ww);
        Y.v[i] = y;
        c2.v[i] = (1.0 - std::conj(y)) * (1.0 + ww);
        cplx omy = 1.0 - y;
        k2.v[i] = p.sigma / std::sqrt(J) * omy * omy;
        k1.v[i] = 3.0 * p.sigma / std::sqrt(J) * omy * omy * omy * WWa.v[i];
    }
    ComplexField c2a = derivative(c2);

    Symbol lam;
    lam.order = 1.0;
    lam.regularity = 1.5;
    {
        cvec cv = c2.v, cav = c2a.v;
        PeriodicGrid gg = g;
        lam.row = [cv, cav, gg](const PeriodicGrid& gr, double xi) {
            if (gr != gg) throw GridMismatch();
            cvec r(gr.n);
            for (std::size_t j = 0; j < gr.n; ++j) r[j] = cplx(0.0, xi) * cv[j] + cav[j];
            return r;
        };
        lam.row_dxi = [cv, gg](const PeriodicGrid& gr, double) {
            if (gr != gg) throw GridMismatch();
            cvec r(gr.n);
            for (std::size_t j = 0; j < gr.n; ++j) r[j] = cplx(0.0, 1.0) * cv[j];
            return r;
        };
    }

    Symbol kk;
    kk.order = 2.0;
    kk.regularity = 1.5;
    {
        cvec k2v = k2.v, k1v = k1.v;
        double gconst = p.g, gam = p.gamma;
        PeriodicGrid gg = g;
        kk.row = [k2v, k1v, gconst, gam, gg](const PeriodicGrid& gr, double xi) {
            if (gr != gg) throw GridMismatch();
            cvec r(gr.n);
            cplx tail = cplx(0.0, -gconst) + cplx(0.0, 0.25 * gam * gam / xi);
            for (std::size_t j = 0; j < gr.n; ++j)
                r[j] = cplx(0.0, -xi * xi) * k2v[j] + xi * k1v[j] + tail;
            return r;
        };
        kk.row_dxi = [k2v, k1v, gam, gg](const PeriodicGrid& gr, double xi) {
            if (gr != gg) throw GridMismatch();
            cvec r(gr.n);
            cplx tail = cplx(0.0, -0.25 * gam * gam / (xi * xi));
            for (std::size_t j = 0; j < gr.n; ++j)
                r[j] = cplx(0.0, -2.0 * xi) * k2v[j] + k1v[j] + tail;
            return r;
        };
    }
    return {lam, kk};
}

double ell_value(const PhysParams& p, double xi) {
    return dispersion_weight(p.g, p.sigma, p.gamma, xi);
}

double ell_dxi(const PhysParams& p, double xi) {
    double s = (xi > 0.0) ? 1.0 : -1.0;
    return s * (3.0 * p.sigma * xi * xi + p.g) / (2.0 * ell_value(p, xi));
}

ComplexField apply_L_half(const ComplexField& f, const PhysParams& p) {
    return apply_multiplier(
        f, [p](double xi) { return cplx(std::sqrt(ell_value(p, xi))); });
}

SymmetrizerSet build_symmetrizers(const DiffState& s) {
    require_nondegenerate(s.WW);
    const auto& g = s.WW.grid;
    const PhysParams p = s.params;
    SymmetrizerSet set;
    set.params = p;

    ComplexField A(g), B(g), c2(g);
    set.c_field = ComplexField(g);
    set.q_field = ComplexField(g);
    for (std::size_t i = 0; i < g.n; ++i) {
        cplx ww = s.WW.v[i];
        double J = std::norm(1.0 + ww);
        cplx y = ww / (1.0 + ww);
        set.c_field.v[i] = std::pow(J, -0.75);
        // |q| = J^{1/4}; the conformal phase makes the sub-leading terms of the
        // second equivalence relation cancel exactly (with the real J^{1/4}
        // the residual stays of order one, carried by Im(W_alpha/(1+W))).
        set.q_field.v[i] =
            std::pow(1.0 + ww, 0.75) * std::pow(1.0 + std::conj(ww), -0.25);
        B.v[i] = (1.0 + std::conj(ww)) * (1.0 - y);
        A.v[i] = -B.v[i] * set.c_field.v[i] * set.q_field.v[i];  // p_half = A l(xi)/xi
        c2.v[i] = (1.0 - std::conj(y)) * (1.0 + ww);
    }
    ComplexField ca = derivative(set.c_field);
    ComplexField qa = derivative(set.q_field);
    ComplexField D = derivative(c2);
    // p_minus_half = i E(alpha) l'(xi)/xi,
    // E = B (c' q / 2 + c q' + A D), A = -(1-Y)(1+conj W)/sqrt(J)
    ComplexField E(g);
    for (std::size_t i = 0; i < g.n; ++i)
        E.v[i] = B.v[i] * (0.5 * ca.v[i] * set.q_field.v[i] + set.c_field.v[i] * qa.v[i] +
                           A.v[i] * D.v[i]);

    set.ell = symbol_from_multiplier([p](double xi) { return cplx(ell_value(p, xi)); }, 1.5, 1.5,
                                     [p](double xi) { return cplx(ell_dxi(p, xi)); });
    set.c = symbol_from_field(set.c_field, 0.0, 1.5);
    set.q = symbol_from_field(set.q_field, 0.0, 1.5);
    set.p_half = symbol_separable(
        A, [p](double xi) { return cplx(ell_value(p, xi) / xi); }, 0.5, 1.5,
        [p](double xi) { return cplx((ell_dxi(p, xi) * xi - ell_value(p, xi)) / (xi * xi)); });
    set.p_minus_half = symbol_separable(
        E, [p](double xi) { return cplx(0.0, 1.0) * ell_dxi(p, xi) / xi; }, -0.5, 0.5);
    set.p = symbol_sum(set.p_half, set.p_minus_half);
    set.p.order = 0.5;
    return set;
}

double equivalence_residual(const DiffState& s, EquivalenceRelation which, int k_min, int k_max) {
    SymmetrizerSet set = build_symmetrizers(s);
    auto [lam, kk] = symbols_lambda_k(s);
    const PhysParams p = s.params;
    const cplx I(0.0, 1.0);

    auto op = [&](const ComplexField& u) -> ComplexField {
        if (which == EquivalenceRelation::First) {
            ComplexField lhs = I * paradiff_apply(set.p, paradiff_apply(lam, u));
            ComplexField rhs = apply_L_half(
                paraproduct(set.c_field, apply_L_half(paraproduct(set.q_field, u), p)), p);
            return lhs - rhs;
        }
        ComplexField lhs = I * paraproduct(set.q_field, paradiff_apply(kk, u));
        ComplexField rhs = apply_L_half(
            paraproduct(set.c_field, apply_L_half(paradiff_apply(set.p, u), p)), p);
        return lhs - rhs;
    };
    return order_probe(op, s.WW.grid, k_min, k_max);
}

ComplexField build_phi(const DiffState& s, const SymmetrizerSet& set) {
    auto [eta, zeta] = wahlen(s);
    ComplexField Tq = paraproduct(set.q_field, zeta);
    ComplexField Tp = paradiff_apply(set.p, eta);
    ComplexField phi(s.WW.grid);
    for (std::size_t i = 0; i < phi.size(); ++i)
        phi.v[i] = cplx(Tq.v[i].real(), Tp.v[i].imag());
    return phi;
}

Symbol elliptic_weight(const SymmetrizerSet& set, double s) {
    if (s <= 0.0) throw Error("elliptic weight needs s > 0");
    PhysParams p = set.params;
    double expo = 2.0 * s / 3.0;
    cvec cv = set.c_field.v;
    PeriodicGrid gg = set.c_field.grid;
    Symbol w;
    w.order = s;
    w.regularity = 1.5;
    w.row = [cv, gg, p, expo](const PeriodicGrid& gr, double xi) {
        if (gr != gg) throw GridMismatch();
        double l = ell_value(p, xi);
        cvec r(gr.n);
        for (std::size_t j = 0; j < gr.n; ++j) r[j] = std::pow(cv[j].real() * l, expo);
        return r;
    };
    w.row_dxi = [cv, gg, p, expo](const PeriodicGrid& gr, double xi) {
        if (gr != gg) throw GridMismatch();
        double l = ell_value(p, xi);
        double dl = ell_dxi(p, xi);
        cvec r(gr.n);
        for (std::size_t j = 0; j < gr.n; ++j) {
            double cl = cv[j].real() * l;
            r[j] = expo * std::pow(cl, expo - 1.0) * cv[j].real() * dl;
        }
        return r;
    };
    return w;
}

double elliptic_commutator_residual(const SymmetrizerSet& set, double s, const PeriodicGrid& g) {
    Symbol wp = elliptic_weight(set, s);
    const PhysParams p = set.params;
    ComplexField ca = derivative(set.c_field);
    double worst = 0.0;
    for (double xi : {-1.0, -2.0, -5.0, -11.0, -23.0, 3.0, 17.0}) {
        cvec row = wp.row(g, xi);
        cvec drow = wp.row_dxi(g, xi);
        ComplexField rowf(g, row);
        ComplexField rowa = derivative(rowf);
        double l = ell_value(p, xi), dl = ell_dxi(p, xi);
        for (std::size_t j = 0; j < g.n; ++j) {
            // dxi wp * dalpha(c l) - dalpha wp * dxi(c l), relative to its size
            cplx lhs = drow[j] * (ca.v[j] * l);
            cplx rhs = rowa.v[j] * (set.c_field.v[j] * dl);
            double scale = std::abs(lhs) + std::abs(rhs) + 1.0;
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
    }
    return worst;
}

double FlattenMap::chi_at(double alpha) const {
    return mean_sqrtJ * alpha + (eval_coeffs(src, chi_osc, alpha) - eval_coeffs(src, chi_osc, 0.0)).real();
}

double FlattenMap::sqrtJ_at(double alpha) const {
    return eval_coeffs(src, sqrtJ_coeffs, alpha).real();
}

double FlattenMap::dtchi_at(double alpha) const {
    return mean_dt_sqrtJ * alpha +
           (eval_coeffs(src, chit_osc, alpha) - eval_coeffs(src, chit_osc, 0.0)).real();
}

double FlattenMap::kappa_at(double beta) const {
    // reduce to the fundamental cell using chi(alpha + L) = chi(alpha) + L~
    double shift = std::floor(beta / image_period);
    double b = beta - shift * image_period;
    double a = b / mean_sqrtJ;
    double lo = a - src.period, hi = a + src.period;
    for (int it = 0; it < 100; ++it) {
        double f = chi_at(a) - b;
        if (std::abs(f) < 1e-13 * std::max(1.0, image_period))
            return a + shift * src.period;
        if (f > 0.0) hi = a; else lo = a;
        double step = f / sqrtJ_at(a);
        double an = a - step;
        if (an <= lo || an >= hi) an = 0.5 * (lo + hi);  // bisection fallback
        a = an;
    }
    throw NewtonNoConvergence("kappa inversion did not reach 1e-13");
}

FlattenMap flatten(const DiffState& s) {
    require_nondegenerate(s.WW);
    const auto& g = s.WW.grid;
    FlattenMap m;
    m.src = g;

    ComplexField sqrtJ(g);
    for (std::size_t i = 0; i < g.n; ++i)
        sqrtJ.v[i] = std::abs(1.0 + s.WW.v[i]);
    m.sqrtJ_coeffs = fft(sqrtJ);
    m.mean_sqrtJ = m.sqrtJ_coeffs[0].real();
    m.image_period = m.mean_sqrtJ * g.period;
    m.img = PeriodicGrid(g.n, m.image_period);

    cvec osc = m.sqrtJ_coeffs;
    osc[0] = 0.0;
    ComplexField oscf = ifft(g, osc);
    m.chi_osc = fft(antiderivative(oscf));

    // dt sqrt(J) = Re[(1+conj W) W_t] / sqrt(J), W_t from the evolution
    auto [WWt, Rt] = rhs_WR(s);
    (void)Rt;
    ComplexField dsq(g);
    for (std::size_t i = 0; i < g.n; ++i)
        dsq.v[i] = ((1.0 + std::conj(s.WW.v[i])) * WWt.v[i]).real() / sqrtJ.v[i].real();
    cvec dsqc = fft(dsq);
    m.mean_dt_sqrtJ = dsqc[0].real();
    dsqc[0] = 0.0;
    m.chit_osc = fft(antiderivative(ifft(g, dsqc)));

    m.kappa.resize(g.n);
    for (std::size_t j = 0; j < g.n; ++j) m.kappa[j] = m.kappa_at(m.img.point(j));

    // d kappa / d beta: 1/mean + spectral derivative of the periodic part
    ComplexField kosc(m.img);
    for (std::size_t j = 0; j < g.n; ++j)
        kosc.v[j] = m.kappa[j] - m.img.point(j) / m.mean_sqrtJ;
    ComplexField dk = derivative(kosc);
    m.dkappa = ComplexField(m.img);
    for (std::size_t j = 0; j < g.n; ++j) m.dkappa.v[j] = 1.0 / m.mean_sqrtJ + dk.v[j];

    AuxBundle A = compute_aux(s);
    cvec bu_coeffs = fft(A.bu);
    m.btilde = ComplexField(m.img);
    for (std::size_t j = 0; j < g.n; ++j) {
        double al = m.kappa[j];
        cplx bu = eval_coeffs(g, bu_coeffs, al);
        m.btilde.v[j] = bu * m.sqrtJ_at(al) + m.dtchi_at(al);
    }
    return m;
}

std::pair<double, double> paralinearization_slopes(const DiffState& base, double packet_eps,
                                                   double sobolev_s, int k_min, int k_max) {
    const auto& g = base.WW.grid;
    ComplexField c2(g);
    for (std::size_t i = 0; i < g.n; ++i) {
        cplx ww = base.WW.v[i];
        cplx y = ww / (1.0 + ww);
        c2.v[i] = (1.0 + ww) * (1.0 - std::conj(y));
    }

    auto source_and_principal = [&](const DiffState& st) {
        AuxBundle A = compute_aux(st);
        auto [WWt, Rt] = rhs_WR(st);
        (void)Rt;
        ComplexField c2s(g);
        for (std::size_t i = 0; i < g.n; ++i) {
            cplx ww = st.WW.v[i];
            cplx y = ww / (1.0 + ww);
            c2s.v[i] = (1.0 + ww) * (1.0 - std::conj(y));
        }
        ComplexField principal =
            paraproduct(A.bu, derivative(st.WW)) + derivative(paraproduct(c2s, st.R));
        ComplexField G = WWt + principal;
        return std::make_pair(G, principal);
    };

    auto [G0, P0] = source_and_principal(base);
    std::vector<double> ks, gs, ps;
    for (int k = k_min; k <= k_max; ++k) {
        double freq = std::pow(2.0, k);
        if (freq * 1.5 > std::abs(g.wavenumber(g.n / 2 - 1))) break;
        ComplexField pk = packet_eps * probe_packet(g, k);
        DiffState st = base;
        ComplexField nw = ComplexField(base.WW) + pk;
        ComplexField nr = ComplexField(base.R) + pk;
        st.WW = HoloField::adopt(project_neg(nw, ZeroMode::Half), 1e-6);
        st.R = HoloField::adopt(project_neg(nr, ZeroMode::Half), 1e-6);
        auto [Gk, Pk] = source_and_principal(st);
        ks.push_back(double(k));
        gs.push_back(std::log2(sobolev_norm(Gk - G0, sobolev_s)));
        ps.push_back(std::log2(sobolev_norm(Pk - P0, sobolev_s)));
    }
    if (ks.size() < 3) throw InsufficientRange("paralinearization probe needs >= 3 packets");
    auto slope = [&](const std::vector<double>& ys) {
        double n = double(ks.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < ks.size(); ++i) {
            sx += ks[i];
            sy += ys[i];
            sxx += ks[i] * ks[i];
            sxy += ks[i] * ys[i];
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    return {slope(gs), slope(ps)};
}

}  // namespace wavelab

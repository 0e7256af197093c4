#include "wavelab/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace wavelab {

HoloField HoloField::adopt(const ComplexField& f, double tol) {
    if (holo_defect(f) > tol) throw Error("field is not holomorphic");
    HoloField h(f.grid);
    h.v = f.v;
    return h;
}

HoloField holo_from_coeffs(const PeriodicGrid& g, cvec coeffs) {
    auto shared = std::make_shared<const cvec>(std::move(coeffs));
    ComplexField f = ifft(g, *shared);
    HoloField h(g);
    h.v = std::move(f.v);
    h.coeffs = shared;
    return h;
}

cvec spectrum_of(const HoloField& f) {
    if (f.coeffs) return *f.coeffs;
    return fft(f);
}

namespace {

ComplexField project_impl(const ComplexField& f, bool negative, ZeroMode zm) {
    cvec F = fft(f);
    const auto& g = f.grid;
    for (std::size_t i = 0; i < g.n; ++i) {
        double xi = g.wavenumber(i);
        double w;
        if (xi == 0.0)
            w = (zm == ZeroMode::Half) ? 0.5 : 0.0;
        else
            w = (negative == (xi < 0.0)) ? 1.0 : 0.0;
        F[i] *= w;
    }
    F[g.n / 2] = 0.0;  // Nyquist always zeroed
    return ifft(g, F);
}

}  // namespace

ComplexField project_neg(const ComplexField& f, ZeroMode zm) { return project_impl(f, true, zm); }
ComplexField project_pos(const ComplexField& f, ZeroMode zm) { return project_impl(f, false, zm); }

HoloField project_holo(const ComplexField& f) {
    ComplexField p = project_neg(f, ZeroMode::Drop);
    HoloField h(f.grid);
    h.v = std::move(p.v);
    return h;
}

ComplexField project_antiholo(const ComplexField& f) { return project_pos(f, ZeroMode::Drop); }

ComplexField hilbert(const ComplexField& f) {
    return apply_multiplier(f, [](double xi) {
        double s = (xi > 0.0) - (xi < 0.0);
        return cplx(0.0, -s);
    });
}

ComplexField apply_multiplier(const ComplexField& f, const std::function<cplx(double)>& m,
                              bool singular_at_zero) {
    cvec F = fft(f);
    const auto& g = f.grid;
    if (singular_at_zero && std::abs(F[0]) > 1e-13 * (1.0 + l2_norm(f))) throw PoleAtZeroMean();
    for (std::size_t i = 0; i < g.n; ++i) {
        double xi = g.wavenumber(i);
        if (xi == 0.0 && singular_at_zero) {
            F[i] = 0.0;
            continue;
        }
        F[i] *= m(xi);
    }
    F[g.n / 2] = 0.0;
    return ifft(g, F);
}

ComplexField derivative(const ComplexField& f) {
    return apply_multiplier(f, [](double xi) { return cplx(0.0, xi); });
}

ComplexField antiderivative(const ComplexField& f) {
    return apply_multiplier(f, [](double xi) { return 1.0 / cplx(0.0, xi); }, true);
}

cplx mean(const ComplexField& f) {
    cplx s = 0.0;
    for (const auto& x : f.v) s += x;
    return s / double(f.size());
}

ComplexField zero_nyquist(const ComplexField& f) {
    cvec F = fft(f);
    F[f.grid.n / 2] = 0.0;
    return ifft(f.grid, F);
}

double dispersion_weight(double g, double sigma, double gamma, double xi, DispersionKind kind) {
    double a = std::abs(xi);
    double l = std::sqrt(sigma * a * a * a + g * a + 0.25 * gamma * gamma);
    if (kind == DispersionKind::L) return l;
    if (a == 0.0) throw PoleAtZeroMean();
    return l / a;
}

ComplexField apply_dispersion(const ComplexField& f, double g, double sigma, double gamma,
                              DispersionKind kind) {
    bool singular = (kind == DispersionKind::M);
    return apply_multiplier(
        f, [=](double xi) { return cplx(dispersion_weight(g, sigma, gamma, xi, kind)); },
        singular);
}

ComplexField dealias(const ComplexField& f, double fraction) {
    if (fraction <= 0.0 || fraction > 1.0) throw Error("dealias fraction must be in (0,1]");
    const auto& g = f.grid;
    const double cutoff = fraction * g.wavenumber(g.n / 2 - 1);  // fraction of max resolved |xi|
    cvec F = fft(f);
    for (std::size_t i = 0; i < g.n; ++i)
        if (std::abs(g.wavenumber(i)) > cutoff) F[i] = 0.0;
    F[g.n / 2] = 0.0;
    return ifft(g, F);
}

ComplexField dprod(const ComplexField& a, const ComplexField& b, double fraction) {
    return dealias(a * b, fraction);
}

double l2_norm(const ComplexField& f) {
    double s = 0.0;
    for (const auto& x : f.v) s += std::norm(x);
    return std::sqrt(s * f.grid.dx());
}

double sup_norm(const ComplexField& f) {
    double s = 0.0;
    for (const auto& x : f.v) s = std::max(s, std::abs(x));
    return s;
}

double holo_defect(const ComplexField& f) {
    cvec F = fft(f);
    double pos = 0.0, tot = 0.0;
    for (std::size_t i = 0; i < f.grid.n; ++i) {
        double m2 = std::norm(F[i]);
        tot += m2;
        if (f.grid.wavenumber(i) > 0.0) pos += m2;
    }
    return tot > 0.0 ? pos / tot : 0.0;
}

}  // namespace wavelab

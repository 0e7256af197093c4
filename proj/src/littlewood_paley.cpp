#include "wavelab/littlewood_paley.hpp"

#include <cmath>

namespace wavelab {

double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double a = std::exp(-1.0 / x);
    double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

double dyadic_profile(double r) {
    return smooth_step(2.0 - std::abs(r));
}

DyadicDecomposition::DyadicDecomposition(const PeriodicGrid& g) : grid(g) {
    double ximax = std::abs(g.wavenumber(g.n / 2));  // include Nyquist in the partition
    std::size_t top = 1;
    while (std::pow(2.0, double(top - 1)) < ximax) ++top;
    blocks.assign(top + 1, std::vector<double>(g.n, 0.0));
    for (std::size_t i = 0; i < g.n; ++i) {
        double axi = std::abs(g.wavenumber(i));
        double prev = dyadic_profile(axi);  // Phi_0
        blocks[0][i] = prev;
        for (std::size_t k = 1; k < top; ++k) {
            double cur = dyadic_profile(axi / std::pow(2.0, double(k)));
            blocks[k][i] = cur - prev;
            prev = cur;
        }
        blocks[top][i] = 1.0 - prev;  // remainder block, keeps the sum exactly 1
    }
}

ComplexField dyadic_block(const DyadicDecomposition& dec, const ComplexField& f, std::size_t k) {
    if (f.grid != dec.grid) throw GridMismatch();
    if (k >= dec.count()) throw IndexOutOfRange("dyadic block index " + std::to_string(k));
    cvec F = fft(f);
    for (std::size_t i = 0; i < f.grid.n; ++i) F[i] *= dec.blocks[k][i];
    return ifft(f.grid, F);
}

ComplexField dyadic_block(const ComplexField& f, std::size_t k) {
    return dyadic_block(DyadicDecomposition(f.grid), f, k);
}

namespace {

double lp_norm(const ComplexField& f, double p) {
    if (std::isinf(p)) return sup_norm(f);
    double s = 0.0;
    for (const auto& x : f.v) s += std::pow(std::abs(x), p);
    return std::pow(s * f.grid.dx(), 1.0 / p);
}

}  // namespace

double besov_norm(const ComplexField& f, double s, double p, double q) {
    if (p < 1.0 || q < 1.0) throw Error("Besov exponents must be >= 1");
    DyadicDecomposition dec(f.grid);
    double acc = 0.0;
    for (std::size_t k = 0; k < dec.count(); ++k) {
        double term = std::pow(2.0, s * double(k)) * lp_norm(dyadic_block(dec, f, k), p);
        if (std::isinf(q))
            acc = std::max(acc, term);
        else
            acc += std::pow(term, q);
    }
    return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

double zygmund_norm(const ComplexField& f, double s) { return besov_norm(f, s, kInf, kInf); }

double sobolev_norm(const ComplexField& f, double s) {
    cvec F = fft(f);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.grid.n; ++i) {
        double xi = f.grid.wavenumber(i);
        acc += std::pow(1.0 + xi * xi, s) * std::norm(F[i]);
    }
    return std::sqrt(acc * f.grid.period);
}

double sobolev_norm_homog(const ComplexField& f, double s) {
    cvec F = fft(f);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.grid.n; ++i) {
        double xi = f.grid.wavenumber(i);
        if (xi == 0.0) continue;
        acc += std::pow(std::abs(xi), 2.0 * s) * std::norm(F[i]);
    }
    return std::sqrt(acc * f.grid.period);
}

ControlNorms control_norms(const ComplexField& WW, const ComplexField& R, double gamma,
                           double eps) {
    require_same_grid(WW, R);
    double ag = std::abs(gamma);
    ControlNorms out;
    out.A = zygmund_norm(WW, 1.0 + eps) + zygmund_norm(R, 0.5) + ag * zygmund_norm(WW, 0.5);
    out.B = zygmund_norm(WW, 1.5) + zygmund_norm(R, 1.0 + eps) +
            ag * zygmund_norm(WW, 1.0 + eps) + ag * zygmund_norm(R, 0.5);
    return out;
}

double product_norm(const ComplexField& f, const ComplexField& g, double s,
                    ProductFlavor flavor) {
    require_same_grid(f, g);
    if (flavor == ProductFlavor::SobolevH)
        return sobolev_norm(f, s + 0.5) + sobolev_norm(g, s);
    return zygmund_norm(f, s + 0.5) + zygmund_norm(g, s);
}

}  // namespace wavelab

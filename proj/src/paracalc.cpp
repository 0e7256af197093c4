#include "wavelab/paracalc.hpp"

#include <cmath>

namespace wavelab {
namespace {

const double kFdBase = 6.0e-6;  // ~cbrt(eps), scaled by max(1,|xi|)

// Spectral index of integer-offset wavenumber theta (in units of the grid's
// base frequency), or npos when not representable. The unpaired Nyquist mode
// counts as unrepresentable.
std::size_t index_of(const PeriodicGrid& g, long k) {
    long half = long(g.n) / 2;
    if (k >= half || k <= -half) return std::size_t(-1);
    return std::size_t(k >= 0 ? k : k + long(g.n));
}

}  // namespace

cvec Symbol::sample_dxi(const PeriodicGrid& g, double xi) const {
    if (row_dxi) return row_dxi(g, xi);
    double h = kFdBase * std::max(1.0, std::abs(xi));
    cvec hi = row(g, xi + h), lo = row(g, xi - h);
    for (std::size_t j = 0; j < hi.size(); ++j) hi[j] = (hi[j] - lo[j]) / (2.0 * h);
    return hi;
}

Symbol symbol_from_field(const ComplexField& c, double order, double regularity) {
    Symbol s;
    s.order = order;
    s.regularity = regularity;
    cvec vals = c.v;
    PeriodicGrid grid = c.grid;
    s.row = [vals, grid](const PeriodicGrid& g, double) {
        if (g != grid) throw GridMismatch();
        return vals;
    };
    s.row_dxi = [](const PeriodicGrid& g, double) { return cvec(g.n, cplx(0.0)); };
    return s;
}

Symbol symbol_from_multiplier(const std::function<cplx(double)>& m, double order,
                              double regularity, const std::function<cplx(double)>& dm) {
    Symbol s;
    s.order = order;
    s.regularity = regularity;
    s.row = [m](const PeriodicGrid& g, double xi) { return cvec(g.n, m(xi)); };
    if (dm) s.row_dxi = [dm](const PeriodicGrid& g, double xi) { return cvec(g.n, dm(xi)); };
    return s;
}

Symbol symbol_separable(const ComplexField& c, const std::function<cplx(double)>& m, double order,
                        double regularity, const std::function<cplx(double)>& dm) {
    Symbol s;
    s.order = order;
    s.regularity = regularity;
    cvec vals = c.v;
    PeriodicGrid grid = c.grid;
    s.row = [vals, grid, m](const PeriodicGrid& g, double xi) {
        if (g != grid) throw GridMismatch();
        cvec r = vals;
        cplx mx = m(xi);
        for (auto& x : r) x *= mx;
        return r;
    };
    if (dm)
        s.row_dxi = [vals, grid, dm](const PeriodicGrid& g, double xi) {
            if (g != grid) throw GridMismatch();
            cvec r = vals;
            cplx mx = dm(xi);
            for (auto& x : r) x *= mx;
            return r;
        };
    return s;
}

Symbol symbol_sum(const Symbol& a, const Symbol& b) {
    Symbol s;
    s.order = std::max(a.order, b.order);
    s.regularity = std::min(a.regularity, b.regularity);
    s.row = [a, b](const PeriodicGrid& g, double xi) {
        cvec ra = a.row(g, xi), rb = b.row(g, xi);
        for (std::size_t j = 0; j < ra.size(); ++j) ra[j] += rb[j];
        return ra;
    };
    s.row_dxi = [a, b](const PeriodicGrid& g, double xi) {
        cvec ra = a.sample_dxi(g, xi), rb = b.sample_dxi(g, xi);
        for (std::size_t j = 0; j < ra.size(); ++j) ra[j] += rb[j];
        return ra;
    };
    return s;
}

ComplexField paraproduct(const ComplexField& a, const ComplexField& u, ParaVariant variant,
                         const Cutoffs& cut, int trunc_offset) {
    require_same_grid(a, u);
    const auto& g = a.grid;

    if (variant == ParaVariant::Truncated) {
        // sum_{k>=1} sum_{0<=j<=k-N} Pdot_j(D)a * Pdot_k(D)u with homogeneous
        // dyadic blocks Pdot_k = profile(|xi|/2^k) - profile(|xi|/2^{k-1}).
        cvec A = fft(a), U = fft(u);
        double ximax = std::abs(g.wavenumber(g.n / 2));
        int top = 0;
        while (std::pow(2.0, top) < ximax) ++top;
        auto block = [&](const cvec& F, int k) {
            cvec B(g.n, cplx(0.0));
            for (std::size_t i = 0; i < g.n; ++i) {
                double axi = std::abs(g.wavenumber(i));
                if (axi == 0.0) continue;
                double w = dyadic_profile(axi / std::pow(2.0, k)) -
                           dyadic_profile(axi / std::pow(2.0, k - 1));
                B[i] = F[i] * w;
            }
            return ifft(g, B);
        };
        ComplexField out(g);
        for (int k = 1; k <= top; ++k) {
            ComplexField pu = block(U, k);
            for (int j = 0; j <= k - trunc_offset; ++j) {
                ComplexField pa = block(A, j);
                for (std::size_t i = 0; i < g.n; ++i) out.v[i] += pa.v[i] * pu.v[i];
            }
        }
        return zero_nyquist(out);
    }

    cvec A = fft(a), U = fft(u);
    cvec out(g.n, cplx(0.0));
    long half = long(g.n) / 2;
    for (long kx = -half + 1; kx < half; ++kx) {       // output mode
        std::size_t io = index_of(g, kx);
        cplx acc = 0.0;
        for (long ke = -half + 1; ke < half; ++ke) {   // u mode
            long kt = kx - ke;                          // a mode
            std::size_t ia = index_of(g, kt);
            if (ia == std::size_t(-1)) continue;
            double eta = g.wavenumber(index_of(g, ke));
            double theta = g.wavenumber(ia);
            double w = cut.chi(theta, eta) * cut.psi(eta);
            if (w == 0.0) continue;
            acc += w * A[ia] * U[index_of(g, ke)];
        }
        out[io] = acc;
    }
    return ifft(g, out);
}

ComplexField balanced_pi(const ComplexField& a, const ComplexField& u, const Cutoffs& cut) {
    require_same_grid(a, u);
    const auto& g = a.grid;
    cvec A = fft(a), U = fft(u);
    cvec out(g.n, cplx(0.0));
    long half = long(g.n) / 2;
    for (long kx = -half + 1; kx < half; ++kx) {
        cplx acc = 0.0;
        for (long ke = -half + 1; ke < half; ++ke) {
            long kt = kx - ke;
            std::size_t ia = index_of(g, kt);
            if (ia == std::size_t(-1)) continue;
            double eta = g.wavenumber(index_of(g, ke));
            double theta = g.wavenumber(ia);
            double w = 1.0 - cut.chi(theta, eta) * cut.psi(eta) - cut.chi(eta, theta) * cut.psi(theta);
            if (w == 0.0) continue;
            acc += w * A[ia] * U[index_of(g, ke)];
        }
        out[index_of(g, kx)] = acc;
    }
    return ifft(g, out);
}

ComplexField paradiff_apply(const Symbol& a, const ComplexField& u, const Cutoffs& cut) {
    const auto& g = u.grid;
    cvec U = fft(u);
    cvec out(g.n, cplx(0.0));
    long half = long(g.n) / 2;
    for (long ke = -half + 1; ke < half; ++ke) {
        std::size_t iu = index_of(g, ke);
        double eta = g.wavenumber(iu);
        double pe = cut.psi(eta);
        if (pe == 0.0 || U[iu] == 0.0) continue;
        cvec A = fft(ComplexField(g, a.sample(g, eta)));
        cplx src = pe * U[iu];
        for (long kt = -half + 1; kt < half; ++kt) {
            std::size_t ia = index_of(g, kt);
            double w = cut.chi(g.wavenumber(ia), eta);
            if (w == 0.0) continue;
            std::size_t io = index_of(g, kt + ke);
            if (io == std::size_t(-1)) continue;
            out[io] += w * A[ia] * src;
        }
    }
    return ifft(g, out);
}

ComplexField paradiff_adjoint_apply(const Symbol& a, const ComplexField& u, const Cutoffs& cut) {
    const auto& g = u.grid;
    cvec U = fft(u);
    cvec out(g.n, cplx(0.0));
    long half = long(g.n) / 2;
    // <T_a f, u> = <f, T_a^* u>: conjugate-transposed kernel in coefficients.
    for (long ke = -half + 1; ke < half; ++ke) {       // output (= T_a input) mode
        std::size_t io = index_of(g, ke);
        double eta = g.wavenumber(io);
        double pe = cut.psi(eta);
        if (pe == 0.0) continue;
        cvec A = fft(ComplexField(g, a.sample(g, eta)));
        cplx acc = 0.0;
        for (long kx = -half + 1; kx < half; ++kx) {   // T_a output mode
            long kt = kx - ke;
            std::size_t ia = index_of(g, kt);
            if (ia == std::size_t(-1)) continue;
            double w = cut.chi(g.wavenumber(ia), eta);
            if (w == 0.0) continue;
            acc += std::conj(w * A[ia] * pe) * U[index_of(g, kx)];
        }
        out[io] = acc;
    }
    return ifft(g, out);
}

namespace {

cvec spectral_dx(const PeriodicGrid& g, const cvec& vals) {
    ComplexField f(g, vals);
    return derivative(f).v;
}

}  // namespace

Symbol symbol_compose(const Symbol& a, const Symbol& b, double rho) {
    if (rho != 1.0 && rho != 1.5 && rho != 2.0) throw UnsupportedRho(rho);
    Symbol s;
    s.order = a.order + b.order;
    s.regularity = std::min(a.regularity, b.regularity);
    bool with_correction = rho > 1.0;
    s.row = [a, b, with_correction](const PeriodicGrid& g, double xi) {
        cvec ra = a.row(g, xi), rb = b.row(g, xi);
        cvec out(g.n);
        for (std::size_t j = 0; j < g.n; ++j) out[j] = ra[j] * rb[j];
        if (with_correction) {
            cvec da = a.sample_dxi(g, xi);
            cvec db = spectral_dx(g, rb);
            for (std::size_t j = 0; j < g.n; ++j) out[j] += cplx(0.0, -1.0) * da[j] * db[j];
        }
        return out;
    };
    return s;
}

Symbol symbol_adjoint(const Symbol& a, double rho) {
    if (rho != 1.0 && rho != 1.5) throw UnsupportedRho(rho);
    Symbol s;
    s.order = a.order;
    s.regularity = a.regularity;
    bool with_correction = rho > 1.0;
    s.row = [a, with_correction](const PeriodicGrid& g, double xi) {
        cvec r = a.row(g, xi);
        for (auto& x : r) x = std::conj(x);
        if (with_correction) {
            // (1/i) dxi dx conj(a), with dxi via the symbol's derivative rows
            double h = kFdBase * std::max(1.0, std::abs(xi));
            cvec hi = a.row(g, xi + h), lo = a.row(g, xi - h);
            for (std::size_t j = 0; j < g.n; ++j)
                hi[j] = std::conj((hi[j] - lo[j]) / (2.0 * h));
            cvec dxa = spectral_dx(g, hi);
            for (std::size_t j = 0; j < g.n; ++j) r[j] += cplx(0.0, -1.0) * dxa[j];
        }
        return r;
    };
    return s;
}

double seminorm(const Symbol& a, const PeriodicGrid& g, double m, double rho) {
    int kmax = int(std::floor(1.5 + rho));
    double best = 0.0;
    std::vector<double> xis;
    for (std::size_t i = 0; i < g.n; ++i) {
        double xi = g.wavenumber(i);
        if (std::abs(xi) >= 0.5 && i != g.n / 2) xis.push_back(xi);
    }
    xis.push_back(0.5);
    xis.push_back(-0.5);
    for (double xi : xis) {
        // dxi^k rows by nested central differences (closed form for k=1 if given)
        std::vector<cvec> rows(kmax + 1);
        rows[0] = a.row(g, xi);
        double h = kFdBase * std::max(1.0, std::abs(xi));
        for (int k = 1; k <= kmax; ++k) {
            double hk = h * std::pow(50.0, k - 1);  // widen step for higher derivatives
            if (k == 1 && a.row_dxi) {
                rows[1] = a.row_dxi(g, xi);
                continue;
            }
            auto eval_km1 = [&](double x) {
                if (k == 1) return a.row(g, x);
                // recompute (k-1)-th derivative at x by simple nesting
                std::function<cvec(double, int)> rec = [&](double xx, int kk) -> cvec {
                    if (kk == 0) return a.row(g, xx);
                    double hh = kFdBase * std::max(1.0, std::abs(xx)) * std::pow(50.0, kk - 1);
                    cvec up = rec(xx + hh, kk - 1), dn = rec(xx - hh, kk - 1);
                    for (std::size_t j = 0; j < up.size(); ++j) up[j] = (up[j] - dn[j]) / (2.0 * hh);
                    return up;
                };
                return rec(x, k - 1);
            };
            cvec up = eval_km1(xi + hk), dn = eval_km1(xi - hk);
            for (std::size_t j = 0; j < up.size(); ++j) up[j] = (up[j] - dn[j]) / (2.0 * hk);
            rows[k] = up;
        }
        for (int k = 0; k <= kmax; ++k) {
            ComplexField rowf(g, rows[k]);
            double xn = (rho > 0.0) ? zygmund_norm(rowf, rho) : sup_norm(rowf);
            best = std::max(best, std::pow(1.0 + std::abs(xi), double(k) - m) * xn);
        }
    }
    return best;
}

ComplexField probe_packet(const PeriodicGrid& g, int k) {
    ComplexField u(g);
    double freq = std::pow(2.0, k);
    for (std::size_t j = 0; j < g.n; ++j) {
        double al = g.point(j);
        u.v[j] = std::exp(std::cos(al) - 1.0) * std::exp(cplx(0.0, -freq * al));
    }
    return u;
}

double order_probe(const std::function<ComplexField(const ComplexField&)>& op,
                   const PeriodicGrid& g, int k_min, int k_max) {
    std::vector<double> ks, ys;
    for (int k = k_min; k <= k_max; ++k) {
        if (std::pow(2.0, k) * 1.5 > std::abs(g.wavenumber(g.n / 2 - 1))) break;
        ComplexField u = probe_packet(g, k);
        double nu = l2_norm(u);
        double nv = l2_norm(op(u));
        if (nv <= 0.0 || nu <= 0.0) continue;
        ks.push_back(double(k));
        ys.push_back(std::log2(nv / nu));
    }
    if (ks.size() < 3) throw InsufficientRange("order probe needs at least 3 usable packets");
    double n = double(ks.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        sx += ks[i];
        sy += ys[i];
        sxx += ks[i] * ks[i];
        sxy += ks[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace wavelab

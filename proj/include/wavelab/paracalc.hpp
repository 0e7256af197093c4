#pragma once

#include <functional>

#include "wavelab/littlewood_paley.hpp"
#include "wavelab/spectral.hpp"

namespace wavelab {

/// Low-high cutoffs of the paradifferential quantization.
/// chi(theta,eta) = 1 for |theta| <= eps1(1+|eta|), = 0 for |theta| >= eps2(1+|eta|);
/// psi(eta) = 0 for |eta| <= 1/5, = 1 for |eta| >= 1/4. Both smooth and even.
struct Cutoffs {
    double eps1 = 0.1;
    double eps2 = 0.3;

    double chi(double theta, double eta) const {
        double hi = eps2 * (1.0 + std::abs(eta));
        double lo = eps1 * (1.0 + std::abs(eta));
        return smooth_step((hi - std::abs(theta)) / (hi - lo));
    }
    double psi(double eta) const {
        return smooth_step((std::abs(eta) - 0.2) / (0.25 - 0.2));
    }
};

/// Symbol a(alpha, xi) with declared order m and regularity rho. Evaluation is
/// row-wise: row(grid, xi) returns the samples of a(., xi) on the grid.
struct Symbol {
    double order = 0.0;
    double regularity = 1.5;
    std::function<cvec(const PeriodicGrid&, double)> row;
    std::function<cvec(const PeriodicGrid&, double)> row_dxi;  // optional closed form

    cvec sample(const PeriodicGrid& g, double xi) const { return row(g, xi); }
    cvec sample_dxi(const PeriodicGrid& g, double xi) const;  // closed form or central FD
};

Symbol symbol_from_field(const ComplexField& c, double order = 0.0, double regularity = 1.5);
Symbol symbol_from_multiplier(const std::function<cplx(double)>& m, double order,
                              double regularity = 1.5,
                              const std::function<cplx(double)>& dm = nullptr);
/// c(alpha) * m(xi)
Symbol symbol_separable(const ComplexField& c, const std::function<cplx(double)>& m, double order,
                        double regularity = 1.5,
                        const std::function<cplx(double)>& dm = nullptr);
Symbol symbol_sum(const Symbol& a, const Symbol& b);

enum class ParaVariant { Standard, Truncated };

/// Low-high paraproduct T_a u for an x-only symbol a. The truncated variant is
/// the homogeneous dyadic-block sum with offset N (default 3).
ComplexField paraproduct(const ComplexField& a, const ComplexField& u,
                         ParaVariant variant = ParaVariant::Standard,
                         const Cutoffs& cut = {}, int trunc_offset = 3);

/// Balanced remainder Pi(a,u) assembled directly from the symmetric weight
/// 1 - chi(theta,eta)psi(eta) - chi(eta,theta)psi(theta) on frequency pairs,
/// so that a*u = T_a u + T_u a + Pi(a,u) exactly for band-limited inputs.
ComplexField balanced_pi(const ComplexField& a, const ComplexField& u, const Cutoffs& cut = {});

/// General paradifferential operator T_a u for an (x,xi)-symbol.
ComplexField paradiff_apply(const Symbol& a, const ComplexField& u, const Cutoffs& cut = {});

/// Exact adjoint of paradiff_apply with respect to the discrete L2 pairing.
ComplexField paradiff_adjoint_apply(const Symbol& a, const ComplexField& u,
                                    const Cutoffs& cut = {});

/// a # b = sum_{j < rho} (-i)^j/j! dxi^j a dx^j b, rho in {1, 3/2, 2}.
Symbol symbol_compose(const Symbol& a, const Symbol& b, double rho);

/// a* = sum_{j < rho} 1/(i^j j!) dxi^j dx^j conj(a), rho in {1, 3/2}.
Symbol symbol_adjoint(const Symbol& a, double rho);

/// Semi-norm M^m_rho(a): sup over k <= 3/2+rho, sampled |xi| >= 1/2 of
/// (1+|xi|)^{k-m} || dxi^k a(., xi) ||_{W^{rho,inf}}.
double seminorm(const Symbol& a, const PeriodicGrid& g, double m, double rho);

/// Least-squares slope of log2 ||op(u_k)||_{L2} against k on wave packets
/// u_k = envelope * exp(-i 2^k alpha). Throws InsufficientRange for < 3 k's.
double order_probe(const std::function<ComplexField(const ComplexField&)>& op,
                   const PeriodicGrid& g, int k_min, int k_max);

/// The packet used by order_probe (exposed for tests).
ComplexField probe_packet(const PeriodicGrid& g, int k);

}  // namespace wavelab

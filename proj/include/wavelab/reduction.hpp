#pragma once

#include "wavelab/paracalc.hpp"
#include "wavelab/waterwave.hpp"

namespace wavelab {

/// Wahlen variables (eta, zeta) = (bold W, R - i gamma/2 W).
std::pair<HoloField, HoloField> wahlen(const DiffState& s);
DiffState wahlen_inverse(const HoloField& eta, const HoloField& zeta, const PhysParams& p,
                         double t = 0.0);

/// Symbols of the paradifferential system in Wahlen variables:
/// lambda = i(1-conj Y)(1+W)xi + ((1-conj Y)(1+W))_alpha  (order 1),
/// k = -i sigma J^{-1/2}(1-Y)^2 xi^2 + 3 sigma J^{-1/2}(1-Y)^3 W_alpha xi
///     - i g + i gamma^2/(4 xi)                            (order 2).
std::pair<Symbol, Symbol> symbols_lambda_k(const DiffState& s);

/// Symmetrizer symbols tied to a state snapshot. At the flat surface
/// c = q = 1, p_half = -l(xi)/xi and p_minus_half = 0.
struct SymmetrizerSet {
    PhysParams params;
    ComplexField c_field;   // J^{-3/4}
    ComplexField q_field;   // J^{1/4}
    Symbol ell;             // l(xi), order 3/2
    Symbol c;               // order 0
    Symbol q;               // order 0
    Symbol p_half;          // order 1/2
    Symbol p_minus_half;    // order -1/2
    Symbol p;               // p_half + p_minus_half
};

SymmetrizerSet build_symmetrizers(const DiffState& s);

double ell_value(const PhysParams& p, double xi);
double ell_dxi(const PhysParams& p, double xi);

/// sqrt(l(xi)) as a plain Fourier multiplier (L^{1/2}).
ComplexField apply_L_half(const ComplexField& f, const PhysParams& p);

enum class EquivalenceRelation { First, Second };

/// Fitted growth exponent of iT_pT_lambda - L^{1/2}T_cL^{1/2}T_q (First) or
/// iT_qT_k - L^{1/2}T_cL^{1/2}T_p (Second) on wave packets.
double equivalence_residual(const DiffState& s, EquivalenceRelation which, int k_min, int k_max);

/// Phi = Re T_q (R - i gamma/2 W) + i Im T_p (bold W).
ComplexField build_phi(const DiffState& s, const SymmetrizerSet& set);

/// Elliptic weight (c(alpha) l(xi))^{2s/3}, order s.
Symbol elliptic_weight(const SymmetrizerSet& set, double s);

/// max pointwise |dxi p . dalpha(cl) - dalpha p . dxi(cl)| over grid x sampled xi
/// (the commutator-cancellation identity of the energy weight).
double elliptic_commutator_residual(const SymmetrizerSet& set, double s, const PeriodicGrid& g);

/// Flattening diffeomorphism chi(alpha) = int_0^alpha sqrt(J), its inverse
/// kappa (Newton), and the transported advection coefficient
/// btilde = (b . kappa)(chi' . kappa) + chi_t . kappa on the image grid.
struct FlattenMap {
    PeriodicGrid src;
    PeriodicGrid img;       // same point count, period = int_0^{2pi} sqrt(J)
    double image_period = 0.0;
    double mean_sqrtJ = 1.0;
    double mean_dt_sqrtJ = 0.0;
    cvec sqrtJ_coeffs;      // spectral coefficients of sqrt(J)
    cvec chi_osc;           // coefficients of the periodic part of chi
    cvec chit_osc;          // coefficients of the periodic part of dt chi
    std::vector<double> kappa;  // kappa at image grid nodes
    ComplexField dkappa;        // d kappa / d beta on the image grid
    ComplexField btilde;

    double chi_at(double alpha) const;
    double sqrtJ_at(double alpha) const;
    double dtchi_at(double alpha) const;
    double kappa_at(double beta) const;  // Newton inversion to 1e-12
};

FlattenMap flatten(const DiffState& s);

/// Paralinearization slopes: response of the source term
/// G = W_t + T_b dalpha W + dalpha T_{(1+W)(1-conj Y)} R and of the principal
/// part to an added frequency-2^k packet; returns (slope_G, slope_principal).
std::pair<double, double> paralinearization_slopes(const DiffState& base, double packet_eps,
                                                   double sobolev_s, int k_min, int k_max);

}  // namespace wavelab

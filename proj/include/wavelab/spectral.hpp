#pragma once

#include <functional>
#include <memory>

#include "wavelab/fft.hpp"
#include "wavelab/grid.hpp"

namespace wavelab {

/// Field whose Fourier coefficients vanish at strictly positive wavenumbers.
/// Construct through project_holo (zero mean) or adopt.
struct HoloField : ComplexField {
    HoloField() = default;
    explicit HoloField(const PeriodicGrid& g) : ComplexField(g) {}

    // Exact spectral representation when the values were materialized from
    // coefficients (keeps checkpoint/restart bit-identical). Optional cache;
    // when set, v == ifft(*coeffs) by construction.
    std::shared_ptr<const cvec> coeffs;

    // Wraps a field that is already holomorphic (checked).
    static HoloField adopt(const ComplexField& f, double tol = 1e-12);
};

/// Materializes a holomorphic field from spectral coefficients, keeping the
/// exact coefficients attached.
HoloField holo_from_coeffs(const PeriodicGrid& g, cvec coeffs);

/// The exact coefficients when attached, else fft of the values.
cvec spectrum_of(const HoloField& f);

// Weight given to the xi = 0 coefficient by the analytic projections.
// Drop fixes the zero-mean gauge (public API); Half is the literal
// P = (I - iH)/2 used inside the evolution equations, where it is required
// for exact conservation and the aux-function identities.
enum class ZeroMode { Drop, Half };

ComplexField project_neg(const ComplexField& f, ZeroMode zm);   // P
ComplexField project_pos(const ComplexField& f, ZeroMode zm);   // P-bar

/// P with the zero mode dropped. Idempotent; kills xi >= 0.
HoloField project_holo(const ComplexField& f);
/// P-bar with the zero mode dropped; kills xi <= 0.
ComplexField project_antiholo(const ComplexField& f);

/// Fourier multiplier -i sgn(xi), so that P = (I - iH)/2 selects xi < 0.
ComplexField hilbert(const ComplexField& f);

/// Coefficient-wise application of m(xi). If singular_at_zero, the input must
/// have zero mean (PoleAtZeroMean otherwise) and the zero mode maps to 0.
ComplexField apply_multiplier(const ComplexField& f, const std::function<cplx(double)>& m,
                              bool singular_at_zero = false);

ComplexField derivative(const ComplexField& f);
ComplexField antiderivative(const ComplexField& f);  // zero-mean primitive; requires zero mean

cplx mean(const ComplexField& f);
ComplexField zero_nyquist(const ComplexField& f);

enum class DispersionKind { L, M };

/// l(xi) = sqrt(sigma |xi|^3 + g |xi| + gamma^2/4); M(xi) = l(xi)/|xi|.
double dispersion_weight(double g, double sigma, double gamma, double xi,
                         DispersionKind kind = DispersionKind::L);
ComplexField apply_dispersion(const ComplexField& f, double g, double sigma, double gamma,
                              DispersionKind kind = DispersionKind::L);

/// Zeroes coefficients with |xi| above fraction * Nyquist (two-thirds rule).
ComplexField dealias(const ComplexField& f, double fraction = 2.0 / 3.0);

/// Dealiased pointwise product (the default for nonlinear terms).
ComplexField dprod(const ComplexField& a, const ComplexField& b, double fraction = 2.0 / 3.0);

double l2_norm(const ComplexField& f);           // sqrt(sum |f_j|^2 dx)
double sup_norm(const ComplexField& f);
double holo_defect(const ComplexField& f);       // L2 mass fraction at xi > 0

}  // namespace wavelab

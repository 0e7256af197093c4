#pragma once

#include "wavelab/spectral.hpp"

namespace wavelab {

struct PhysParams {
    double g = 1.0;      // gravity >= 0
    double sigma = 1.0;  // surface tension > 0
    double gamma = 0.0;  // constant vorticity

    void validate() const {
        if (sigma <= 0.0) throw Error("sigma must be positive");
        if (g < 0.0) throw Error("g must be nonnegative");
    }
};

/// Holomorphic position / velocity-potential pair (W, Q).
struct WaveState {
    HoloField W;
    HoloField Q;
    PhysParams params;
    double t = 0.0;
};

/// Differentiated unknowns (bold W, R) = (W_alpha, Q_alpha/(1+W_alpha)).
struct DiffState {
    HoloField WW;
    HoloField R;
    PhysParams params;
    double t = 0.0;
};

inline constexpr double kDegeneracyThreshold = 0.1;

double surface_margin(const ComplexField& Walpha);  // inf |1 + W_alpha|
void require_nondegenerate(const ComplexField& Walpha);

DiffState to_diff(const WaveState& s);
/// Reconstructs (W, Q) by zero-mean antiderivatives (gauge choice).
WaveState to_wave(const DiffState& s);

/// Auxiliary functions of the differentiated system. All projections use the
/// half zero-mode convention, under which the b-alpha relation and the chain
/// rule between the two systems hold to roundoff.
struct AuxBundle {
    ComplexField J;   // |1+W_alpha|^2, real positive
    ComplexField Y;   // W_alpha / (1+W_alpha)
    ComplexField F, F1, Fu;   // Fu = F - i gamma/2 F1
    ComplexField T1;
    ComplexField a, a1, N, au;  // au = a + gamma/2 a1 (frequency-shift)
    ComplexField b, b1, bu;     // bu = b - i gamma/2 b1 (advection velocity)
    ComplexField M, M1, Mu;     // Mu = M - i gamma/2 M1
};

AuxBundle compute_aux(const DiffState& s);
AuxBundle compute_aux(const WaveState& s);

/// d/dt (W, Q) of the undifferentiated system.
std::pair<ComplexField, ComplexField> rhs_WQ(const WaveState& s);

/// d/dt (bold W, R) of the differentiated system, assembled from the displayed
/// equations and the aux bundle (independent of rhs_WQ).
std::pair<ComplexField, ComplexField> rhs_WR(const DiffState& s);

struct Conserved {
    double E = 0.0;
    double P = 0.0;
    double imag_defect = 0.0;  // |imag| of the complexified integrals (consistency)
};

/// Conserved energy and horizontal momentum. Spectral (trapezoid) quadrature,
/// products not dealiased.
Conserved conserved(const WaveState& s);

/// E0 = sigma ||w||_{H1dot}^2 + ||q||_{H1/2dot}^2 (linear-system energy).
double linear_energy(const ComplexField& w, const ComplexField& q, double sigma);

/// sup-norm residual of the b-alpha relation, both sides assembled
/// independently (bu from its definition, Mu from the projection formulas).
double ubalpha_residual(const DiffState& s);

}  // namespace wavelab

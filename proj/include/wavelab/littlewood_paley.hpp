#pragma once

#include "wavelab/spectral.hpp"

namespace wavelab {

// Smooth 0->1 step built from the exp(-1/x) mollifier:
// step(x) = e(x)/(e(x)+e(1-x)), e(x) = exp(-1/x) for x>0. C-infinity.
double smooth_step(double x);

// Dyadic bump profile: 1 for |r|<=1, 0 for |r|>=2, smooth in between.
double dyadic_profile(double r);

/// Littlewood-Paley blocks {P_k}_{k=0..K} on a grid's wavenumber set.
/// P_0 covers |xi|<=1, P_k is supported in [2^(k-1), 2^(k+1)] for 1<=k<K and
/// the top block carries the remainder, so sum_k P_k(xi) = 1 exactly at every
/// discrete wavenumber.
struct DyadicDecomposition {
    PeriodicGrid grid;
    std::vector<std::vector<double>> blocks;  // blocks[k][spectral index]

    explicit DyadicDecomposition(const PeriodicGrid& g);
    std::size_t count() const { return blocks.size(); }
};

ComplexField dyadic_block(const ComplexField& f, std::size_t k);
ComplexField dyadic_block(const DyadicDecomposition& dec, const ComplexField& f, std::size_t k);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Non-homogeneous Besov norm || (2^{ks} ||P_k f||_{L^p})_k ||_{l^q}.
double besov_norm(const ComplexField& f, double s, double p, double q);

/// Zygmund norm C^s_* = B^s_{inf,inf}; computable stand-in for W^{s,inf}
/// (the two coincide for non-integer s > 0).
double zygmund_norm(const ComplexField& f, double s);

/// H^s with weight (1+|xi|^2)^{s/2}: sqrt(period * sum (1+xi^2)^s |F|^2).
double sobolev_norm(const ComplexField& f, double s);

/// Homogeneous variant: sqrt(period * sum |xi|^(2s) |F|^2), zero mode skipped.
double sobolev_norm_homog(const ComplexField& f, double s);

struct ControlNorms {
    double A = 0.0;
    double B = 0.0;
};

/// Quasilinear control norms on (bold W, R); gamma enters through |gamma|.
/// A = |W|_{C^{1+eps}} + |R|_{C^{1/2}} + |gamma| |W|_{C^{1/2}},
/// B = |W|_{C^{3/2}} + |R|_{C^{1+eps}} + |gamma| |W|_{C^{1+eps}} + |gamma| |R|_{C^{1/2}}.
ControlNorms control_norms(const ComplexField& WW, const ComplexField& R, double gamma,
                           double eps = 1.0 / 16.0);

enum class ProductFlavor { SobolevH, HolderW };

/// || (f,g) ||_{H^{s+1/2} x H^s} or the C^*-based Holder pair norm.
double product_norm(const ComplexField& f, const ComplexField& g, double s, ProductFlavor flavor);

}  // namespace wavelab

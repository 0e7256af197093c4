#pragma once

#include "wavelab/grid.hpp"

namespace wavelab {

// Normalized transforms: fft(f)[k] = (1/n) sum_j f_j exp(-i xi_k alpha_j), so
// a field equals sum_k F_k exp(+i xi_k alpha). Coefficients use FFTW index
// order (k = 0..n/2-1, -n/2..-1).
cvec fft(const ComplexField& f);
ComplexField ifft(const PeriodicGrid& g, const cvec& coeffs);

}  // namespace wavelab

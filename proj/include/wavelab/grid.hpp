#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "wavelab/errors.hpp"

namespace wavelab {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// Uniform grid on a periodic interval [0, period), FFT-friendly size.
struct PeriodicGrid {
    std::size_t n = 0;
    double period = 2.0 * std::numbers::pi;

    PeriodicGrid() = default;
    PeriodicGrid(std::size_t n_points, double period_ = 2.0 * std::numbers::pi)
        : n(n_points), period(period_) {
        if (n < 4 || (n & (n - 1)) != 0)
            throw Error("grid size must be a power of two >= 4");
        if (period <= 0.0) throw Error("grid period must be positive");
    }

    double dx() const { return period / double(n); }
    double point(std::size_t j) const { return double(j) * dx(); }

    // Signed wavenumber of spectral index i (FFT layout). Integer multiples of
    // 2*pi/period; index n/2 is the unpaired Nyquist mode.
    double wavenumber(std::size_t i) const {
        double base = 2.0 * std::numbers::pi / period;
        long k = (i < n / 2) ? long(i) : long(i) - long(n);
        return base * double(k);
    }

    bool operator==(const PeriodicGrid& o) const { return n == o.n && period == o.period; }
    bool operator!=(const PeriodicGrid& o) const { return !(*this == o); }
};

/// Complex samples on a PeriodicGrid. Physical values are the primary storage;
/// the spectral view is produced by fft()/ifft() in fft.hpp.
struct ComplexField {
    PeriodicGrid grid;
    cvec v;

    ComplexField() = default;
    explicit ComplexField(const PeriodicGrid& g) : grid(g), v(g.n, cplx(0.0)) {}
    ComplexField(const PeriodicGrid& g, cvec values) : grid(g), v(std::move(values)) {
        if (v.size() != grid.n) throw Error("field size does not match grid");
    }

    std::size_t size() const { return v.size(); }
    cplx& operator[](std::size_t i) { return v[i]; }
    const cplx& operator[](std::size_t i) const { return v[i]; }
};

inline void require_same_grid(const ComplexField& a, const ComplexField& b) {
    if (a.grid != b.grid) throw GridMismatch();
}

inline ComplexField operator+(const ComplexField& a, const ComplexField& b) {
    require_same_grid(a, b);
    ComplexField r(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) r.v[i] = a.v[i] + b.v[i];
    return r;
}

inline ComplexField operator-(const ComplexField& a, const ComplexField& b) {
    require_same_grid(a, b);
    ComplexField r(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) r.v[i] = a.v[i] - b.v[i];
    return r;
}

inline ComplexField operator*(cplx s, const ComplexField& a) {
    ComplexField r(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) r.v[i] = s * a.v[i];
    return r;
}

// Pointwise product of sample values (no dealiasing; see spectral.hpp).
inline ComplexField operator*(const ComplexField& a, const ComplexField& b) {
    require_same_grid(a, b);
    ComplexField r(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) r.v[i] = a.v[i] * b.v[i];
    return r;
}

inline ComplexField conj(const ComplexField& a) {
    ComplexField r(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) r.v[i] = std::conj(a.v[i]);
    return r;
}

}  // namespace wavelab

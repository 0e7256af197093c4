#pragma once

#include <cstdint>
#include <string>

#include "wavelab/timestepper.hpp"
#include "wavelab/waterwave.hpp"

namespace wavelab {

// --- reproducible randomness ------------------------------------------------

/// SplitMix64: the documented splittable generator behind every seeded
/// experiment. Deterministic across platforms.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() {  // [0,1)
        return double(next() >> 11) * 0x1.0p-53;
    }
    /// Derives an independent stream (seed mixing), for per-purpose substreams.
    SplitMix64 split(std::uint64_t salt) {
        return SplitMix64(next() ^ (0xA5A5A5A55A5A5A5Aull + salt));
    }
};

/// Zero-mean holomorphic field with |coef(-k)| = eps * exp(-decay k) * u_k and
/// uniform phases, k = 1..n/8.
HoloField random_smooth(const PeriodicGrid& g, SplitMix64& rng, double eps, double decay);

HoloField single_mode(const PeriodicGrid& g, int k, cplx amplitude);

// --- checkpoints --------------------------------------------------------------

// Binary layout (little-endian): magic "WVL1", u32 version, u64 n_points,
// f64 period, f64 t, f64 g, f64 sigma, f64 gamma, then n complex spectral
// coefficients of W followed by n of Q (f64 re, f64 im each).
void save_checkpoint(const std::string& path, const WaveState& s);
WaveState load_checkpoint(const std::string& path);

// --- diagnostics series -------------------------------------------------------

enum class SeriesFormat { Csv, Json };

/// Fixed column order {t, E, P, Hs, Wr, A, B, holo_defect}; floats as
/// shortest round-trip decimals; CSV always carries the header row.
void write_series(const std::vector<DiagnosticsRecord>& records, const std::string& path,
                  SeriesFormat format);

std::vector<DiagnosticsRecord> read_series_csv(const std::string& path);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double x);

}  // namespace wavelab

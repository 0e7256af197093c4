#include <doctest.h>

#include <cmath>

#include "wavelab/littlewood_paley.hpp"

using namespace wavelab;

namespace {

const PeriodicGrid g256(256);

ComplexField mode(const PeriodicGrid& g, int k, cplx amp = 1.0) {
    cvec F(g.n, cplx(0.0));
    std::size_t i = (k >= 0) ? std::size_t(k) : g.n - std::size_t(-k);
    F[i] = amp;
    return ifft(g, F);
}

ComplexField random_band(const PeriodicGrid& g, unsigned seed, std::size_t kmax, double decay) {
    cvec F(g.n, cplx(0.0));
    std::uint64_t s = seed;
    auto rnd = [&]() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return double(s >> 11) * 0x1.0p-53;
    };
    for (std::size_t k = 1; k <= kmax; ++k) {
        double a = std::exp(-decay * double(k));
        F[k] = a * cplx(rnd() - 0.5, rnd() - 0.5);
        F[g.n - k] = a * cplx(rnd() - 0.5, rnd() - 0.5);
    }
    return ifft(g, F);
}

}  // namespace

TEST_CASE("partition of unity is exact on the discrete wavenumbers") {
    DyadicDecomposition dec(g256);
    for (std::size_t i = 0; i < g256.n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < dec.count(); ++k) s += dec.blocks[k][i];
        CHECK(std::abs(s - 1.0) < 1e-15);
    }
}

TEST_CASE("block supports") {
    DyadicDecomposition dec(g256);
    for (std::size_t k = 1; k + 1 < dec.count(); ++k) {
        double lo = 0.5 * std::pow(2.0, double(k));
        double hi = 2.0 * std::pow(2.0, double(k));
        for (std::size_t i = 0; i < g256.n; ++i) {
            double axi = std::abs(g256.wavenumber(i));
            if (dec.blocks[k][i] != 0.0) {
                CHECK(axi >= lo - 1e-12);
                CHECK(axi <= hi + 1e-12);
            }
        }
    }
}

TEST_CASE("dyadic_block separates modes") {
    ComplexField f = mode(g256, -32);
    ComplexField b5 = dyadic_block(f, 5);
    CHECK(l2_norm(b5 - f) < 1e-13);
    for (std::size_t k = 0; k < DyadicDecomposition(g256).count(); ++k) {
        if (k == 5) continue;
        CHECK(l2_norm(dyadic_block(f, k)) < 1e-13);
    }

    ComplexField g = mode(g256, -4) + mode(g256, -64);
    CHECK(l2_norm(dyadic_block(g, 2) - mode(g256, -4)) < 1e-13);
    CHECK(l2_norm(dyadic_block(g, 6) - mode(g256, -64)) < 1e-13);

    ComplexField c(g256, cvec(g256.n, cplx(3.0)));
    CHECK(l2_norm(dyadic_block(c, 0) - c) < 1e-13);

    CHECK_THROWS_AS(dyadic_block(f, 99), IndexOutOfRange);

    SUBCASE("blocks sum back to the field") {
        ComplexField r = random_band(g256, 3, 100, 0.02);
        DyadicDecomposition dec(g256);
        ComplexField sum(g256);
        for (std::size_t k = 0; k < dec.count(); ++k) sum = sum + dyadic_block(dec, r, k);
        CHECK(l2_norm(sum - r) / l2_norm(r) < 1e-13);
    }
}

TEST_CASE("besov and zygmund norms") {
    ComplexField zero(g256);
    CHECK(besov_norm(zero, 1.0, 2.0, 2.0) == 0.0);

    SUBCASE("single active block value") {
        ComplexField f = mode(g256, -32);
        for (double s : {0.5, 1.0, 1.5}) {
            double expect = std::pow(2.0, 5.0 * s);
            CHECK(std::abs(zygmund_norm(f, s) - expect) / expect < 0.1);
        }
    }
    SUBCASE("monotone in s") {
        ComplexField f = random_band(g256, 5, 60, 0.05);
        CHECK(zygmund_norm(f, 1.5) >= zygmund_norm(f, 1.0));
        CHECK(zygmund_norm(f, 1.0) >= zygmund_norm(f, 0.5));
    }
    SUBCASE("Bernstein scaling slope") {
        std::vector<double> ks, ys;
        double s = 0.75;
        for (int k = 3; k <= 7; ++k) {
            ComplexField f = mode(g256, -(1 << k));
            ks.push_back(double(k));
            ys.push_back(std::log2(zygmund_norm(f, s)));
        }
        double n = double(ks.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < ks.size(); ++i) {
            sx += ks[i];
            sy += ys[i];
            sxx += ks[i] * ks[i];
            sxy += ks[i] * ys[i];
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(std::abs(slope - s) < 0.1);
    }
}

TEST_CASE("sobolev norm") {
    ComplexField f = mode(g256, -1);
    CHECK(sobolev_norm(f, 0.0) ==
          doctest::Approx(std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-12));
    ComplexField h = mode(g256, -32);
    CHECK(sobolev_norm(h, 1.0) ==
          doctest::Approx(std::sqrt(2.0 * std::numbers::pi * 1025.0)).epsilon(1e-12));

    SUBCASE("equivalent to B^s_{2,2} with fixed constants") {
        for (unsigned seed : {7u, 11u, 13u}) {
            ComplexField r = random_band(g256, seed, 80, 0.03);
            for (double s : {0.5, 1.0}) {
                double hs = sobolev_norm(r, s);
                double bs = besov_norm(r, s, 2.0, 2.0);
                CHECK(bs < 4.0 * hs);
                CHECK(hs < 4.0 * bs);
            }
        }
    }
    SUBCASE("embedding H^{s+1/2} controls C^s_*") {
        // constant fitted once on one sample, then checked across others
        double s = 0.5;
        ComplexField f0 = random_band(g256, 17, 60, 0.05);
        double C = zygmund_norm(f0, s) / sobolev_norm(f0, s + 0.5);
        for (unsigned seed : {19u, 23u, 29u}) {
            ComplexField f = random_band(g256, seed, 60, 0.05);
            CHECK(zygmund_norm(f, s) <= 3.0 * std::max(C, 1.0) * sobolev_norm(f, s + 0.5));
        }
    }
}

TEST_CASE("control norms") {
    ComplexField zero(g256);
    ControlNorms z = control_norms(zero, zero, 2.0);
    CHECK(z.A == 0.0);
    CHECK(z.B == 0.0);

    SUBCASE("assembly per definition") {
        ComplexField WW = mode(g256, -1, 1e-3);
        ComplexField R = mode(g256, -2, 2e-3);
        double eps = 1.0 / 16.0;
        double gam = 2.0;
        ControlNorms c = control_norms(WW, R, gam, eps);
        double expectA = zygmund_norm(WW, 1.0 + eps) + zygmund_norm(R, 0.5) +
                         gam * zygmund_norm(WW, 0.5);
        CHECK(c.A == doctest::Approx(expectA).epsilon(1e-12));
        double expectB = zygmund_norm(WW, 1.5) + zygmund_norm(R, 1.0 + eps) +
                         gam * zygmund_norm(WW, 1.0 + eps) + gam * zygmund_norm(R, 0.5);
        CHECK(c.B == doctest::Approx(expectB).epsilon(1e-12));
    }
    SUBCASE("homogeneity") {
        ComplexField WW = random_band(g256, 31, 40, 0.1);
        ComplexField R = random_band(g256, 37, 40, 0.1);
        ControlNorms c1 = control_norms(WW, R, 1.5);
        ControlNorms c2 = control_norms(2.0 * WW, 2.0 * R, 1.5);
        CHECK(c2.A == doctest::Approx(2.0 * c1.A).epsilon(1e-12));
        CHECK(c2.B == doctest::Approx(2.0 * c1.B).epsilon(1e-12));
    }
}

TEST_CASE("product norms") {
    ComplexField zero(g256);
    CHECK(product_norm(zero, zero, 1.0, ProductFlavor::SobolevH) == 0.0);

    ComplexField f = mode(g256, -1);
    CHECK(product_norm(f, zero, 0.0, ProductFlavor::SobolevH) ==
          doctest::Approx(sobolev_norm(f, 0.5)).epsilon(1e-12));

    ComplexField r1 = random_band(g256, 41, 50, 0.05);
    ComplexField r2 = random_band(g256, 43, 50, 0.05);
    CHECK(product_norm(r1, r2, 1.0, ProductFlavor::SobolevH) <=
          product_norm(r1, r2, 1.5, ProductFlavor::SobolevH));
}

#include "wavelab/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wavelab {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

HoloField random_smooth(const PeriodicGrid& g, SplitMix64& rng, double eps, double decay) {
    cvec F(g.n, cplx(0.0));
    const std::size_t kmax = g.n / 8;
    for (std::size_t k = 1; k <= kmax; ++k) {
        double amp = eps * std::exp(-decay * double(k)) * rng.uniform();
        double phase = 2.0 * std::numbers::pi * rng.uniform();
        F[g.n - k] = amp * std::exp(cplx(0.0, phase));  // wavenumber -k
    }
    return holo_from_coeffs(g, std::move(F));
}

HoloField single_mode(const PeriodicGrid& g, int k, cplx amplitude) {
    if (k <= 0 || std::size_t(k) >= g.n / 2) throw Error("single_mode wavenumber out of range");
    cvec F(g.n, cplx(0.0));
    F[g.n - std::size_t(k)] = amplitude;
    return holo_from_coeffs(g, std::move(F));
}

namespace {

constexpr char kMagic[4] = {'W', 'V', 'L', '1'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, const T& x) {
    os.write(reinterpret_cast<const char*>(&x), sizeof(T));
}

template <class T>
T get(std::istream& is) {
    T x;
    is.read(reinterpret_cast<char*>(&x), sizeof(T));
    if (!is) throw IoError("truncated checkpoint");
    return x;
}

}  // namespace

void save_checkpoint(const std::string& path, const WaveState& s) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open checkpoint for writing: " + path);
    os.write(kMagic, 4);
    put(os, kVersion);
    put(os, std::uint64_t(s.W.grid.n));
    put(os, s.W.grid.period);
    put(os, s.t);
    put(os, s.params.g);
    put(os, s.params.sigma);
    put(os, s.params.gamma);
    for (const auto& field : {std::cref(s.W), std::cref(s.Q)}) {
        cvec F = spectrum_of(field.get());
        for (const auto& c : F) {
            put(os, c.real());
            put(os, c.imag());
        }
    }
    if (!os) throw IoError("failed writing checkpoint: " + path);
}

WaveState load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open checkpoint: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0) throw IoError("bad checkpoint magic");
    if (get<std::uint32_t>(is) != kVersion) throw IoError("unsupported checkpoint version");
    std::uint64_t n = get<std::uint64_t>(is);
    double period = get<double>(is);
    WaveState s;
    s.t = get<double>(is);
    s.params.g = get<double>(is);
    s.params.sigma = get<double>(is);
    s.params.gamma = get<double>(is);
    PeriodicGrid g(std::size_t(n), period);
    for (HoloField* field : {&s.W, &s.Q}) {
        cvec F(g.n);
        for (auto& c : F) {
            double re = get<double>(is);
            double im = get<double>(is);
            c = cplx(re, im);
        }
        *field = holo_from_coeffs(g, std::move(F));
    }
    return s;
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

const char* kColumns[] = {"t", "E", "P", "Hs", "Wr", "A", "B", "holo_defect"};

std::array<double, 8> row_of(const DiagnosticsRecord& r) {
    return {r.t, r.E, r.P, r.Hs, r.Wr, r.A, r.B, r.holo_defect};
}

}  // namespace

void write_series(const std::vector<DiagnosticsRecord>& records, const std::string& path,
                  SeriesFormat format) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open series file for writing: " + path);
    if (format == SeriesFormat::Csv) {
        for (std::size_t c = 0; c < 8; ++c) os << (c ? "," : "") << kColumns[c];
        os << "\n";
        for (const auto& r : records) {
            auto row = row_of(r);
            for (std::size_t c = 0; c < 8; ++c) os << (c ? "," : "") << format_double(row[c]);
            os << "\n";
        }
    } else {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : records) {
            nlohmann::json o;
            auto row = row_of(r);
            for (std::size_t c = 0; c < 8; ++c) o[kColumns[c]] = row[c];
            j.push_back(o);
        }
        os << j.dump(2) << "\n";
    }
    if (!os) throw IoError("failed writing series: " + path);
}

std::vector<DiagnosticsRecord> read_series_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open series file: " + path);
    std::string line;
    if (!std::getline(is, line)) throw IoError("empty series file");
    std::vector<DiagnosticsRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::array<double, 8> row{};
        std::stringstream ss(line);
        std::string cell;
        for (std::size_t c = 0; c < 8; ++c) {
            if (!std::getline(ss, cell, ',')) throw IoError("short CSV row");
            row[c] = std::strtod(cell.c_str(), nullptr);
        }
        DiagnosticsRecord r;
        r.t = row[0];
        r.E = row[1];
        r.P = row[2];
        r.Hs = row[3];
        r.Wr = row[4];
        r.A = row[5];
        r.B = row[6];
        r.holo_defect = row[7];
        out.push_back(r);
    }
    return out;
}

}  // namespace wavelab

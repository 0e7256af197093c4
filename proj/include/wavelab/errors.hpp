#pragma once

#include <stdexcept>
#include <string>

namespace wavelab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridMismatch : Error {
    GridMismatch() : Error("fields live on different grids") {}
};

struct PoleAtZeroMean : Error {
    PoleAtZeroMean() : Error("multiplier singular at xi=0 applied to a field with nonzero mean") {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

struct UnsupportedRho : Error {
    explicit UnsupportedRho(double rho)
        : Error("unsupported symbolic-calculus regularity rho=" + std::to_string(rho)) {}
};

struct InsufficientRange : Error {
    explicit InsufficientRange(const std::string& what) : Error(what) {}
};

struct DegenerateSurface : Error {
    explicit DegenerateSurface(double m)
        : Error("surface degenerate: inf |1+W_alpha| = " + std::to_string(m)) {}
};

struct NewtonNoConvergence : Error {
    explicit NewtonNoConvergence(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& key, const std::string& what)
        : Error("config key '" + key + "': " + what), key(key) {}
    std::string key;
};

struct RangeError : Error {
    explicit RangeError(const std::string& key, const std::string& what)
        : Error("config key '" + key + "': " + what), key(key) {}
    std::string key;
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace wavelab

#pragma once

#include <stdexcept>
#include <string>

namespace pcwave {

// Base for numerical failures (CLI maps these to exit code 3).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Matrix-exponential argument outside the double exponent range.
class overflow_error : public numeric_error {
public:
    explicit overflow_error(const std::string& what) : numeric_error(what) {}
};

// No primary matrix square root exists (nilpotent with zero eigenvalue).
class defective_error : public numeric_error {
public:
    explicit defective_error(const std::string& what) : numeric_error(what) {}
};

// Backward boundary-value rearrangement hit a mirrorless-oscillation pole.
class singular_boundary_error : public numeric_error {
public:
    explicit singular_boundary_error(const std::string& what) : numeric_error(what) {}
};

// Constrained steady-state system is rank deficient.
class singular_drift_error : public numeric_error {
public:
    explicit singular_drift_error(const std::string& what) : numeric_error(what) {}
};

// Frequency grid does not resolve the spectrum (doubling test failed).
class grid_unresolved_error : public numeric_error {
public:
    explicit grid_unresolved_error(const std::string& what) : numeric_error(what) {}
};

// Bad configuration (CLI maps to exit code 2).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pcwave

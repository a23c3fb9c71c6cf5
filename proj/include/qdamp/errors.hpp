// errors.hpp — typed error conditions shared across the toolkit
#pragma once

#include <stdexcept>
#include <string>

namespace qdamp {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// coupling / quadrature
struct NonPositiveFrequency : Error { using Error::Error; };
struct AboveCutoff : Error { using Error::Error; };
struct TabulatedOutOfRange : Error { using Error::Error; };
struct QuadratureNonConvergence : Error { using Error::Error; };

// dynamics
struct OverdampedRegime : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct StepTooLarge : Error { using Error::Error; };

// bath oracle
struct NonHarmonicPotential : Error { using Error::Error; };
struct ExponentialNonConvergence : Error { using Error::Error; };

// transitions
struct NonPositiveTemperature : Error { using Error::Error; };
struct PerturbationBreakdown : Error { using Error::Error; };

// field
struct OutOfRange : Error { using Error::Error; };

// cli
struct UsageError : Error {
    UsageError(const std::string& msg, const std::string& remedy_line)
        : Error(msg), remedy(remedy_line) {}
    std::string remedy;
};

} // namespace qdamp

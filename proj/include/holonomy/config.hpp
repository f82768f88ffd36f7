#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hol {

// Domain errors map to exit code 1 in the CLI, input errors to exit code 2.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AmbiguousClassification : DomainError {
    explicit AmbiguousClassification(const std::string& what)
        : DomainError("ambiguous classification: " + what) {}
};

struct GenusError : DomainError {
    explicit GenusError(int g)
        : DomainError("genus " + std::to_string(g) + " unsupported: decision procedure requires g >= 2") {}
};

inline double default_tolerance()
{
    static const double tau = [] {
        if (const char* env = std::getenv("HOLONOMY_TOLERANCE")) {
            char* end = nullptr;
            double v = std::strtod(env, &end);
            if (end != env && v > 0) return v;
        }
        return 1e-9;
    }();
    return tau;
}

// Residuals below tau * kFixedSlack count as zero, above sqrt(tau) as nonzero.
inline constexpr double kFixedSlack = 1e3;

inline constexpr int kDefaultCap = 10000;

} // namespace hol

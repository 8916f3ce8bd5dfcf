#ifndef HYPERZERO_ERRORS_HPP
#define HYPERZERO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hyperzero {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Series evaluation hit a vanishing Pochhammer factor in a denominator
// before the numerator truncated the sum.
struct PoleAtParameter : Error {
    explicit PoleAtParameter(const std::string& msg) : Error(msg) {}
};

// The normalization value of a backward recurrence is itself unusable.
struct RecurrenceUnstable : Error {
    explicit RecurrenceUnstable(const std::string& msg) : Error(msg) {}
};

// A cataloged DDE direction cannot be instantiated for these parameters
// (a coefficient denominator vanishes).
struct DegenerateDirection : Error {
    explicit DegenerateDirection(const std::string& msg) : Error(msg) {}
};

// d_n*e_n >= 0: the fixed-point machinery does not apply on this domain.
struct NotOscillatoryHere : Error {
    explicit NotOscillatoryHere(const std::string& msg) : Error(msg) {}
};

// The requested interval contains a singular point of the defining ODE.
struct SingularInterval : Error {
    explicit SingularInterval(const std::string& msg) : Error(msg) {}
};

// The problem maps onto a solution branch this library does not evaluate
// (non-terminating 2F0).
struct UnsupportedSolutionBranch : Error {
    explicit UnsupportedSolutionBranch(const std::string& msg) : Error(msg) {}
};

// The oracle found several zeros where an at-most-one-zero verdict held.
struct MultipleZerosFound : Error {
    explicit MultipleZerosFound(const std::string& msg) : Error(msg) {}
};

// The oracle grid could not be refined to a stable zero count.
struct GridTooCoarse : Error {
    explicit GridTooCoarse(const std::string& msg) : Error(msg) {}
};

// No cataloged DDE is admissible for these parameters.
struct NoAdmissibleDDE : Error {
    explicit NoAdmissibleDDE(const std::string& msg) : Error(msg) {}
};

} // namespace hyperzero

#endif // HYPERZERO_ERRORS_HPP

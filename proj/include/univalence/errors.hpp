#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace univalence {

using Complex = std::complex<double>;

enum class ErrorKind {
    Domain,          // evaluation point outside the radius of validity
    Representation,  // truncated series tail too large at the point
    Validation,      // invariant of a type violated at construction
    Singularity,     // f(z)/z vanishes off the origin
    Inapplicable,    // g(z) - beta vanishes at a sample point
    Branch,          // phi2 vanishes or branch tracking failed
    Pole,            // denominator of w or p vanishes
    Degenerate,      // |F_z| too small for a dilatation quotient
    UnknownName,
    Config,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Error raised by every numerical operation in the toolkit. Carries the
/// sample point at which the failure was detected when one exists.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message,
          std::optional<Complex> witness = std::nullopt)
        : std::runtime_error(message), kind_(kind), witness_(witness) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::optional<Complex>& witness() const noexcept { return witness_; }

private:
    ErrorKind kind_;
    std::optional<Complex> witness_;
};

}  // namespace univalence

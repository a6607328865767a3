#pragma once

#include <stdexcept>
#include <string>

namespace prtbp {

enum class ErrorKind {
    invalid_params,
    singularity,
    no_convergence,
    singular_jacobian,
    nan_detected,
    resonant_degeneracy,
    no_root,
    undefined_quantity,
};

inline const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::invalid_params: return "invalid-params";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::no_convergence: return "no-convergence";
    case ErrorKind::singular_jacobian: return "singular-jacobian";
    case ErrorKind::nan_detected: return "nan-detected";
    case ErrorKind::resonant_degeneracy: return "resonant-degeneracy";
    case ErrorKind::no_root: return "no-root";
    case ErrorKind::undefined_quantity: return "undefined-quantity";
    }
    return "unknown";
}

/// Single exception type for the library; the kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace prtbp

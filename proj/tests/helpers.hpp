#pragma once

#include <optional>

#include "prtbp/model.hpp"

namespace testing {

// Drag-free parameters unless w1 is given.
inline prtbp::DerivedParams params(double mu, double q1 = 1.0, double a2 = 0.0, double w1 = 0.0) {
    return prtbp::derive_params(prtbp::SystemParams{mu, q1, a2, std::nullopt, w1});
}

} // namespace testing

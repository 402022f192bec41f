#pragma once

#include "logdecay/complex_matrix.hpp"

namespace logdecay {

// Matrix exponential by scaling-and-squaring with a Pade core (orders 3..13
// chosen from the 1-norm). Throws std::runtime_error if the input or result
// is non-finite (overflow) instead of returning Inf/NaN silently.
ComplexMatrix matexp(const ComplexMatrix& m);

}  // namespace logdecay

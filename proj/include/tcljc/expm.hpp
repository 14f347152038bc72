#pragma once

#include "tcljc/matrix.hpp"

namespace tcljc {

/// Matrix exponential by scaling-and-squaring with a (13,13) Pade approximant.
/// Throws OverflowError if any intermediate entry exceeds 1e150 in magnitude.
Matrix expm(const Matrix& m);

}  // namespace tcljc

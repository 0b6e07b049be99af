#pragma once

#include "siegelkit/lattice.hpp"

namespace siegelkit::detail {

// Number of tuples (x_0..x_{j-1}) in the lattice with Gram matrix `gram`
// such that (x_a, x_b) = target(a, b).
BigInt count_tuples(const IntMatrix& gram, const IntMatrix& target, const EnumerationOptions& opts);

}  // namespace siegelkit::detail

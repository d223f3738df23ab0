// Bundled example fibrations and generators for small test corpora.
// Everything here is deterministic: repeated calls produce identical
// presentations.
#pragma once

#include <vector>

#include "fibcalc/caps.hpp"
#include "fibcalc/fibration.hpp"
#include "fibcalc/fincat.hpp"

namespace fibcalc {

/// The five-object poset of interpolation_shape_crvortho over
/// opposite([1]) x [1]: a curved orthofibration whose single comparison
/// edge 11p -> 11 is not invertible.
TwoVarFib q_fibration();

/// The five-object poset of interpolation_shape_gray over [1] x [1]: a
/// Gray fibration that is not a cocartesian fibration; its single
/// comparison edge 11p -> 11 is not invertible.
TwoVarFib q_prime_fibration();

}  // namespace fibcalc

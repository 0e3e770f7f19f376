#pragma once

#include <cstddef>

namespace crowdflow {

/// Loops below this many cells run serial even in OpenMP builds; forking a team
/// costs more than the loop body at small sizes.
inline constexpr std::size_t kParallelGrain = 4096;

}  // namespace crowdflow

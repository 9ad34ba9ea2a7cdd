#pragma once

#include <cstddef>
#include <functional>

namespace tpm {

/// Worker count: TPM_THREADS if set to a positive integer, else the hardware
/// parallelism (at least 1).
unsigned worker_count();

/// Calls body(i) for i in [0, count) across worker_count() threads. Each index
/// runs exactly once; results must be written to per-index slots so output does
/// not depend on scheduling. The exception from the lowest failing index is
/// rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tpm

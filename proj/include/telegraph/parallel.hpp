#pragma once

namespace telegraph {

/// Worker count for parallel kernels: `requested` when positive, otherwise
/// the OpenMP default (hardware parallelism) capped by TELEGRAPH_THREADS
/// when that is set to a positive integer. Always 1 in builds without OpenMP.
int resolve_workers(int requested = 0);

}  // namespace telegraph

#pragma once

namespace zonoreach {

// Selects between the OpenMP kernels and their serial reference loops.
// Both produce bit-identical results; Serial exists for testing and benchmarking.
enum class ExecPolicy { Serial, Parallel };

}  // namespace zonoreach

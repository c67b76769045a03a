#pragma once

namespace loca {

/// Selects between the OpenMP kernel and its serial reference. Both produce
/// bit-identical results; the serial path exists for testing and benchmarking.
enum class Execution { Serial, Parallel };

/// Number of threads an OpenMP region would use (1 without OpenMP).
int available_threads();

}  // namespace loca

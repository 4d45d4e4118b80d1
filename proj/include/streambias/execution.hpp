#pragma once

namespace streambias {

/// Selects between the OpenMP kernel and the serial reference path. Both
/// produce identical results; the serial path exists for testing and
/// benchmarking.
enum class Execution { Parallel, Serial };

}  // namespace streambias

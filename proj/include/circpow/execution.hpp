#pragma once

namespace circpow {

// Selects between the OpenMP kernels and the plain serial loops. Both paths
// produce identical results; the serial one is the reference the tests and
// the benchmark compare against.
enum class Execution { serial, parallel };

}  // namespace circpow

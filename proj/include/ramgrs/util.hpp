#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace ramgrs {

/// Run fn(0..count-1), spread over up to `jobs` threads. jobs <= 1 runs
/// inline. fn must be safe to call concurrently for distinct indices; the
/// first exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& fn);

/// Shortest decimal string that parses back to exactly `v` (up to 17
/// significant digits). Used where round-trip fidelity matters (CSV output).
std::string format_double_exact(double v);

/// Round `v` to 12 significant decimal digits. Report values pass through
/// this so serialized output is deterministic without false precision.
double round12(double v);

}  // namespace ramgrs

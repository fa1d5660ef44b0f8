#pragma once

namespace omd {

/// Selects between the OpenMP kernel and its serial reference. Both produce
/// identical results, including element order.
enum class Exec { serial, parallel };

/// Threads OpenMP would use for a parallel region (1 without OpenMP).
int max_threads();

}  // namespace omd

#pragma once

#include <cstddef>

namespace bcrk::tol {

// Normalization slack allowed when validating a pmf (|sum - 1|).
inline constexpr double norm = 1e-9;

// Entries below this are treated as exact zeros (0*log 0 = 0 convention,
// support detection, deterministic-row detection).
inline constexpr double zero = 1e-12;

// Slack required to call an inequality strictly satisfied; weak satisfaction
// tolerates -strict.
inline constexpr double strict = 1e-9;

// A searched I(X;Y)-I(X;Z) gap below -classifier flags a more-capable
// violation.
inline constexpr double classifier = 1e-7;

// LP objective (max absolute matching residual) below this means a
// degrading kernel exists.
inline constexpr double degraded = 1e-9;

// Information measures in [info_clamp, 0) are rounding noise and clamp to 0;
// anything more negative indicates an internal bug.
inline constexpr double info_clamp = -1e-9;

// Dense joint tables are capped at this many cells.
inline constexpr std::size_t max_cells = 10'000'000;

}  // namespace bcrk::tol

#pragma once

#include <cmath>

namespace formwdp {

// Display rounding is half-away-from-zero, applied after snapping away
// binary floating-point noise at the ninth decimal place. Raw values are
// never rounded inside computations; these helpers exist for table cells
// and CLI output only.

inline double snap(double v) { return std::round(v * 1e9) / 1e9; }

inline double round_half_away(double v) { return std::round(snap(v)); }

/// Dollars -> whole millions of dollars.
inline double display_millions(double dollars) { return round_half_away(dollars / 1e6); }

/// Dollars -> whole dollars.
inline double display_dollars(double dollars) { return round_half_away(dollars); }

/// Fraction -> whole percent.
inline double display_percent(double fraction) { return round_half_away(fraction * 100.0); }

}  // namespace formwdp

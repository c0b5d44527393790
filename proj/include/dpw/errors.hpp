#pragma once

#include <stdexcept>
#include <string>

namespace dpw {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Frequency within tolerance of the excluded poles t = +-pi/2.
struct PoleError : Error { using Error::Error; };

// A lattice point or plaquette falls outside a grid window.
struct OutOfWindow : Error { using Error::Error; };

// Sequence length does not match what an operation requires.
struct LengthMismatch : Error { using Error::Error; };

// Contour has fewer than two vertices or a non-unit step.
struct DegenerateContour : Error { using Error::Error; };

// Out-of-band spectral mass exceeds the leakage tolerance.
struct BandLeakage : Error { using Error::Error; };

// Torus grid too coarse for the requested window (aliasing risk).
struct GridTooCoarse : Error { using Error::Error; };

// alpha + eps reaches pi/2, where the growth envelope degenerates.
struct BadEpsilon : Error { using Error::Error; };

// Height-0 decay envelope does not stabilize at the required rate.
struct SlowDecay : Error { using Error::Error; };

// A parity class of a sampling set is empty.
struct EmptyParity : Error { using Error::Error; };

// A parity class misses the first or last same-parity window point.
struct BoundaryGap : Error { using Error::Error; };

// Window cannot host the requested density ball radius.
struct WindowTooSmall : Error { using Error::Error; };

// A window point of some parity lies beyond the sampled range.
struct CoverageGap : Error { using Error::Error; };

// Iteration hit max_iter with the residual above tolerance while the
// sufficient sampling condition held.
struct NoConvergence : Error { using Error::Error; };

// Wirtinger input does not vanish at both endpoints.
struct BadEndpoints : Error { using Error::Error; };

// Invalid configuration value; message carries the field path.
struct ConfigError : Error { using Error::Error; };

} // namespace dpw

#pragma once

#include <random>

#include "dpw/spectral.hpp"

namespace dpw {

// C-infinity bump exp(s - s/(1 - x^2)) on |x| < 1, peak-normalized to 1,
// placed at torus angle `center` with half-width `width`. The support
// [center - width, center + width] must stay inside the low band
// |t| <= alpha; with `mirror` set, a copy lands in the pi-band around
// t = pi with weight mirror_amplitude.
//
// The default steepness 4 keeps the layer tails beyond |m| = 256 under
// 1e-9 of the peak, which every 1e-8-level window-truncated check needs.
struct BumpSpec {
    double center = 0.0;
    double width = 0.0; // half-width; 0 means the full low band alpha
    double steepness = 4.0;
    cplx amplitude = 1.0;
    bool mirror = false;
    cplx mirror_amplitude = 0.5;
};

SpectralFunction bump_profile(int L, const BandParameters& band, const BumpSpec& spec);

// f = 1 on every in-band grid point.
SpectralFunction indicator_profile(int L, const BandParameters& band);

// Single nonzero grid value at index j (must be in-band).
SpectralFunction single_frequency_profile(int L, const BandParameters& band, int j,
                                          cplx amplitude);

// Nearest in-band grid index to angle t, biased inward from the band edge.
int nearest_in_band_index(int L, const BandParameters& band, double t);

struct RandomBumpOptions {
    int terms = 2;
    double min_width_frac = 0.6; // of alpha
    double max_width_frac = 1.0;
    double steepness = 2.0;
    bool allow_mirror = true;
};

// Sum of a few random bumps with support inside the band; drives the
// test ensembles.
SpectralFunction random_bump_mix(int L, const BandParameters& band, std::mt19937_64& rng,
                                 const RandomBumpOptions& opt = {});

} // namespace dpw

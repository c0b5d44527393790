#include "dpw/profiles.hpp"

#include <cmath>
#include <string>

namespace dpw {

namespace {

double wrap_angle(double t) {
    double w = std::remainder(t, 2.0 * kPi);
    if (w >= kPi) w -= 2.0 * kPi; // keep in [-pi, pi)
    return w;
}

// peak-normalized bump at x in (-1, 1)
double bump_value(double x, double s) {
    const double q = 1.0 - x * x;
    if (q <= 0.0) return 0.0;
    return std::exp(s - s / q);
}

} // namespace

SpectralFunction bump_profile(int L, const BandParameters& band, const BumpSpec& spec) {
    const double alpha = band.alpha();
    const double width = spec.width > 0.0 ? spec.width : alpha;
    if (!(width > 0.0) || std::abs(spec.center) + width > alpha + 1e-15)
        throw ConfigError("bump support [center +- width] must stay inside |t| <= alpha");
    if (!(spec.steepness > 0.0)) throw ConfigError("bump steepness must be positive");

    SpectralFunction f(L, band);
    for (int j = 0; j < L; ++j) {
        const double t = f.angle(j);
        cplx v = spec.amplitude * bump_value((t - spec.center) / width, spec.steepness);
        if (spec.mirror)
            v += spec.mirror_amplitude *
                 bump_value(wrap_angle(t - kPi - spec.center) / width, spec.steepness);
        if (v != cplx{}) f.set_in_band(j, v);
    }
    return f;
}

SpectralFunction indicator_profile(int L, const BandParameters& band) {
    SpectralFunction f(L, band);
    for (int j = 0; j < L; ++j)
        if (band.contains(f.angle(j))) f.set_in_band(j, 1.0);
    return f;
}

SpectralFunction single_frequency_profile(int L, const BandParameters& band, int j,
                                          cplx amplitude) {
    SpectralFunction f(L, band);
    f.set_in_band(j, amplitude);
    return f;
}

int nearest_in_band_index(int L, const BandParameters& band, double t) {
    const double step = 2.0 * kPi / L;
    const auto angle = [&](int j) { return -kPi + step * j; };
    int j = static_cast<int>(std::lround((wrap_angle(t) + kPi) / step));
    j = ((j % L) + L) % L;
    for (int off = 0; off <= L; ++off) {
        for (int sgn : {1, -1}) {
            const int cand = ((j + sgn * off) % L + L) % L;
            if (band.contains(angle(cand))) return cand;
        }
    }
    throw ConfigError("no in-band grid point found"); // unreachable for valid bands
}

SpectralFunction random_bump_mix(int L, const BandParameters& band, std::mt19937_64& rng,
                                 const RandomBumpOptions& opt) {
    if (opt.terms < 1) throw ConfigError("random bump mix needs at least one term");
    const double alpha = band.alpha();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);

    SpectralFunction f(L, band);
    std::vector<cplx> acc(static_cast<std::size_t>(L));
    for (int term = 0; term < opt.terms; ++term) {
        const double width =
            alpha * (opt.min_width_frac +
                     (opt.max_width_frac - opt.min_width_frac) * unit(rng));
        const double max_center = alpha - width;
        const double center = max_center > 0.0 ? (2.0 * unit(rng) - 1.0) * max_center : 0.0;
        const cplx amp = std::polar(0.25 + 0.75 * unit(rng), angle(rng));
        const bool mirror = opt.allow_mirror && unit(rng) < 0.5;
        const cplx mirror_amp = std::polar(0.5 * unit(rng), angle(rng));
        for (int j = 0; j < L; ++j) {
            const double t = f.angle(j);
            cplx v = amp * bump_value((t - center) / width, opt.steepness);
            if (mirror)
                v += mirror_amp *
                     bump_value(wrap_angle(t - kPi - center) / width, opt.steepness);
            acc[static_cast<std::size_t>(j)] += v;
        }
    }
    for (int j = 0; j < L; ++j)
        if (acc[static_cast<std::size_t>(j)] != cplx{})
            f.set_in_band(j, acc[static_cast<std::size_t>(j)]);
    return f;
}

} // namespace dpw

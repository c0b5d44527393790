#include "dpw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dpw {

namespace {

using PhasorWalker = TorusGrid::Walker;

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

} // namespace

SpectralFunction::SpectralFunction(int L, BandParameters band)
    : L_(L), band_(band), values_(static_cast<std::size_t>(L), cplx{}) {
    if (L < 8 || L % 2 != 0)
        throw ConfigError("spectral grid size must be even and >= 8, got " + std::to_string(L));
}

SpectralFunction::SpectralFunction(int L, BandParameters band, std::vector<cplx> values)
    : SpectralFunction(L, band) {
    if (values.size() != static_cast<std::size_t>(L))
        throw LengthMismatch("spectral values: expected " + std::to_string(L) + " entries");
    for (int j = 0; j < L; ++j) {
        const cplx v = values[static_cast<std::size_t>(j)];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ConfigError("spectral values: non-finite entry at j=" + std::to_string(j));
        if (!band_.contains(angle(j)) && v != cplx{})
            throw ConfigError("spectral values: nonzero out-of-band entry at j=" + std::to_string(j));
    }
    values_ = std::move(values);
}

SpectralFunction SpectralFunction::masked(int L, BandParameters band, std::vector<cplx> values) {
    SpectralFunction f(L, band);
    if (values.size() != static_cast<std::size_t>(L))
        throw LengthMismatch("spectral values: expected " + std::to_string(L) + " entries");
    for (int j = 0; j < L; ++j)
        if (band.contains(f.angle(j))) f.values_[static_cast<std::size_t>(j)] = values[static_cast<std::size_t>(j)];
    return f;
}

void SpectralFunction::set_in_band(int j, cplx v) {
    if (j < 0 || j >= L_) throw ConfigError("spectral index out of range");
    if (!band_.contains(angle(j)))
        throw ConfigError("grid point t_" + std::to_string(j) + " lies outside the band");
    values_[static_cast<std::size_t>(j)] = v;
}

double SpectralFunction::grid_l2_norm() const {
    double s = 0.0;
    for (const cplx& v : values_) s += std::norm(v);
    return std::sqrt(s * (2.0 * kPi / L_));
}

double layer_l2_norm(const GridFunction& g, int n) {
    double s = 0.0;
    for (const cplx& v : g.row(n)) s += std::norm(v);
    return std::sqrt(s);
}

PWFunction synthesize(const SpectralFunction& f, const Window& window,
                      const TorusGrid& grid) {
    if (grid.size() != f.grid_size())
        throw LengthMismatch("torus grid size does not match the spectral function");
    const int L = f.grid_size();
    const BandGrid bg = BandGrid::make(grid, f.band());

    // nonzero in-band coefficients f_j / L
    std::vector<int> js;
    std::vector<cplx> coeff;
    for (int j : bg.indices) {
        const cplx v = f.value(j);
        if (v == cplx{}) continue;
        if (pole_distance(grid.angle(j)) < kPoleTol)
            throw PoleError("nonzero spectral value at grid point within pole tolerance");
        js.push_back(j);
        coeff.push_back(v / static_cast<double>(L));
    }

    GridFunction out(window);
    std::vector<cplx> acc(static_cast<std::size_t>(window.width()));
    for (int n = window.n_min; n <= window.n_max; ++n) {
        std::fill(acc.begin(), acc.end(), cplx{});
        for (std::size_t idx = 0; idx < js.size(); ++idx) {
            const double ph = std::pow(phi_base(grid.angle(js[idx])), n);
            const cplx c = coeff[idx] * ph;
            PhasorWalker walk(grid, js[idx], window.m_min);
            for (std::size_t i = 0; i < acc.size(); ++i) {
                acc[i] += c * walk.value();
                walk.advance();
            }
        }
        for (int m = window.m_min; m <= window.m_max; ++m)
            out.at(m, n) = acc[static_cast<std::size_t>(m - window.m_min)];
    }

    double norm = 0.0;
    if (window.n_min <= 0 && window.n_max >= 0) norm = layer_l2_norm(out, 0);
    return PWFunction{std::move(out), f.band(), norm};
}

PWFunction synthesize(const SpectralFunction& f, const Window& window) {
    return synthesize(f, window, TorusGrid(f.grid_size()));
}

std::vector<cplx> raw_spectrum(std::span<const cplx> layer0, int m_min,
                               const TorusGrid& grid) {
    const int L = grid.size();
    std::vector<cplx> out(static_cast<std::size_t>(L));
    for (int j = 0; j < L; ++j) {
        // e^{-i m t_j} walks with index -j
        PhasorWalker walk(grid, -j, m_min);
        cplx s{};
        for (const cplx& g : layer0) {
            s += g * walk.value();
            walk.advance();
        }
        out[static_cast<std::size_t>(j)] = s;
    }
    return out;
}

AnalyzeResult analyze(const PWFunction& F, const TorusGrid& grid, double tau_leak) {
    const Window& w = F.grid.window();
    if (!(w.n_min <= 0 && w.n_max >= 0))
        throw OutOfWindow("analyze: grid does not contain height 0");
    std::vector<cplx> hat = raw_spectrum(F.grid.row(0), w.m_min, grid);

    double total = 0.0, out_of_band = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
        const double p = std::norm(hat[static_cast<std::size_t>(j)]);
        total += p;
        if (!F.band.contains(grid.angle(j))) out_of_band += p;
    }
    if (out_of_band > tau_leak * total)
        throw BandLeakage("out-of-band mass " + std::to_string(out_of_band) +
                          " exceeds " + std::to_string(tau_leak) + " x total " +
                          std::to_string(total));
    return AnalyzeResult{SpectralFunction::masked(grid.size(), F.band, std::move(hat)),
                         out_of_band, total};
}

// The projector multiplies by the plain indicator of the band (boundary
// grid points included, weight one): that is the orthogonal projection in
// l^2 of the periodic model and it is exactly idempotent, which the
// frame-algorithm contraction relies on. Trapezoid edge weights belong to
// the kernel quadrature, not here.
std::vector<cplx> project_layer0(std::span<const cplx> g, int m_min,
                                 const BandParameters& band, const TorusGrid& grid) {
    const int L = grid.size();
    const int width = static_cast<int>(g.size());
    if (width == 0) throw LengthMismatch("project: empty input sequence");
    if (L < 4 * width)
        throw GridTooCoarse("grid size " + std::to_string(L) + " < 4 x window width " +
                            std::to_string(width));
    const BandGrid bg = BandGrid::make(grid, band);

    // forward transform at in-band grid points only; the mask kills the rest
    std::vector<cplx> masked(bg.indices.size());
    for (std::size_t idx = 0; idx < bg.indices.size(); ++idx) {
        PhasorWalker walk(grid, -bg.indices[idx], m_min);
        cplx s{};
        for (const cplx& v : g) {
            s += v * walk.value();
            walk.advance();
        }
        masked[idx] = s;
    }

    // inverse transform back onto the window
    std::vector<cplx> out(g.size());
    for (std::size_t idx = 0; idx < bg.indices.size(); ++idx) {
        const cplx c = masked[idx] / static_cast<double>(L);
        PhasorWalker walk(grid, bg.indices[idx], m_min);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += c * walk.value();
            walk.advance();
        }
    }
    return out;
}

PWFunction project(std::span<const cplx> g, const Window& window,
                   const BandParameters& band, const TorusGrid& grid) {
    const int L = grid.size();
    const int width = window.width();
    if (g.size() != static_cast<std::size_t>(width))
        throw LengthMismatch("project: sequence length " + std::to_string(g.size()) +
                             " does not match window width " + std::to_string(width));
    if (L < 4 * width)
        throw GridTooCoarse("grid size " + std::to_string(L) + " < 4 x window width " +
                            std::to_string(width));
    const BandGrid bg = BandGrid::make(grid, band);

    std::vector<cplx> hat(static_cast<std::size_t>(L));
    for (std::size_t idx = 0; idx < bg.indices.size(); ++idx) {
        PhasorWalker walk(grid, -bg.indices[idx], window.m_min);
        cplx s{};
        for (const cplx& v : g) {
            s += v * walk.value();
            walk.advance();
        }
        hat[static_cast<std::size_t>(bg.indices[idx])] = s;
    }
    return synthesize(SpectralFunction::masked(L, band, std::move(hat)), window, grid);
}

namespace {

// (1/L) sum_j w_j e_{t_j}(d, h) with trapezoid band weights.
cplx kernel_sum(int d, int h, const BandGrid& bg, const TorusGrid& grid) {
    cplx s{};
    for (std::size_t idx = 0; idx < bg.indices.size(); ++idx) {
        const int j = bg.indices[idx];
        const double ph = h == 0 ? 1.0 : std::pow(phi_base(grid.angle(j)), h);
        s += bg.weights[idx] * ph * grid.phasor(j, d);
    }
    return s / static_cast<double>(grid.size());
}

} // namespace

cplx kernel(const KernelQuery& q, const BandParameters& band, const TorusGrid& grid) {
    const BandGrid bg = BandGrid::make(grid, band);
    return kernel_sum(q.probe.m - q.center.m, q.probe.n + q.center.n, bg, grid);
}

double kernel_diagonal_closed_form(const BandParameters& band, int u_minus_m) {
    if (u_minus_m % 2 != 0) return 0.0;
    const double a = band.alpha();
    return (a / kPi) * 2.0 * sinc(a * u_minus_m);
}

cplx reproduce(const PWFunction& F, LatticePoint p, const TorusGrid& grid) {
    const Window& w = F.grid.window();
    if (!(w.n_min <= 0 && w.n_max >= 0))
        throw OutOfWindow("reproduce: grid does not contain height 0");
    const BandGrid bg = BandGrid::make(grid, F.band);
    cplx s{};
    for (int u = w.m_min; u <= w.m_max; ++u)
        s += F.grid.at(u, 0) * std::conj(kernel_sum(u - p.m, p.n, bg, grid));
    return s;
}

PlancherelPolyaResult plancherel_polya_check(const PWFunction& F, int n) {
    const double lhs = layer_l2_norm(F.grid, n);
    const double growth = std::pow(F.band.growth_base(), std::abs(n));
    const double bound = growth * growth * F.layer0_norm * F.layer0_norm;
    return {lhs * lhs, bound, lhs * lhs <= bound * (1.0 + 1e-8)};
}

EnvelopeFit growth_envelope_check(const PWFunction& F, int k, double eps) {
    if (!(eps > 0.0) || F.band.alpha() + eps >= kPi / 2)
        throw BadEpsilon("need eps > 0 and alpha + eps < pi/2");
    const double g = BandParameters(F.band.alpha() + eps).growth_base();
    const Window& w = F.grid.window();
    const int half_m = std::max(std::abs(w.m_min), std::abs(w.m_max)) / 2;

    double c = 0.0, c_inner = 0.0;
    for (int n = w.n_min; n <= w.n_max; ++n) {
        const double gn = std::pow(g, std::abs(n));
        for (int m = w.m_min; m <= w.m_max; ++m) {
            const double fit =
                std::abs(F.grid.at(m, n)) * std::pow(1.0 + std::abs(m), k) / gn;
            c = std::max(c, fit);
            if (std::abs(m) <= half_m) c_inner = std::max(c_inner, fit);
        }
    }
    return {c, c_inner, std::isfinite(c)};
}

AnchorIdentityResult anchor_identity_check(const PWFunction& F, int n) {
    const Window& w = F.grid.window();
    if (n < 1) throw OutOfWindow("anchor identity needs n >= 1");
    if (!w.contains(0, n) || !w.contains(0, n - 1))
        throw OutOfWindow("anchor identity: heights n, n-1 not in window");
    if (w.m_max < 2) throw OutOfWindow("anchor identity: window too narrow");

    // height-0 rapid decay gate: the k=4 envelope fit must not be driven
    // by the outer half of the window
    double c4 = 0.0, c4_inner = 0.0;
    for (int m = 1; m <= w.m_max; ++m) {
        const double fit = std::abs(F.grid.at(m, 0)) * std::pow(1.0 + m, 4);
        c4 = std::max(c4, fit);
        if (m <= w.m_max / 2) c4_inner = std::max(c4_inner, fit);
    }
    if (c4 > 2.0 * c4_inner)
        throw SlowDecay("height-0 envelope fit at k=4 does not stabilize");

    const cplx lhs = F.grid.at(0, n);
    const cplx i{0.0, 1.0};
    cplx series{};
    cplx ik = i;
    double row_max = 0.0;
    for (int k = 1; k <= w.m_max; ++k) {
        series += ik * F.grid.at(k, n - 1);
        row_max = std::max(row_max, std::abs(F.grid.at(k, n - 1)));
        ik *= i;
    }
    const cplx rhs = -i * F.grid.at(0, n - 1) - 2.0 * i * series;

    // tail bound from the k=4 envelope fitted on the row actually summed
    double c_row = 0.0;
    for (int k = 1; k <= w.m_max; ++k)
        c_row = std::max(c_row, std::abs(F.grid.at(k, n - 1)) * std::pow(1.0 + k, 4));
    const double tail = 2.0 * c_row / (3.0 * std::pow(1.0 + w.m_max, 3)) + 1e-12 * row_max;
    return {lhs, rhs, tail, std::abs(lhs - rhs) <= tail};
}

DecimationResult decimate_check(const PWFunction& F, Parity parity,
                                const TorusGrid& grid) {
    const Window& w = F.grid.window();
    if (!(w.n_min <= 0 && w.n_max >= 0))
        throw OutOfWindow("decimate: grid does not contain height 0");
    if (w.width() < 32) throw WindowTooSmall("decimate: window width < 32");

    const int rem = parity == Parity::Even ? 0 : 1;
    std::vector<cplx> dec;
    int first_m = 0;
    for (int m = w.m_min; m <= w.m_max; ++m) {
        if (((m % 2) + 2) % 2 != rem) continue;
        if (dec.empty()) first_m = m;
        dec.push_back(F.grid.at(m, 0));
    }
    // decimated index k with m = 2k (+1): value at k corresponds to lattice
    // index (m - rem) / 2
    const int k_min = (first_m - rem) / 2;

    std::vector<cplx> hat = raw_spectrum(dec, k_min, grid);
    const double alpha = F.band.alpha();
    const double cutoff = 2.0 * alpha;
    double total = 0.0, outside = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
        const double p = std::norm(hat[static_cast<std::size_t>(j)]);
        total += p;
        if (std::abs(grid.angle(j)) > cutoff + kBandBoundaryTol) outside += p;
    }

    const double omega = 2.0 * std::sin(alpha) * std::sin(alpha);
    const double back = 2.0 * std::asin(std::sqrt(omega / 2.0));
    return {outside, total, omega, std::abs(back - cutoff)};
}

} // namespace dpw

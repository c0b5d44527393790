#include "dpw/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dpw {

namespace {

int first_of_parity(int m_min, int rem) {
    const int r = ((m_min % 2) + 2) % 2;
    return r == rem ? m_min : m_min + 1;
}

int last_of_parity(int m_max, int rem) {
    const int r = ((m_max % 2) + 2) % 2;
    return r == rem ? m_max : m_max - 1;
}

int max_gap(const std::vector<int>& pts) {
    int g = 0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        g = std::max(g, pts[k + 1] - pts[k]);
    return g;
}

} // namespace

SamplingSet::SamplingSet(std::vector<int> lambda, int m_min, int m_max)
    : lambda_(std::move(lambda)), m_min_(m_min), m_max_(m_max) {
    if (m_max < m_min + 1)
        throw WindowTooSmall("sampling window must contain both parities");
    if (lambda_.empty()) throw EmptyParity("empty sampling sequence");
    for (std::size_t k = 0; k < lambda_.size(); ++k) {
        if (lambda_[k] < m_min || lambda_[k] > m_max)
            throw OutOfWindow("sampling point " + std::to_string(lambda_[k]) +
                              " outside [" + std::to_string(m_min) + "," +
                              std::to_string(m_max) + "]");
        if (k > 0 && lambda_[k] <= lambda_[k - 1])
            throw ConfigError("sampling sequence must be strictly increasing");
        (lambda_[k] % 2 == 0 ? evens_ : odds_).push_back(lambda_[k]);
    }
    if (evens_.empty()) throw EmptyParity("no even sampling points");
    if (odds_.empty()) throw EmptyParity("no odd sampling points");

    const int first_even = first_of_parity(m_min, 0);
    const int last_even = last_of_parity(m_max, 0);
    const int first_odd = first_of_parity(m_min, 1);
    const int last_odd = last_of_parity(m_max, 1);
    if (evens_.front() != first_even || evens_.back() != last_even)
        throw BoundaryGap("even class must contain the window-edge even points " +
                          std::to_string(first_even) + " and " + std::to_string(last_even));
    if (odds_.front() != first_odd || odds_.back() != last_odd)
        throw BoundaryGap("odd class must contain the window-edge odd points " +
                          std::to_string(first_odd) + " and " + std::to_string(last_odd));

    delta_e_ = max_gap(evens_);
    delta_o_ = max_gap(odds_);
}

SamplingSet gaps(std::vector<int> lambda, int m_min, int m_max) {
    return SamplingSet(std::move(lambda), m_min, m_max);
}

bool sufficient_condition(const SamplingSet& s, const BandParameters& band) {
    return s.delta() < kPi / band.alpha();
}

bool necessary_condition(const SamplingSet& s, const BandParameters& band) {
    const double lhs = (s.delta_e() > 0 ? 1.0 / s.delta_e() : 1.0) +
                       (s.delta_o() > 0 ? 1.0 / s.delta_o() : 1.0);
    return lhs >= 2.0 * band.alpha() / kPi - 1e-12;
}

double beurling_lower_density(const SamplingSet& s, int r_max) {
    const int radius = (s.m_max() - s.m_min()) / 2;
    if (r_max < 1 || r_max > radius / 2)
        throw WindowTooSmall("density radius " + std::to_string(r_max) +
                             " exceeds half the window radius " + std::to_string(radius));
    const std::vector<int>& pts = s.lambda();
    double best = 1.0;
    for (int m = s.m_min() + r_max; m <= s.m_max() - r_max; ++m) {
        const auto lo = std::lower_bound(pts.begin(), pts.end(), m - r_max);
        const auto hi = std::upper_bound(pts.begin(), pts.end(), m + r_max);
        const double ratio = static_cast<double>(hi - lo) / (2.0 * r_max + 1.0);
        best = std::min(best, ratio);
    }
    return best;
}

std::vector<std::pair<int, double>> density_trajectory(const SamplingSet& s, int r_max) {
    std::vector<std::pair<int, double>> out;
    for (int r = 8; r <= r_max; r += 8)
        out.emplace_back(r, beurling_lower_density(s, r));
    return out;
}

namespace {

// Linear interpolation of one parity class over its window span.
void interpolate_parity(std::span<const cplx> values, const std::vector<int>& pts,
                        int m_min, int m_max, int rem, std::vector<cplx>& out) {
    const int first = first_of_parity(m_min, rem);
    const int last = last_of_parity(m_max, rem);
    if (first > last) return;
    if (first < pts.front() || last > pts.back())
        throw CoverageGap("window parity points beyond the sampled range");
    std::size_t j = 0;
    for (int m = first; m <= last; m += 2) {
        while (j + 1 < pts.size() && pts[j + 1] <= m) ++j;
        if (pts[j] == m) {
            out[static_cast<std::size_t>(m - m_min)] = values[j];
        } else {
            const double frac =
                static_cast<double>(m - pts[j]) / static_cast<double>(pts[j + 1] - pts[j]);
            out[static_cast<std::size_t>(m - m_min)] =
                values[j] + (values[j + 1] - values[j]) * frac;
        }
    }
}

} // namespace

std::vector<cplx> interpolate_T(std::span<const cplx> samples, const SamplingSet& s,
                                int m_min, int m_max) {
    if (samples.size() != s.lambda().size())
        throw LengthMismatch("samples must cover Lambda: expected " +
                             std::to_string(s.lambda().size()) + " values");
    // split sample values by parity, in order
    std::vector<cplx> ve, vo;
    for (std::size_t k = 0; k < samples.size(); ++k)
        (s.lambda()[k] % 2 == 0 ? ve : vo).push_back(samples[k]);

    std::vector<cplx> out(static_cast<std::size_t>(m_max - m_min + 1));
    interpolate_parity(ve, s.evens(), m_min, m_max, 0, out);
    interpolate_parity(vo, s.odds(), m_min, m_max, 1, out);
    return out;
}

PWFunction approx_A(std::span<const cplx> samples, const SamplingSet& s,
                    const BandParameters& band, const Window& window,
                    const TorusGrid& grid) {
    const std::vector<cplx> tf = interpolate_T(samples, s, window.m_min, window.m_max);
    return project(tf, window, band, grid);
}

namespace {

// The iteration runs on the L-periodic lattice with the iterate held as
// its in-band spectrum. Out-of-window samples of a PW function are taken
// as zero (their size is bounded by the decay envelope), which keeps the
// interpolation cells covering the whole period and preserves the
// contraction of I - A exactly; compressing the operator to the window
// instead would leak the projector's ringing past the window edge and
// floor the residuals around 1e-5.
struct PeriodicIteration {
    const SamplingSet& s;
    const Window& window;
    const TorusGrid& grid;
    BandGrid bg;

    PeriodicIteration(const SamplingSet& s_, const Window& w_, const TorusGrid& g_,
                      const BandParameters& band)
        : s(s_), window(w_), grid(g_), bg(BandGrid::make(g_, band)) {}

    // masked DFT of a window-supported sequence
    std::vector<cplx> band_spectrum(std::span<const cplx> g) const {
        std::vector<cplx> hat(bg.indices.size());
        for (std::size_t idx = 0; idx < bg.indices.size(); ++idx) {
            TorusGrid::Walker walk(grid, -bg.indices[idx], window.m_min);
            cplx acc{};
            for (const cplx& v : g) {
                acc += v * walk.value();
                walk.advance();
            }
            hat[idx] = acc;
        }
        return hat;
    }

    // window values of an in-band spectrum
    std::vector<cplx> window_values(std::span<const cplx> hat) const {
        std::vector<cplx> out(static_cast<std::size_t>(window.width()));
        for (std::size_t idx = 0; idx < bg.indices.size(); ++idx) {
            const cplx c = hat[idx] / static_cast<double>(grid.size());
            TorusGrid::Walker walk(grid, bg.indices[idx], window.m_min);
            for (std::size_t i = 0; i < out.size(); ++i) {
                out[i] += c * walk.value();
                walk.advance();
            }
        }
        return out;
    }

    // ||phi|| on the period from its in-band spectrum (Parseval)
    double norm(std::span<const cplx> hat) const {
        double t = 0.0;
        for (const cplx& v : hat) t += std::norm(v);
        return std::sqrt(t / grid.size());
    }
};

} // namespace

std::pair<PWFunction, ReconstructionReport> reconstruct(
    std::span<const cplx> samples, const SamplingSet& s, const BandParameters& band,
    const Window& window, const TorusGrid& grid, double tol, int max_iter) {
    if (window.m_min != s.m_min() || window.m_max != s.m_max())
        throw ConfigError("reconstruction window must match the sampling window");
    if (grid.size() < 4 * window.width())
        throw GridTooCoarse("grid size " + std::to_string(grid.size()) +
                            " < 4 x window width " + std::to_string(window.width()));

    ReconstructionReport rep;
    rep.guarantee = sufficient_condition(s, band);
    rep.delta = s.delta();
    rep.tol = tol;
    const int delta_eff = std::max(rep.delta, 2);
    const double sa = std::sin(band.alpha());
    const double sd = std::sin(kPi / delta_eff);
    rep.bound_ratio = (sa * sa) / (sd * sd);
    rep.frame_lower = rep.bound_ratio < 1.0
                          ? (1.0 - rep.bound_ratio) * (1.0 - rep.bound_ratio) /
                                (4.0 * delta_eff)
                          : 0.0;

    const PeriodicIteration it(s, window, grid, band);
    const int m_min = window.m_min;

    // phi_0 = A F from the samples
    std::vector<cplx> hat =
        it.band_spectrum(interpolate_T(samples, s, m_min, window.m_max));
    std::vector<cplx> acc = hat;
    const double r0 = it.norm(hat);
    rep.residuals.push_back(r0);

    double r_last = r0;
    std::vector<cplx> on_lambda(s.lambda().size());
    while (rep.iterations < max_iter && r0 > 0.0) {
        if (r_last <= tol * r0) break;
        // phi_{k+1} = phi_k - A phi_k = P ((I - T) phi_k restricted to the window)
        std::vector<cplx> vals = it.window_values(hat);
        for (std::size_t k = 0; k < s.lambda().size(); ++k)
            on_lambda[k] = vals[static_cast<std::size_t>(s.lambda()[k] - m_min)];
        const std::vector<cplx> tphi = interpolate_T(on_lambda, s, m_min, window.m_max);
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] -= tphi[i];
        std::vector<cplx> next = it.band_spectrum(vals);
        const double r_next = it.norm(next);

        // numerical floor: the residual stops contracting without diverging
        if (rep.iterations >= 1 && r_next > 0.9 * r_last && r_next <= 1.05 * r_last) {
            rep.stagnated = true;
            break;
        }
        hat = std::move(next);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += hat[i];
        ++rep.iterations;
        if (rep.iterations >= 2 && r_last > 0.0)
            rep.measured_ratio = std::max(rep.measured_ratio, r_next / r_last);
        r_last = r_next;
        if (r_last > 1e6 * r0) break; // divergence guard for outside-guarantee runs
        rep.residuals.push_back(r_last);
    }
    if (rep.residuals.size() < static_cast<std::size_t>(rep.iterations) + 1)
        rep.residuals.push_back(r_last);

    rep.converged = r0 == 0.0 || r_last <= tol * r0;
    if (rep.guarantee && !rep.converged &&
        !(rep.stagnated && r_last <= std::sqrt(tol) * r0))
        throw NoConvergence("residual " + std::to_string(r_last) + " above tol * " +
                            std::to_string(r0) + " after " +
                            std::to_string(rep.iterations) + " iterations");

    // assemble the full masked spectrum and synthesize the output grid
    std::vector<cplx> full(static_cast<std::size_t>(grid.size()));
    for (std::size_t idx = 0; idx < it.bg.indices.size(); ++idx)
        full[static_cast<std::size_t>(it.bg.indices[idx])] = acc[idx];
    PWFunction out = synthesize(
        SpectralFunction::masked(grid.size(), band, std::move(full)), window, grid);

    const double out_norm = out.layer0_norm;
    if (out_norm > 0.0) {
        double rho = rep.measured_ratio;
        if (rho <= 0.0 || rho >= 1.0)
            rho = rep.bound_ratio < 1.0 ? rep.bound_ratio : 0.999;
        rep.final_error = r_last * rho / (1.0 - rho) / out_norm;
        double on = 0.0;
        for (int lam : s.lambda()) on += std::norm(out.grid.at(lam, 0));
        rep.frame_ratio_empirical = on / (out_norm * out_norm);
    }
    return {std::move(out), rep};
}

SamplingInequalityResult sampling_inequality_check(const PWFunction& F,
                                                   const SamplingSet& s) {
    SamplingInequalityResult res;
    const double norm2 = F.layer0_norm * F.layer0_norm;
    if (norm2 == 0.0) {
        res.zero_function = true;
        return res;
    }
    double on = 0.0;
    for (int lam : s.lambda()) on += std::norm(F.grid.at(lam, 0));
    res.lower_ratio = res.upper_ratio = on / norm2;
    res.ok_upper = res.upper_ratio <= 1.0 + 1e-10;
    return res;
}

BernsteinResult bernstein_check(const PWFunction& F, int order) {
    if (order != 1 && order != 2) throw ConfigError("bernstein order must be 1 or 2");
    const Window& w = F.grid.window();
    if (!(w.n_min <= 0 && w.n_max >= 0))
        throw OutOfWindow("bernstein: grid does not contain height 0");
    const int span = order == 1 ? 2 : 4;
    if (w.width() <= span) throw OutOfWindow("bernstein: window too narrow");

    double lhs2 = 0.0;
    for (int m = w.m_min; m + span <= w.m_max; ++m) {
        cplx d;
        if (order == 1)
            d = F.grid.at(m, 0) - F.grid.at(m + 2, 0);
        else
            d = F.grid.at(m + 4, 0) - 2.0 * F.grid.at(m + 2, 0) + F.grid.at(m, 0);
        lhs2 += std::norm(d);
    }
    const double sa = std::sin(F.band.alpha());
    const double factor = order == 1 ? 2.0 * sa : 4.0 * sa * sa;
    const double lhs = std::sqrt(lhs2);
    const double bound = factor * F.layer0_norm;
    return {lhs, bound, lhs <= bound * (1.0 + 1e-8)};
}

WirtingerResult wirtinger_check(std::span<const cplx> s) {
    if (s.size() < 3) throw LengthMismatch("wirtinger needs N >= 2, i.e. at least 3 values");
    if (s.front() != cplx{} || s.back() != cplx{})
        throw BadEndpoints("sequence must vanish exactly at both endpoints");
    const std::size_t N = s.size() - 1;
    double lhs = 0.0;
    for (const cplx& v : s) lhs += std::norm(v);
    double d2 = 0.0;
    for (std::size_t l = 0; l + 2 <= N; ++l)
        d2 += std::norm(s[l + 2] - 2.0 * s[l + 1] + s[l]);
    const double sn = std::sin(kPi / (2.0 * static_cast<double>(N)));
    const double rhs = d2 / (16.0 * sn * sn * sn * sn);
    return {lhs, rhs, lhs <= rhs * (1.0 + 1e-12)};
}

std::vector<int> full_lambda(int m_min, int m_max) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(m_max - m_min + 1));
    for (int m = m_min; m <= m_max; ++m) out.push_back(m);
    return out;
}

namespace {

void check_even_delta(int delta, const char* name) {
    if (delta < 2 || delta % 2 != 0)
        throw ConfigError(std::string(name) + " must be a positive even integer, got " +
                          std::to_string(delta));
}

long long ceil_div(long long a, long long b) {
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

// Progression r + delta Z clipped to the window, with the window-edge
// points of the parity added so every interpolation cell is interior.
std::vector<int> clipped_progression(int m_min, int m_max, int delta, int rem, int anchor) {
    const int first = first_of_parity(m_min, rem);
    const int last = last_of_parity(m_max, rem);
    std::vector<int> out;
    const long long start = anchor + ceil_div(first - anchor, delta) * delta;
    for (long long p = start; p <= last; p += delta) out.push_back(static_cast<int>(p));
    if (out.empty() || out.front() != first) out.insert(out.begin(), first);
    if (out.back() != last) out.push_back(last);
    return out;
}

} // namespace

std::vector<int> two_progression_lambda(int m_min, int m_max, int delta_e, int delta_o,
                                        int odd_offset) {
    check_even_delta(delta_e, "delta_e");
    check_even_delta(delta_o, "delta_o");
    if (((odd_offset % 2) + 2) % 2 != 1)
        throw ConfigError("odd_offset must be odd, got " + std::to_string(odd_offset));
    std::vector<int> evens = clipped_progression(m_min, m_max, delta_e, 0, 0);
    std::vector<int> odds = clipped_progression(m_min, m_max, delta_o, 1, odd_offset);
    std::vector<int> out;
    out.reserve(evens.size() + odds.size());
    std::merge(evens.begin(), evens.end(), odds.begin(), odds.end(), std::back_inserter(out));
    return out;
}

std::vector<int> random_gaps_lambda(int m_min, int m_max, int delta_e, int delta_o,
                                    std::mt19937_64& rng) {
    check_even_delta(delta_e, "delta_e");
    check_even_delta(delta_o, "delta_o");
    auto walk = [&](int rem, int delta) {
        const int first = first_of_parity(m_min, rem);
        const int last = last_of_parity(m_max, rem);
        std::uniform_int_distribution<int> gap_steps(1, delta / 2);
        std::vector<int> out{first};
        while (out.back() < last) {
            int next = out.back() + 2 * gap_steps(rng);
            if (next > last) next = last;
            out.push_back(next);
        }
        return out;
    };
    std::vector<int> evens = walk(0, delta_e);
    std::vector<int> odds = walk(1, delta_o);
    std::vector<int> out;
    out.reserve(evens.size() + odds.size());
    std::merge(evens.begin(), evens.end(), odds.begin(), odds.end(), std::back_inserter(out));
    return out;
}

} // namespace dpw

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "dpw/spectral.hpp"

namespace dpw {

// Integer sampling sequence inside a height-0 window, split by parity.
// Construction enforces: strictly increasing points inside [m_min, m_max],
// both parity classes nonempty, and each class containing the first and
// last same-parity point of the window (so every interpolation cell is
// interior).
class SamplingSet {
public:
    SamplingSet(std::vector<int> lambda, int m_min, int m_max);

    const std::vector<int>& lambda() const { return lambda_; }
    const std::vector<int>& evens() const { return evens_; }
    const std::vector<int>& odds() const { return odds_; }

    int delta_e() const { return delta_e_; }
    int delta_o() const { return delta_o_; }
    int delta() const { return delta_e_ > delta_o_ ? delta_e_ : delta_o_; }

    int m_min() const { return m_min_; }
    int m_max() const { return m_max_; }

private:
    std::vector<int> lambda_, evens_, odds_;
    int delta_e_ = 0, delta_o_ = 0;
    int m_min_ = 0, m_max_ = 0;
};

// Factory matching the operation name: parity split plus gap scan.
SamplingSet gaps(std::vector<int> lambda, int m_min, int m_max);

// max(delta_e, delta_o) < pi / alpha.
bool sufficient_condition(const SamplingSet& s, const BandParameters& band);

// 1/delta_e + 1/delta_o >= 2 alpha / pi (up to 1e-12); necessary for
// two-progression sampling sets, advisory otherwise.
bool necessary_condition(const SamplingSet& s, const BandParameters& band);

// Finite-radius proxy of the lower Beurling density: the minimum over m of
// #(Lambda cap [m-r, m+r]) / (2r+1) at r = r_max, with the ball kept
// inside the window.
double beurling_lower_density(const SamplingSet& s, int r_max);

// Density values at r = 8, 16, ..., r_max.
std::vector<std::pair<int, double>> density_trajectory(const SamplingSet& s, int r_max);

// Parity-wise piecewise-linear interpolation T; output covers every
// integer of [m_min, m_max] and matches the samples on Lambda exactly.
std::vector<cplx> interpolate_T(std::span<const cplx> samples, const SamplingSet& s,
                                int m_min, int m_max);

// A = P T: interpolation followed by orthogonal projection onto the band.
PWFunction approx_A(std::span<const cplx> samples, const SamplingSet& s,
                    const BandParameters& band, const Window& window,
                    const TorusGrid& grid);

struct ReconstructionReport {
    int iterations = 0;
    std::vector<double> residuals;      // ||phi_0||, ||phi_1||, ...
    double measured_ratio = 0.0;        // max residual ratio over k >= 1
    double bound_ratio = 0.0;           // sin^2(alpha) / sin^2(pi/delta)
    double final_error = 0.0;           // geometric tail estimate, relative
    double frame_lower = 0.0;           // analytic (1 - bound_ratio)^2 / (4 delta)
    double frame_ratio_empirical = 0.0; // sum_Lambda |F|^2 / ||F||^2 of the result
    bool guarantee = false;             // sufficient_condition held
    bool converged = false;             // residual reached tol * ||phi_0||
    bool stagnated = false;             // residual hit the window-truncation floor
    int delta = 0;
    double tol = 0.0;
};

// Frame-algorithm reconstruction phi_0 = A F, phi_{k+1} = phi_k - A phi_k,
// F = sum phi_k, iterated until ||phi_k|| <= tol ||phi_0|| or max_iter.
//
// On the truncated window the projector is idempotent only up to the mass
// of F beyond the window, so residuals bottom out at that floor; the
// iteration detects the stall (ratio in (0.9, 1.05] after the first two
// steps) and stops there. Throws NoConvergence only when the sufficient
// condition held and the residual neither reached tol nor a floor below
// sqrt(tol) * ||phi_0||.
std::pair<PWFunction, ReconstructionReport> reconstruct(
    std::span<const cplx> samples, const SamplingSet& s, const BandParameters& band,
    const Window& window, const TorusGrid& grid, double tol = 1e-9, int max_iter = 200);

struct SamplingInequalityResult {
    double lower_ratio = 0.0; // sum_Lambda |F(lambda,0)|^2 / ||F||^2
    double upper_ratio = 0.0; // same number, checked against 1
    bool ok_upper = false;    // upper_ratio <= 1 + 1e-10
    bool zero_function = false;
};
SamplingInequalityResult sampling_inequality_check(const PWFunction& F,
                                                   const SamplingSet& s);

struct BernsteinResult {
    double lhs;   // ||nabla_2 F|| (order 1) or ||nabla_2^2 F|| (order 2)
    double bound; // 2 sin(alpha) ||F|| or 4 sin^2(alpha) ||F||
    bool ok;
};
BernsteinResult bernstein_check(const PWFunction& F, int order);

struct WirtingerResult {
    double lhs; // sum |s(l)|^2
    double rhs; // sum |nabla_1^2 s(l)|^2 / (16 sin^4(pi/2N))
    bool ok;
};
WirtingerResult wirtinger_check(std::span<const cplx> s);

// Lambda generators.
std::vector<int> full_lambda(int m_min, int m_max);
std::vector<int> two_progression_lambda(int m_min, int m_max, int delta_e, int delta_o,
                                        int odd_offset);
// Gaps drawn uniformly from {2, 4, ..., delta} per parity until the window
// is covered; endpoints clamped to the window-edge parity points.
std::vector<int> random_gaps_lambda(int m_min, int m_max, int delta_e, int delta_o,
                                    std::mt19937_64& rng);

} // namespace dpw

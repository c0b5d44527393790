#pragma once

#include <span>
#include <vector>

#include "dpw/lattice.hpp"
#include "dpw/torus_grid.hpp"

namespace dpw {

// Relative out-of-band spectral mass above which a sequence is rejected
// as not (numerically) band-limited.
constexpr double kLeakTol = 1e-8;

// Complex samples on the uniform torus grid with support confined to the
// band D_alpha. Out-of-band entries are identically zero.
class SpectralFunction {
public:
    SpectralFunction(int L, BandParameters band);

    // Strict constructor: every out-of-band entry must be exactly zero.
    SpectralFunction(int L, BandParameters band, std::vector<cplx> values);

    // Zeroes out-of-band entries instead of rejecting them.
    static SpectralFunction masked(int L, BandParameters band, std::vector<cplx> values);

    int grid_size() const { return L_; }
    const BandParameters& band() const { return band_; }
    double angle(int j) const { return -kPi + (2.0 * kPi * j) / L_; }

    const std::vector<cplx>& values() const { return values_; }
    cplx value(int j) const { return values_.at(static_cast<std::size_t>(j)); }
    void set_in_band(int j, cplx v); // rejects out-of-band targets

    // Quadrature L^2(T) norm sqrt((2 pi / L) sum |f_j|^2).
    double grid_l2_norm() const;

private:
    int L_;
    BandParameters band_;
    std::vector<cplx> values_;
};

// Truncated Paley-Wiener function: grid values, band, and the height-0
// l^2 norm over the window.
struct PWFunction {
    GridFunction grid;
    BandParameters band;
    double layer0_norm;
};

// sqrt(sum_m |F(m, n)|^2) over the window row at height n.
double layer_l2_norm(const GridFunction& g, int n);

// F(m,n) = (1/L) sum_{t_j in band} f(t_j) e_{t_j}(m,n). The result is a
// finite linear combination of discrete exponentials, hence exactly
// discrete entire whatever L is.
PWFunction synthesize(const SpectralFunction& f, const Window& window,
                      const TorusGrid& grid);
PWFunction synthesize(const SpectralFunction& f, const Window& window);

// Windowed transform f(t_j) = sum_m layer0[m] e^{-i m t_j} for all j,
// with no band mask applied.
std::vector<cplx> raw_spectrum(std::span<const cplx> layer0, int m_min,
                               const TorusGrid& grid);

struct AnalyzeResult {
    SpectralFunction spectrum;
    double out_of_band_mass; // sum of |f_j|^2 over out-of-band j
    double total_mass;       // sum of |f_j|^2 over all j
};

// Recovers the spectrum from the height-0 layer, masks it to the band and
// reports the discarded mass. Throws BandLeakage when the out-of-band
// mass exceeds tau_leak times the total.
AnalyzeResult analyze(const PWFunction& F, const TorusGrid& grid,
                      double tau_leak = kLeakTol);

// Orthogonal projection of a height-0 window sequence onto the band:
// forward transform, band mask with trapezoid edge weights, resynthesis
// over the requested window. Requires L >= 4 * (m-width of g).
PWFunction project(std::span<const cplx> g, const Window& window,
                   const BandParameters& band, const TorusGrid& grid);

// Height-0 fast path of project (same transform and mask, no grid build).
std::vector<cplx> project_layer0(std::span<const cplx> g, int m_min,
                                 const BandParameters& band, const TorusGrid& grid);

struct KernelQuery {
    LatticePoint center; // (m, n)
    LatticePoint probe;  // (u, v)
};

// Reproducing kernel by band quadrature with trapezoid edge weights:
// K_{(m,n)}(u,v) = (1/L) sum_j w_j e_{t_j}(u-m, v+n).
cplx kernel(const KernelQuery& q, const BandParameters& band, const TorusGrid& grid);

// Closed form of the kernel at v = -n:
// (alpha/pi) (1 + (-1)^{u-m}) sinc(alpha (u-m)), sinc(0) = 1.
double kernel_diagonal_closed_form(const BandParameters& band, int u_minus_m);

// Cardinal-series evaluation sum_u F(u,0) conj(K_{(m,n)}(u,0)) over the
// window; agrees with the grid value at p within truncation + quadrature
// tolerance. The conjugate makes the sum reproduce height n rather than
// height -n (phi_t(-n) = phi_{-t}(n)).
cplx reproduce(const PWFunction& F, LatticePoint p, const TorusGrid& grid);

struct PlancherelPolyaResult {
    double lhs;   // sum_m |F(m,n)|^2
    double bound; // growth_base^{2|n|} ||F||^2
    bool ok;
};
PlancherelPolyaResult plancherel_polya_check(const PWFunction& F, int n);

struct EnvelopeFit {
    double c;       // smallest c with |F(m,n)| <= c (1+|m|)^{-k} g(alpha+eps)^{|n|}
    double c_inner; // same fit restricted to the inner half window
    bool ok;        // finite fit (always true on finite data; diagnostic)
};
EnvelopeFit growth_envelope_check(const PWFunction& F, int k, double eps);

struct AnchorIdentityResult {
    cplx lhs;              // F(0, n)
    cplx rhs;              // -i F(0,n-1) - 2i sum_{k>=1} i^k F(k,n-1), truncated
    double tail_tolerance; // envelope bound on the discarded tail
    bool ok;
};
AnchorIdentityResult anchor_identity_check(const PWFunction& F, int n);

enum class Parity { Even, Odd };

struct DecimationResult {
    double out_of_band_mass;    // decimated spectral mass outside |t| <= 2 alpha
    double total_mass;
    double omega_alpha;         // 2 sin^2(alpha)
    double band_angle_residual; // |2 arcsin(sqrt(omega/2)) - 2 alpha|
};

// Parity decimation F^e(m) = F(2m), F^o(m) = F(2m+1) of the height-0
// layer, with the spectral support check of the Pesenson comparison.
DecimationResult decimate_check(const PWFunction& F, Parity parity,
                                const TorusGrid& grid);

} // namespace dpw

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "dpw/errors.hpp"

namespace dpw {

using cplx = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279502884;

// Distance below which a frequency counts as one of the poles t = +-pi/2.
constexpr double kPoleTol = 1e-9;

// Grid points within this distance of a band endpoint count as in-band.
constexpr double kBandBoundaryTol = 1e-12;

struct LatticePoint {
    int m = 0; // horizontal coordinate
    int n = 0; // height
};

// Inclusive rectangular window [m_min, m_max] x [n_min, n_max].
struct Window {
    int m_min = 0;
    int m_max = 0;
    int n_min = 0;
    int n_max = 0;

    int width() const { return m_max - m_min + 1; }
    int height() const { return n_max - n_min + 1; }
    bool contains(int m, int n) const {
        return m >= m_min && m <= m_max && n >= n_min && n <= n_max;
    }
    bool contains(LatticePoint p) const { return contains(p.m, p.n); }
};

// Complex values on a window of Z^2, the truncated representative of a
// function on the whole lattice. Storage is row-major: rows run over n
// from n_min to n_max, each row over m from m_min to m_max.
class GridFunction {
public:
    explicit GridFunction(Window w);
    GridFunction(Window w, std::vector<cplx> values); // validates size and finiteness

    const Window& window() const { return win_; }

    cplx& at(int m, int n) {
        check_inside(m, n);
        return values_[index(m, n)];
    }
    cplx at(int m, int n) const {
        check_inside(m, n);
        return values_[index(m, n)];
    }
    cplx at(LatticePoint p) const { return at(p.m, p.n); }

    const std::vector<cplx>& values() const { return values_; }

    // Row view at a fixed height, m from m_min to m_max.
    std::span<const cplx> row(int n) const;

    double max_abs() const;

private:
    std::size_t index(int m, int n) const {
        return static_cast<std::size_t>(n - win_.n_min) * win_.width() +
               static_cast<std::size_t>(m - win_.m_min);
    }
    void check_inside(int m, int n) const;

    Window win_;
    std::vector<cplx> values_;
};

// Ordered lattice vertices joined by unit steps.
struct DiscreteContour {
    std::vector<LatticePoint> vertices;

    bool closed() const;
    void validate() const; // throws DegenerateContour on short or non-unit contours

    // Counterclockwise boundary of [m0, m1] x [n0, n1], closed.
    static DiscreteContour rectangle_boundary(int m0, int m1, int n0, int n1);
};

// Band parameter alpha in (0, pi/2) with the derived constants of the
// frequency band D_alpha = {|t| <= alpha} u {pi - alpha <= |t| <= pi}.
class BandParameters {
public:
    explicit BandParameters(double alpha);

    double alpha() const { return alpha_; }

    // Per-layer growth factor cos(alpha) / (1 - sin(alpha)), > 1 on (0, pi/2).
    double growth_base() const { return growth_base_; }

    // Membership of a torus angle t in [-pi, pi) in the closed band D_alpha.
    bool contains(double t, double tol = kBandBoundaryTol) const;

private:
    double alpha_;
    double growth_base_;
};

// Distance from t to the nearest pole +-pi/2 (mod 2 pi).
double pole_distance(double t);

// Real growth factor cos(t)/(1 + sin(t)) = (1 - sin(t))/cos(t); the two
// algebraic forms are selected by the sign of sin(t) to avoid cancellation.
// Throws PoleError within kPoleTol of t = +-pi/2.
double phi_base(double t);

// phi_t(n) = ((1 + i e^{it}) / (i + e^{it}))^n, real-valued for real t.
cplx phi(double t, int n);

// e_t(m, n) = e^{itm} phi_t(n); restriction to n = 0 is e^{imt}.
cplx discrete_exponential(double t, LatticePoint p);

// F(m+1,n+1) - F(m,n) + i (F(m,n+1) - F(m+1,n)) on the plaquette with
// lower-left corner p; zero iff F is discrete holomorphic there.
cplx holomorphicity_residual(const GridFunction& F, LatticePoint p);

// Max residual modulus over all interior plaquettes of the window.
double max_holomorphicity_residual(const GridFunction& F);

// Layer extension. Given the layer at height n-1 over m = 0..M and the
// anchor value F(0, n), returns the layer at height n over m = 0..M.
std::vector<cplx> extend_layer(std::span<const cplx> boundary, cplx anchor);

// Mirrored variants obtained from the base recursion through the lattice
// reflections (-1)^{m+n} F(-m, n), (-1)^{m+n} F(m, -n) and F(-m, -n).
//
// extend_layer_neg:      boundary[k] = F(-k, n-1)  ->  out[k] = F(-k, n)
// extend_layer_down:     boundary[k] = F(k, n+1)   ->  out[k] = F(k, n)
// extend_layer_down_neg: boundary[k] = F(-k, n+1)  ->  out[k] = F(-k, n)
std::vector<cplx> extend_layer_neg(std::span<const cplx> boundary, cplx anchor);
std::vector<cplx> extend_layer_down(std::span<const cplx> boundary, cplx anchor);
std::vector<cplx> extend_layer_down_neg(std::span<const cplx> boundary, cplx anchor);

// (1/4) sum_k (F(z_k)+F(z_{k+1})) (G(z_k)+G(z_{k+1})) (z_k - z_{k+1}),
// with z = m + i n. Orientation-sensitive: reversing the vertex order
// negates the result.
cplx contour_integral(const GridFunction& F, const GridFunction& G,
                      const DiscreteContour& gamma);

} // namespace dpw

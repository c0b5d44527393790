#include "dpw/lattice.hpp"

#include <cmath>
#include <string>

namespace dpw {

namespace {

const cplx kI{0.0, 1.0};

// i^k for integer k (exact).
cplx ipow(long long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

} // namespace

GridFunction::GridFunction(Window w) : win_(w) {
    if (w.m_max < w.m_min || w.n_max < w.n_min)
        throw ConfigError("GridFunction: empty window");
    values_.assign(static_cast<std::size_t>(w.width()) * w.height(), cplx{});
}

GridFunction::GridFunction(Window w, std::vector<cplx> values) : GridFunction(w) {
    if (values.size() != values_.size())
        throw LengthMismatch("GridFunction: expected " + std::to_string(values_.size()) +
                             " values, got " + std::to_string(values.size()));
    for (const cplx& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ConfigError("GridFunction: non-finite entry");
    values_ = std::move(values);
}

void GridFunction::check_inside(int m, int n) const {
    if (!win_.contains(m, n))
        throw OutOfWindow("point (" + std::to_string(m) + "," + std::to_string(n) +
                          ") outside window [" + std::to_string(win_.m_min) + "," +
                          std::to_string(win_.m_max) + "]x[" + std::to_string(win_.n_min) +
                          "," + std::to_string(win_.n_max) + "]");
}

std::span<const cplx> GridFunction::row(int n) const {
    check_inside(win_.m_min, n);
    return {values_.data() + index(win_.m_min, n), static_cast<std::size_t>(win_.width())};
}

double GridFunction::max_abs() const {
    double mx = 0.0;
    for (const cplx& v : values_) mx = std::max(mx, std::abs(v));
    return mx;
}

bool DiscreteContour::closed() const {
    if (vertices.size() < 2) return false;
    return vertices.front().m == vertices.back().m &&
           vertices.front().n == vertices.back().n;
}

void DiscreteContour::validate() const {
    if (vertices.size() < 2)
        throw DegenerateContour("contour needs at least 2 vertices");
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
        const int dm = vertices[k + 1].m - vertices[k].m;
        const int dn = vertices[k + 1].n - vertices[k].n;
        if (std::abs(dm) + std::abs(dn) != 1)
            throw DegenerateContour("non-unit step at segment " + std::to_string(k));
    }
}

DiscreteContour DiscreteContour::rectangle_boundary(int m0, int m1, int n0, int n1) {
    if (m1 <= m0 || n1 <= n0)
        throw DegenerateContour("rectangle boundary needs m1 > m0 and n1 > n0");
    DiscreteContour g;
    for (int m = m0; m < m1; ++m) g.vertices.push_back({m, n0});
    for (int n = n0; n < n1; ++n) g.vertices.push_back({m1, n});
    for (int m = m1; m > m0; --m) g.vertices.push_back({m, n1});
    for (int n = n1; n > n0; --n) g.vertices.push_back({m0, n});
    g.vertices.push_back({m0, n0});
    return g;
}

BandParameters::BandParameters(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !(alpha < kPi / 2))
        throw ConfigError("alpha must lie in (0, pi/2), got " + std::to_string(alpha));
    growth_base_ = std::cos(alpha) / (1.0 - std::sin(alpha));
}

bool BandParameters::contains(double t, double tol) const {
    const double a = std::abs(t);
    return a <= alpha_ + tol || a >= kPi - alpha_ - tol;
}

double pole_distance(double t) {
    const double d1 = std::remainder(t - kPi / 2, 2 * kPi);
    const double d2 = std::remainder(t + kPi / 2, 2 * kPi);
    return std::min(std::abs(d1), std::abs(d2));
}

double phi_base(double t) {
    if (pole_distance(t) < kPoleTol)
        throw PoleError("t = " + std::to_string(t) + " within tolerance of a pole +-pi/2");
    const double s = std::sin(t);
    const double c = std::cos(t);
    // cos t/(1+sin t) and (1-sin t)/cos t agree; pick the cancellation-free form.
    return s >= 0.0 ? c / (1.0 + s) : (1.0 - s) / c;
}

cplx phi(double t, int n) {
    return {std::pow(phi_base(t), n), 0.0};
}

cplx discrete_exponential(double t, LatticePoint p) {
    const double ph = std::pow(phi_base(t), p.n); // signed, n is integral
    const double a = t * p.m;
    return cplx{std::cos(a), std::sin(a)} * ph;
}

cplx holomorphicity_residual(const GridFunction& F, LatticePoint p) {
    const Window& w = F.window();
    if (!w.contains(p.m, p.n) || !w.contains(p.m + 1, p.n + 1))
        throw OutOfWindow("plaquette at (" + std::to_string(p.m) + "," +
                          std::to_string(p.n) + ") leaves the window");
    return F.at(p.m + 1, p.n + 1) - F.at(p.m, p.n) +
           kI * (F.at(p.m, p.n + 1) - F.at(p.m + 1, p.n));
}

double max_holomorphicity_residual(const GridFunction& F) {
    const Window& w = F.window();
    if (w.width() < 2 || w.height() < 2)
        throw OutOfWindow("window has no interior plaquette");
    double mx = 0.0;
    for (int n = w.n_min; n < w.n_max; ++n)
        for (int m = w.m_min; m < w.m_max; ++m)
            mx = std::max(mx, std::abs(holomorphicity_residual(F, {m, n})));
    return mx;
}

std::vector<cplx> extend_layer(std::span<const cplx> boundary, cplx anchor) {
    if (boundary.empty())
        throw LengthMismatch("extend_layer: empty boundary layer");
    const std::size_t M = boundary.size() - 1;
    std::vector<cplx> out(M + 1);
    out[0] = anchor;
    // F(m,n) = (-i)^m (F(0,n) + 2i sum_{k=1}^{m-1} i^k F(k,n-1)
    //                  + i F(0,n-1) + i^{m+1} F(m,n-1))
    cplx running{0.0, 0.0};
    for (std::size_t m = 1; m <= M; ++m) {
        if (m >= 2) running += ipow(static_cast<long long>(m) - 1) * boundary[m - 1];
        out[m] = ipow(-static_cast<long long>(m)) *
                 (anchor + 2.0 * kI * running + kI * boundary[0] +
                  ipow(static_cast<long long>(m) + 1) * boundary[m]);
    }
    return out;
}

namespace {

// Shared wrapper for the two variants whose reflection carries the sign
// pattern (-1)^{m+n}: feed -(-1)^k boundary[k] to the base recursion and
// flip the output signs back.
std::vector<cplx> extend_reflected(std::span<const cplx> boundary, cplx anchor) {
    std::vector<cplx> flipped(boundary.begin(), boundary.end());
    for (std::size_t k = 0; k < flipped.size(); k += 2) flipped[k] = -flipped[k];
    std::vector<cplx> out = extend_layer(flipped, anchor);
    for (std::size_t m = 1; m < out.size(); m += 2) out[m] = -out[m];
    return out;
}

} // namespace

std::vector<cplx> extend_layer_neg(std::span<const cplx> boundary, cplx anchor) {
    return extend_reflected(boundary, anchor);
}

std::vector<cplx> extend_layer_down(std::span<const cplx> boundary, cplx anchor) {
    return extend_reflected(boundary, anchor);
}

std::vector<cplx> extend_layer_down_neg(std::span<const cplx> boundary, cplx anchor) {
    // F(-m,-n) is discrete entire with no sign twist, so the base recursion
    // applies verbatim with the boundary read towards negative m.
    return extend_layer(boundary, anchor);
}

cplx contour_integral(const GridFunction& F, const GridFunction& G,
                      const DiscreteContour& gamma) {
    gamma.validate();
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k + 1 < gamma.vertices.size(); ++k) {
        const LatticePoint a = gamma.vertices[k];
        const LatticePoint b = gamma.vertices[k + 1];
        const cplx dz{static_cast<double>(a.m - b.m), static_cast<double>(a.n - b.n)};
        acc += (F.at(a) + F.at(b)) * (G.at(a) + G.at(b)) * dz;
    }
    return 0.25 * acc;
}

} // namespace dpw

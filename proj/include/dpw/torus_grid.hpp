#pragma once

#include <vector>

#include "dpw/lattice.hpp"

namespace dpw {

// Uniform torus grid t_j = -pi + 2 pi j / L, j = 0..L-1, with a table of
// L-th roots of unity. For integer m the phasor e^{i t_j m} equals
// (-1)^m omega^{(j m) mod L}, so transforms evaluate it by table lookup
// with no phase drift.
class TorusGrid {
public:
    explicit TorusGrid(int L); // requires L even and >= 8

    int size() const { return L_; }

    double angle(int j) const { return -kPi + (2.0 * kPi * j) / L_; }

    // e^{i t_j m}, exact up to the rounding of the root table.
    cplx phasor(int j, long long m) const {
        long long r = (static_cast<long long>(j) * m) % L_;
        if (r < 0) r += L_;
        const cplx w = roots_[static_cast<std::size_t>(r)];
        return (m & 1) ? -w : w;
    }

    const std::vector<cplx>& roots() const { return roots_; }

    // Walks e^{i t_j m} along consecutive m by integer index steps, so the
    // phasor stays exact relative to the root table.
    class Walker {
    public:
        Walker(const TorusGrid& grid, int j, long long m_start)
            : roots_(grid.roots()), L_(grid.size()), j_(((j % L_) + L_) % L_) {
            r_ = static_cast<int>(((static_cast<long long>(j_) * m_start) % L_ + L_) % L_);
            negate_ = (m_start & 1LL) != 0;
        }

        cplx value() const {
            const cplx w = roots_[static_cast<std::size_t>(r_)];
            return negate_ ? -w : w;
        }

        void advance() {
            r_ += j_;
            if (r_ >= L_) r_ -= L_;
            negate_ = !negate_;
        }

    private:
        const std::vector<cplx>& roots_;
        int L_;
        int j_;
        int r_ = 0;
        bool negate_ = false;
    };

private:
    int L_;
    std::vector<cplx> roots_;
};

// In-band grid indices of D_alpha together with trapezoid quadrature
// weights: interior points weigh 1, the endpoints of each in-band arc 1/2.
// With f vanishing at the arc endpoints the weighted sum coincides with the
// plain sum, while indicator-type integrands keep second-order accuracy.
struct BandGrid {
    std::vector<int> indices;
    std::vector<double> weights;

    static BandGrid make(const TorusGrid& grid, const BandParameters& band);
};

} // namespace dpw

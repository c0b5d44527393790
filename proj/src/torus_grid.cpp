#include "dpw/torus_grid.hpp"

#include <cmath>
#include <string>

namespace dpw {

TorusGrid::TorusGrid(int L) : L_(L) {
    if (L < 8 || L % 2 != 0)
        throw ConfigError("torus grid size must be even and >= 8, got " + std::to_string(L));
    roots_.resize(static_cast<std::size_t>(L));
    for (int r = 0; r < L; ++r)
        roots_[static_cast<std::size_t>(r)] = std::polar(1.0, (2.0 * kPi * r) / L);
}

BandGrid BandGrid::make(const TorusGrid& grid, const BandParameters& band) {
    const int L = grid.size();
    std::vector<bool> in(static_cast<std::size_t>(L));
    int count = 0;
    for (int j = 0; j < L; ++j) {
        in[static_cast<std::size_t>(j)] = band.contains(grid.angle(j));
        if (in[static_cast<std::size_t>(j)]) ++count;
    }

    BandGrid bg;
    bg.indices.reserve(static_cast<std::size_t>(count));
    bg.weights.reserve(static_cast<std::size_t>(count));
    const bool full_circle = (count == L);
    for (int j = 0; j < L; ++j) {
        if (!in[static_cast<std::size_t>(j)]) continue;
        double w = 1.0;
        if (!full_circle) {
            // endpoints of a cyclic in-band arc carry half weight
            if (!in[static_cast<std::size_t>((j + L - 1) % L)]) w -= 0.5;
            if (!in[static_cast<std::size_t>((j + 1) % L)]) w -= 0.5;
        }
        bg.indices.push_back(j);
        bg.weights.push_back(w);
    }
    return bg;
}

} // namespace dpw

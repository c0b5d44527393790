#pragma once

#include <json.hpp>

#include "dpw/sampling.hpp"
#include "dpw/spectral.hpp"

namespace dpw {

using json = nlohmann::json;

// GridFunction <-> {"window": [m_min, m_max, n_min, n_max],
//                   "values": [[re, im], ...] row-major}
json to_json(const GridFunction& g);
GridFunction grid_function_from_json(const json& j);

// SpectralFunction <-> {"L": int, "alpha": double, "values": [[re, im], ...]}
json to_json(const SpectralFunction& f);
SpectralFunction spectral_function_from_json(const json& j);

// DiscreteContour <-> [[m, n], ...]
json to_json(const DiscreteContour& c);
DiscreteContour contour_from_json(const json& j);

// SamplingSet -> {"lambda": [...], "delta_e": int, "delta_o": int}
json to_json(const SamplingSet& s);
SamplingSet sampling_set_from_json(const json& j, int m_min, int m_max);

json to_json(const ReconstructionReport& r);

} // namespace dpw

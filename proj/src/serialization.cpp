#include "dpw/serialization.hpp"

namespace dpw {

namespace {

json complex_array(const std::vector<cplx>& vs) {
    json arr = json::array();
    for (const cplx& v : vs) arr.push_back(json::array({v.real(), v.imag()}));
    return arr;
}

std::vector<cplx> complex_vector(const json& arr, const char* what) {
    if (!arr.is_array()) throw ConfigError(std::string(what) + ": expected an array");
    std::vector<cplx> out;
    out.reserve(arr.size());
    for (const json& e : arr) {
        if (!e.is_array() || e.size() != 2)
            throw ConfigError(std::string(what) + ": entries must be [re, im] pairs");
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

} // namespace

json to_json(const GridFunction& g) {
    const Window& w = g.window();
    return json{{"window", {w.m_min, w.m_max, w.n_min, w.n_max}},
                {"values", complex_array(g.values())}};
}

GridFunction grid_function_from_json(const json& j) {
    if (!j.contains("window") || !j.contains("values"))
        throw ConfigError("grid function: need fields 'window' and 'values'");
    const json& wj = j.at("window");
    if (!wj.is_array() || wj.size() != 4)
        throw ConfigError("grid function: 'window' must be [m_min, m_max, n_min, n_max]");
    Window w{wj[0].get<int>(), wj[1].get<int>(), wj[2].get<int>(), wj[3].get<int>()};
    return GridFunction(w, complex_vector(j.at("values"), "grid values"));
}

json to_json(const SpectralFunction& f) {
    return json{{"L", f.grid_size()},
                {"alpha", f.band().alpha()},
                {"values", complex_array(f.values())}};
}

SpectralFunction spectral_function_from_json(const json& j) {
    for (const char* key : {"L", "alpha", "values"})
        if (!j.contains(key))
            throw ConfigError(std::string("spectral function: missing field '") + key + "'");
    return SpectralFunction(j.at("L").get<int>(), BandParameters(j.at("alpha").get<double>()),
                            complex_vector(j.at("values"), "spectral values"));
}

json to_json(const DiscreteContour& c) {
    json arr = json::array();
    for (const LatticePoint& p : c.vertices) arr.push_back(json::array({p.m, p.n}));
    return arr;
}

DiscreteContour contour_from_json(const json& j) {
    if (!j.is_array()) throw ConfigError("contour: expected an array of [m, n] pairs");
    DiscreteContour c;
    for (const json& e : j) {
        if (!e.is_array() || e.size() != 2)
            throw ConfigError("contour: entries must be [m, n] pairs");
        c.vertices.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return c;
}

json to_json(const SamplingSet& s) {
    return json{{"lambda", s.lambda()}, {"delta_e", s.delta_e()}, {"delta_o", s.delta_o()}};
}

SamplingSet sampling_set_from_json(const json& j, int m_min, int m_max) {
    if (!j.contains("lambda")) throw ConfigError("sampling set: missing field 'lambda'");
    return SamplingSet(j.at("lambda").get<std::vector<int>>(), m_min, m_max);
}

json to_json(const ReconstructionReport& r) {
    return json{{"iterations", r.iterations},
                {"residuals", r.residuals},
                {"measured_ratio", r.measured_ratio},
                {"bound_ratio", r.bound_ratio},
                {"final_error", r.final_error},
                {"frame_lower", r.frame_lower},
                {"frame_ratio_empirical", r.frame_ratio_empirical},
                {"guarantee", r.guarantee},
                {"converged", r.converged},
                {"stagnated", r.stagnated},
                {"delta", r.delta},
                {"tol", r.tol}};
}

} // namespace dpw

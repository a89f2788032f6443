#include "wavclump/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace wavclump {

namespace {

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void validate(const SynthSpec& spec) {
    for (std::size_t d : spec.dims)
        if (d == 0)
            throw std::invalid_argument("synthetic spec: every dim must be positive");
    if (!(spec.noise_sigma >= 0.0))
        throw std::invalid_argument("synthetic spec: noise_sigma must be >= 0");
    if (spec.random_count < 0)
        throw std::invalid_argument("synthetic spec: random count must be >= 0");
    if (spec.random_margin < 0.0 || spec.random_margin >= 0.5)
        throw std::invalid_argument("synthetic spec: margin must be in [0, 0.5)");
    for (int a = 0; a < 3; ++a)
        if (!(spec.random_sigma_min[a] > 0.0) ||
            spec.random_sigma_max[a] < spec.random_sigma_min[a])
            throw std::invalid_argument("synthetic spec: bad random sigma range");
    for (const auto& c : spec.components)
        for (double s : c.sigma)
            if (!(s > 0.0))
                throw std::invalid_argument("synthetic spec: component sigma must be > 0");
}

} // namespace

SynthCube generate_synthetic(const SynthSpec& spec, std::uint64_t seed) {
    validate(spec);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    SynthCube out{Cube(spec.dims), spec.components};
    for (int k = 0; k < spec.random_count; ++k) {
        GaussianComponent g;
        g.amplitude = spec.random_peak *
                      (k == 0 ? 1.0 : spec.random_min_amplitude +
                                          (1.0 - spec.random_min_amplitude) * unit(rng));
        for (int a = 0; a < 3; ++a) {
            const double n = static_cast<double>(spec.dims[a] - 1);
            g.center[a] = n * (spec.random_margin + (1.0 - 2.0 * spec.random_margin) * unit(rng));
            g.sigma[a] = spec.random_sigma_min[a] +
                         (spec.random_sigma_max[a] - spec.random_sigma_min[a]) * unit(rng);
        }
        out.truth.push_back(g);
    }

    Cube& cube = out.cube;
    const Dims& d = spec.dims;
    std::array<std::vector<double>, 3> profile;
    for (const GaussianComponent& g : out.truth) {
        for (int a = 0; a < 3; ++a) {
            profile[a].resize(d[a]);
            for (std::size_t i = 0; i < d[a]; ++i) {
                const double z = (static_cast<double>(i) - g.center[a]) / g.sigma[a];
                profile[a][i] = std::exp(-0.5 * z * z);
            }
        }
        for (std::size_t i0 = 0; i0 < d[0]; ++i0)
            for (std::size_t i1 = 0; i1 < d[1]; ++i1) {
                const double w = g.amplitude * profile[0][i0] * profile[1][i1];
                for (std::size_t i2 = 0; i2 < d[2]; ++i2)
                    cube(i0, i1, i2) += w * profile[2][i2];
            }
    }

    if (spec.noise_sigma > 0.0) {
        std::normal_distribution<double> noise(0.0, spec.noise_sigma);
        for (std::size_t i = 0; i < cube.size(); ++i)
            cube[i] += noise(rng);
    }

    auto& meta = cube.meta();
    meta["synth.seed"] = std::to_string(seed);
    meta["synth.noise_sigma"] = fmt_g(spec.noise_sigma);
    meta["synth.n_components"] = std::to_string(out.truth.size());
    for (std::size_t k = 0; k < out.truth.size(); ++k) {
        const auto& g = out.truth[k];
        meta["synth.component." + std::to_string(k)] =
            fmt_g(g.amplitude) + ";" + fmt_g(g.center[0]) + "," + fmt_g(g.center[1]) + "," +
            fmt_g(g.center[2]) + ";" + fmt_g(g.sigma[0]) + "," + fmt_g(g.sigma[1]) + "," +
            fmt_g(g.sigma[2]);
    }
    return out;
}

SynthSpec orion_like_spec() {
    SynthSpec s;
    s.dims = {41, 100, 100};
    s.noise_sigma = 0.1;
    s.random_count = 10;
    s.random_peak = 1.0;
    s.random_min_amplitude = 0.4;
    s.random_sigma_min = {4.0, 3.0, 3.0};
    s.random_sigma_max = {8.0, 8.0, 8.0};
    s.random_margin = 0.2;
    return s;
}

SynthSpec two_blob_spec() {
    SynthSpec s;
    s.dims = {32, 32, 32};
    s.components = {
        {1.0, {16.0, 16.0, 13.0}, {2.5, 2.5, 2.0}},
        {1.0, {16.0, 16.0, 19.0}, {2.5, 2.5, 2.0}},
    };
    return s;
}

SynthSpec parse_synth_spec(const std::string& json_text) {
    using nlohmann::json;
    const json j = json::parse(json_text);
    SynthSpec s;
    s.dims = j.at("dims").get<Dims>();
    s.noise_sigma = j.value("noise_sigma", 0.0);
    if (j.contains("components")) {
        for (const auto& c : j.at("components")) {
            GaussianComponent g;
            g.amplitude = c.at("amplitude").get<double>();
            g.center = c.at("center").get<std::array<double, 3>>();
            g.sigma = c.at("sigma").get<std::array<double, 3>>();
            s.components.push_back(g);
        }
    }
    if (j.contains("random")) {
        const json& r = j.at("random");
        s.random_count = r.value("count", 0);
        s.random_peak = r.value("peak", s.random_peak);
        s.random_min_amplitude = r.value("min_amplitude", s.random_min_amplitude);
        s.random_sigma_min = r.value("sigma_min", s.random_sigma_min);
        s.random_sigma_max = r.value("sigma_max", s.random_sigma_max);
        s.random_margin = r.value("margin", s.random_margin);
    }
    validate(s);
    return s;
}

} // namespace wavclump

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wavclump/cube.hpp"

namespace wavclump {

/// Axis-aligned 3D Gaussian. Centers and widths are in voxel units.
struct GaussianComponent {
    double amplitude = 1.0;
    std::array<double, 3> center{0.0, 0.0, 0.0};
    std::array<double, 3> sigma{1.0, 1.0, 1.0};
};

/// Explicit components plus optionally `random_count` more drawn from the seed.
struct SynthSpec {
    Dims dims{0, 0, 0};
    std::vector<GaussianComponent> components;
    double noise_sigma = 0.0;

    int random_count = 0;
    double random_peak = 1.0;              // largest random amplitude
    double random_min_amplitude = 0.4;     // as a fraction of random_peak
    std::array<double, 3> random_sigma_min{1.0, 1.0, 1.0};
    std::array<double, 3> random_sigma_max{2.0, 2.0, 2.0};
    double random_margin = 0.15;           // centers avoid this fraction of each axis edge
};

struct SynthCube {
    Cube cube;
    std::vector<GaussianComponent> truth; // every component actually placed
};

/// Sums the components and adds white Gaussian noise. Fully determined by
/// (spec, seed). The component list is also recorded in cube meta under
/// "synth.*" keys.
SynthCube generate_synthetic(const SynthSpec& spec, std::uint64_t seed);

/// 100 x 100 spatial pixels by 41 channels stored as (41, 100, 100), ten blended
/// random Gaussians with peak 1 and white noise of sigma 0.1.
SynthSpec orion_like_spec();

/// Two equal Gaussians close enough to blend once smoothed by a few levels.
SynthSpec two_blob_spec();

/// Reads a spec from JSON:
/// {"dims":[n0,n1,n2], "noise_sigma":s,
///  "components":[{"amplitude":a,"center":[c0,c1,c2],"sigma":[s0,s1,s2]}],
///  "random":{"count":n,"peak":p,"min_amplitude":f,"sigma_min":[..],"sigma_max":[..],"margin":m}}
/// Only "dims" is required.
SynthSpec parse_synth_spec(const std::string& json_text);

} // namespace wavclump

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "wavclump/cube.hpp"

namespace wavclump {

enum class Neighborhood { Faces6 = 6, Full26 = 26 };

Neighborhood parse_neighborhood(std::string_view name);

struct ClumpParams {
    double rms = 1.0;          // per-level scale; must be > 0
    double noise_mult = 2.0;   // voxels below noise_mult * rms are not walked
    double min_dip_mult = 3.0; // peaks whose dip is below min_dip_mult * rms are merged
    int min_pix = 16;
    Neighborhood neighborhood = Neighborhood::Full26;
};

/// Clump assignment array: one label per voxel, 0 = background.
struct CAA {
    Dims dims{0, 0, 0};
    std::vector<std::int32_t> labels;
    int n_clumps = 0;

    std::int32_t at(const Voxel& v) const { return labels[(v[0] * dims[1] + v[1]) * dims[2] + v[2]]; }
};

struct Clump {
    int id = 0;
    int level = 0;
    std::vector<Voxel> voxels; // scan order
    Voxel peak_pos{0, 0, 0};
    double peak_val = 0.0;
    double total_intensity = 0.0;
    std::array<double, 3> centroid{0.0, 0.0, 0.0};

    std::size_t n_pix() const { return voxels.size(); }
};

struct Segmentation {
    CAA caa;
    std::vector<Clump> clumps; // clumps[k].id == k + 1
};

/// Gradient-ascent segmentation.
///
/// Every usable voxel (non-blank, value >= noise_mult * rms) walks uphill to
/// its highest-valued neighbour until it reaches a local maximum, which starts
/// a new clump, or a voxel that already carries a label, whose label the whole
/// path adopts. Equal values are ordered by linear index, lower index counting
/// as higher, so plateaus drain deterministically.
///
/// Adjacent clumps are then merged, shallowest dip first, while
/// min(peak_a, peak_b) - col < min_dip_mult * rms, where col is the highest
/// saddle between them (max over touching voxel pairs of the smaller value).
/// Clumps with fewer than min_pix voxels are dissolved and the survivors are
/// numbered 1..n by decreasing peak value.
///
/// Clump centroids are intensity weighted; if a clump's total intensity is 0
/// the unweighted mean position is used instead.
Segmentation fellwalker(const Cube& cube, const ClumpParams& params, int level = 0);

struct ClumpMetrics {
    std::size_t n_clumps = 0;
    std::size_t biggest_pix = 0;
    double mean_pix = 0.0;
};

ClumpMetrics clump_metrics(std::span<const Clump> clumps);

} // namespace wavclump

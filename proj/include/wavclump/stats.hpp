#pragma once

#include <cstddef>

#include "wavclump/cube.hpp"

namespace wavclump {

struct LevelStats {
    int level = 0;
    double rms = 0.0;
    double entropy = 0.0; // bits
    std::size_t voxel_count = 0;
};

/// sqrt(mean(x^2)) over non-blank voxels. Throws if every voxel is blank.
double rms(const Cube& cube);

/// RMS about the mean of the voxels that survive iterative kappa-sigma clipping.
/// A noise estimate for thresholds, as opposed to the full-signal rms().
double sigma_clipped_rms(const Cube& cube, double kappa = 3.0, int max_iter = 10);

/// Shannon entropy in bits of the histogram of non-blank intensities using
/// `bins` equal-width bins over [min, max]. A zero-width range gives 0.
double entropy(const Cube& cube, int bins = 256);

LevelStats level_stats(const Cube& cube, int level, int bins = 256);

} // namespace wavclump

#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wavclump/clumping.hpp"
#include "wavclump/cube.hpp"

namespace wavclump {

/// Intensity-weighted mean position sum(pos * I) / sum(I) over the clump's
/// voxels, with intensities read from `cube`. Throws on an empty clump or a
/// zero total intensity.
std::array<double, 3> centroid(const Clump& clump, const Cube& cube);

/// Rounds each component half away from zero and clamps it into `dims`.
Voxel nearest_voxel(const std::array<double, 3>& pos, const Dims& dims);

enum class LinkMode {
    Centroid, ///< the clump's rounded centroid must fall in the coarser clump
    Peak,     ///< the clump's peak voxel must fall in the coarser clump
};

LinkMode parse_link_mode(std::string_view name);

/// Segmentation of one level, borrowed from its owner.
struct LevelView {
    int level = 0;
    const CAA* caa = nullptr;
    std::span<const Clump> clumps;
};

std::string node_id(int level, int clump);

struct HierarchyTree {
    struct Node {
        std::string id; // "L{level}C{clump}"
        int level = 0;
        int clump = 0;
        std::array<double, 3> centroid{0.0, 0.0, 0.0};
        std::size_t n_pix = 0;
        double peak_val = 0.0;
    };
    struct Edge {
        std::string parent; // coarser level
        std::string child;
    };

    std::vector<Node> nodes;
    std::vector<Edge> edges;

    /// Ids of nodes with no incident edge.
    std::vector<std::string> isolated() const;
};

/// Links each clump at level i to the clump of level i + 1 whose CAA label
/// covers the clump's probe voxel (rounded centroid or peak, per `mode`).
/// `levels` must be sorted by ascending level and share one set of dims.
HierarchyTree link_levels(std::span<const LevelView> levels, LinkMode mode = LinkMode::Centroid);

/// Re-checks every edge of `tree` against the CAAs it was built from.
bool edges_sound(const HierarchyTree& tree, std::span<const LevelView> levels, LinkMode mode);

enum class TreeFormat { Dot, Json };

std::string export_tree(const HierarchyTree& tree, TreeFormat format);

} // namespace wavclump

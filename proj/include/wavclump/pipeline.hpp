#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wavclump/clumping.hpp"
#include "wavclump/cube.hpp"
#include "wavclump/hierarchy.hpp"
#include "wavclump/mra.hpp"
#include "wavclump/stats.hpp"
#include "wavclump/synthetic.hpp"

namespace wavclump {

enum class CubeFormat { Fits, Raw };
enum class RmsMode { Variable, Fixed };
enum class RmsEstimator { Plain, SigmaClipped };

CubeFormat parse_cube_format(std::string_view name);
RmsMode parse_rms_mode(std::string_view name);
RmsEstimator parse_rms_estimator(std::string_view name);
std::string_view rms_mode_name(RmsMode mode);

struct Exports {
    bool recon = false;
    bool caa = false;
    bool catalog = false;
    bool stats = false;
    bool tree_dot = false;
    bool tree_json = false;

    bool any() const { return recon || caa || catalog || stats || tree_dot || tree_json; }
    /// Enables one export by its CLI name (recon, caa, catalog, stats, tree-dot, tree-json).
    void enable(std::string_view name);
};

struct PipelineConfig {
    // Input: a file, or a synthetic cube when `synth` is set.
    std::filesystem::path input;
    CubeFormat format = CubeFormat::Fits;
    Dims raw_dims{0, 0, 0};
    std::optional<SynthSpec> synth;
    std::uint64_t seed = 42;

    std::string wavelet = "db5";
    int max_level = 4;
    BorderMode border = BorderMode::Symmetric;

    RmsMode rms_mode = RmsMode::Variable;
    RmsEstimator rms_estimator = RmsEstimator::Plain;
    ClumpParams clump; // rms is filled in per level
    int bins = 256;
    LinkMode link_mode = LinkMode::Centroid;

    std::filesystem::path out_dir = "out";
    Exports exports;
    CubeFormat recon_format = CubeFormat::Fits;
    int workers = 1; // clumping of different levels may run concurrently
};

struct LevelResult {
    LevelStats stats;
    double rms_used = 0.0;
    ClumpMetrics metrics;
    Segmentation segmentation;
};

struct PipelineReport {
    std::string wavelet;
    std::vector<LevelResult> levels; // levels[j].stats.level == j
    HierarchyTree tree;
    std::vector<std::string> warnings;
    std::vector<std::filesystem::path> written;

    std::vector<LevelView> level_views() const;
};

/// Decomposes, measures and clumps every level of `cube`, links the levels and
/// writes the enabled exports.
PipelineReport run_pipeline(const Cube& cube, const PipelineConfig& config);

/// Loads (or synthesizes) the input named by `config`, then runs the pipeline.
PipelineReport run_pipeline(const PipelineConfig& config);

Cube load_input(const PipelineConfig& config);

/// Per-level CSV with header level,rms,entropy,n_clumps,biggest_pix,mean_pix.
std::string stats_csv(const PipelineReport& report);

/// JSON clump catalog for every level.
std::string catalog_json(const PipelineReport& report, const PipelineConfig& config);

} // namespace wavclump

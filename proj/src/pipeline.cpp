#include "wavclump/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wavclump/cube_io.hpp"

namespace wavclump {

namespace {

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot create '" + path.string() + "'");
    out << text;
    if (!out)
        throw std::runtime_error("write error on '" + path.string() + "'");
}

double estimate_rms(const Cube& cube, RmsEstimator estimator) {
    return estimator == RmsEstimator::SigmaClipped ? sigma_clipped_rms(cube) : rms(cube);
}

LevelResult analyse_level(const Cube& recon, int level, double rms_used,
                          const PipelineConfig& config) {
    LevelResult r;
    r.stats = level_stats(recon, level, config.bins);
    r.rms_used = rms_used;
    r.segmentation.caa.dims = recon.dims();
    r.segmentation.caa.labels.assign(recon.size(), 0);
    if (rms_used > 0.0) {
        ClumpParams params = config.clump;
        params.rms = rms_used;
        r.segmentation = fellwalker(recon, params, level);
    }
    r.metrics = clump_metrics(r.segmentation.clumps);
    return r;
}

} // namespace

CubeFormat parse_cube_format(std::string_view name) {
    if (name == "fits")
        return CubeFormat::Fits;
    if (name == "raw")
        return CubeFormat::Raw;
    throw std::invalid_argument("unknown cube format '" + std::string(name) + "'");
}

RmsMode parse_rms_mode(std::string_view name) {
    if (name == "variable")
        return RmsMode::Variable;
    if (name == "fixed")
        return RmsMode::Fixed;
    throw std::invalid_argument("unknown rms mode '" + std::string(name) + "'");
}

RmsEstimator parse_rms_estimator(std::string_view name) {
    if (name == "plain")
        return RmsEstimator::Plain;
    if (name == "sigma-clip")
        return RmsEstimator::SigmaClipped;
    throw std::invalid_argument("unknown rms estimator '" + std::string(name) + "'");
}

std::string_view rms_mode_name(RmsMode mode) {
    return mode == RmsMode::Variable ? "variable" : "fixed";
}

void Exports::enable(std::string_view name) {
    if (name == "recon")
        recon = true;
    else if (name == "caa")
        caa = true;
    else if (name == "catalog")
        catalog = true;
    else if (name == "stats")
        stats = true;
    else if (name == "tree-dot")
        tree_dot = true;
    else if (name == "tree-json")
        tree_json = true;
    else
        throw std::invalid_argument("unknown export '" + std::string(name) + "'");
}

std::vector<LevelView> PipelineReport::level_views() const {
    std::vector<LevelView> views;
    for (const LevelResult& r : levels)
        views.push_back({r.stats.level, &r.segmentation.caa, r.segmentation.clumps});
    return views;
}

Cube load_input(const PipelineConfig& config) {
    if (config.synth)
        return generate_synthetic(*config.synth, config.seed).cube;
    if (config.input.empty())
        throw std::invalid_argument("no input cube given");
    Cube cube = config.format == CubeFormat::Fits ? load_fits(config.input)
                                                  : load_raw(config.input, config.raw_dims);
    cube.check_finite();
    return cube;
}

PipelineReport run_pipeline(const Cube& cube, const PipelineConfig& config) {
    if (config.max_level < 1)
        throw std::invalid_argument("max_level must be >= 1");
    const FilterBank bank = filter_bank(config.wavelet);

    PipelineReport report;
    report.wavelet = bank.name();

    std::vector<MraLevel> levels = decompose(cube, bank, config.max_level, config.border);
    const int computed = static_cast<int>(levels.size()) - 1;
    if (computed < config.max_level)
        report.warnings.push_back("stopped after " + std::to_string(computed) + " of " +
                                  std::to_string(config.max_level) + " levels: an axis of " +
                                  to_string(levels.back().approx.dims()) + " is shorter than the " +
                                  std::to_string(bank.length()) + "-tap filter");

    const double fixed_rms = estimate_rms(cube, config.rms_estimator);
    std::vector<double> rms_used(levels.size());
    for (std::size_t j = 0; j < levels.size(); ++j) {
        rms_used[j] = config.rms_mode == RmsMode::Fixed
                          ? fixed_rms
                          : estimate_rms(levels[j].recon, config.rms_estimator);
        if (!(rms_used[j] > 0.0))
            report.warnings.push_back("level " + std::to_string(j) +
                                      ": rms is zero, clumping skipped");
    }

    auto run_level = [&](std::size_t j) {
        try {
            return analyse_level(levels[j].recon, static_cast<int>(j), rms_used[j], config);
        } catch (const std::exception& e) {
            throw std::runtime_error("level " + std::to_string(j) + ": " + e.what());
        }
    };
    report.levels.resize(levels.size());
    if (config.workers > 1) {
        std::vector<std::future<LevelResult>> jobs;
        for (std::size_t j = 0; j < levels.size(); ++j)
            jobs.push_back(std::async(std::launch::async, run_level, j));
        for (std::size_t j = 0; j < levels.size(); ++j)
            report.levels[j] = jobs[j].get();
    } else {
        for (std::size_t j = 0; j < levels.size(); ++j)
            report.levels[j] = run_level(j);
    }

    const std::vector<LevelView> views = report.level_views();
    report.tree = link_levels(views, config.link_mode);

    if (!config.exports.any())
        return report;

    std::filesystem::create_directories(config.out_dir);
    auto out = [&](const std::string& name) {
        report.written.push_back(config.out_dir / name);
        return report.written.back();
    };
    for (std::size_t j = 0; j < levels.size(); ++j) {
        const std::string tag = "L" + std::to_string(j);
        if (config.exports.recon) {
            if (config.recon_format == CubeFormat::Fits)
                save_fits(levels[j].recon, out("recon_" + tag + ".fits"));
            else
                save_raw(levels[j].recon, out("recon_" + tag + ".raw"));
        }
        if (config.exports.caa)
            save_raw_labels(report.levels[j].segmentation.caa.labels, out("caa_" + tag + ".raw"));
    }
    if (config.exports.stats)
        write_text(out("stats.csv"), stats_csv(report));
    if (config.exports.catalog)
        write_text(out("catalog.json"), catalog_json(report, config));
    if (config.exports.tree_dot)
        write_text(out("tree.dot"), export_tree(report.tree, TreeFormat::Dot));
    if (config.exports.tree_json)
        write_text(out("tree.json"), export_tree(report.tree, TreeFormat::Json));
    return report;
}

PipelineReport run_pipeline(const PipelineConfig& config) {
    return run_pipeline(load_input(config), config);
}

std::string stats_csv(const PipelineReport& report) {
    std::ostringstream csv;
    csv << "level,rms,entropy,n_clumps,biggest_pix,mean_pix\n";
    for (const LevelResult& r : report.levels)
        csv << r.stats.level << ',' << fmt_g(r.stats.rms) << ',' << fmt_g(r.stats.entropy) << ','
            << r.metrics.n_clumps << ',' << r.metrics.biggest_pix << ','
            << fmt_g(r.metrics.mean_pix) << '\n';
    return csv.str();
}

std::string catalog_json(const PipelineReport& report, const PipelineConfig& config) {
    nlohmann::ordered_json j;
    j["wavelet"] = report.wavelet;
    j["rms_mode"] = rms_mode_name(config.rms_mode);
    j["levels"] = nlohmann::ordered_json::array();
    j["clumps"] = nlohmann::ordered_json::array();
    for (const LevelResult& r : report.levels) {
        j["levels"].push_back({{"level", r.stats.level},
                               {"rms", r.stats.rms},
                               {"rms_used", r.rms_used},
                               {"entropy", r.stats.entropy},
                               {"n_clumps", r.metrics.n_clumps}});
        for (const Clump& c : r.segmentation.clumps) {
            nlohmann::ordered_json rec;
            rec["node"] = node_id(c.level, c.id);
            rec["level"] = c.level;
            rec["id"] = c.id;
            rec["n_pix"] = c.n_pix();
            rec["peak"] = c.peak_pos;
            rec["peak_val"] = c.peak_val;
            rec["total_intensity"] = c.total_intensity;
            rec["centroid"] = c.centroid;
            j["clumps"].push_back(std::move(rec));
        }
    }
    return j.dump(2) + "\n";
}

} // namespace wavclump

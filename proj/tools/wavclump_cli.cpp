// wavclump: multiresolution clump analysis of 3D spectroscopic cubes.
//
//   wavclump run --input cube.fits --wavelet db5 --levels 4 --emit stats,tree-dot
//   wavclump synth --preset orion --seed 7 --out orion.fits
//   wavclump bank-dump --wavelet sym4

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wavclump/cube_io.hpp"
#include "wavclump/pipeline.hpp"
#include "wavclump/synthetic.hpp"
#include "wavclump/wavelet_bank.hpp"

using namespace wavclump;

namespace {

Dims parse_dims(const std::string& text) {
    Dims d{};
    std::istringstream in(text);
    std::string part;
    int i = 0;
    while (std::getline(in, part, ',')) {
        if (i == 3)
            throw std::invalid_argument("--dims takes three comma-separated sizes");
        d[static_cast<std::size_t>(i++)] = std::stoul(part);
    }
    if (i != 3)
        throw std::invalid_argument("--dims takes three comma-separated sizes");
    return d;
}

SynthSpec synth_spec(const std::string& preset_or_file) {
    if (preset_or_file == "orion")
        return orion_like_spec();
    if (preset_or_file == "two-blob")
        return two_blob_spec();
    std::ifstream in(preset_or_file);
    if (!in)
        throw std::invalid_argument("'" + preset_or_file +
                                    "' is neither a preset (orion, two-blob) nor a readable file");
    std::stringstream text;
    text << in.rdbuf();
    return parse_synth_spec(text.str());
}

void print_report(const PipelineReport& report, const PipelineConfig& config) {
    std::printf("wavelet %s, rms mode %s\n", report.wavelet.c_str(),
                std::string(rms_mode_name(config.rms_mode)).c_str());
    std::printf("%5s %12s %10s %12s %9s %11s %10s\n", "level", "rms", "entropy", "rms_used",
                "n_clumps", "biggest_pix", "mean_pix");
    for (const LevelResult& r : report.levels)
        std::printf("%5d %12.6g %10.5f %12.6g %9zu %11zu %10.2f\n", r.stats.level, r.stats.rms,
                    r.stats.entropy, r.rms_used, r.metrics.n_clumps, r.metrics.biggest_pix,
                    r.metrics.mean_pix);
    std::printf("tree: %zu nodes, %zu edges, %zu isolated\n", report.tree.nodes.size(),
                report.tree.edges.size(), report.tree.isolated().size());
    for (const auto& w : report.warnings)
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    for (const auto& p : report.written)
        std::printf("wrote %s\n", p.string().c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wavelet multiresolution clump analysis of 3D data cubes"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "decompose, clump every level and link the levels");
    PipelineConfig config;
    std::string input, format = "fits", dims, synth, rms_mode = "variable",
                rms_estimator = "plain", link_mode = "centroid", border = "symmetric",
                neighborhood = "26", recon_format = "fits";
    std::vector<std::string> emit;
    run->add_option("--input", input, "input cube (FITS or raw)");
    run->add_option("--format", format, "input format")->check(CLI::IsMember({"fits", "raw"}));
    run->add_option("--dims", dims, "raw cube dims axis0,axis1,axis2");
    run->add_option("--synth", synth, "synthetic input: preset (orion, two-blob) or JSON spec");
    run->add_option("--seed", config.seed, "seed for synthetic input");
    run->add_option("--wavelet", config.wavelet, "haar, db5, sym4, coif3, bior3.5, rbio3.5");
    run->add_option("--levels", config.max_level, "decomposition levels")->check(CLI::PositiveNumber);
    run->add_option("--border", border, "border extension")
        ->check(CLI::IsMember({"symmetric", "periodic", "zero"}));
    run->add_option("--rms-mode", rms_mode)->check(CLI::IsMember({"variable", "fixed"}));
    run->add_option("--rms-estimator", rms_estimator)->check(CLI::IsMember({"plain", "sigma-clip"}));
    run->add_option("--noise-mult", config.clump.noise_mult, "threshold in units of rms");
    run->add_option("--min-dip-mult", config.clump.min_dip_mult, "merge dip in units of rms");
    run->add_option("--min-pix", config.clump.min_pix, "smallest clump kept");
    run->add_option("--neighborhood", neighborhood)->check(CLI::IsMember({"6", "26"}));
    run->add_option("--bins", config.bins, "entropy histogram bins");
    run->add_option("--link-mode", link_mode)->check(CLI::IsMember({"centroid", "peak"}));
    run->add_option("--out-dir", config.out_dir, "directory for exports");
    run->add_option("--emit", emit, "recon, caa, catalog, stats, tree-dot, tree-json")
        ->delimiter(',')
        ->check(CLI::IsMember({"recon", "caa", "catalog", "stats", "tree-dot", "tree-json"}));
    run->add_option("--recon-format", recon_format)->check(CLI::IsMember({"fits", "raw"}));
    run->add_option("--workers", config.workers, "levels clumped concurrently");

    // synth
    auto* syn = app.add_subcommand("synth", "write a seeded synthetic cube");
    std::string syn_spec = "orion", syn_out, syn_format = "fits";
    std::uint64_t syn_seed = 42;
    syn->add_option("--preset,--spec", syn_spec, "preset (orion, two-blob) or JSON spec file");
    syn->add_option("--seed", syn_seed);
    syn->add_option("--out", syn_out)->required();
    syn->add_option("--format", syn_format)->check(CLI::IsMember({"fits", "raw"}));

    // bank-dump
    auto* dump = app.add_subcommand("bank-dump", "print the filter taps of a wavelet");
    std::string dump_name = "db5";
    dump->add_option("--wavelet", dump_name);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            config.input = input;
            config.format = parse_cube_format(format);
            if (!dims.empty())
                config.raw_dims = parse_dims(dims);
            else if (config.format == CubeFormat::Raw && input.size())
                throw std::invalid_argument("--format raw needs --dims");
            if (!synth.empty())
                config.synth = synth_spec(synth);
            else if (input.empty())
                throw std::invalid_argument("give --input or --synth");
            config.rms_mode = parse_rms_mode(rms_mode);
            config.rms_estimator = parse_rms_estimator(rms_estimator);
            config.link_mode = parse_link_mode(link_mode);
            config.border = parse_border_mode(border);
            config.clump.neighborhood = parse_neighborhood(neighborhood);
            config.recon_format = parse_cube_format(recon_format);
            for (const auto& e : emit)
                config.exports.enable(e);
            const PipelineReport report = run_pipeline(config);
            print_report(report, config);
        } else if (*syn) {
            const SynthCube s = generate_synthetic(synth_spec(syn_spec), syn_seed);
            if (syn_format == "fits")
                save_fits(s.cube, syn_out);
            else
                save_raw(s.cube, syn_out);
            const Dims& d = s.cube.dims();
            std::printf("wrote %s (%zu,%zu,%zu), %zu components\n", syn_out.c_str(), d[0], d[1],
                        d[2], s.truth.size());
        } else if (*dump) {
            const FilterBank bank = filter_bank(dump_name);
            std::printf("%s (%zu taps)\n", bank.name().c_str(), bank.length());
            const std::pair<const char*, const std::vector<double>*> rows[] = {
                {"lo_d", &bank.lo_d}, {"hi_d", &bank.hi_d}, {"lo_r", &bank.lo_r}, {"hi_r", &bank.hi_r}};
            for (const auto& [label, taps] : rows) {
                std::printf("%s:", label);
                for (double t : *taps)
                    std::printf(" %.17g", t);
                std::printf("\n");
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

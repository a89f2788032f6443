// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "wavclump/cube_io.hpp"
#include "wavclump/pipeline.hpp"

using namespace wavclump;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass)
            detail = why;
        pass = false;
    }
};

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const Cube& orion_cube() {
    static const Cube cube = generate_synthetic(orion_like_spec(), kSeed).cube;
    return cube;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome filter_banks() {
    Outcome o;
    for (const auto& name : shipped_wavelets()) {
        const FilterBank b = filter_bank(name);
        const std::size_t n = b.length();
        auto sum = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); };
        double even = 0.0, odd = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            (k % 2 ? odd : even) += b.lo_r[k];
        if (std::abs(even - odd) > 1e-10)
            o.fail(name + ": even/odd lo_r sums differ");
        if (std::abs(sum(b.hi_d)) > 1e-10)
            o.fail(name + ": hi_d does not sum to 0");
        if (!b.orthonormal())
            continue;
        double sq = 0.0;
        for (double t : b.lo_d)
            sq += t * t;
        if (std::abs(sum(b.lo_d) - std::sqrt(2.0)) > 1e-10)
            o.fail(name + ": lo_d does not sum to sqrt(2)");
        if (std::abs(sq - 1.0) > 1e-10)
            o.fail(name + ": lo_d not unit norm");
        for (std::size_t k = 0; k < n; ++k) {
            if (b.lo_r[k] != b.lo_d[n - 1 - k])
                o.fail(name + ": lo_r is not lo_d reversed");
            if (std::abs(b.hi_d[k] - (k % 2 ? -1.0 : 1.0) * b.lo_d[n - 1 - k]) > 1e-10)
                o.fail(name + ": quadrature mirror relation broken");
        }
    }
    if (o.pass)
        o.detail = std::to_string(shipped_wavelets().size()) + " banks";
    return o;
}

Outcome constant_preservation() {
    Outcome o;
    double worst = 0.0;
    const Cube c({16, 16, 16}, 3.25);
    for (const auto& name : shipped_wavelets()) {
        const FilterBank b = filter_bank(name);
        const auto levels = decompose(c, b, 3);
        if (levels.size() != 4)
            o.fail(name + " (" + std::to_string(b.length()) + " taps) reaches only " +
                   std::to_string(levels.size() - 1) + " of 3 levels on 16^3 under the early-stop rule");
        for (std::size_t j = 1; j < levels.size(); ++j)
            for (std::size_t i = 0; i < c.size(); ++i)
                worst = std::max(worst, std::abs(levels[j].recon[i] - c[i]));
    }
    if (worst > 1e-9)
        o.fail(fmt("max error %.3g", worst));
    o.detail += (o.pass ? "" : "; ") + fmt("max error over computed levels %.3g", worst);
    return o;
}

Outcome lowpass_oracle() {
    Outcome o;
    std::mt19937_64 rng(kSeed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> length(8, 41);
    double worst = 0.0;
    for (const auto& name : shipped_wavelets()) {
        const FilterBank b = filter_bank(name);
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = length(rng);
            std::vector<double> x(n);
            for (double& v : x)
                v = normal(rng);
            const auto approx = oracle::dwt_line(x, b.lo_d);
            const auto expect = oracle::idwt_line(approx, b.lo_r, n);
            const Cube line({n, 1, 1}, std::vector<double>(x));
            const Cube got = upsample_conv_axis(conv_downsample_axis(line, 0, b.lo_d), 0, b.lo_r, n);
            for (std::size_t i = 0; i < n; ++i)
                worst = std::max(worst, std::abs(got[i] - expect[i]));
        }
    }
    if (worst > 1e-10)
        o.fail(fmt("max error %.3g", worst));
    else
        o.detail = fmt("50 lines x 6 banks, max error %.3g", worst);
    return o;
}

Outcome size_law() {
    Outcome o;
    const Dims shapes[] = {{16, 16, 16}, {41, 100, 100}, {33, 47, 64}, {64, 64, 64}, {128, 20, 21}};
    int checked = 0;
    for (const auto& name : shipped_wavelets()) {
        const FilterBank b = filter_bank(name);
        const std::size_t L = b.length();
        for (const Dims& d : shapes) {
            Cube c(d, 1.0);
            Dims expect = d;
            for (int j = 1; j <= 4; ++j) {
                bool fits = true;
                for (std::size_t n : expect)
                    fits = fits && n >= L && n >= 2;
                if (!fits)
                    break;
                for (std::size_t& n : expect)
                    n = (n + L - 1) / 2;
                c = dwt3d_step(c, b);
                ++checked;
                if (c.dims() != expect || c.size() != voxel_count(expect))
                    o.fail(name + " " + to_string(d) + " level " + std::to_string(j) + ": got " +
                           to_string(c.dims()) + ", expected " + to_string(expect));
            }
        }
    }
    // Without border growth (Haar, even axes) each level is exactly one eighth.
    Cube c({64, 64, 64}, 1.0);
    const FilterBank haar = filter_bank("haar");
    for (int j = 1; j <= 4; ++j) {
        const std::size_t before = c.size();
        c = dwt3d_step(c, haar);
        if (c.size() * 8 != before)
            o.fail("haar 64^3 level " + std::to_string(j) + " is not 1/8 of its input");
    }
    if (o.pass)
        o.detail = std::to_string(checked) + " steps";
    return o;
}

struct Trend {
    std::vector<double> rms, entropy;
};

std::map<std::string, Trend>& trends() {
    static std::map<std::string, Trend> t;
    return t;
}

Outcome rms_trend() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& name : shipped_wavelets()) {
        Trend tr;
        for (const MraLevel& lv : decompose(orion_cube(), filter_bank(name), 4)) {
            tr.rms.push_back(rms(lv.recon));
            tr.entropy.push_back(entropy(lv.recon, 256));
        }
        trends()[name] = tr;
    }
    const double elapsed = seconds_since(t0);
    for (const char* name : {"db5", "sym4", "coif3"}) {
        const Trend& tr = trends()[name];
        if (tr.rms.size() != 5) {
            o.fail(std::string(name) + ": fewer than 4 levels");
            continue;
        }
        for (std::size_t j = 1; j < 5; ++j)
            if (!(tr.rms[j] < tr.rms[j - 1]))
                o.fail(std::string(name) + " rms not decreasing at level " + std::to_string(j));
    }
    const double haar4 = trends()["haar"].rms.back();
    const double db5_4 = trends()["db5"].rms.back();
    if (!(haar4 <= db5_4))
        o.fail(fmt("haar level-4 rms %.6g > db5 %.6g", haar4, db5_4));
    if (elapsed >= 60.0)
        o.fail(fmt("took %.1f s", elapsed));
    if (o.pass)
        o.detail = fmt("haar L4 %.5f <= db5 L4 %.5f", haar4, db5_4) + fmt(", %.2f s", elapsed);
    return o;
}

Outcome entropy_trend() {
    Outcome o;
    for (const auto& name : shipped_wavelets()) {
        const Trend& tr = trends()[name];
        for (std::size_t j = 1; j < tr.entropy.size(); ++j)
            if (tr.entropy[j] > tr.entropy[j - 1]) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "%s entropy rises at level %zu: %.4f -> %.4f bits",
                              name.c_str(), j, tr.entropy[j - 1], tr.entropy[j]);
                o.fail(buf);
            }
    }
    std::string rises;
    for (const auto& name : shipped_wavelets()) {
        const Trend& tr = trends()[name];
        for (std::size_t j = 1; j < tr.entropy.size(); ++j)
            if (tr.entropy[j] > tr.entropy[j - 1])
                rises += (rises.empty() ? "" : ",") + name + "@L" + std::to_string(j);
    }
    if (!o.pass)
        o.detail += " (all rises: " + rises + ")";
    else
        o.detail = "6 families";
    return o;
}

Outcome fellwalker_oracle() {
    Outcome o;
    std::mt19937_64 rng(kSeed);
    ClumpParams p;
    p.rms = 1.0;
    p.noise_mult = 0.0;
    p.min_dip_mult = 0.0;
    p.min_pix = 1;
    std::vector<double> values(216);
    std::iota(values.begin(), values.end(), 1.0);
    std::size_t clumps = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::shuffle(values.begin(), values.end(), rng);
        const Cube c({6, 6, 6}, std::vector<double>(values));
        const Segmentation s = fellwalker(c, p);
        clumps += s.clumps.size();
        if (s.caa.labels != oracle::basin_labels(c, 0.0))
            o.fail("cube " + std::to_string(trial) + " differs from exhaustive ascent");
    }
    if (o.pass)
        o.detail = "100 cubes, " + std::to_string(clumps) + " basins";
    return o;
}

PipelineReport orion_report(RmsMode mode) {
    PipelineConfig config;
    config.wavelet = "db5";
    config.max_level = 4;
    config.rms_mode = mode;
    return run_pipeline(orion_cube(), config);
}

Outcome clump_trends() {
    Outcome o;
    const PipelineReport var = orion_report(RmsMode::Variable);
    const PipelineReport fix = orion_report(RmsMode::Fixed);
    if (var.levels.size() != 5 || fix.levels.size() != 5) {
        o.fail("fewer than 4 levels");
        return o;
    }
    std::string counts, means;
    for (std::size_t j = 1; j <= 4; ++j) {
        const ClumpMetrics& m = var.levels[j].metrics;
        counts += (j > 1 ? "," : "") + std::to_string(m.n_clumps);
        means += (j > 1 ? "," : "") + fmt("%.0f", m.mean_pix);
        if (j > 1) {
            const ClumpMetrics& prev = var.levels[j - 1].metrics;
            if (m.n_clumps > prev.n_clumps)
                o.fail("n_clumps rises at level " + std::to_string(j));
            if (m.mean_pix < prev.mean_pix)
                o.fail("mean_pix falls at level " + std::to_string(j));
        }
        if (j >= 2 && !(m.mean_pix > fix.levels[j].metrics.mean_pix))
            o.fail(fmt("level %.0f: variable mean_pix %.1f", static_cast<double>(j), m.mean_pix) +
                   fmt(" <= fixed %.1f", fix.levels[j].metrics.mean_pix));
    }
    const std::string summary = "n_clumps L1-4 " + counts + "; mean_pix " + means;
    o.detail = o.pass ? summary : o.detail + " (" + summary + ")";
    return o;
}

Outcome hierarchy_soundness() {
    Outcome o;
    std::size_t edges = 0;
    for (LinkMode mode : {LinkMode::Centroid, LinkMode::Peak}) {
        PipelineConfig config;
        config.link_mode = mode;
        const PipelineReport r = run_pipeline(orion_cube(), config);
        const auto views = r.level_views();
        edges += r.tree.edges.size();
        if (!edges_sound(r.tree, views, mode))
            o.fail(std::string(mode == LinkMode::Peak ? "peak" : "centroid") + " mode edge fails re-check");
    }

    PipelineConfig config;
    config.synth = two_blob_spec();
    config.max_level = 2;
    config.rms_mode = RmsMode::Fixed;
    const PipelineReport r = run_pipeline(config);
    const auto views = r.level_views();
    if (!edges_sound(r.tree, views, config.link_mode))
        o.fail("two-blob edge fails re-check");
    if (r.levels.size() != 3 || r.levels[1].metrics.n_clumps != 2 || r.levels[2].metrics.n_clumps != 1) {
        o.fail("two-blob: expected 2 clumps at level 1 and 1 at level 2");
    } else {
        int children = 0;
        for (const auto& e : r.tree.edges)
            if (e.parent == "L2C1")
                children += e.child == "L1C1" || e.child == "L1C2";
        if (children != 2)
            o.fail("two-blob: L2C1 does not parent both level-1 clumps");
    }
    if (o.pass)
        o.detail = std::to_string(edges) + " orion edges re-checked; L2C1 -> {L1C1, L1C2}";
    return o;
}

Outcome determinism() {
    Outcome o;
    const fs::path root = fs::temp_directory_path() / "wavclump_acceptance";
    fs::remove_all(root);
    PipelineReport reports[2];
    for (int k = 0; k < 2; ++k) {
        PipelineConfig config;
        config.synth = orion_like_spec();
        config.seed = kSeed;
        config.out_dir = root / ("run" + std::to_string(k));
        config.recon_format = k == 0 ? CubeFormat::Fits : CubeFormat::Raw;
        for (const char* e : {"recon", "caa", "catalog", "stats", "tree-json"})
            config.exports.enable(e);
        reports[k] = run_pipeline(config);
    }
    const fs::path a = root / "run0", b = root / "run1";
    for (const char* f : {"stats.csv", "catalog.json", "tree.json"})
        if (slurp(a / f).empty() || slurp(a / f) != slurp(b / f))
            o.fail(std::string(f) + " differs between runs");
    for (int j = 0; j <= 4; ++j) {
        const std::string caa = "caa_L" + std::to_string(j) + ".raw";
        if (slurp(a / caa) != slurp(b / caa))
            o.fail(caa + " differs between runs");
    }

    const Cube& cube = orion_cube();
    const auto levels = decompose(cube, filter_bank("db5"), 4);
    for (std::size_t j = 0; j < levels.size(); ++j) {
        const std::string tag = "recon_L" + std::to_string(j);
        const Cube fits = load_fits(a / (tag + ".fits"));
        const Cube raw = load_raw(b / (tag + ".raw"), cube.dims());
        const auto want = levels[j].recon.data();
        if (!std::equal(want.begin(), want.end(), fits.data().begin(), fits.data().end()))
            o.fail(tag + ".fits does not reload equal");
        if (!std::equal(want.begin(), want.end(), raw.data().begin(), raw.data().end()))
            o.fail(tag + ".raw does not reload equal");
        const auto labels = load_raw_labels(a / ("caa_L" + std::to_string(j) + ".raw"), cube.dims());
        if (labels != reports[0].levels[j].segmentation.caa.labels)
            o.fail("caa level " + std::to_string(j) + " does not reload equal");
    }
    fs::remove_all(root);
    if (o.pass)
        o.detail = "stats, catalog, tree, 5 CAAs identical; FITS and raw reload exactly";
    return o;
}

Outcome performance() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    PipelineConfig config;
    config.synth = orion_like_spec();
    config.seed = kSeed;
    run_pipeline(config);
    config.rms_mode = RmsMode::Fixed;
    run_pipeline(config);
    const double elapsed = seconds_since(t0);
    if (elapsed >= 30.0)
        o.fail(fmt("took %.1f s", elapsed));
    else
        o.detail = fmt("both rms modes in %.2f s", elapsed);
    return o;
}

} // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "filter-bank validity", filter_banks},
        {2, "constant preservation", constant_preservation},
        {3, "low-pass round-trip oracle", lowpass_oracle},
        {4, "approximation size law", size_law},
        {5, "rms trend over levels", rms_trend},
        {6, "entropy trend over levels", entropy_trend},
        {7, "fellwalker oracle equivalence", fellwalker_oracle},
        {8, "clump count and size trends", clump_trends},
        {9, "hierarchy soundness", hierarchy_soundness},
        {10, "determinism and round trips", determinism},
        {11, "desk-scale performance", performance},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::printf("[%s] %d: %s - %s\n", o.pass ? "PASS" : "FAIL", c.number, c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
                std::size(criteria));
    return failed == 0 ? 0 : 1;
}

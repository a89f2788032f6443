#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "oracles.hpp"
#include "wavclump/clumping.hpp"
#include "wavclump/synthetic.hpp"

using namespace wavclump;

namespace {

Cube gaussians(const Dims& d, const std::vector<GaussianComponent>& comps) {
    SynthSpec s;
    s.dims = d;
    s.components = comps;
    return generate_synthetic(s, 0).cube;
}

Cube random_cube(const Dims& d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Cube c(d);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = u(rng);
    return c;
}

ClumpParams raw_params(Neighborhood nb = Neighborhood::Full26) {
    ClumpParams p;
    p.rms = 1.0;
    p.noise_mult = 0.0;
    p.min_dip_mult = 0.0;
    p.min_pix = 1;
    p.neighborhood = nb;
    return p;
}

} // namespace

TEST_CASE("one Gaussian gives one clump at its center") {
    const Cube c = gaussians({16, 16, 16}, {{10.0, {8, 8, 8}, {2, 2, 2}}});
    ClumpParams p;
    p.rms = 0.5;
    p.noise_mult = 2.0;
    const Segmentation s = fellwalker(c, p);
    REQUIRE(s.clumps.size() == 1);
    CHECK(s.caa.n_clumps == 1);
    CHECK(s.clumps[0].peak_pos == Voxel{8, 8, 8});
    CHECK(s.clumps[0].peak_val == doctest::Approx(10.0));
    for (double x : s.clumps[0].centroid)
        CHECK(x == doctest::Approx(8.0).epsilon(1e-12));

    const auto expect = oracle::basin_labels(c, 1.0);
    CHECK(s.caa.labels == expect);
    std::size_t above = 0;
    for (double v : c.data())
        above += v >= 1.0;
    CHECK(s.clumps[0].n_pix() == above);
}

TEST_CASE("two well separated Gaussians give two clumps, brightest first") {
    const Cube c = gaussians({16, 16, 28}, {{8.0, {8, 8, 8}, {2, 2, 2}}, {10.0, {8, 8, 18}, {2, 2, 2}}});
    ClumpParams p;
    p.rms = 0.5;
    const Segmentation s = fellwalker(c, p, 2);
    REQUIRE(s.clumps.size() == 2);
    CHECK(s.clumps[0].peak_pos == Voxel{8, 8, 18});
    CHECK(s.clumps[1].peak_pos == Voxel{8, 8, 8});
    CHECK(s.clumps[0].id == 1);
    CHECK(s.clumps[1].id == 2);
    CHECK(s.clumps[0].level == 2);
}

TEST_CASE("nothing above threshold gives no clumps") {
    ClumpParams p;
    p.rms = 1.0;
    p.noise_mult = 2.0;
    const Segmentation s = fellwalker(Cube({8, 8, 8}, 1.5), p);
    CHECK(s.clumps.empty());
    CHECK(s.caa.n_clumps == 0);
    CHECK(std::all_of(s.caa.labels.begin(), s.caa.labels.end(), [](int l) { return l == 0; }));
}

TEST_CASE("invalid parameters are rejected") {
    const Cube c({4, 4, 4}, 1.0);
    ClumpParams p;
    p.rms = 0.0;
    CHECK_THROWS_AS(fellwalker(c, p), std::invalid_argument);
    p.rms = -1.0;
    CHECK_THROWS_AS(fellwalker(c, p), std::invalid_argument);
    p = ClumpParams{};
    p.noise_mult = -1.0;
    CHECK_THROWS_AS(fellwalker(c, p), std::invalid_argument);
    p = ClumpParams{};
    p.min_pix = 0;
    CHECK_THROWS_AS(fellwalker(c, p), std::invalid_argument);
    CHECK(parse_neighborhood("6") == Neighborhood::Faces6);
    CHECK(parse_neighborhood("full") == Neighborhood::Full26);
    CHECK_THROWS(parse_neighborhood("18"));
}

TEST_CASE("clump metrics") {
    const ClumpMetrics empty = clump_metrics({});
    CHECK(empty.n_clumps == 0);
    CHECK(empty.biggest_pix == 0);
    CHECK(empty.mean_pix == 0.0);

    std::vector<Clump> clumps(2);
    clumps[0].voxels.resize(10);
    clumps[1].voxels.resize(30);
    const ClumpMetrics m = clump_metrics(clumps);
    CHECK(m.n_clumps == 2);
    CHECK(m.biggest_pix == 30);
    CHECK(m.mean_pix == 20.0);
}

TEST_CASE("peaks separated by a shallow dip are merged") {
    const Cube line({5, 1, 1}, std::vector<double>{1, 5, 4, 6, 1});
    ClumpParams p = raw_params();
    // Peaks 5 and 6, col 4, dip 1.
    p.min_dip_mult = 0.5;
    const Segmentation apart = fellwalker(line, p);
    REQUIRE(apart.clumps.size() == 2);
    CHECK(apart.caa.labels == std::vector<std::int32_t>{2, 2, 1, 1, 1});

    p.min_dip_mult = 1.5;
    const Segmentation merged = fellwalker(line, p);
    REQUIRE(merged.clumps.size() == 1);
    CHECK(merged.clumps[0].peak_pos == Voxel{3, 0, 0});
    CHECK(merged.clumps[0].n_pix() == 5);

    // The dip is measured in units of rms.
    p.rms = 0.1;
    CHECK(fellwalker(line, p).clumps.size() == 2);
}

TEST_CASE("merging follows the shallowest dip first") {
    // Peaks 10, 9, 10 with cols 8.5 and 5: only the left pair is within 2.
    const Cube line({7, 1, 1}, std::vector<double>{1, 10, 8.5, 9, 5, 10, 1});
    ClumpParams p = raw_params();
    p.min_dip_mult = 2.0;
    const Segmentation s = fellwalker(line, p);
    REQUIRE(s.clumps.size() == 2);
    CHECK(s.caa.labels == std::vector<std::int32_t>{1, 1, 1, 1, 2, 2, 2});
}

TEST_CASE("small clumps are dissolved") {
    const Cube line({7, 1, 1}, std::vector<double>{3, 4, 3, 0, 5, 6, 5});
    ClumpParams p = raw_params();
    p.noise_mult = 1.0;
    CHECK(fellwalker(line, p).clumps.size() == 2);
    p.min_pix = 4;
    CHECK(fellwalker(line, p).clumps.empty());
    p.min_pix = 3;
    const Segmentation s = fellwalker(line, p);
    CHECK(s.clumps.size() == 2);
}

TEST_CASE("plateaus drain to their lowest index") {
    const Cube flat({3, 3, 3}, 2.0);
    const Segmentation s = fellwalker(flat, raw_params());
    REQUIRE(s.clumps.size() == 1);
    CHECK(s.clumps[0].peak_pos == Voxel{0, 0, 0});
    CHECK(s.clumps[0].n_pix() == 27);
}

TEST_CASE("blank voxels are never labelled and block walks") {
    Cube line({5, 1, 1}, std::vector<double>{1, 2, 3, 4, 5});
    line.set_blank(2);
    const Segmentation s = fellwalker(line, raw_params());
    REQUIRE(s.clumps.size() == 2);
    CHECK(s.caa.labels == std::vector<std::int32_t>{2, 2, 0, 1, 1});
}

TEST_CASE("zero-intensity clump falls back to the unweighted centroid") {
    const Cube line({4, 1, 1}, std::vector<double>{0, 0, 0, 0});
    const Segmentation s = fellwalker(line, raw_params());
    REQUIRE(s.clumps.size() == 1);
    CHECK(s.clumps[0].centroid[0] == 1.5);
}

TEST_CASE("property: with no merging, labels equal independent ascents") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const Neighborhood nb = trial % 2 ? Neighborhood::Faces6 : Neighborhood::Full26;
        CAPTURE(trial);
        const Cube c = random_cube({8, 8, 8}, rng);
        const double threshold = trial % 3 == 0 ? 0.0 : 0.4;
        ClumpParams p = raw_params(nb);
        p.noise_mult = threshold;
        const Segmentation s = fellwalker(c, p);
        CHECK(s.caa.labels == oracle::basin_labels(c, threshold, nb == Neighborhood::Faces6));
    }
}

TEST_CASE("property: a higher threshold never labels more voxels") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const Cube c = random_cube({10, 9, 8}, rng);
        ClumpParams p;
        p.rms = 0.1;
        p.min_pix = 1;
        p.min_dip_mult = 1.0;
        std::size_t prev = c.size() + 1;
        for (double mult : {0.0, 2.0, 4.0, 6.0, 8.0, 10.0}) {
            p.noise_mult = mult;
            const Segmentation s = fellwalker(c, p);
            const auto labelled = static_cast<std::size_t>(
                std::count_if(s.caa.labels.begin(), s.caa.labels.end(), [](int l) { return l != 0; }));
            CHECK(labelled <= prev);
            prev = labelled;
        }
    }
}

TEST_CASE("property: segmentation is deterministic and consistent with the catalogue") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const Cube c = random_cube({9, 9, 9}, rng);
        ClumpParams p;
        p.rms = 0.2;
        p.noise_mult = 1.5;
        p.min_dip_mult = 0.5;
        p.min_pix = 3;
        const Segmentation a = fellwalker(c, p);
        const Segmentation b = fellwalker(c, p);
        CHECK(a.caa.labels == b.caa.labels);

        std::map<int, std::size_t> counts;
        for (int l : a.caa.labels)
            if (l != 0)
                counts[l]++;
        CHECK(counts.size() == a.clumps.size());
        for (std::size_t k = 0; k < a.clumps.size(); ++k) {
            const Clump& cl = a.clumps[k];
            CHECK(cl.id == static_cast<int>(k + 1));
            CHECK(cl.n_pix() == counts[cl.id]);
            CHECK(cl.n_pix() >= 3);
            CHECK(a.caa.at(cl.peak_pos) == cl.id);
            if (k > 0)
                CHECK(cl.peak_val <= a.clumps[k - 1].peak_val);
            for (const Voxel& v : cl.voxels)
                CHECK(c(v[0], v[1], v[2]) <= cl.peak_val);
        }
    }
}

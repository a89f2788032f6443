#include "wavclump/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavclump {

namespace {

std::vector<double> valid_values(const Cube& cube) {
    std::vector<double> v;
    v.reserve(cube.size());
    for (std::size_t i = 0; i < cube.size(); ++i)
        if (!cube.is_blank(i))
            v.push_back(cube[i]);
    if (v.empty())
        throw std::invalid_argument("statistics of an all-blank cube are undefined");
    return v;
}

} // namespace

double rms(const Cube& cube) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < cube.size(); ++i) {
        if (cube.is_blank(i))
            continue;
        sum += cube[i] * cube[i];
        ++n;
    }
    if (n == 0)
        throw std::invalid_argument("rms of an all-blank cube is undefined");
    return std::sqrt(sum / static_cast<double>(n));
}

double sigma_clipped_rms(const Cube& cube, double kappa, int max_iter) {
    std::vector<double> v = valid_values(cube);
    double mean = 0.0;
    double sigma = 0.0;
    for (int iter = 0; iter <= max_iter; ++iter) {
        double s = 0.0;
        for (double x : v)
            s += x;
        mean = s / static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v)
            ss += (x - mean) * (x - mean);
        sigma = std::sqrt(ss / static_cast<double>(v.size()));
        if (iter == max_iter || sigma == 0.0)
            break;
        const std::size_t before = v.size();
        std::erase_if(v, [&](double x) { return std::abs(x - mean) > kappa * sigma; });
        if (v.size() == before || v.empty())
            break;
    }
    return sigma;
}

double entropy(const Cube& cube, int bins) {
    if (bins < 2)
        throw std::invalid_argument("entropy needs at least 2 bins, got " + std::to_string(bins));
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t n = 0;
    for (std::size_t i = 0; i < cube.size(); ++i) {
        if (cube.is_blank(i))
            continue;
        lo = std::min(lo, cube[i]);
        hi = std::max(hi, cube[i]);
        ++n;
    }
    if (n == 0)
        throw std::invalid_argument("entropy of an all-blank cube is undefined");
    if (!(hi > lo))
        return 0.0;

    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    const double width = (hi - lo) / bins;
    for (std::size_t i = 0; i < cube.size(); ++i) {
        if (cube.is_blank(i))
            continue;
        auto b = static_cast<std::size_t>((cube[i] - lo) / width);
        counts[std::min(b, counts.size() - 1)]++;
    }
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0)
            continue;
        const double p = static_cast<double>(c) / static_cast<double>(n);
        h -= p * std::log2(p);
    }
    return std::max(h, 0.0);
}

LevelStats level_stats(const Cube& cube, int level, int bins) {
    return {level, rms(cube), entropy(cube, bins), cube.size() - cube.blank_count()};
}

} // namespace wavclump

#include "wavclump/clumping.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

namespace wavclump {

namespace {

using Offset = std::array<int, 3>;

std::vector<Offset> neighbor_offsets(Neighborhood nb) {
    std::vector<Offset> out;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = -1; c <= 1; ++c) {
                const int nonzero = (a != 0) + (b != 0) + (c != 0);
                if (nonzero == 0 || (nb == Neighborhood::Faces6 && nonzero != 1))
                    continue;
                out.push_back({a, b, c});
            }
    return out;
}

// Visits every in-bounds neighbour of voxel `v` (linear index `idx`).
template <typename Fn>
void for_each_neighbor(const Dims& dims, const std::vector<Offset>& offsets, const Voxel& v,
                       std::size_t idx, Fn&& fn) {
    const auto s1 = static_cast<std::ptrdiff_t>(dims[2]);
    const auto s0 = static_cast<std::ptrdiff_t>(dims[1] * dims[2]);
    for (const Offset& o : offsets) {
        if ((o[0] < 0 && v[0] == 0) || (o[0] > 0 && v[0] + 1 == dims[0]) ||
            (o[1] < 0 && v[1] == 0) || (o[1] > 0 && v[1] + 1 == dims[1]) ||
            (o[2] < 0 && v[2] == 0) || (o[2] > 0 && v[2] + 1 == dims[2]))
            continue;
        fn(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(idx) + o[0] * s0 + o[1] * s1 + o[2]));
    }
}

class Walker {
public:
    Walker(const Cube& cube, const ClumpParams& params)
        : cube_(cube), offsets_(neighbor_offsets(params.neighborhood)),
          usable_(cube.size(), 0), labels_(cube.size(), 0) {
        const double threshold = params.noise_mult * params.rms;
        for (std::size_t i = 0; i < cube.size(); ++i)
            usable_[i] = !cube.is_blank(i) && cube[i] >= threshold;
    }

    // Strict total order: higher value wins, equal values favour the lower index.
    bool above(std::size_t a, std::size_t b) const {
        return cube_[a] > cube_[b] || (cube_[a] == cube_[b] && a < b);
    }

    // Usable neighbour ranked highest, if it ranks above `idx`; otherwise idx.
    std::size_t step(std::size_t idx) const {
        std::size_t best = idx;
        for_each_neighbor(cube_.dims(), offsets_, cube_.voxel(idx), idx, [&](std::size_t n) {
            if (usable_[n] && above(n, best))
                best = n;
        });
        return best;
    }

    void walk_all() {
        std::vector<std::size_t> path;
        for (std::size_t start = 0; start < cube_.size(); ++start) {
            if (!usable_[start] || labels_[start] != 0)
                continue;
            path.clear();
            path.push_back(start);
            std::int32_t label = 0;
            std::size_t cur = start;
            for (;;) {
                const std::size_t next = step(cur);
                if (next == cur) {
                    peaks_.push_back(cur);
                    label = static_cast<std::int32_t>(peaks_.size());
                    break;
                }
                if (labels_[next] != 0) {
                    label = labels_[next];
                    break;
                }
                path.push_back(next);
                cur = next;
            }
            for (std::size_t p : path)
                labels_[p] = label;
        }
    }

    // Highest saddle between each pair of touching labels.
    std::map<std::pair<std::int32_t, std::int32_t>, double> cols() const {
        std::map<std::pair<std::int32_t, std::int32_t>, double> out;
        for (std::size_t i = 0; i < cube_.size(); ++i) {
            const std::int32_t a = labels_[i];
            if (a == 0)
                continue;
            for_each_neighbor(cube_.dims(), offsets_, cube_.voxel(i), i, [&](std::size_t n) {
                const std::int32_t b = labels_[n];
                if (n < i || b == 0 || b == a)
                    return;
                const double saddle = std::min(cube_[i], cube_[n]);
                auto key = std::minmax(a, b);
                auto [it, inserted] = out.try_emplace({key.first, key.second}, saddle);
                if (!inserted)
                    it->second = std::max(it->second, saddle);
            });
        }
        return out;
    }

    const Cube& cube_;
    std::vector<Offset> offsets_;
    std::vector<std::uint8_t> usable_;
    std::vector<std::int32_t> labels_;
    std::vector<std::size_t> peaks_; // peaks_[label - 1]
};

// Merges labels whose dip is below `max_dip`, shallowest first, to a fixed point.
// Returns the surviving representative for each label (index 0 unused).
std::vector<std::int32_t> merge_shallow(const Walker& w, double max_dip) {
    const auto n = static_cast<std::int32_t>(w.peaks_.size());
    std::vector<std::int32_t> rep(static_cast<std::size_t>(n) + 1);
    std::iota(rep.begin(), rep.end(), 0);
    if (n < 2)
        return rep;

    std::vector<std::size_t> peak(static_cast<std::size_t>(n) + 1);
    for (std::int32_t k = 1; k <= n; ++k)
        peak[static_cast<std::size_t>(k)] = w.peaks_[static_cast<std::size_t>(k - 1)];

    std::vector<std::map<std::int32_t, double>> adj(static_cast<std::size_t>(n) + 1);
    for (const auto& [key, col] : w.cols()) {
        adj[static_cast<std::size_t>(key.first)][key.second] = col;
        adj[static_cast<std::size_t>(key.second)][key.first] = col;
    }

    auto dip = [&](std::int32_t a, std::int32_t b, double col) {
        return std::min(w.cube_[peak[static_cast<std::size_t>(a)]],
                        w.cube_[peak[static_cast<std::size_t>(b)]]) - col;
    };
    using Entry = std::tuple<double, std::int32_t, std::int32_t>;
    std::set<Entry> queue;
    for (std::int32_t a = 1; a <= n; ++a)
        for (const auto& [b, col] : adj[static_cast<std::size_t>(a)])
            if (a < b)
                queue.emplace(dip(a, b, col), a, b);

    auto erase_pairs = [&](std::int32_t a) {
        for (const auto& [b, col] : adj[static_cast<std::size_t>(a)])
            queue.erase({dip(std::min(a, b), std::max(a, b), col), std::min(a, b), std::max(a, b)});
    };

    while (!queue.empty()) {
        const auto [d, a0, b0] = *queue.begin();
        if (!(d < max_dip))
            break;
        // The survivor keeps the higher-ranked peak.
        std::int32_t keep = a0;
        std::int32_t gone = b0;
        if (w.above(peak[static_cast<std::size_t>(b0)], peak[static_cast<std::size_t>(a0)]))
            std::swap(keep, gone);

        erase_pairs(keep);
        erase_pairs(gone);
        auto& adj_keep = adj[static_cast<std::size_t>(keep)];
        auto& adj_gone = adj[static_cast<std::size_t>(gone)];
        adj_keep.erase(gone);
        adj_gone.erase(keep);
        for (const auto& [c, col] : adj_gone) {
            auto& adj_c = adj[static_cast<std::size_t>(c)];
            adj_c.erase(gone);
            auto [it, inserted] = adj_keep.try_emplace(c, col);
            if (!inserted)
                it->second = std::max(it->second, col);
            adj_c[keep] = it->second;
        }
        adj_gone.clear();
        rep[static_cast<std::size_t>(gone)] = keep;
        for (const auto& [c, col] : adj_keep)
            queue.emplace(dip(std::min(keep, c), std::max(keep, c), col), std::min(keep, c),
                          std::max(keep, c));
    }

    for (std::int32_t k = 1; k <= n; ++k) {
        std::int32_t r = k;
        while (rep[static_cast<std::size_t>(r)] != r)
            r = rep[static_cast<std::size_t>(r)];
        rep[static_cast<std::size_t>(k)] = r;
    }
    return rep;
}

} // namespace

Neighborhood parse_neighborhood(std::string_view name) {
    if (name == "6" || name == "faces")
        return Neighborhood::Faces6;
    if (name == "26" || name == "full")
        return Neighborhood::Full26;
    throw std::invalid_argument("unknown neighborhood '" + std::string(name) + "'");
}

Segmentation fellwalker(const Cube& cube, const ClumpParams& params, int level) {
    if (!(params.rms > 0.0) || !std::isfinite(params.rms))
        throw std::invalid_argument("fellwalker: rms must be positive, got " +
                                    std::to_string(params.rms));
    if (!std::isfinite(params.noise_mult) || !std::isfinite(params.min_dip_mult) ||
        params.noise_mult < 0.0 || params.min_dip_mult < 0.0)
        throw std::invalid_argument("fellwalker: multipliers must be finite and >= 0");
    if (params.min_pix < 1)
        throw std::invalid_argument("fellwalker: min_pix must be >= 1");

    Walker walker(cube, params);
    walker.walk_all();
    const std::vector<std::int32_t> rep = merge_shallow(walker, params.min_dip_mult * params.rms);

    const std::size_t n_raw = walker.peaks_.size();
    std::vector<std::size_t> sizes(n_raw + 1, 0);
    for (std::int32_t& l : walker.labels_) {
        if (l != 0) {
            l = rep[static_cast<std::size_t>(l)];
            sizes[static_cast<std::size_t>(l)]++;
        }
    }

    std::vector<std::int32_t> survivors;
    for (std::size_t k = 1; k <= n_raw; ++k)
        if (rep[k] == static_cast<std::int32_t>(k) &&
            sizes[k] >= static_cast<std::size_t>(params.min_pix))
            survivors.push_back(static_cast<std::int32_t>(k));
    std::sort(survivors.begin(), survivors.end(), [&](std::int32_t a, std::int32_t b) {
        return walker.above(walker.peaks_[static_cast<std::size_t>(a - 1)],
                            walker.peaks_[static_cast<std::size_t>(b - 1)]);
    });
    std::vector<std::int32_t> renumber(n_raw + 1, 0);
    for (std::size_t i = 0; i < survivors.size(); ++i)
        renumber[static_cast<std::size_t>(survivors[i])] = static_cast<std::int32_t>(i + 1);

    Segmentation seg;
    seg.caa.dims = cube.dims();
    seg.caa.n_clumps = static_cast<int>(survivors.size());
    seg.caa.labels = std::move(walker.labels_);
    seg.clumps.resize(survivors.size());
    for (std::size_t i = 0; i < survivors.size(); ++i) {
        Clump& c = seg.clumps[i];
        c.id = static_cast<int>(i + 1);
        c.level = level;
        const std::size_t p = walker.peaks_[static_cast<std::size_t>(survivors[i] - 1)];
        c.peak_pos = cube.voxel(p);
        c.peak_val = cube[p];
        c.voxels.reserve(sizes[static_cast<std::size_t>(survivors[i])]);
    }

    std::vector<std::array<double, 3>> weighted(survivors.size(), {0.0, 0.0, 0.0});
    std::vector<std::array<double, 3>> plain(survivors.size(), {0.0, 0.0, 0.0});
    for (std::size_t idx = 0; idx < seg.caa.labels.size(); ++idx) {
        std::int32_t& l = seg.caa.labels[idx];
        if (l == 0)
            continue;
        l = renumber[static_cast<std::size_t>(l)];
        if (l == 0)
            continue;
        const auto k = static_cast<std::size_t>(l - 1);
        Clump& c = seg.clumps[k];
        const Voxel v = cube.voxel(idx);
        c.voxels.push_back(v);
        c.total_intensity += cube[idx];
        for (int a = 0; a < 3; ++a) {
            weighted[k][a] += static_cast<double>(v[a]) * cube[idx];
            plain[k][a] += static_cast<double>(v[a]);
        }
    }
    for (std::size_t k = 0; k < seg.clumps.size(); ++k) {
        Clump& c = seg.clumps[k];
        for (int a = 0; a < 3; ++a)
            c.centroid[a] = c.total_intensity != 0.0
                                ? weighted[k][a] / c.total_intensity
                                : plain[k][a] / static_cast<double>(c.voxels.size());
    }
    return seg;
}

ClumpMetrics clump_metrics(std::span<const Clump> clumps) {
    ClumpMetrics m;
    m.n_clumps = clumps.size();
    if (clumps.empty())
        return m;
    std::size_t total = 0;
    for (const Clump& c : clumps) {
        m.biggest_pix = std::max(m.biggest_pix, c.n_pix());
        total += c.n_pix();
    }
    m.mean_pix = static_cast<double>(total) / static_cast<double>(clumps.size());
    return m;
}

} // namespace wavclump

#include "wavclump/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wavclump {

namespace {

Voxel probe_voxel(const Clump& c, const Dims& dims, LinkMode mode) {
    return mode == LinkMode::Peak ? c.peak_pos : nearest_voxel(c.centroid, dims);
}

const CAA* find_level(std::span<const LevelView> levels, int level) {
    for (const LevelView& lv : levels)
        if (lv.level == level)
            return lv.caa;
    return nullptr;
}

} // namespace

std::array<double, 3> centroid(const Clump& clump, const Cube& cube) {
    if (clump.voxels.empty())
        throw std::invalid_argument("centroid of an empty clump");
    double total = 0.0;
    std::array<double, 3> acc{0.0, 0.0, 0.0};
    for (const Voxel& v : clump.voxels) {
        const double w = cube(v[0], v[1], v[2]);
        total += w;
        for (int a = 0; a < 3; ++a)
            acc[a] += static_cast<double>(v[a]) * w;
    }
    if (total == 0.0)
        throw std::invalid_argument("centroid undefined: clump has zero total intensity");
    for (double& x : acc)
        x /= total;
    return acc;
}

Voxel nearest_voxel(const std::array<double, 3>& pos, const Dims& dims) {
    Voxel v{};
    for (int a = 0; a < 3; ++a) {
        const double r = std::round(pos[a]);
        const double hi = static_cast<double>(dims[a] - 1);
        v[a] = static_cast<std::size_t>(std::clamp(std::isfinite(r) ? r : 0.0, 0.0, hi));
    }
    return v;
}

LinkMode parse_link_mode(std::string_view name) {
    if (name == "centroid")
        return LinkMode::Centroid;
    if (name == "peak")
        return LinkMode::Peak;
    throw std::invalid_argument("unknown link mode '" + std::string(name) + "'");
}

std::string node_id(int level, int clump) {
    return "L" + std::to_string(level) + "C" + std::to_string(clump);
}

std::vector<std::string> HierarchyTree::isolated() const {
    std::set<std::string> linked;
    for (const Edge& e : edges) {
        linked.insert(e.parent);
        linked.insert(e.child);
    }
    std::vector<std::string> out;
    for (const Node& n : nodes)
        if (!linked.count(n.id))
            out.push_back(n.id);
    return out;
}

HierarchyTree link_levels(std::span<const LevelView> levels, LinkMode mode) {
    HierarchyTree tree;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const LevelView& lv = levels[i];
        if (lv.caa == nullptr)
            throw std::invalid_argument("link_levels: level " + std::to_string(lv.level) +
                                        " has no CAA");
        if (i > 0 && lv.level <= levels[i - 1].level)
            throw std::invalid_argument("link_levels: levels must be strictly ascending");
        if (lv.caa->dims != levels[0].caa->dims)
            throw std::invalid_argument("link_levels: level " + std::to_string(lv.level) +
                                        " CAA dims " + to_string(lv.caa->dims) +
                                        " differ from " + to_string(levels[0].caa->dims));
        for (const Clump& c : lv.clumps)
            tree.nodes.push_back({node_id(lv.level, c.id), lv.level, c.id, c.centroid, c.n_pix(),
                                  c.peak_val});
    }

    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        const LevelView& fine = levels[i];
        const LevelView& coarse = levels[i + 1];
        if (coarse.level != fine.level + 1)
            continue;
        for (const Clump& c : fine.clumps) {
            const std::int32_t parent = coarse.caa->at(probe_voxel(c, fine.caa->dims, mode));
            if (parent != 0)
                tree.edges.push_back({node_id(coarse.level, parent), node_id(fine.level, c.id)});
        }
    }
    return tree;
}

bool edges_sound(const HierarchyTree& tree, std::span<const LevelView> levels, LinkMode mode) {
    std::map<std::string, const HierarchyTree::Node*> by_id;
    for (const auto& n : tree.nodes)
        by_id[n.id] = &n;
    std::set<std::string> children;
    for (const auto& e : tree.edges) {
        auto p = by_id.find(e.parent);
        auto c = by_id.find(e.child);
        if (p == by_id.end() || c == by_id.end())
            return false;
        if (p->second->level != c->second->level + 1)
            return false;
        if (!children.insert(e.child).second)
            return false;
        const CAA* coarse = find_level(levels, p->second->level);
        const CAA* fine = find_level(levels, c->second->level);
        if (coarse == nullptr || fine == nullptr)
            return false;
        const Clump* clump = nullptr;
        for (const LevelView& lv : levels)
            if (lv.level == c->second->level)
                for (const Clump& k : lv.clumps)
                    if (k.id == c->second->clump)
                        clump = &k;
        if (clump == nullptr)
            return false;
        const Voxel probe = probe_voxel(*clump, fine->dims, mode);
        if (mode == LinkMode::Peak && fine->at(probe) != clump->id)
            return false;
        if (coarse->at(probe) != p->second->clump)
            return false;
    }
    return true;
}

std::string export_tree(const HierarchyTree& tree, TreeFormat format) {
    if (format == TreeFormat::Json) {
        nlohmann::ordered_json j;
        j["nodes"] = nlohmann::ordered_json::array();
        j["edges"] = nlohmann::ordered_json::array();
        for (const auto& n : tree.nodes) {
            nlohmann::ordered_json node;
            node["id"] = n.id;
            node["level"] = n.level;
            node["clump"] = n.clump;
            node["centroid"] = n.centroid;
            node["n_pix"] = n.n_pix;
            node["peak_val"] = n.peak_val;
            j["nodes"].push_back(std::move(node));
        }
        for (const auto& e : tree.edges)
            j["edges"].push_back({{"parent", e.parent}, {"child", e.child}});
        return j.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "digraph hierarchy {\n";
    for (const auto& n : tree.nodes)
        out << "  \"" << n.id << "\";\n";
    for (const auto& e : tree.edges)
        out << "  \"" << e.parent << "\" -> \"" << e.child << "\";\n";
    out << "}\n";
    return out.str();
}

} // namespace wavclump

#include "wavclump/cube.hpp"

#include <algorithm>
#include <cmath>

namespace wavclump {

std::string to_string(const Dims& d) {
    return std::to_string(d[0]) + "x" + std::to_string(d[1]) + "x" + std::to_string(d[2]);
}

Cube::Cube(const Dims& dims, double fill) : dims_(dims), data_(voxel_count(dims), fill) {}

Cube::Cube(const Dims& dims, std::vector<double> data) : dims_(dims), data_(std::move(data)) {
    if (data_.size() != voxel_count(dims_))
        throw std::invalid_argument("cube data size " + std::to_string(data_.size()) +
                                    " does not match dims " + to_string(dims_));
}

Voxel Cube::voxel(std::size_t linear) const {
    const std::size_t i2 = linear % dims_[2];
    const std::size_t rest = linear / dims_[2];
    return {rest / dims_[1], rest % dims_[1], i2};
}

void Cube::set_blank(std::size_t linear, bool blank) {
    if (blank_.empty()) {
        if (!blank)
            return;
        blank_.assign(data_.size(), 0);
    }
    blank_[linear] = blank ? 1 : 0;
    if (blank)
        data_[linear] = 0.0;
}

std::size_t Cube::blank_count() const {
    return static_cast<std::size_t>(std::count(blank_.begin(), blank_.end(), std::uint8_t{1}));
}

void Cube::check_finite() const {
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!is_blank(i) && !std::isfinite(data_[i]))
            throw std::invalid_argument("non-finite value at voxel " + std::to_string(i));
    }
}

} // namespace wavclump

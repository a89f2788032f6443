#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavclump {

/// Axis sizes of a cube, ordered (axis0, axis1, axis2). axis2 varies fastest
/// in memory. The internal convention is (frequency, y, x).
using Dims = std::array<std::size_t, 3>;

/// Integer voxel coordinate (axis0, axis1, axis2).
using Voxel = std::array<std::size_t, 3>;

inline std::size_t voxel_count(const Dims& d) { return d[0] * d[1] * d[2]; }

std::string to_string(const Dims& d);

/// Dense 3D array of doubles with a blank mask.
///
/// Blank voxels always hold 0.0 in `data()` so that linear filtering needs no
/// special case; consumers that care about blanks consult `is_blank()`.
class Cube {
public:
    Cube() = default;
    explicit Cube(const Dims& dims, double fill = 0.0);
    Cube(const Dims& dims, std::vector<double> data);

    const Dims& dims() const { return dims_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    std::size_t index(std::size_t i0, std::size_t i1, std::size_t i2) const {
        return (i0 * dims_[1] + i1) * dims_[2] + i2;
    }
    std::size_t index(const Voxel& v) const { return index(v[0], v[1], v[2]); }
    Voxel voxel(std::size_t linear) const;

    double& operator()(std::size_t i0, std::size_t i1, std::size_t i2) {
        return data_[index(i0, i1, i2)];
    }
    double operator()(std::size_t i0, std::size_t i1, std::size_t i2) const {
        return data_[index(i0, i1, i2)];
    }
    double& operator[](std::size_t linear) { return data_[linear]; }
    double operator[](std::size_t linear) const { return data_[linear]; }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    bool has_blanks() const { return !blank_.empty(); }
    bool is_blank(std::size_t linear) const { return !blank_.empty() && blank_[linear] != 0; }
    /// Marks a voxel blank (or clears the flag) and zeroes its value when blanked.
    void set_blank(std::size_t linear, bool blank = true);
    std::size_t blank_count() const;

    std::map<std::string, std::string>& meta() { return meta_; }
    const std::map<std::string, std::string>& meta() const { return meta_; }

    /// Throws std::invalid_argument if a non-blank voxel is not finite.
    void check_finite() const;

private:
    Dims dims_{0, 0, 0};
    std::vector<double> data_;
    // Empty when the cube has no blanks; otherwise one flag per voxel.
    std::vector<std::uint8_t> blank_;
    std::map<std::string, std::string> meta_;
};

} // namespace wavclump

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavclump/cube.hpp"

namespace wavclump {

/// I/O failure with a machine-checkable cause.
class CubeIoError : public std::runtime_error {
public:
    enum class Kind {
        Unreadable,
        UnsupportedBitpix,
        UnsupportedDimensionality,
        Truncated,
        MalformedHeader,
        SizeMismatch,
        WriteFailed,
    };

    CubeIoError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Reads the primary HDU of a FITS file holding a 3D float image
/// (BITPIX -32 or -64).
///
/// NAXIS1 maps to axis2 and NAXIS3 to axis0, so the memory layout is copied
/// as is. NaN voxels become blanks with value 0. BSCALE and BZERO are applied.
/// Every header card value is kept in `meta()` under "FITS:<KEY>" as raw
/// value text (comments stripped).
Cube load_fits(const std::filesystem::path& path);

/// Writes a single-HDU FITS file with BITPIX -64. Blanks are written as NaN.
/// Non-structural "FITS:<KEY>" meta entries are written back as cards.
void save_fits(const Cube& cube, const std::filesystem::path& path);

/// Little-endian float64, axis2 fastest, no header. NaN marks a blank voxel.
Cube load_raw(const std::filesystem::path& path, const Dims& dims);
void save_raw(const Cube& cube, const std::filesystem::path& path);

/// Little-endian int32 label volume in the same layout as the raw cube format.
void save_raw_labels(std::span<const std::int32_t> labels, const std::filesystem::path& path);
std::vector<std::int32_t> load_raw_labels(const std::filesystem::path& path, const Dims& dims);

} // namespace wavclump

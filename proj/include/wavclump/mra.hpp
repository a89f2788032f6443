#pragma once

#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "wavclump/cube.hpp"
#include "wavclump/wavelet_bank.hpp"

namespace wavclump {

/// Signal extension used beyond the ends of each line.
enum class BorderMode {
    Symmetric, ///< half-point mirror: ... x1 x0 | x0 x1 ... x(n-1) | x(n-1) x(n-2) ...
    Periodic,  ///< ... x(n-1) | x0 ... x(n-1) | x0 ...
    Zero,
};

BorderMode parse_border_mode(std::string_view name);
std::string_view border_mode_name(BorderMode mode);

/// Raised when per-step geometry bookkeeping does not line up.
class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Length of one decimated filter output: floor((n + L - 1) / 2).
constexpr std::size_t dwt_length(std::size_t n, std::size_t taps) { return (n + taps - 1) / 2; }

/// Filters every line along `axis` with `taps` and keeps every second sample.
/// Output axis size is dwt_length(n, taps.size()); the other axes are unchanged.
Cube conv_downsample_axis(const Cube& cube, int axis, std::span<const double> taps,
                          BorderMode mode = BorderMode::Symmetric);

/// Zero-interleaves every line along `axis`, filters it with `taps` and keeps
/// `target_len` samples. `target_len` must satisfy
/// dwt_length(target_len, taps.size()) == current axis size.
Cube upsample_conv_axis(const Cube& cube, int axis, std::span<const double> taps,
                        std::size_t target_len);

/// One 3D analysis step keeping only the all-low-pass (AAA) sub-cube.
/// Lines are filtered with lo_d along axis0, then axis1, then axis2.
Cube dwt3d_step(const Cube& cube, const FilterBank& bank,
                BorderMode mode = BorderMode::Symmetric);

/// Inverse of dwt3d_step with every detail sub-cube taken as zero:
/// lo_r along axis2, then axis1, then axis0, cropping to `target_dims`.
Cube idwt3d_step(const Cube& approx, const FilterBank& bank, const Dims& target_dims);

/// Dims of the AAA sub-cube produced from an input of dims `d`.
Dims dwt3d_dims(const Dims& d, std::size_t taps);

/// One level of the multiresolution analysis.
struct MraLevel {
    int level = 0;
    Cube approx; ///< CA_j; the original cube for level 0
    Cube recon;  ///< low-pass reconstruction at the original dims
    /// Input dims of each analysis step 1..level (step_dims[0] is the original).
    std::vector<Dims> step_dims;
};

/// Rebuilds a full-size cube from CA_j by applying idwt3d_step once per
/// recorded step, innermost first.
Cube reconstruct_level(const Cube& approx, const FilterBank& bank,
                       std::span<const Dims> step_dims);

/// Number of analysis steps that can be taken before some axis of the input to
/// the next step becomes shorter than the filter.
int max_feasible_level(const Dims& dims, std::size_t taps);

/// Multilevel decomposition. Returns levels 0..J with J = min(max_level,
/// max_feasible_level); callers detect early stop from the returned size.
/// Reconstructions inherit the blank mask of the input cube.
std::vector<MraLevel> decompose(const Cube& cube, const FilterBank& bank, int max_level,
                                BorderMode mode = BorderMode::Symmetric);

} // namespace wavclump

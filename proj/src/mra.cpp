#include "wavclump/mra.hpp"

#include <string>

namespace wavclump {

namespace {

std::array<std::size_t, 3> strides(const Dims& d) { return {d[1] * d[2], d[2], 1}; }

void check_axis(int axis) {
    if (axis < 0 || axis > 2)
        throw std::invalid_argument("axis must be 0, 1 or 2, got " + std::to_string(axis));
}

// Calls fn(in_offset, out_offset) for the start of every line along `axis`.
template <typename Fn>
void for_each_line(const Dims& in_dims, const Dims& out_dims, int axis, Fn&& fn) {
    const auto in_s = strides(in_dims);
    const auto out_s = strides(out_dims);
    const int a = axis == 0 ? 1 : 0;
    const int b = axis == 2 ? 1 : 2;
    for (std::size_t i = 0; i < in_dims[a]; ++i)
        for (std::size_t j = 0; j < in_dims[b]; ++j)
            fn(i * in_s[a] + j * in_s[b], i * out_s[a] + j * out_s[b]);
}

// Index into [0, n) for position t of the extended signal, or -1 for a zero sample.
std::ptrdiff_t extend_index(std::ptrdiff_t t, std::ptrdiff_t n, BorderMode mode) {
    if (t >= 0 && t < n)
        return t;
    switch (mode) {
    case BorderMode::Zero:
        return -1;
    case BorderMode::Periodic: {
        std::ptrdiff_t r = t % n;
        return r < 0 ? r + n : r;
    }
    case BorderMode::Symmetric: {
        const std::ptrdiff_t period = 2 * n;
        std::ptrdiff_t r = t % period;
        if (r < 0)
            r += period;
        return r < n ? r : period - 1 - r;
    }
    }
    return -1;
}

} // namespace

BorderMode parse_border_mode(std::string_view name) {
    if (name == "symmetric")
        return BorderMode::Symmetric;
    if (name == "periodic")
        return BorderMode::Periodic;
    if (name == "zero")
        return BorderMode::Zero;
    throw std::invalid_argument("unknown border mode '" + std::string(name) + "'");
}

std::string_view border_mode_name(BorderMode mode) {
    switch (mode) {
    case BorderMode::Symmetric: return "symmetric";
    case BorderMode::Periodic: return "periodic";
    case BorderMode::Zero: return "zero";
    }
    return "?";
}

Cube conv_downsample_axis(const Cube& cube, int axis, std::span<const double> taps,
                          BorderMode mode) {
    check_axis(axis);
    if (taps.empty())
        throw std::invalid_argument("conv_downsample_axis: empty filter");
    const Dims& in_dims = cube.dims();
    const std::size_t n = in_dims[axis];
    if (n < 2)
        throw std::invalid_argument("conv_downsample_axis: axis " + std::to_string(axis) +
                                    " has size " + std::to_string(n) + " (need >= 2)");
    const std::size_t len = taps.size();
    Dims out_dims = in_dims;
    out_dims[axis] = dwt_length(n, len);
    Cube out(out_dims);

    const std::size_t in_stride = strides(in_dims)[axis];
    const std::size_t out_stride = strides(out_dims)[axis];
    const auto pad = static_cast<std::ptrdiff_t>(len - 1);
    const auto sn = static_cast<std::ptrdiff_t>(n);

    // Extended line: ext[t] holds x[t - pad].
    std::vector<double> ext(n + 2 * (len - 1));
    const auto src = cube.data();
    auto dst = out.data();
    for_each_line(in_dims, out_dims, axis, [&](std::size_t in0, std::size_t out0) {
        for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(ext.size()); ++t) {
            const std::ptrdiff_t k = extend_index(t - pad, sn, mode);
            ext[static_cast<std::size_t>(t)] = k < 0 ? 0.0 : src[in0 + static_cast<std::size_t>(k) * in_stride];
        }
        // y[o] = sum_k taps[k] x[2o + 1 - k]
        for (std::size_t o = 0; o < out_dims[axis]; ++o) {
            const std::size_t base = 2 * o + 1 + len - 1;
            double acc = 0.0;
            for (std::size_t k = 0; k < len; ++k)
                acc += taps[k] * ext[base - k];
            dst[out0 + o * out_stride] = acc;
        }
    });
    return out;
}

Cube upsample_conv_axis(const Cube& cube, int axis, std::span<const double> taps,
                        std::size_t target_len) {
    check_axis(axis);
    if (taps.empty())
        throw std::invalid_argument("upsample_conv_axis: empty filter");
    const Dims& in_dims = cube.dims();
    const std::size_t nc = in_dims[axis];
    const std::size_t len = taps.size();
    if (target_len == 0 || dwt_length(target_len, len) != nc)
        throw GeometryError("upsample_conv_axis: target length " + std::to_string(target_len) +
                            " is inconsistent with " + std::to_string(nc) +
                            " coefficients and a " + std::to_string(len) + "-tap filter");
    Dims out_dims = in_dims;
    out_dims[axis] = target_len;
    Cube out(out_dims);

    const std::size_t in_stride = strides(in_dims)[axis];
    const std::size_t out_stride = strides(out_dims)[axis];
    const auto src = cube.data();
    auto dst = out.data();
    // Full convolution of the zero-interleaved line, keeping samples [L-2, L-2+target).
    for_each_line(in_dims, out_dims, axis, [&](std::size_t in0, std::size_t out0) {
        for (std::size_t o = 0; o < target_len; ++o) {
            const std::size_t m = o + len - 2;
            // c[i] contributes taps[m - 2i] when 0 <= m - 2i < len.
            const std::size_t i_lo = m + 1 >= len ? (m + 1 - len + 1) / 2 : 0;
            const std::size_t i_hi = std::min(m / 2, nc - 1);
            double acc = 0.0;
            for (std::size_t i = i_lo; i <= i_hi; ++i)
                acc += taps[m - 2 * i] * src[in0 + i * in_stride];
            dst[out0 + o * out_stride] = acc;
        }
    });
    return out;
}

Dims dwt3d_dims(const Dims& d, std::size_t taps) {
    return {dwt_length(d[0], taps), dwt_length(d[1], taps), dwt_length(d[2], taps)};
}

Cube dwt3d_step(const Cube& cube, const FilterBank& bank, BorderMode mode) {
    Cube a = conv_downsample_axis(cube, 0, bank.lo_d, mode);
    Cube aa = conv_downsample_axis(a, 1, bank.lo_d, mode);
    return conv_downsample_axis(aa, 2, bank.lo_d, mode);
}

Cube idwt3d_step(const Cube& approx, const FilterBank& bank, const Dims& target_dims) {
    if (dwt3d_dims(target_dims, bank.length()) != approx.dims())
        throw GeometryError("idwt3d_step: approximation dims " + to_string(approx.dims()) +
                            " do not derive from target dims " + to_string(target_dims) +
                            " with " + bank.name());
    Cube a = upsample_conv_axis(approx, 2, bank.lo_r, target_dims[2]);
    Cube aa = upsample_conv_axis(a, 1, bank.lo_r, target_dims[1]);
    return upsample_conv_axis(aa, 0, bank.lo_r, target_dims[0]);
}

Cube reconstruct_level(const Cube& approx, const FilterBank& bank,
                       std::span<const Dims> step_dims) {
    Cube current = approx;
    for (std::size_t s = step_dims.size(); s-- > 0;)
        current = idwt3d_step(current, bank, step_dims[s]);
    return current;
}

int max_feasible_level(const Dims& dims, std::size_t taps) {
    int level = 0;
    Dims d = dims;
    while (d[0] >= taps && d[1] >= taps && d[2] >= taps && d[0] >= 2 && d[1] >= 2 && d[2] >= 2) {
        d = dwt3d_dims(d, taps);
        ++level;
    }
    return level;
}

std::vector<MraLevel> decompose(const Cube& cube, const FilterBank& bank, int max_level,
                                BorderMode mode) {
    if (max_level < 1)
        throw std::invalid_argument("decompose: max_level must be >= 1, got " +
                                    std::to_string(max_level));
    const int levels = std::min(max_level, max_feasible_level(cube.dims(), bank.length()));

    std::vector<MraLevel> out;
    out.reserve(static_cast<std::size_t>(levels) + 1);
    out.push_back(MraLevel{0, cube, cube, {}});

    std::vector<Dims> step_dims;
    for (int j = 1; j <= levels; ++j) {
        const Cube& prev = out.back().approx;
        step_dims.push_back(prev.dims());
        MraLevel level;
        level.level = j;
        level.approx = dwt3d_step(prev, bank, mode);
        level.recon = reconstruct_level(level.approx, bank, step_dims);
        level.step_dims = step_dims;
        if (cube.has_blanks()) {
            for (std::size_t i = 0; i < cube.size(); ++i)
                if (cube.is_blank(i))
                    level.recon.set_blank(i);
        }
        level.recon.meta()["level"] = std::to_string(j);
        level.recon.meta()["wavelet"] = bank.name();
        out.push_back(std::move(level));
    }
    return out;
}

} // namespace wavclump

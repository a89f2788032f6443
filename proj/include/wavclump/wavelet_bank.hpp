#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wavclump {

enum class Family { Haar, Daubechies, Symlet, Coiflet, Biorthogonal, ReverseBiorthogonal };

/// Two-channel filter bank of one wavelet.
///
/// Tap sequences are stored in convolution order: the decomposition step
/// computes y[n] = sum_k lo_d[k] x[2n + 1 - k]. High-pass filters follow the
/// alternating-flip convention hi_d[k] = (-1)^k lo_r[L-1-k].
struct FilterBank {
    Family family = Family::Haar;
    int order = 1;
    int order_minor = 0; // reconstruction order for the biorthogonal families
    std::vector<double> lo_d;
    std::vector<double> hi_d;
    std::vector<double> lo_r;
    std::vector<double> hi_r;

    std::size_t length() const { return lo_d.size(); }
    bool orthonormal() const {
        return family != Family::Biorthogonal && family != Family::ReverseBiorthogonal;
    }
    /// Short name such as "db5" or "bior3.5".
    std::string name() const;
};

class UnsupportedWavelet : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Returns one of the shipped banks: haar, db5, sym4, coif3, bior3.5, rbio3.5.
/// Throws UnsupportedWavelet for anything else.
FilterBank filter_bank(Family family, int order, int order_minor = 0);

/// Parses a short name ("haar", "db5", "sym4", "coif3", "bior3.5", "rbio3.5").
FilterBank filter_bank(std::string_view name);

/// Names of every shipped bank, in a stable order.
std::vector<std::string> shipped_wavelets();

std::string_view family_name(Family family);

} // namespace wavclump

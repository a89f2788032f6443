#include "wavclump/wavelet_bank.hpp"

#include <array>
#include <charconv>

namespace wavclump {

namespace {

// Decomposition and reconstruction taps to double precision. Values match the
// standard published tables (PyWavelets / MATLAB Wavelet Toolbox); the high-pass
// pairs use the alternating-flip sign convention documented on FilterBank.

constexpr std::array<double, 2> kHaarLoD = {
    0.70710678118654757, 0.70710678118654757,
};
constexpr std::array<double, 2> kHaarHiD = {
    0.70710678118654757, -0.70710678118654757,
};
constexpr std::array<double, 2> kHaarLoR = {
    0.70710678118654757, 0.70710678118654757,
};
constexpr std::array<double, 2> kHaarHiR = {
    -0.70710678118654757, 0.70710678118654757,
};

constexpr std::array<double, 10> kDb5LoD = {
    0.0033357252854737712, -0.012580751999081999, -0.0062414902127982744,
    0.077571493840045719, -0.032244869584638375, -0.24229488706638203,
    0.13842814590132074, 0.72430852843777294, 0.60382926979718965,
    0.16010239797419293,
};
constexpr std::array<double, 10> kDb5HiD = {
    0.16010239797419293, -0.60382926979718965, 0.72430852843777294,
    -0.13842814590132074, -0.24229488706638203, 0.032244869584638375,
    0.077571493840045719, 0.0062414902127982744, -0.012580751999081999,
    -0.0033357252854737712,
};
constexpr std::array<double, 10> kDb5LoR = {
    0.16010239797419293, 0.60382926979718965, 0.72430852843777294,
    0.13842814590132074, -0.24229488706638203, -0.032244869584638375,
    0.077571493840045719, -0.0062414902127982744, -0.012580751999081999,
    0.0033357252854737712,
};
constexpr std::array<double, 10> kDb5HiR = {
    -0.0033357252854737712, -0.012580751999081999, 0.0062414902127982744,
    0.077571493840045719, 0.032244869584638375, -0.24229488706638203,
    -0.13842814590132074, 0.72430852843777294, -0.60382926979718965,
    0.16010239797419293,
};

constexpr std::array<double, 8> kSym4LoD = {
    -0.075765714789273325, -0.02963552764599851, 0.49761866763201545,
    0.80373875180591614, 0.29785779560527736, -0.099219543576847216,
    -0.012603967262037833, 0.032223100604042702,
};
constexpr std::array<double, 8> kSym4HiD = {
    0.032223100604042702, 0.012603967262037833, -0.099219543576847216,
    -0.29785779560527736, 0.80373875180591614, -0.49761866763201545,
    -0.02963552764599851, 0.075765714789273325,
};
constexpr std::array<double, 8> kSym4LoR = {
    0.032223100604042702, -0.012603967262037833, -0.099219543576847216,
    0.29785779560527736, 0.80373875180591614, 0.49761866763201545,
    -0.02963552764599851, -0.075765714789273325,
};
constexpr std::array<double, 8> kSym4HiR = {
    0.075765714789273325, -0.02963552764599851, -0.49761866763201545,
    0.80373875180591614, -0.29785779560527736, -0.099219543576847216,
    0.012603967262037833, 0.032223100604042702,
};

constexpr std::array<double, 18> kCoif3LoD = {
    -3.4599773197272781e-05, -7.0983302506379004e-05, 0.00046621695982040288,
    0.0011175187708306303, -0.0025745176881367972, -0.0090079761367306242,
    0.015880544863669452, 0.034555027573297738, -0.082301927106299827,
    -0.071799821619154838, 0.42848347637737, 0.79377722262608719,
    0.40517690240911824, -0.061123390002972552, -0.065771911281469364,
    0.023452696142077168, 0.0077825964256727463, -0.0037935128643808019,
};
constexpr std::array<double, 18> kCoif3HiD = {
    -0.0037935128643808019, -0.0077825964256727463, 0.023452696142077168,
    0.065771911281469364, -0.061123390002972552, -0.40517690240911824,
    0.79377722262608719, -0.42848347637737, -0.071799821619154838,
    0.082301927106299827, 0.034555027573297738, -0.015880544863669452,
    -0.0090079761367306242, 0.0025745176881367972, 0.0011175187708306303,
    -0.00046621695982040288, -7.0983302506379004e-05, 3.4599773197272781e-05,
};
constexpr std::array<double, 18> kCoif3LoR = {
    -0.0037935128643808019, 0.0077825964256727463, 0.023452696142077168,
    -0.065771911281469364, -0.061123390002972552, 0.40517690240911824,
    0.79377722262608719, 0.42848347637737, -0.071799821619154838,
    -0.082301927106299827, 0.034555027573297738, 0.015880544863669452,
    -0.0090079761367306242, -0.0025745176881367972, 0.0011175187708306303,
    0.00046621695982040288, -7.0983302506379004e-05, -3.4599773197272781e-05,
};
constexpr std::array<double, 18> kCoif3HiR = {
    3.4599773197272781e-05, -7.0983302506379004e-05, -0.00046621695982040288,
    0.0011175187708306303, 0.0025745176881367972, -0.0090079761367306242,
    -0.015880544863669452, 0.034555027573297738, 0.082301927106299827,
    -0.071799821619154838, -0.42848347637737, 0.79377722262608719,
    -0.40517690240911824, -0.061123390002972552, 0.065771911281469364,
    0.023452696142077168, -0.0077825964256727463, -0.0037935128643808019,
};

constexpr std::array<double, 12> kBior35LoD = {
    -0.013810679320049757, 0.041432037960149271, 0.052480581416189075,
    -0.26792717880896527, -0.07181553246425873, 0.96674755240348298,
    0.96674755240348298, -0.07181553246425873, -0.26792717880896527,
    0.052480581416189075, 0.041432037960149271, -0.013810679320049757,
};
constexpr std::array<double, 12> kBior35HiD = {
    0, 0, 0,
    0, 0.17677669529663689, -0.5303300858899106,
    0.5303300858899106, -0.17677669529663689, 0,
    0, 0, 0,
};
constexpr std::array<double, 12> kBior35LoR = {
    0, 0, 0,
    0, 0.17677669529663689, 0.5303300858899106,
    0.5303300858899106, 0.17677669529663689, 0,
    0, 0, 0,
};
constexpr std::array<double, 12> kBior35HiR = {
    0.013810679320049757, 0.041432037960149271, -0.052480581416189075,
    -0.26792717880896527, 0.07181553246425873, 0.96674755240348298,
    -0.96674755240348298, -0.07181553246425873, 0.26792717880896527,
    0.052480581416189075, -0.041432037960149271, -0.013810679320049757,
};

constexpr std::array<double, 12> kRbio35LoD = {
    0, 0, 0,
    0, 0.17677669529663689, 0.5303300858899106,
    0.5303300858899106, 0.17677669529663689, 0,
    0, 0, 0,
};
constexpr std::array<double, 12> kRbio35HiD = {
    -0.013810679320049757, -0.041432037960149271, 0.052480581416189075,
    0.26792717880896527, -0.07181553246425873, -0.96674755240348298,
    0.96674755240348298, 0.07181553246425873, -0.26792717880896527,
    -0.052480581416189075, 0.041432037960149271, 0.013810679320049757,
};
constexpr std::array<double, 12> kRbio35LoR = {
    -0.013810679320049757, 0.041432037960149271, 0.052480581416189075,
    -0.26792717880896527, -0.07181553246425873, 0.96674755240348298,
    0.96674755240348298, -0.07181553246425873, -0.26792717880896527,
    0.052480581416189075, 0.041432037960149271, -0.013810679320049757,
};
constexpr std::array<double, 12> kRbio35HiR = {
    0, 0, 0,
    0, -0.17677669529663689, 0.5303300858899106,
    -0.5303300858899106, 0.17677669529663689, 0,
    0, 0, 0,
};

template <std::size_t N>
std::vector<double> taps(const std::array<double, N>& a) {
    return {a.begin(), a.end()};
}

template <std::size_t N>
FilterBank make(Family family, int order, int minor, const std::array<double, N>& lo_d,
                const std::array<double, N>& hi_d, const std::array<double, N>& lo_r,
                const std::array<double, N>& hi_r) {
    return FilterBank{family, order, minor, taps(lo_d), taps(hi_d), taps(lo_r), taps(hi_r)};
}

} // namespace

std::string_view family_name(Family family) {
    switch (family) {
    case Family::Haar: return "haar";
    case Family::Daubechies: return "db";
    case Family::Symlet: return "sym";
    case Family::Coiflet: return "coif";
    case Family::Biorthogonal: return "bior";
    case Family::ReverseBiorthogonal: return "rbio";
    }
    return "?";
}

std::string FilterBank::name() const {
    if (family == Family::Haar)
        return "haar";
    std::string out(family_name(family));
    out += std::to_string(order);
    if (!orthonormal())
        out += "." + std::to_string(order_minor);
    return out;
}

FilterBank filter_bank(Family family, int order, int order_minor) {
    switch (family) {
    case Family::Haar:
        if (order == 1)
            return make(family, 1, 0, kHaarLoD, kHaarHiD, kHaarLoR, kHaarHiR);
        break;
    case Family::Daubechies:
        if (order == 5)
            return make(family, 5, 0, kDb5LoD, kDb5HiD, kDb5LoR, kDb5HiR);
        break;
    case Family::Symlet:
        if (order == 4)
            return make(family, 4, 0, kSym4LoD, kSym4HiD, kSym4LoR, kSym4HiR);
        break;
    case Family::Coiflet:
        if (order == 3)
            return make(family, 3, 0, kCoif3LoD, kCoif3HiD, kCoif3LoR, kCoif3HiR);
        break;
    case Family::Biorthogonal:
        if (order == 3 && order_minor == 5)
            return make(family, 3, 5, kBior35LoD, kBior35HiD, kBior35LoR, kBior35HiR);
        break;
    case Family::ReverseBiorthogonal:
        if (order == 3 && order_minor == 5)
            return make(family, 3, 5, kRbio35LoD, kRbio35HiD, kRbio35LoR, kRbio35HiR);
        break;
    }
    std::string what = std::string(family_name(family)) + std::to_string(order);
    if (order_minor != 0)
        what += "." + std::to_string(order_minor);
    throw UnsupportedWavelet("unsupported wavelet order: " + what);
}

FilterBank filter_bank(std::string_view name) {
    if (name == "haar" || name == "db1")
        return filter_bank(Family::Haar, 1);

    static constexpr std::array<std::pair<std::string_view, Family>, 5> prefixes{{
        {"rbio", Family::ReverseBiorthogonal},
        {"bior", Family::Biorthogonal},
        {"coif", Family::Coiflet},
        {"sym", Family::Symlet},
        {"db", Family::Daubechies},
    }};
    for (const auto& [prefix, family] : prefixes) {
        if (!name.starts_with(prefix))
            continue;
        std::string_view rest = name.substr(prefix.size());
        int major = 0;
        int minor = 0;
        auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), major);
        if (ec != std::errc{})
            break;
        const char* end = rest.data() + rest.size();
        if (p != end) {
            if (*p != '.')
                break;
            auto [q, ec2] = std::from_chars(p + 1, end, minor);
            if (ec2 != std::errc{} || q != end)
                break;
        }
        return filter_bank(family, major, minor);
    }
    throw UnsupportedWavelet("unknown wavelet '" + std::string(name) + "'");
}

std::vector<std::string> shipped_wavelets() {
    return {"haar", "db5", "sym4", "coif3", "bior3.5", "rbio3.5"};
}

} // namespace wavclump

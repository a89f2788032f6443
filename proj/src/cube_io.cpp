#include "wavclump/cube_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string_view>

namespace wavclump {

namespace {

constexpr std::size_t kBlock = 2880;
constexpr std::size_t kCard = 80;

template <typename U>
U byteswap(U v) {
    static_assert(std::is_unsigned_v<U>);
    U out = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        out = static_cast<U>((out << 8) | (v & 0xFF));
        v = static_cast<U>(v >> 8);
    }
    return out;
}

// Decode one value of type T stored with the given byte order.
template <typename T, typename U>
T decode(const char* p, std::endian order) {
    U bits;
    std::memcpy(&bits, p, sizeof(U));
    if (order != std::endian::native)
        bits = byteswap(bits);
    return std::bit_cast<T>(bits);
}

template <typename T, typename U>
void encode(T value, char* p, std::endian order) {
    U bits = std::bit_cast<U>(value);
    if (order != std::endian::native)
        bits = byteswap(bits);
    std::memcpy(p, &bits, sizeof(U));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw CubeIoError(CubeIoError::Kind::Unreadable, "cannot open '" + path.string() + "'");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw CubeIoError(CubeIoError::Kind::Unreadable, "read error on '" + path.string() + "'");
    return bytes;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw CubeIoError(CubeIoError::Kind::WriteFailed, "cannot create '" + path.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw CubeIoError(CubeIoError::Kind::WriteFailed, "write error on '" + path.string() + "'");
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(' ');
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(' ');
    return std::string(s.substr(b, e - b + 1));
}

// Value text of a "KEY     = value / comment" card, without the comment.
std::string card_value(std::string_view card) {
    std::string_view rest = card.substr(10);
    bool in_string = false;
    std::size_t end = rest.size();
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (rest[i] == '\'')
            in_string = !in_string;
        else if (rest[i] == '/' && !in_string) {
            end = i;
            break;
        }
    }
    return trim(rest.substr(0, end));
}

struct FitsHeader {
    std::map<std::string, std::string> cards;
    std::size_t data_offset = 0;

    bool has(const std::string& key) const { return cards.count(key) != 0; }

    long long integer(const std::string& key, const std::filesystem::path& path) const {
        auto it = cards.find(key);
        if (it == cards.end())
            throw CubeIoError(CubeIoError::Kind::MalformedHeader,
                              "missing " + key + " card in '" + path.string() + "'");
        try {
            std::size_t used = 0;
            long long v = std::stoll(it->second, &used);
            if (used != it->second.size())
                throw std::invalid_argument(key);
            return v;
        } catch (const std::exception&) {
            throw CubeIoError(CubeIoError::Kind::MalformedHeader,
                              "bad integer for " + key + " in '" + path.string() + "'");
        }
    }

    double real(const std::string& key, double fallback) const {
        auto it = cards.find(key);
        if (it == cards.end())
            return fallback;
        std::string v = it->second;
        std::replace(v.begin(), v.end(), 'D', 'E');
        return std::stod(v);
    }
};

FitsHeader parse_header(const std::string& bytes, const std::filesystem::path& path) {
    FitsHeader header;
    std::size_t pos = 0;
    bool ended = false;
    while (!ended) {
        if (pos + kCard > bytes.size())
            throw CubeIoError(CubeIoError::Kind::Truncated,
                              "header has no END card in '" + path.string() + "'");
        std::string_view card(bytes.data() + pos, kCard);
        pos += kCard;
        const std::string key = trim(card.substr(0, 8));
        if (key == "END") {
            ended = true;
        } else if (key == "COMMENT" || key == "HISTORY") {
            auto& slot = header.cards[key];
            if (!slot.empty())
                slot += '\n';
            slot += trim(card.substr(8));
        } else if (!key.empty() && card.substr(8, 2) == "= ") {
            header.cards[key] = card_value(card);
        }
    }
    if (pos == kCard || !header.has("SIMPLE"))
        throw CubeIoError(CubeIoError::Kind::MalformedHeader,
                          "'" + path.string() + "' is not a FITS file (no SIMPLE card)");
    header.data_offset = (pos + kBlock - 1) / kBlock * kBlock;
    return header;
}

bool is_structural(const std::string& key) {
    return key == "SIMPLE" || key == "BITPIX" || key == "NAXIS" || key == "NAXIS1" ||
           key == "NAXIS2" || key == "NAXIS3" || key == "EXTEND" || key == "BSCALE" ||
           key == "BZERO" || key == "END" || key == "COMMENT" || key == "HISTORY";
}

std::string make_card(const std::string& key, const std::string& value) {
    std::string card = key;
    card.resize(8, ' ');
    card += "= ";
    std::string v = value;
    // Numbers and logicals are right-aligned to column 30 by convention.
    if (!v.empty() && v.front() != '\'' && v.size() < 20)
        v.insert(0, 20 - v.size(), ' ');
    card += v;
    card.resize(kCard, ' ');
    return card;
}

} // namespace

Cube load_fits(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    const FitsHeader header = parse_header(bytes, path);

    const long long naxis = header.integer("NAXIS", path);
    if (naxis != 3)
        throw CubeIoError(CubeIoError::Kind::UnsupportedDimensionality,
                          "unsupported dimensionality: NAXIS=" + std::to_string(naxis) + " in '" +
                              path.string() + "' (need 3)");
    const long long bitpix = header.integer("BITPIX", path);
    if (bitpix != -32 && bitpix != -64)
        throw CubeIoError(CubeIoError::Kind::UnsupportedBitpix,
                          "unsupported BITPIX " + std::to_string(bitpix) + " in '" +
                              path.string() + "' (need -32 or -64)");

    Dims dims{};
    for (int axis = 1; axis <= 3; ++axis) {
        const long long n = header.integer("NAXIS" + std::to_string(axis), path);
        if (n <= 0)
            throw CubeIoError(CubeIoError::Kind::MalformedHeader,
                              "NAXIS" + std::to_string(axis) + " must be positive");
        dims[3 - axis] = static_cast<std::size_t>(n);
    }

    const std::size_t width = bitpix == -64 ? 8 : 4;
    const std::size_t count = voxel_count(dims);
    if (header.data_offset + count * width > bytes.size())
        throw CubeIoError(CubeIoError::Kind::Truncated,
                          "data unit truncated in '" + path.string() + "': need " +
                              std::to_string(count * width) + " bytes");

    const double bscale = header.real("BSCALE", 1.0);
    const double bzero = header.real("BZERO", 0.0);

    Cube cube(dims);
    const char* p = bytes.data() + header.data_offset;
    for (std::size_t i = 0; i < count; ++i, p += width) {
        const double raw = width == 8 ? decode<double, std::uint64_t>(p, std::endian::big)
                                      : decode<float, std::uint32_t>(p, std::endian::big);
        if (std::isnan(raw))
            cube.set_blank(i);
        else
            cube[i] = raw * bscale + bzero;
    }
    for (const auto& [key, value] : header.cards)
        cube.meta()["FITS:" + key] = value;
    cube.meta()["source"] = path.string();
    return cube;
}

void save_fits(const Cube& cube, const std::filesystem::path& path) {
    const Dims& d = cube.dims();
    std::string header;
    header += make_card("SIMPLE", "T");
    header += make_card("BITPIX", "-64");
    header += make_card("NAXIS", "3");
    header += make_card("NAXIS1", std::to_string(d[2]));
    header += make_card("NAXIS2", std::to_string(d[1]));
    header += make_card("NAXIS3", std::to_string(d[0]));
    for (const auto& [key, value] : cube.meta()) {
        if (key.rfind("FITS:", 0) != 0)
            continue;
        const std::string name = key.substr(5);
        if (name.size() > 8 || is_structural(name) || value.size() > 70)
            continue;
        header += make_card(name, value);
    }
    std::string end = "END";
    end.resize(kCard, ' ');
    header += end;
    header.resize((header.size() + kBlock - 1) / kBlock * kBlock, ' ');

    std::string payload(cube.size() * 8, '\0');
    for (std::size_t i = 0; i < cube.size(); ++i) {
        const double v = cube.is_blank(i) ? std::nan("") : cube[i];
        encode<double, std::uint64_t>(v, payload.data() + i * 8, std::endian::big);
    }
    payload.resize((payload.size() + kBlock - 1) / kBlock * kBlock, '\0');
    write_file(path, header + payload);
}

Cube load_raw(const std::filesystem::path& path, const Dims& dims) {
    const std::string bytes = read_file(path);
    const std::size_t count = voxel_count(dims);
    if (bytes.size() != count * 8)
        throw CubeIoError(CubeIoError::Kind::SizeMismatch,
                          "'" + path.string() + "' holds " + std::to_string(bytes.size()) +
                              " bytes, dims " + to_string(dims) + " need " +
                              std::to_string(count * 8));
    Cube cube(dims);
    for (std::size_t i = 0; i < count; ++i) {
        const double v = decode<double, std::uint64_t>(bytes.data() + i * 8, std::endian::little);
        if (std::isnan(v))
            cube.set_blank(i);
        else
            cube[i] = v;
    }
    cube.meta()["source"] = path.string();
    return cube;
}

void save_raw(const Cube& cube, const std::filesystem::path& path) {
    std::string bytes(cube.size() * 8, '\0');
    for (std::size_t i = 0; i < cube.size(); ++i) {
        const double v = cube.is_blank(i) ? std::nan("") : cube[i];
        encode<double, std::uint64_t>(v, bytes.data() + i * 8, std::endian::little);
    }
    write_file(path, bytes);
}

void save_raw_labels(std::span<const std::int32_t> labels, const std::filesystem::path& path) {
    std::string bytes(labels.size() * 4, '\0');
    for (std::size_t i = 0; i < labels.size(); ++i)
        encode<std::int32_t, std::uint32_t>(labels[i], bytes.data() + i * 4, std::endian::little);
    write_file(path, bytes);
}

std::vector<std::int32_t> load_raw_labels(const std::filesystem::path& path, const Dims& dims) {
    const std::string bytes = read_file(path);
    const std::size_t count = voxel_count(dims);
    if (bytes.size() != count * 4)
        throw CubeIoError(CubeIoError::Kind::SizeMismatch,
                          "'" + path.string() + "' holds " + std::to_string(bytes.size()) +
                              " bytes, dims " + to_string(dims) + " need " +
                              std::to_string(count * 4));
    std::vector<std::int32_t> labels(count);
    for (std::size_t i = 0; i < count; ++i)
        labels[i] = decode<std::int32_t, std::uint32_t>(bytes.data() + i * 4, std::endian::little);
    return labels;
}

} // namespace wavclump

#include "holo/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <vector>

namespace holo {

PgmParseError::PgmParseError(const std::string& what, std::size_t offset)
    : std::runtime_error("pgm: " + what + " at byte " + std::to_string(offset)), offset_(offset) {}

namespace {

class HeaderReader {
public:
    explicit HeaderReader(std::span<const unsigned char> bytes) : bytes_(bytes) {}

    std::size_t pos() const noexcept { return pos_; }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const unsigned char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (is_space(c)) {
                ++pos_;
            } else {
                return;
            }
        }
    }

    std::size_t read_uint(const char* field) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) throw PgmParseError(std::string("truncated header, missing ") + field, pos_);
        if (bytes_[pos_] < '0' || bytes_[pos_] > '9') {
            throw PgmParseError(std::string("expected ") + field, pos_);
        }
        std::size_t value = 0;
        while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
            if (value > (std::numeric_limits<std::uint32_t>::max() - 9) / 10) {
                throw PgmParseError(std::string(field) + " too large", pos_);
            }
            value = value * 10 + (bytes_[pos_] - '0');
            ++pos_;
        }
        return value;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    void single_separator() {
        if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
            throw PgmParseError("expected whitespace before raster", pos_);
        }
        ++pos_;
    }

private:
    static bool is_space(unsigned char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    }

    std::span<const unsigned char> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

TargetImage parse_pgm(std::span<const unsigned char> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P') throw PgmParseError("missing magic number", 0);
    if (bytes[1] != '5') {
        throw PgmParseError(std::string("unsupported variant P") + static_cast<char>(bytes[1]) +
                                " (only binary P5)",
                            1);
    }
    HeaderReader reader(bytes.subspan(2));
    const std::size_t width = reader.read_uint("width");
    const std::size_t height = reader.read_uint("height");
    const std::size_t maxval_at = reader.pos() + 2;
    const std::size_t maxval = reader.read_uint("maxval");
    if (width == 0 || height == 0) throw PgmParseError("zero image dimension", 2 + reader.pos());
    if (maxval == 0 || maxval > 65535) throw PgmParseError("maxval out of range 1..65535", maxval_at);
    reader.single_separator();

    const std::size_t start = 2 + reader.pos();
    const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
    const std::size_t count = width * height;
    if (count / width != height || count > (bytes.size() - start) / sample_bytes) {
        throw PgmParseError("truncated raster, expected " + std::to_string(count * sample_bytes) +
                                " bytes",
                            bytes.size());
    }

    RealGrid mag(width, height);
    const double scale = 1.0 / static_cast<double>(maxval);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t sample = 0;
        const std::size_t at = start + i * sample_bytes;
        sample = sample_bytes == 2 ? (std::size_t{bytes[at]} << 8) | bytes[at + 1] : bytes[at];
        if (sample > maxval) throw PgmParseError("sample exceeds maxval", at);
        mag[i] = static_cast<double>(sample) * scale;
    }
    return TargetImage(std::move(mag));
}

TargetImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    return parse_pgm(bytes);
}

std::string encode_pgm(const RealGrid& img, PgmScaling scaling) {
    double divisor = 1.0;
    if (scaling == PgmScaling::LinearMax) {
        const auto vals = img.values();
        const double peak = vals.empty() ? 0.0 : *std::max_element(vals.begin(), vals.end());
        divisor = peak > 0.0 ? peak : 1.0;
    }
    std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) +
                      "\n255\n";
    out.reserve(out.size() + img.size());
    for (const double v : img.values()) {
        const double unit = std::clamp(v / divisor, 0.0, 1.0);
        out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(unit * 255.0))));
    }
    return out;
}

void save_pgm(const RealGrid& img, const std::filesystem::path& path, PgmScaling scaling) {
    const std::string bytes = encode_pgm(img, scaling);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void save_pgm(const TargetImage& img, const std::filesystem::path& path, PgmScaling scaling) {
    save_pgm(img.mag, path, scaling);
}

void save_pgm(const ComplexField& field, const std::filesystem::path& path, PgmScaling scaling) {
    RealGrid mag(field.width(), field.height());
    for (std::size_t i = 0; i < field.size(); ++i) mag[i] = std::abs(field[i]);
    save_pgm(mag, path, scaling);
}

}  // namespace holo

#pragma once

#include "holo/field.hpp"
#include "holo/target.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>

namespace holo {

/// Malformed or unsupported PGM input. offset() is the byte position where
/// parsing stopped.
class PgmParseError : public std::runtime_error {
public:
    PgmParseError(const std::string& what, std::size_t offset);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Binary PGM (P5) with maxval up to 65535; 16-bit samples are big-endian.
/// Header comments are skipped. Samples are scaled to [0, 1] by maxval.
TargetImage parse_pgm(std::span<const unsigned char> bytes);
TargetImage load_pgm(const std::filesystem::path& path);

enum class PgmScaling {
    LinearMax, ///< divide by the grid maximum; an all-zero grid stays zero
    ClampUnit, ///< clamp to [0, 1]
};

/// Encodes as P5 with maxval 255, rounding to nearest.
std::string encode_pgm(const RealGrid& img, PgmScaling scaling);
void save_pgm(const RealGrid& img, const std::filesystem::path& path, PgmScaling scaling);
void save_pgm(const TargetImage& img, const std::filesystem::path& path, PgmScaling scaling);
/// Writes the magnitudes |f|.
void save_pgm(const ComplexField& field, const std::filesystem::path& path, PgmScaling scaling);

}  // namespace holo

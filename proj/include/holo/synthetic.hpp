#pragma once

#include "holo/target.hpp"

#include <cstddef>
#include <string_view>

namespace holo {

/// Licence-free stand-in for the Mandrill test image: fractal value noise with
/// a 1/f-like spectrum, an oriented fine-grained "fur" texture and a few smooth
/// bright features. Values in [0, 1]. Deterministic for a given size.
TargetImage synthetic_mandrill(std::size_t size);

/// USAF-1951-style bar target: groups of three horizontal and three vertical
/// bars shrinking by 2^(1/2) per element. Bars are 1, background 0.
TargetImage synthetic_usaf(std::size_t size);

/// Resolves `synthetic:mandrill` / `synthetic:usaf` to the generated image at
/// `size`; anything else is read as a PGM path and resampled to size x size.
TargetImage load_image(std::string_view source, std::size_t size);

}  // namespace holo

#pragma once

#include "holo/field.hpp"
#include "holo/rng.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace holo {

enum class ModulationKind { Phase, Amplitude };

/// SLM constraint: phase or amplitude, with either n discrete levels or a continuum.
///
/// Discrete phase levels are exp(2*pi*i*k/n); discrete amplitude levels are
/// k/(n-1) for k in 0..n-1. Continuous phase is any unit-magnitude value and
/// continuous amplitude any real value in [0, 1].
class ModulationScheme {
public:
    static ModulationScheme phase(int levels);
    static ModulationScheme continuous_phase();
    static ModulationScheme amplitude(int levels);
    static ModulationScheme continuous_amplitude();

    /// Accepts `binary-phase`, `phase:<n>`, `phase:cont`, `binary-amplitude`,
    /// `amplitude:<n>`, `amplitude:cont`.
    static ModulationScheme parse(std::string_view name);

    ModulationKind kind() const noexcept { return kind_; }
    std::optional<int> levels() const noexcept { return levels_; }
    bool continuous() const noexcept { return !levels_.has_value(); }
    bool binary() const noexcept { return levels_ == 2; }

    /// Allowed value number k of a discrete scheme.
    Complex level(int k) const;

    /// Whether z is one of the scheme's allowed values, to within tol.
    bool allows(Complex z, double tol = 1e-12) const noexcept;

    std::string name() const;

    friend bool operator==(const ModulationScheme&, const ModulationScheme&) = default;

private:
    ModulationScheme(ModulationKind kind, std::optional<int> levels)
        : kind_(kind), levels_(levels) {}

    ModulationKind kind_ = ModulationKind::Phase;
    std::optional<int> levels_;
};

/// Per-pixel magnitude of the quantisation change, |quantised - original|.
struct ChangeMap {
    RealGrid delta;

    std::size_t width() const noexcept { return delta.width(); }
    std::size_t height() const noexcept { return delta.height(); }
};

/// Index of the nearest discrete level; exact ties go to the lower index.
int nearest_level(Complex z, const ModulationScheme& s);

/// Nearest allowed value to z.
///
/// Phase schemes use complex-plane distance. Amplitude schemes take the real
/// part, clamp it to [0, 1], then snap. The zero value has no phase and maps to
/// exp(0) under continuous phase.
Complex quantise_value(Complex z, const ModulationScheme& s);

ComplexField quantise(const ComplexField& f, const ModulationScheme& s);

/// Throws std::invalid_argument on shape mismatch.
ChangeMap change_map(const ComplexField& original, const ComplexField& quantised);

/// Candidate replacement for an allowed value: always a different allowed value.
/// Binary schemes flip; n-level schemes pick one of the other n-1 uniformly;
/// continuous schemes redraw until the candidate differs by more than 1e-12.
Complex propose_value(Complex current, const ModulationScheme& s, SplitMix64& rng);

}  // namespace holo

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sensel/decision_core.hpp"

namespace sensel {

struct SensorDescription {
    std::string id;
    double battery = 0.0;            // percent, [0, 100]
    double price = 0.0;              // currency units, > 0
    double drift = 0.0;              // measurement-error units, >= 0
    double frequency = 0.0;          // Hz, > 0
    double energy_consumption = 0.0; // W, > 0
    double response_time = 0.0;     // ms, > 0
    double latitude = 0.0;           // degrees, context only
    double longitude = 0.0;          // degrees, context only

    bool operator==(const SensorDescription&) const = default;
};

/// The numeric sensor fields in generation and schema order. The first six
/// are rankable criteria; latitude/longitude are context metadata.
enum class SensorField {
    Battery,
    Price,
    Drift,
    Frequency,
    EnergyConsumption,
    ResponseTime,
    Latitude,
    Longitude,
};

inline constexpr std::size_t kSensorFieldCount = 8;
inline constexpr std::size_t kCriterionFieldCount = 6;

std::string_view field_name(SensorField f) noexcept;
std::optional<SensorField> parse_field(std::string_view name) noexcept;
double field_value(const SensorDescription& s, SensorField f) noexcept;

/// Names of the six rankable criteria in canonical order:
/// battery, price, drift, frequency, energy_consumption, response_time.
const std::vector<std::string>& criterion_names();

/// Fixed optimization direction of a rankable criterion: battery and
/// frequency are maximized, the rest minimized. Throws ValidationError for
/// a name that is not one of the six criteria.
CriterionSpec sensor_criterion(std::string_view name, double weight = 0.0);

struct FieldRange {
    double low = 0.0;
    double high = 0.0;

    bool operator==(const FieldRange&) const = default;
};

struct CatalogSpec {
    std::size_t count = 10'000;
    std::uint64_t seed = 2016;
    /// Indexed by SensorField.
    std::array<FieldRange, kSensorFieldCount> ranges = default_ranges();

    static std::array<FieldRange, kSensorFieldCount> default_ranges() noexcept;

    FieldRange& range(SensorField f) noexcept { return ranges[static_cast<std::size_t>(f)]; }
    const FieldRange& range(SensorField f) const noexcept {
        return ranges[static_cast<std::size_t>(f)];
    }

    bool operator==(const CatalogSpec&) const = default;
};

/// Throws ValidationError if count is zero, a range is empty or inverted, or
/// a range leaves the field's legal domain.
void validate(const CatalogSpec& spec);

/// Throws ValidationError naming the first field outside its legal domain.
void validate(const SensorDescription& s);

/// Deterministic synthetic catalog.
///
/// The generator is std::mt19937_64 seeded with `spec.seed`. Sensors are
/// produced in order; for each one the eight fields are drawn in SensorField
/// order, each consuming one 64-bit output x as
///     u = (x >> 11) * 2^-53,   value = low + (high - low) * u.
/// Identifiers are "s" followed by the zero-based index padded to at least
/// six digits.
std::vector<SensorDescription> generate_catalog(const CatalogSpec& spec);

/// One row per sensor, columns in the order given. Each criterion must name
/// one of the six rankable fields and carry that field's direction;
/// 2 <= N <= 6. Throws ValidationError otherwise.
DecisionMatrix catalog_to_matrix(std::span<const SensorDescription> sensors,
                                 std::span<const CriterionSpec> criteria);

/// Convenience overload: directions looked up by name, equal default weights.
DecisionMatrix catalog_to_matrix(std::span<const SensorDescription> sensors,
                                 std::span<const std::string> criterion_names);

inline constexpr int kCatalogSchemaVersion = 1;

/// Line-delimited JSON: a header object
///     {"format":"sensel-catalog","schema_version":1}
/// followed by one object per sensor whose keys are exactly the
/// SensorDescription field names.
void write_catalog(std::span<const SensorDescription> sensors, std::ostream& out);
std::vector<SensorDescription> read_catalog(std::istream& in);

/// Throws IoError when the file cannot be opened or written.
void save_catalog(std::span<const SensorDescription> sensors, const std::filesystem::path& path);

/// Throws IoError, or ParseError carrying the 1-based line of the first
/// malformed, duplicate or out-of-range record. An empty catalog is an error.
std::vector<SensorDescription> load_catalog(const std::filesystem::path& path);

} // namespace sensel

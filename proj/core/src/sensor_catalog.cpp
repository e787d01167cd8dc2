#include "sensel/sensor_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "sensel/errors.hpp"

namespace sensel {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<SensorField, kSensorFieldCount> kAllFields = {
    SensorField::Battery,   SensorField::Price,
    SensorField::Drift,     SensorField::Frequency,
    SensorField::EnergyConsumption, SensorField::ResponseTime,
    SensorField::Latitude,  SensorField::Longitude,
};

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Domain {
    double low;
    double high;
    bool low_open;
};

// Legal value domain of each field.
constexpr std::array<Domain, kSensorFieldCount> kDomains = {{
    {0.0, 100.0, false}, // battery
    {0.0, kInf, true},   // price
    {0.0, kInf, false},  // drift
    {0.0, kInf, true},   // frequency
    {0.0, kInf, true},   // energy_consumption
    {0.0, kInf, true},   // response_time
    {-90.0, 90.0, false},
    {-180.0, 180.0, false},
}};

bool in_domain(SensorField f, double v) {
    const auto& d = kDomains[static_cast<std::size_t>(f)];
    if (!std::isfinite(v) || v > d.high) {
        return false;
    }
    return d.low_open ? v > d.low : v >= d.low;
}

template <typename Sensor>
auto& field_ref(Sensor& s, SensorField f) noexcept {
    switch (f) {
    case SensorField::Battery:
        return s.battery;
    case SensorField::Price:
        return s.price;
    case SensorField::Drift:
        return s.drift;
    case SensorField::Frequency:
        return s.frequency;
    case SensorField::EnergyConsumption:
        return s.energy_consumption;
    case SensorField::ResponseTime:
        return s.response_time;
    case SensorField::Latitude:
        return s.latitude;
    case SensorField::Longitude:
        break;
    }
    return s.longitude;
}

std::string make_id(std::size_t index) { return fmt::format("s{:06d}", index); }

SensorDescription parse_record(const std::string& line, std::size_t line_no) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(line_no, fmt::format("invalid JSON ({})", e.what()));
    }
    if (!j.is_object()) {
        throw ParseError(line_no, "record is not a JSON object");
    }
    if (j.size() != kSensorFieldCount + 1) {
        throw ParseError(line_no, fmt::format("expected {} keys, found {}",
                                              kSensorFieldCount + 1, j.size()));
    }
    SensorDescription s;
    const auto id = j.find("id");
    if (id == j.end() || !id->is_string() || id->get_ref<const std::string&>().empty()) {
        throw ParseError(line_no, "missing or invalid 'id'");
    }
    s.id = id->get<std::string>();
    for (auto f : kAllFields) {
        const auto name = std::string(field_name(f));
        const auto it = j.find(name);
        if (it == j.end() || !it->is_number()) {
            throw ParseError(line_no, fmt::format("missing or non-numeric '{}'", name));
        }
        const double v = it->get<double>();
        if (!in_domain(f, v)) {
            throw ParseError(line_no, fmt::format("'{}' = {} is out of range", name, v));
        }
        field_ref(s, f) = v;
    }
    return s;
}

} // namespace

std::string_view field_name(SensorField f) noexcept {
    switch (f) {
    case SensorField::Battery:
        return "battery";
    case SensorField::Price:
        return "price";
    case SensorField::Drift:
        return "drift";
    case SensorField::Frequency:
        return "frequency";
    case SensorField::EnergyConsumption:
        return "energy_consumption";
    case SensorField::ResponseTime:
        return "response_time";
    case SensorField::Latitude:
        return "latitude";
    case SensorField::Longitude:
        return "longitude";
    }
    return "?";
}

std::optional<SensorField> parse_field(std::string_view name) noexcept {
    for (auto f : kAllFields) {
        if (field_name(f) == name) {
            return f;
        }
    }
    return std::nullopt;
}

double field_value(const SensorDescription& s, SensorField f) noexcept {
    return field_ref(s, f);
}

const std::vector<std::string>& criterion_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < kCriterionFieldCount; ++i) {
            out.emplace_back(field_name(kAllFields[i]));
        }
        return out;
    }();
    return names;
}

CriterionSpec sensor_criterion(std::string_view name, double weight) {
    const auto f = parse_field(name);
    if (!f || static_cast<std::size_t>(*f) >= kCriterionFieldCount) {
        throw ValidationError(fmt::format("'{}' is not a sensor criterion", name));
    }
    const bool maximize = *f == SensorField::Battery || *f == SensorField::Frequency;
    return {std::string(name), maximize ? Direction::Maximize : Direction::Minimize, weight};
}

std::array<FieldRange, kSensorFieldCount> CatalogSpec::default_ranges() noexcept {
    return {{
        {0.0, 100.0},   // battery
        {10.0, 500.0},  // price
        {0.01, 5.0},    // drift
        {0.1, 10.0},    // frequency
        {0.1, 5.0},     // energy_consumption
        {1.0, 1000.0},  // response_time
        {-90.0, 90.0},  // latitude
        {-180.0, 180.0} // longitude
    }};
}

void validate(const CatalogSpec& spec) {
    if (spec.count == 0) {
        throw ValidationError("catalog count must be at least 1");
    }
    for (auto f : kAllFields) {
        const auto& r = spec.range(f);
        if (!(r.low < r.high)) {
            throw ValidationError(fmt::format("range of '{}' is empty: [{}, {}]", field_name(f),
                                              r.low, r.high));
        }
        if (!in_domain(f, r.low) || !in_domain(f, r.high)) {
            throw ValidationError(
                fmt::format("range of '{}' leaves the field's legal domain", field_name(f)));
        }
    }
}

void validate(const SensorDescription& s) {
    if (s.id.empty()) {
        throw ValidationError("sensor id is empty");
    }
    for (auto f : kAllFields) {
        if (!in_domain(f, field_value(s, f))) {
            throw ValidationError(fmt::format("sensor '{}': '{}' = {} is out of range", s.id,
                                              field_name(f), field_value(s, f)));
        }
    }
}

std::vector<SensorDescription> generate_catalog(const CatalogSpec& spec) {
    validate(spec);
    std::mt19937_64 engine(spec.seed);
    std::vector<SensorDescription> out(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) {
        auto& s = out[i];
        s.id = make_id(i);
        for (auto f : kAllFields) {
            const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
            const auto& r = spec.range(f);
            field_ref(s, f) = r.low + (r.high - r.low) * u;
        }
    }
    return out;
}

DecisionMatrix catalog_to_matrix(std::span<const SensorDescription> sensors,
                                 std::span<const CriterionSpec> criteria) {
    if (criteria.size() < 2 || criteria.size() > kCriterionFieldCount) {
        throw ValidationError(
            fmt::format("between 2 and 6 criteria are required, got {}", criteria.size()));
    }
    std::vector<SensorField> fields;
    for (const auto& c : criteria) {
        const auto expected = sensor_criterion(c.name);
        if (c.direction != expected.direction) {
            throw ValidationError(fmt::format("criterion '{}' must be {}imized", c.name,
                                              to_string(expected.direction)));
        }
        fields.push_back(*parse_field(c.name));
    }

    IdList ids;
    ids.reserve(sensors.size());
    std::vector<double> values;
    values.reserve(sensors.size() * fields.size());
    for (const auto& s : sensors) {
        ids.push_back(s.id);
        for (auto f : fields) {
            values.push_back(field_value(s, f));
        }
    }
    return build_matrix(std::move(ids), {criteria.begin(), criteria.end()}, std::move(values));
}

DecisionMatrix catalog_to_matrix(std::span<const SensorDescription> sensors,
                                 std::span<const std::string> names) {
    std::vector<CriterionSpec> criteria;
    const double w = names.empty() ? 0.0 : 1.0 / static_cast<double>(names.size());
    for (const auto& name : names) {
        criteria.push_back(sensor_criterion(name, w));
    }
    return catalog_to_matrix(sensors, criteria);
}

void write_catalog(std::span<const SensorDescription> sensors, std::ostream& out) {
    out << ordered_json{{"format", "sensel-catalog"}, {"schema_version", kCatalogSchemaVersion}}
               .dump()
        << '\n';
    for (const auto& s : sensors) {
        ordered_json j;
        j["id"] = s.id;
        for (auto f : kAllFields) {
            j[std::string(field_name(f))] = field_value(s, f);
        }
        out << j.dump() << '\n';
    }
}

std::vector<SensorDescription> read_catalog(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError(1, "catalog is empty");
    }
    ++line_no;
    try {
        const auto header = ordered_json::parse(line);
        if (header.value("format", "") != "sensel-catalog") {
            throw ParseError(line_no, "missing catalog header");
        }
        if (header.value("schema_version", 0) != kCatalogSchemaVersion) {
            throw ParseError(line_no, "unsupported schema_version");
        }
    } catch (const nlohmann::json::exception&) {
        throw ParseError(line_no, "malformed catalog header");
    }

    std::vector<SensorDescription> out;
    std::unordered_set<std::string> ids;
    while (std::getline(in, line)) {
        ++line_no;
        auto s = parse_record(line, line_no);
        if (!ids.insert(s.id).second) {
            throw ParseError(line_no, fmt::format("duplicate id '{}'", s.id));
        }
        out.push_back(std::move(s));
    }
    if (out.empty()) {
        throw ParseError(line_no + 1, "catalog contains no sensors");
    }
    return out;
}

void save_catalog(std::span<const SensorDescription> sensors, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    }
    write_catalog(sensors, out);
    out.flush();
    if (!out) {
        throw IoError(fmt::format("failed writing '{}'", path.string()));
    }
}

std::vector<SensorDescription> load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open '{}'", path.string()));
    }
    return read_catalog(in);
}

} // namespace sensel

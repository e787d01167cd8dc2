#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "sensel/errors.hpp"
#include "sensel/sensor_catalog.hpp"

namespace sensel {
namespace {

namespace fs = std::filesystem;

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() /
                ("sensel_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

void expect_within(const std::vector<SensorDescription>& sensors, const CatalogSpec& spec) {
    for (const auto& s : sensors) {
        for (std::size_t f = 0; f < kSensorFieldCount; ++f) {
            const auto field = static_cast<SensorField>(f);
            ASSERT_GE(field_value(s, field), spec.range(field).low) << field_name(field);
            ASSERT_LE(field_value(s, field), spec.range(field).high) << field_name(field);
        }
    }
}

TEST(GenerateCatalog, SingleSensorInsideBounds) {
    CatalogSpec spec;
    spec.count = 1;
    spec.seed = 99;
    const auto sensors = generate_catalog(spec);
    ASSERT_EQ(sensors.size(), 1U);
    EXPECT_EQ(sensors[0].id, "s000000");
    expect_within(sensors, spec);
}

TEST(GenerateCatalog, Deterministic) {
    CatalogSpec spec;
    spec.count = 500;
    spec.seed = 12345;
    EXPECT_EQ(generate_catalog(spec), generate_catalog(spec));
    auto other = spec;
    other.seed = 12346;
    EXPECT_NE(generate_catalog(spec), generate_catalog(other));
}

TEST(GenerateCatalog, FirstDrawFollowsDocumentedRecipe) {
    CatalogSpec spec;
    spec.count = 2;
    spec.seed = 7;
    std::mt19937_64 engine(7);
    const double u0 = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    const double u1 = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    const auto sensors = generate_catalog(spec);
    EXPECT_EQ(sensors[0].battery, 0.0 + 100.0 * u0);
    EXPECT_EQ(sensors[0].price, 10.0 + 490.0 * u1);
    for (int skip = 0; skip < 6; ++skip) {
        engine();
    }
    const double u8 = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    EXPECT_EQ(sensors[1].battery, 100.0 * u8);
    EXPECT_EQ(sensors[1].id, "s000001");
}

TEST(GenerateCatalog, EngineIsStandardMt19937_64) {
    // The C++ standard pins the 10000th output of a default-seeded engine.
    std::mt19937_64 engine;
    engine.discard(9999);
    EXPECT_EQ(engine(), 9981545732273789042ULL);
}

TEST(GenerateCatalog, UniformStatistics) {
    CatalogSpec spec;
    spec.count = 10'000;
    spec.seed = 31;
    const auto sensors = generate_catalog(spec);
    expect_within(sensors, spec);
    double battery_sum = 0.0;
    for (const auto& s : sensors) {
        battery_sum += s.battery;
    }
    // Uniform[0,100]: sd of the mean = 100 / sqrt(12 * 10000) ~ 0.29, so
    // 50 +/- 3 is far wider than 3 sigma.
    EXPECT_NEAR(battery_sum / 10'000.0, 50.0, 3.0);
}

TEST(CatalogSpec, Validation) {
    CatalogSpec spec;
    EXPECT_NO_THROW(validate(spec));
    spec.count = 0;
    EXPECT_THROW(validate(spec), ValidationError);
    spec = {};
    spec.range(SensorField::Price) = {0.0, 10.0};
    EXPECT_THROW(validate(spec), ValidationError);
    spec = {};
    spec.range(SensorField::Battery) = {50.0, 20.0};
    EXPECT_THROW(validate(spec), ValidationError);
    spec = {};
    spec.range(SensorField::Battery) = {0.0, 120.0};
    EXPECT_THROW(generate_catalog(spec), ValidationError);
}

std::vector<SensorDescription> small_catalog(std::size_t n = 3) {
    CatalogSpec spec;
    spec.count = n;
    spec.seed = 5;
    return generate_catalog(spec);
}

TEST(CatalogToMatrix, TwoCriteriaDirections) {
    const auto sensors = small_catalog();
    const std::vector<std::string> names{"battery", "price"};
    const auto m = catalog_to_matrix(sensors, names);
    EXPECT_EQ(m.rows(), 3U);
    EXPECT_EQ(m.cols(), 2U);
    EXPECT_EQ(m.criteria()[0].direction, Direction::Maximize);
    EXPECT_EQ(m.criteria()[1].direction, Direction::Minimize);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(m.alternatives()[i], sensors[i].id);
        EXPECT_EQ(m.at(i, 0), sensors[i].battery);
        EXPECT_EQ(m.at(i, 1), sensors[i].price);
    }
}

TEST(CatalogToMatrix, AllSixInCanonicalOrder) {
    const auto m = catalog_to_matrix(small_catalog(), criterion_names());
    const std::vector<std::pair<std::string, Direction>> expected{
        {"battery", Direction::Maximize},           {"price", Direction::Minimize},
        {"drift", Direction::Minimize},             {"frequency", Direction::Maximize},
        {"energy_consumption", Direction::Minimize}, {"response_time", Direction::Minimize}};
    ASSERT_EQ(m.cols(), 6U);
    for (std::size_t j = 0; j < 6; ++j) {
        EXPECT_EQ(m.criteria()[j].name, expected[j].first);
        EXPECT_EQ(m.criteria()[j].direction, expected[j].second);
    }
}

TEST(CatalogToMatrix, RejectsSchemaViolations) {
    const auto sensors = small_catalog();
    EXPECT_THROW(catalog_to_matrix(sensors, std::vector<std::string>{"battery", "colour"}),
                 ValidationError);
    EXPECT_THROW(catalog_to_matrix(sensors, std::vector<std::string>{"price", "price"}),
                 ValidationError);
    EXPECT_THROW(catalog_to_matrix(sensors, std::vector<std::string>{"price"}), ValidationError);
    EXPECT_THROW(catalog_to_matrix(sensors, std::vector<std::string>{"battery", "latitude"}),
                 ValidationError);
    const std::vector<CriterionSpec> wrong{{"battery", Direction::Minimize, 0.5},
                                           {"price", Direction::Minimize, 0.5}};
    EXPECT_THROW(catalog_to_matrix(sensors, wrong), ValidationError);
}

TEST(CatalogFile, RoundTrip) {
    TempDir dir;
    const auto sensors = small_catalog(100);
    save_catalog(sensors, dir / "c.jsonl");
    EXPECT_EQ(load_catalog(dir / "c.jsonl"), sensors);
}

TEST(CatalogFile, HeaderAndKeys) {
    std::ostringstream out;
    write_catalog(small_catalog(1), out);
    const auto text = out.str();
    EXPECT_EQ(text.substr(0, text.find('\n')),
              R"({"format":"sensel-catalog","schema_version":1})");
    for (const char* key : {"\"id\"", "\"battery\"", "\"price\"", "\"drift\"", "\"frequency\"",
                            "\"energy_consumption\"", "\"response_time\"", "\"latitude\"",
                            "\"longitude\""}) {
        EXPECT_NE(text.find(key), std::string::npos) << key;
    }
}

std::string catalog_text(const std::vector<std::string>& records) {
    std::string out = R"({"format":"sensel-catalog","schema_version":1})" "\n";
    for (const auto& r : records) {
        out += r + "\n";
    }
    return out;
}

std::string record(const std::string& id, double price) {
    return R"({"id":")" + id + R"(","battery":50,"price":)" + std::to_string(price) +
           R"(,"drift":1,"frequency":2,"energy_consumption":1,"response_time":10,"latitude":0,"longitude":0})";
}

std::size_t parse_error_line(const std::string& text) {
    std::istringstream in(text);
    try {
        read_catalog(in);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

TEST(CatalogFile, RejectsBadLinesWithLineNumbers) {
    EXPECT_EQ(parse_error_line(catalog_text({record("a", 10), record("b", -5)})), 3U);
    EXPECT_EQ(parse_error_line(catalog_text({record("a", 10), "{not json", record("c", 1)})), 3U);
    EXPECT_EQ(parse_error_line(catalog_text({record("a", 10), record("a", 12)})), 3U);
    EXPECT_EQ(parse_error_line(catalog_text({R"({"id":"a","battery":1})"})), 2U);
    auto extra = record("a", 10);
    extra.insert(extra.size() - 1, R"(,"colour":1)");
    EXPECT_EQ(parse_error_line(catalog_text({extra})), 2U);
    EXPECT_EQ(parse_error_line(catalog_text({record("a", 10), ""})), 3U);
    EXPECT_EQ(parse_error_line("not a header\n" + record("a", 10) + "\n"), 1U);
}

TEST(CatalogFile, EmptyInputsAreErrors) {
    EXPECT_EQ(parse_error_line(""), 1U);
    EXPECT_NE(parse_error_line(catalog_text({})), 0U);
    EXPECT_THROW(load_catalog("/nonexistent/dir/catalog.jsonl"), IoError);
    EXPECT_THROW(save_catalog(small_catalog(1), "/nonexistent/dir/catalog.jsonl"), IoError);
}

TEST(SensorCriterion, FixedDirections) {
    EXPECT_EQ(sensor_criterion("frequency").direction, Direction::Maximize);
    EXPECT_EQ(sensor_criterion("response_time").direction, Direction::Minimize);
    EXPECT_THROW(sensor_criterion("longitude"), ValidationError);
}

} // namespace
} // namespace sensel

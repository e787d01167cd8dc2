#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "sensel/errors.hpp"
#include "sensel/experiment.hpp"

namespace sensel {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::set<std::string> kPlanKeys = {"catalog",      "algorithms",   "selection_fractions",
                                         "criteria_sets", "replications", "master_seed",
                                         "vikor_v"};

CatalogSpec parse_catalog_spec(const ordered_json& j) {
    CatalogSpec spec;
    for (const auto& [key, value] : j.items()) {
        if (key == "count") {
            spec.count = value.get<std::size_t>();
        } else if (key == "seed") {
            spec.seed = value.get<std::uint64_t>();
        } else if (key == "ranges") {
            for (const auto& [name, bounds] : value.items()) {
                const auto field = parse_field(name);
                if (!field) {
                    throw ValidationError(fmt::format("unknown catalog field '{}'", name));
                }
                if (!bounds.is_array() || bounds.size() != 2) {
                    throw ValidationError(
                        fmt::format("range of '{}' must be [low, high]", name));
                }
                spec.range(*field) = {bounds[0].get<double>(), bounds[1].get<double>()};
            }
        } else {
            throw ValidationError(fmt::format("unknown catalog key '{}'", key));
        }
    }
    return spec;
}

} // namespace

ExperimentPlan parse_plan(const std::string& text, const std::filesystem::path& base_dir) {
    ExperimentPlan plan;
    try {
        const auto j = ordered_json::parse(text);
        if (!j.is_object()) {
            throw ValidationError("plan must be a JSON object");
        }
        for (const auto& [key, value] : j.items()) {
            if (!kPlanKeys.contains(key)) {
                throw ValidationError(fmt::format("unknown plan key '{}'", key));
            }
        }
        if (const auto it = j.find("catalog"); it != j.end()) {
            if (it->is_string()) {
                std::filesystem::path p = it->get<std::string>();
                plan.catalog = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
            } else {
                plan.catalog = parse_catalog_spec(*it);
            }
        }
        if (const auto it = j.find("algorithms"); it != j.end()) {
            plan.algorithms.clear();
            for (const auto& name : *it) {
                const auto a = parse_algorithm(name.get<std::string>());
                if (!a) {
                    throw ValidationError(
                        fmt::format("unknown algorithm '{}'", name.get<std::string>()));
                }
                plan.algorithms.push_back(*a);
            }
        }
        if (const auto it = j.find("selection_fractions"); it != j.end()) {
            plan.selection_fractions = it->get<std::vector<double>>();
        }
        if (const auto it = j.find("criteria_sets"); it != j.end()) {
            plan.criteria_sets.clear();
            for (const auto& set : *it) {
                CriteriaSet cs;
                cs.criteria = set.at("criteria").get<std::vector<std::string>>();
                cs.name = set.contains("name") ? set["name"].get<std::string>()
                                               : fmt::format("{}", fmt::join(cs.criteria, "+"));
                plan.criteria_sets.push_back(std::move(cs));
            }
        }
        if (const auto it = j.find("replications"); it != j.end()) {
            plan.replications = it->get<std::size_t>();
        }
        if (const auto it = j.find("master_seed"); it != j.end()) {
            plan.master_seed = it->get<std::uint64_t>();
        }
        if (const auto it = j.find("vikor_v"); it != j.end()) {
            plan.vikor_v = it->get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(fmt::format("invalid plan: {}", e.what()));
    }
    validate(plan);
    return plan;
}

std::string plan_to_json(const ExperimentPlan& plan) {
    ordered_json j;
    if (const auto* spec = std::get_if<CatalogSpec>(&plan.catalog)) {
        ordered_json ranges;
        for (std::size_t f = 0; f < kSensorFieldCount; ++f) {
            const auto field = static_cast<SensorField>(f);
            ranges[std::string(field_name(field))] = {spec->range(field).low,
                                                      spec->range(field).high};
        }
        j["catalog"] = {{"count", spec->count}, {"seed", spec->seed}, {"ranges", ranges}};
    } else {
        j["catalog"] = std::get<std::filesystem::path>(plan.catalog).string();
    }
    j["algorithms"] = ordered_json::array();
    for (auto a : plan.algorithms) {
        j["algorithms"].push_back(std::string(to_string(a)));
    }
    j["selection_fractions"] = plan.selection_fractions;
    j["criteria_sets"] = ordered_json::array();
    for (const auto& set : plan.criteria_sets) {
        j["criteria_sets"].push_back({{"name", set.name}, {"criteria", set.criteria}});
    }
    j["replications"] = plan.replications;
    j["master_seed"] = plan.master_seed;
    j["vikor_v"] = plan.vikor_v;
    return j.dump(2) + "\n";
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open plan '{}'", path.string()));
    }
    std::stringstream text;
    text << in.rdbuf();
    return parse_plan(text.str(), path.parent_path());
}

void save_plan(const ExperimentPlan& plan, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    }
    out << plan_to_json(plan);
    if (!out) {
        throw IoError(fmt::format("failed writing '{}'", path.string()));
    }
}

} // namespace sensel

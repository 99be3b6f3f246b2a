#include "sfcpc/params.hpp"

#include <stdexcept>

#include <json.hpp>

namespace sfcpc {

namespace {

using nlohmann::json;

}  // namespace

const char* to_string(ScoreVariant variant) {
    switch (variant) {
        case ScoreVariant::Full: return "full";
        case ScoreVariant::Ablation: return "ablation";
        case ScoreVariant::Simple2d: return "simple2d";
        case ScoreVariant::Swapped: return "swapped";
    }
    throw std::invalid_argument("unknown score variant");
}

ScoreVariant variant_from_string(const std::string& name) {
    if (name == "full") return ScoreVariant::Full;
    if (name == "ablation") return ScoreVariant::Ablation;
    if (name == "simple2d") return ScoreVariant::Simple2d;
    if (name == "swapped") return ScoreVariant::Swapped;
    throw std::invalid_argument("unknown score variant \"" + name + "\"");
}

std::string to_json(const SortParams& params) {
    json j;
    j["variant"] = to_string(params.variant);
    j["k_x"] = params.k_x;
    j["k_y"] = params.k_y;
    j["k_z"] = params.k_z;
    j["k_rho"] = params.k_rho;
    j["r_x"] = params.r_x;
    j["r_y"] = params.r_y;
    j["r_z"] = params.r_z;
    return j.dump();
}

SortParams params_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("params JSON parse failure: ") + e.what());
    }
    if (!j.is_object()) {
        throw std::invalid_argument("params JSON must be an object");
    }
    SortParams params;
    if (j.contains("variant")) {
        params.variant = variant_from_string(j.at("variant").get<std::string>());
        if (params.variant == ScoreVariant::Ablation) {
            params = SortParams::ablation_defaults();
        }
    }
    static const char* const known[] = {"variant", "k_x", "k_y", "k_z", "k_rho",
                                        "r_x",     "r_y", "r_z"};
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw std::invalid_argument("unknown params field \"" + key + "\"");
        (void)value;
    }
    auto take = [&](const char* key, double& field) {
        if (j.contains(key)) field = j.at(key).get<double>();
    };
    take("k_x", params.k_x);
    take("k_y", params.k_y);
    take("k_z", params.k_z);
    take("k_rho", params.k_rho);
    take("r_x", params.r_x);
    take("r_y", params.r_y);
    take("r_z", params.r_z);
    if (!params.positive()) {
        throw std::invalid_argument("params must all be positive");
    }
    return params;
}

}  // namespace sfcpc

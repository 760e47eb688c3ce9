#include "foon/config.hpp"

#include <cstdlib>

#include <json.hpp>

#include "foon/core.hpp"
#include "foon/parser.hpp"

namespace foon {

namespace {

using nlohmann::json;

std::set<std::string> string_set(const json& value) {
    std::set<std::string> out;
    for (const auto& item : value)
        if (item.is_string()) out.insert(normalize_token(item.get<std::string>()));
    return out;
}

}  // namespace

ToolkitConfig load_config(const std::filesystem::path& path) {
    ToolkitConfig config;
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw std::runtime_error("malformed config JSON (" + path.string() + "): " + e.what());
    }
    if (j.contains("source_target_verbs")) config.verbs.source_target = string_set(j["source_target_verbs"]);
    if (j.contains("utensil_verbs")) config.verbs.utensil = string_set(j["utensil_verbs"]);
    if (j.contains("q1_weights") && j["q1_weights"].is_object()) {
        config.weights.q1_weights.clear();
        for (auto& [key, value] : j["q1_weights"].items())
            if (value.is_number()) config.weights.q1_weights[normalize_token(key)] = value.get<double>();
    }
    if (j.contains("q3_exact_bonus") && j["q3_exact_bonus"].is_number())
        config.weights.q3_exact_bonus = j["q3_exact_bonus"].get<double>();
    if (j.contains("q2_options")) config.weights.q2_options = string_set(j["q2_options"]);
    if (j.contains("q3_options")) config.weights.q3_options = string_set(j["q3_options"]);
    if (j.contains("q3_exact_option") && j["q3_exact_option"].is_string())
        config.weights.q3_exact_option = normalize_token(j["q3_exact_option"].get<std::string>());
    if (j.contains("ingredient_stopwords"))
        config.ingredient_stopwords = string_set(j["ingredient_stopwords"]);
    return config;
}

ToolkitConfig resolve_config(const std::optional<std::filesystem::path>& explicit_path) {
    if (explicit_path) return load_config(*explicit_path);
    if (const char* env = std::getenv("FOONKIT_CONFIG"); env && *env)
        return load_config(env);
    return ToolkitConfig{};
}

}  // namespace foon

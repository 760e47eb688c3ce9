#pragma once

// Toolkit configuration: verb classes for recipe generation, the respondent
// weighting scheme and the ingredient stop-word list. Loaded from the JSON
// file named by --config or the FOONKIT_CONFIG environment variable;
// built-in defaults apply otherwise.

#include <filesystem>
#include <optional>
#include <set>
#include <string>

#include "foon/corpus.hpp"
#include "foon/recipegen.hpp"
#include "foon/stats.hpp"

namespace foon {

struct ToolkitConfig {
    VerbClasses verbs;
    WeightScheme weights = WeightScheme::defaults();
    std::set<std::string> ingredient_stopwords = default_ingredient_stopwords();
};

// Missing keys keep their defaults; unknown keys are ignored.
ToolkitConfig load_config(const std::filesystem::path& path);

// Resolves --config, then FOONKIT_CONFIG, then defaults.
ToolkitConfig resolve_config(const std::optional<std::filesystem::path>& explicit_path);

}  // namespace foon

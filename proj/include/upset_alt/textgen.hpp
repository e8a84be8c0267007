#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "upset_alt/model.hpp"
#include "upset_alt/patterns.hpp"

namespace upset_alt {

enum class Verbosity { short_only, long_only, both };

struct DescriptionOptions {
    Verbosity verbosity = Verbosity::both;
    bool bullets = true;
    bool glossary = true;
    std::optional<int> top_k;  // overrides PlotConfig::top_k when set
};

struct DescriptionDocument {
    std::string short_text;
    std::string long_markdown;
    std::vector<std::string> warnings;
};

/// Nouns substituted into sentence templates.
struct NounLabels {
    NounPair item = kDefaultItemLabel;
    std::optional<std::string> set_noun;
};

inline constexpr std::size_t kDefaultMaxNameLength = 20;

inline constexpr std::string_view kSectionHeadings[] = {
    "UpSet Introduction",      "Dataset Properties",      "Set Properties",
    "Intersection Properties", "Statistical Information", "Trend Analysis",
};
inline constexpr std::string_view kGlossaryHeading = "Glossary";

/// Replaces the noun placeholders {items}, {item}, {sets} and {set_noun}.
/// {items} and {sets} take the singular form when the nearest preceding
/// token is the number 1. Any other placeholder throws UnknownPlaceholder.
std::string apply_labels(std::string_view sentence_template, const NounLabels& labels);

/// Shortens machine-style set names for speech. Names that already fit
/// only have underscores turned into spaces. Longer names are split on
/// underscores and hyphens, accession-like tokens (upper case and digits
/// only) are dropped, and the first two remaining tokens are kept.
std::string humanize_set_name(std::string_view raw, std::size_t max_len = kDefaultMaxNameLength);

std::string render_glossary();

/// Glossary term that defines a degree class.
std::string_view glossary_term(DegreeClass cls);

std::string generate_short(const PatternReport& report, const PlotConfig& config);
std::string generate_long(const PatternReport& report, const PlotConfig& config, const DescriptionOptions& options);

/// Both tiers plus warnings about renamed sets.
DescriptionDocument generate_description(const PatternReport& report, const PlotConfig& config,
                                         const DescriptionOptions& options);

/// Drops heading and list markers line by line.
std::string markdown_to_plain_text(std::string_view markdown);

/// Template text by key, for tools that inspect the catalog.
std::string_view template_text(std::string_view key);
std::vector<std::string_view> template_keys();

}  // namespace upset_alt

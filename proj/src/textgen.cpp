#include "upset_alt/textgen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "upset_alt/error.hpp"

namespace upset_alt {

namespace {

struct TemplateEntry {
    std::string_view key;
    std::string_view text;
};

// Sentence catalog. Value placeholders are filled from the report; noun
// placeholders ({items}, {item}, {sets}, {set_noun}) come from the labels.
constexpr TemplateEntry kTemplates[] = {
    {"short.intro", "This is an UpSet plot which shows the intersections of {n_visible} {sets}."},
    {"short.intro_labeled",
     "This is an UpSet plot that shows {items} and their {set_noun}. Each {item} can have multiple {set_noun}. "
     "The sets are {set_noun}. The items are {items}. The intersections show how many {items} have exactly the "
     "same {set_noun}. The plot shows intersections of {n_visible} {sets}."},
    {"short.major", "All major intersections involve the set {major}."},
    {"short.largest", "The largest intersection is {name}, with {size} {items}."},
    {"short.others", "Other large intersections also involve {others}."},
    {"short.all_set", "The intersection of all sets is present with {size} {items}."},
    {"short.empty_largest", "The empty intersection is present with {size} {items}."},
    {"intro.learn_more", "To learn about UpSet plots, visit https://upset.app."},
    {"dataset.counts",
     "The dataset contains {n_sets} {sets} and {n_elements} {items}, of which {n_visible} {sets} {verb} shown in the "
     "plot."},
    {"sets.divergence", "The set sizes are {divergence}, ranging from {min} to {max}."},
    {"sets.enumeration", "The largest set is {name} with {size} {items}, followed by {rest}."},
    {"sets.only", "The only set is {name} with {size} {items}."},
    {"intersections.sort", "The plot is sorted by {key} in {order} order."},
    {"intersections.count", "There are {n_rows} non-empty intersections, all of which are shown in the plot."},
    {"intersections.count_one", "There is 1 non-empty intersection, which is shown in the plot."},
    {"intersections.largest_list", "The largest {k} intersections are {list}."},
    {"intersections.largest_one", "The largest intersection is {list}."},
    {"stats.center", "The average intersection size is {mean}, and the median is {median}."},
    {"stats.percentiles", "The 90th percentile is {p90}, and the 10th percentile is {p10}."},
    {"stats.largest_presence",
     "The largest set, {name}, is present in {percent}% of all non-empty intersections."},
    {"stats.smallest_presence",
     "The smallest set, {name}, is present in {percent}% of all non-empty intersections."},
    {"trend.flatten", "The intersection sizes peak at a value of {peak} and then {adverb} flatten down to {tail}."},
    {"trend.constant", "All intersection sizes are equal to {peak}."},
    {"trend.single", "The only intersection has a size of {peak}."},
    {"trend.dominance", "{name} is the largest by a factor of {factor}."},
    {"trend.empty", "The empty intersection is present with a size of {size}."},
    {"trend.all_set", "An all set intersection is present with a size of {size}."},
    {"trend.no_all_set", "An all set intersection is not present."},
    {"trend.independent", "The individual set intersections are {classes} in size."},
    {"trend.low", "The low degree set intersections lie in {classes} sized intersections."},
    {"trend.medium", "The medium degree set intersections can be seen among {classes} sized intersections."},
    {"trend.high", "The high order set intersections can be seen among {classes} sized intersections."},
    {"trend.high_significant",
     "Among the {classes} sized intersections, the high order set intersections are significantly present."},
    {"trend.no_high", "No high order intersections are present."},
};

struct GlossaryEntry {
    std::string_view term;
    std::string_view definition;
};

constexpr GlossaryEntry kGlossary[] = {
    {"set", "A named group of elements. Each column of the plot matrix is one set."},
    {"element", "One item of the dataset, also called an item. An element can belong to any number of sets."},
    {"intersection",
     "The group of elements that belong to exactly one combination of the shown sets and to no other shown set."},
    {"degree", "The number of sets that take part in an intersection."},
    {"empty intersection",
     "The intersection of no set: elements that are in none of the shown sets. Its degree is 0."},
    {"independent set intersection",
     "An intersection of a single set, holding elements that belong to that set and no other shown set."},
    {"low-degree set intersection", "An intersection of two or three sets."},
    {"medium-degree set intersection",
     "An intersection of more than three sets but no more than half of the shown sets."},
    {"high-order set intersection",
     "An intersection of more than half of the shown sets, but not all of them."},
    {"all-set intersection", "The intersection that contains every shown set."},
};

using Values = std::vector<std::pair<std::string_view, std::string>>;

std::optional<long long> trailing_number(const std::string& text) {
    auto end = text.find_last_not_of(' ');
    if (end == std::string::npos || !std::isdigit(static_cast<unsigned char>(text[end]))) return std::nullopt;
    auto begin = end;
    while (begin > 0 && std::isdigit(static_cast<unsigned char>(text[begin - 1]))) --begin;
    if (begin > 0 && text[begin - 1] != ' ') return std::nullopt;
    return std::stoll(text.substr(begin, end - begin + 1));
}

std::string fill(std::string_view tmpl, const Values& values, const NounLabels& labels) {
    std::string out;
    out.reserve(tmpl.size() + 32);
    std::size_t pos = 0;
    while (pos < tmpl.size()) {
        const auto open = tmpl.find('{', pos);
        if (open == std::string_view::npos) {
            out.append(tmpl.substr(pos));
            break;
        }
        const auto close = tmpl.find('}', open);
        if (close == std::string_view::npos) {
            throw Error(ErrorCategory::syntax, "UnknownPlaceholder", "unterminated placeholder in template",
                        std::string(tmpl.substr(open)));
        }
        out.append(tmpl.substr(pos, open - pos));
        const auto key = tmpl.substr(open + 1, close - open - 1);
        const auto value = std::find_if(values.begin(), values.end(), [&](const auto& v) { return v.first == key; });
        if (value != values.end()) {
            out += value->second;
        } else if (key == "items" || key == "sets") {
            const bool one = trailing_number(out) == 1;
            if (key == "items") {
                out += one ? labels.item.singular : labels.item.plural;
            } else {
                out += one ? "set" : "sets";
            }
        } else if (key == "item") {
            out += labels.item.singular;
        } else if (key == "set_noun") {
            out += labels.set_noun.value_or("sets");
        } else {
            throw Error(ErrorCategory::syntax, "UnknownPlaceholder",
                        "unknown placeholder {" + std::string(key) + "}", std::string(key));
        }
        pos = close + 1;
    }
    return out;
}

std::string render(std::string_view key, const Values& values, const NounLabels& labels) {
    return fill(template_text(key), values, labels);
}

std::string number(std::size_t value) { return std::to_string(value); }

std::string number(double value) { return std::to_string(std::llround(value)); }

std::string percent(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", value);
    return buf;
}

/// "a", "a, and b", "a, b, and c"
std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += (i + 1 == items.size()) ? ", and " : ", ";
        out += items[i];
    }
    return out;
}

std::string_view divergence_phrase(DivergenceLabel label) {
    switch (label) {
        case DivergenceLabel::diverging_a_lot: return "diverging a lot";
        case DivergenceLabel::moderately_diverging: return "moderately diverging";
        case DivergenceLabel::roughly_equal: return "roughly equal";
    }
    return "";
}

std::string_view flatten_adverb(DistributionLabel label) {
    switch (label) {
        case DistributionLabel::drastically_flattening: return "drastically";
        case DistributionLabel::rapidly_flattening: return "rapidly";
        case DistributionLabel::quickly_flattening: return "quickly";
        case DistributionLabel::steadily_flattening: return "steadily";
        case DistributionLabel::constant: return "";
    }
    return "";
}

std::string size_classes_phrase(const std::set<SizeClass>& classes, bool with_article) {
    std::string out;
    for (auto cls : kAllSizeClasses) {
        if (!classes.count(cls)) continue;
        if (!out.empty()) out += " and ";
        if (cls == SizeClass::largest && with_article) out += "the ";
        out += to_string(cls);
    }
    return out;
}

/// Per-report naming context: shortened set names and the order used when
/// several sets are listed together (smallest set first).
class Namer {
public:
    explicit Namer(const PatternReport& report) : sets_(report.visible_sets) {
        std::map<std::string, std::size_t> uses;
        for (const auto& set : sets_) ++uses[humanize_set_name(set.name)];
        for (const auto& set : sets_) {
            auto shortened = humanize_set_name(set.name);
            display_[set.name] = uses[shortened] > 1 ? set.name : shortened;
        }
    }

    const std::string& display(const std::string& name) const { return display_.at(name); }

    std::vector<std::string> renamed() const {
        std::vector<std::string> notes;
        for (const auto& set : sets_) {
            const auto& shown = display_.at(set.name);
            std::string underscores = set.name;
            std::replace(underscores.begin(), underscores.end(), '_', ' ');
            if (shown != underscores) notes.push_back("set '" + set.name + "' is described as '" + shown + "'");
        }
        return notes;
    }

    std::vector<std::string> ordered(const std::vector<std::size_t>& members) const {
        auto sorted = members;
        std::stable_sort(sorted.begin(), sorted.end(),
                         [&](std::size_t a, std::size_t b) { return sets_[a].size < sets_[b].size; });
        std::vector<std::string> names;
        for (auto m : sorted) names.push_back(display(sets_[m].name));
        return names;
    }

    std::string intersection(const Intersection& row) const {
        if (row.degree() == 0) return "Just the empty intersection";
        if (row.degree() == 1) return "Just " + display(sets_[row.members[0]].name);
        return join_list(ordered(row.members));
    }

private:
    std::vector<VisibleSetSize> sets_;
    std::map<std::string, std::string> display_;
};

NounLabels labels_of(const PatternReport& report) { return NounLabels{report.item_label, report.set_noun}; }

struct Section {
    std::string_view heading;
    std::vector<std::string> sentences;
};

std::vector<std::string> dataset_sentences(const PatternReport& report, const PlotConfig& config,
                                           const NounLabels& labels) {
    std::vector<std::string> out;
    if (config.caption && !trim(*config.caption).empty()) out.push_back(trim(*config.caption));
    const auto n_visible = report.visible_sets.size();
    out.push_back(render("dataset.counts",
                         {{"n_sets", number(report.total_sets)},
                          {"n_elements", number(report.total_elements)},
                          {"n_visible", number(n_visible)},
                          {"verb", n_visible == 1 ? "is" : "are"}},
                         labels));
    return out;
}

std::vector<std::string> set_sentences(const PatternReport& report, const Namer& namer, const NounLabels& labels) {
    std::vector<std::string> out;
    auto by_size = report.visible_sets;
    std::stable_sort(by_size.begin(), by_size.end(),
                     [](const VisibleSetSize& a, const VisibleSetSize& b) { return a.size > b.size; });
    if (by_size.size() == 1) {
        out.push_back(render("sets.only", {{"name", namer.display(by_size[0].name)}, {"size", number(by_size[0].size)}},
                             labels));
        return out;
    }
    const auto& d = report.divergence;
    out.push_back(render("sets.divergence",
                         {{"divergence", std::string(divergence_phrase(d.label))},
                          {"min", number(d.min_size)},
                          {"max", number(d.max_size)}},
                         labels));
    std::vector<std::string> rest;
    for (std::size_t i = 1; i < by_size.size(); ++i) {
        rest.push_back(namer.display(by_size[i].name) + " with " + number(by_size[i].size));
    }
    out.push_back(render("sets.enumeration",
                         {{"name", namer.display(by_size[0].name)},
                          {"size", number(by_size[0].size)},
                          {"rest", join_list(rest)}},
                         labels));
    return out;
}

std::vector<std::string> intersection_sentences(const PatternReport& report, const Namer& namer,
                                                const NounLabels& labels) {
    std::vector<std::string> out;
    out.push_back(render("intersections.sort",
                         {{"key", std::string(to_string(report.table.sort_by))},
                          {"order", std::string(to_string(report.table.sort_order))}},
                         labels));
    const auto n_rows = report.table.rows.size();
    out.push_back(n_rows == 1 ? render("intersections.count_one", {}, labels)
                              : render("intersections.count", {{"n_rows", number(n_rows)}}, labels));
    std::vector<std::string> listed;
    for (const auto& row : report.top.rows) listed.push_back(namer.intersection(row) + " (" + number(row.size) + ")");
    if (listed.size() == 1) {
        out.push_back(render("intersections.largest_one", {{"list", listed[0]}}, labels));
    } else if (!listed.empty()) {
        out.push_back(render("intersections.largest_list",
                             {{"k", number(listed.size())}, {"list", join_list(listed)}}, labels));
    }
    return out;
}

std::vector<std::string> statistics_sentences(const PatternReport& report, const Namer& namer,
                                              const NounLabels& labels) {
    const auto& s = report.stats;
    std::vector<std::string> out;
    out.push_back(render("stats.center", {{"mean", number(s.mean)}, {"median", number(s.median)}}, labels));
    out.push_back(render("stats.percentiles", {{"p90", number(s.p90)}, {"p10", number(s.p10)}}, labels));
    out.push_back(render("stats.largest_presence",
                         {{"name", namer.display(s.largest_set)}, {"percent", percent(s.largest_set_presence)}},
                         labels));
    if (report.visible_sets.size() > 1) {
        out.push_back(render("stats.smallest_presence",
                             {{"name", namer.display(s.smallest_set)}, {"percent", percent(s.smallest_set_presence)}},
                             labels));
    }
    return out;
}

std::vector<std::string> trend_sentences(const PatternReport& report, const Namer& namer, const NounLabels& labels) {
    const auto& s = report.stats;
    std::vector<std::string> out;
    if (report.table.rows.size() == 1) {
        out.push_back(render("trend.single", {{"peak", number(s.peak)}}, labels));
    } else if (report.distribution.label == DistributionLabel::constant) {
        out.push_back(render("trend.constant", {{"peak", number(s.peak)}}, labels));
    } else {
        out.push_back(render("trend.flatten",
                             {{"peak", number(s.peak)},
                              {"adverb", std::string(flatten_adverb(report.distribution.label))},
                              {"tail", number(s.tail)}},
                             labels));
    }
    if (s.dominance_factor && !report.top.rows.empty()) {
        out.push_back(render("trend.dominance",
                             {{"name", namer.intersection(report.top.rows.front())},
                              {"factor", number(*s.dominance_factor)}},
                             labels));
    }
    if (report.special.empty) {
        out.push_back(render("trend.empty", {{"size", number(*report.special.empty)}}, labels));
    }
    if (report.visible_sets.size() > 1) {
        out.push_back(report.special.all_set
                          ? render("trend.all_set", {{"size", number(*report.special.all_set)}}, labels)
                          : render("trend.no_all_set", {}, labels));
    }

    const auto& occupied = report.association.occupied;
    const auto classes_of = [&](DegreeClass cls) -> const std::set<SizeClass>* {
        const auto it = occupied.find(cls);
        return it == occupied.end() ? nullptr : &it->second;
    };
    if (const auto* c = classes_of(DegreeClass::independent)) {
        out.push_back(render("trend.independent", {{"classes", size_classes_phrase(*c, true)}}, labels));
    }
    if (const auto* c = classes_of(DegreeClass::low)) {
        out.push_back(render("trend.low", {{"classes", size_classes_phrase(*c, true)}}, labels));
    }
    if (const auto* c = classes_of(DegreeClass::medium)) {
        out.push_back(render("trend.medium", {{"classes", size_classes_phrase(*c, true)}}, labels));
    }
    if (const auto* c = classes_of(DegreeClass::high)) {
        std::set<SizeClass> significant;
        for (auto cls : *c) {
            if (report.association.is_significant(cls, DegreeClass::high)) significant.insert(cls);
        }
        out.push_back(significant.empty()
                          ? render("trend.high", {{"classes", size_classes_phrase(*c, true)}}, labels)
                          : render("trend.high_significant", {{"classes", size_classes_phrase(significant, false)}},
                                   labels));
    } else {
        out.push_back(render("trend.no_high", {}, labels));
    }
    return out;
}

void append_section(std::string& out, std::string_view heading, const std::vector<std::string>& sentences,
                    bool bullets) {
    out += "# ";
    out += heading;
    out += "\n\n";
    if (bullets) {
        for (const auto& s : sentences) out += "- " + s + "\n";
    } else {
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            if (i > 0) out += ' ';
            out += sentences[i];
        }
        out += '\n';
    }
}

}  // namespace

std::string_view template_text(std::string_view key) {
    for (const auto& entry : kTemplates) {
        if (entry.key == key) return entry.text;
    }
    throw Error(ErrorCategory::syntax, "UnknownTemplate", "no template named '" + std::string(key) + "'",
                std::string(key));
}

std::vector<std::string_view> template_keys() {
    std::vector<std::string_view> keys;
    for (const auto& entry : kTemplates) keys.push_back(entry.key);
    return keys;
}

std::string apply_labels(std::string_view sentence_template, const NounLabels& labels) {
    return fill(sentence_template, {}, labels);
}

std::string humanize_set_name(std::string_view raw, std::size_t max_len) {
    const auto cut = [max_len](std::string s) {
        if (s.size() <= max_len) return s;
        auto end = max_len;
        // keep UTF-8 sequences whole
        while (end > 0 && (static_cast<unsigned char>(s[end]) & 0xC0) == 0x80) --end;
        s.resize(end);
        return trim(s);
    };

    if (raw.size() <= max_len) {
        std::string out(raw);
        std::replace(out.begin(), out.end(), '_', ' ');
        return out;
    }

    std::vector<std::string> kept;
    std::string token;
    const auto flush = [&] {
        if (token.empty()) return;
        const bool numeric = std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); });
        const bool accession = std::all_of(token.begin(), token.end(), [](unsigned char c) {
            return std::isupper(c) || std::isdigit(c);
        });
        if (!numeric && !accession) kept.push_back(token);
        token.clear();
    };
    for (char c : raw) {
        if (c == '_' || c == '-') {
            flush();
        } else {
            token += c;
        }
    }
    flush();

    if (kept.empty()) return cut(std::string(raw));
    std::string out = kept[0];
    if (kept.size() > 1) out += " " + kept[1];
    return cut(out);
}

std::string render_glossary() {
    std::string out = "# ";
    out += kGlossaryHeading;
    out += "\n\n";
    for (const auto& entry : kGlossary) {
        out += "- ";
        out += entry.term;
        out += ": ";
        out += entry.definition;
        out += '\n';
    }
    return out;
}

std::string_view glossary_term(DegreeClass cls) {
    switch (cls) {
        case DegreeClass::empty: return "empty intersection";
        case DegreeClass::independent: return "independent set intersection";
        case DegreeClass::low: return "low-degree set intersection";
        case DegreeClass::medium: return "medium-degree set intersection";
        case DegreeClass::high: return "high-order set intersection";
        case DegreeClass::all_set: return "all-set intersection";
    }
    return "";
}

std::string generate_short(const PatternReport& report, const PlotConfig& /*config*/) {
    const auto labels = labels_of(report);
    const Namer namer(report);
    const auto n_visible = report.visible_sets.size();

    std::vector<std::string> sentences;
    const bool labeled = report.set_noun.has_value() && report.item_label != kDefaultItemLabel;
    sentences.push_back(render(labeled ? "short.intro_labeled" : "short.intro", {{"n_visible", number(n_visible)}},
                               labels));
    if (n_visible > 1 && !report.top.major_sets.empty()) {
        std::vector<std::string> major;
        for (const auto& name : report.top.major_sets) major.push_back(namer.display(name));
        sentences.push_back(render("short.major", {{"major", join_list(major)}}, labels));
    }
    if (!report.top.rows.empty()) {
        const auto& largest = report.top.rows.front();
        sentences.push_back(
            render("short.largest", {{"name", namer.intersection(largest)}, {"size", number(largest.size)}}, labels));
        if (n_visible > 1 && !report.top.other_sets.empty()) {
            std::vector<std::string> others;
            for (const auto& name : report.top.other_sets) others.push_back(namer.display(name));
            sentences.push_back(render("short.others", {{"others", join_list(others)}}, labels));
        }
        if (report.special.all_set) {
            sentences.push_back(render("short.all_set", {{"size", number(*report.special.all_set)}}, labels));
        }
        if (report.special.empty && largest.degree() == 0) {
            sentences.push_back(render("short.empty_largest", {{"size", number(*report.special.empty)}}, labels));
        }
    }

    std::string out;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        if (i > 0) out += ' ';
        out += sentences[i];
    }
    return out;
}

std::string generate_long(const PatternReport& report, const PlotConfig& config, const DescriptionOptions& options) {
    const auto labels = labels_of(report);
    const Namer namer(report);

    std::string out = "# ";
    out += kSectionHeadings[0];
    out += "\n\n";
    if (config.title && !trim(*config.title).empty()) out += trim(*config.title) + "\n\n";
    out += generate_short(report, config) + "\n\n";
    out += render("intro.learn_more", {}, labels) + "\n";

    const Section sections[] = {
        {kSectionHeadings[1], dataset_sentences(report, config, labels)},
        {kSectionHeadings[2], set_sentences(report, namer, labels)},
        {kSectionHeadings[3], intersection_sentences(report, namer, labels)},
        {kSectionHeadings[4], statistics_sentences(report, namer, labels)},
        {kSectionHeadings[5], trend_sentences(report, namer, labels)},
    };
    for (const auto& section : sections) {
        out += '\n';
        append_section(out, section.heading, section.sentences, options.bullets);
    }
    if (options.glossary) {
        out += '\n';
        out += render_glossary();
    }
    return out;
}

DescriptionDocument generate_description(const PatternReport& report, const PlotConfig& config,
                                         const DescriptionOptions& options) {
    DescriptionDocument doc;
    doc.short_text = generate_short(report, config);
    doc.long_markdown = generate_long(report, config, options);
    doc.warnings = Namer(report).renamed();
    return doc;
}

std::string markdown_to_plain_text(std::string_view markdown) {
    std::string out;
    std::istringstream in{std::string(markdown)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            line.erase(0, 2);
        } else if (line.rfind("- ", 0) == 0) {
            line.erase(0, 2);
        }
        out += line;
        out += '\n';
    }
    return out;
}

}  // namespace upset_alt

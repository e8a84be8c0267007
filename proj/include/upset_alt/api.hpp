#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "upset_alt/error.hpp"
#include "upset_alt/ingest.hpp"
#include "upset_alt/model.hpp"
#include "upset_alt/patterns.hpp"
#include "upset_alt/textgen.hpp"

namespace upset_alt {

std::string_view engine_version();

/// The published JSON schema for config documents.
std::string_view config_schema();

/// Analysis plus both description tiers. options.top_k, when set, replaces
/// the config value and is range checked like it.
DescriptionDocument describe(const SetDataset& dataset, PlotConfig config, const DescriptionOptions& options);

/// Pattern report as a JSON document (for bindings and debugging).
std::string report_to_json(const PatternReport& report);

// ---- HTTP ----------------------------------------------------------------

inline constexpr std::size_t kDefaultMaxBodyBytes = 10 * 1024 * 1024;

struct HttpResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

using QueryParams = std::vector<std::pair<std::string, std::string>>;

int http_status_for(const Error& error);
HttpResponse http_error(int status, std::string_view code, std::string_view message, std::string_view path = {});

/// POST /api/v1/description. The body is either a config document with
/// inline data, or {"config": <document>, "options": {...}}. Query
/// parameters (bullets, glossary, topK, verbosity) override body options.
HttpResponse http_describe(std::string_view body, const QueryParams& query,
                           std::size_t max_body_bytes = kDefaultMaxBodyBytes);
HttpResponse http_health();
HttpResponse http_schema();

// ---- CLI -----------------------------------------------------------------

/// Batch entry point. Exit codes: 0 ok, 2 invalid input, 1 internal error.
/// Errors are written to `err` as one JSON line.
int cli_run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace upset_alt

// Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion and exits
// non-zero when any criterion fails.
//
// UPSET_ALT_UPDATE_GOLDENS=1 rewrites the golden files instead of comparing.
// UPSET_ALT_REAL_DATA=<dir> enables the real-dataset part of criterion 7
// (expects movies.csv in that directory).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "upset_alt/api.hpp"
#include "upset_alt/server.hpp"

using namespace upset_alt;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

enum class Outcome { pass, fail, skip };

struct Result {
    Outcome outcome;
    std::string detail;
};

Result pass(std::string d) { return {Outcome::pass, std::move(d)}; }
Result fail(std::string d) { return {Outcome::fail, std::move(d)}; }
Result skip(std::string d) { return {Outcome::skip, std::move(d)}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixture(const std::string& name) { return std::string(UPSET_ALT_FIXTURE_DIR) + "/" + name; }

SetDataset load_dataset(const std::string& path) {
    const auto text = oracle::read_file(path);
    return parse_dataset(text, path.ends_with(".csv") ? DataFormat::csv : DataFormat::json).value;
}

PlotConfig load_config(const std::string& path, const SetDataset& ds) {
    return parse_config(oracle::read_file(path), ds).value;
}

std::string section(const std::string& md, std::string_view heading) {
    const auto start = md.find("# " + std::string(heading) + "\n");
    if (start == std::string::npos) return {};
    const auto body = md.find('\n', start) + 1;
    const auto end = md.find("\n# ", body);
    auto text = md.substr(body, end == std::string::npos ? std::string::npos : end - body);
    while (!text.empty() && (text.front() == '\n')) text.erase(text.begin());
    while (!text.empty() && (text.back() == '\n')) text.pop_back();
    return text;
}

// ---- criteria ---------------------------------------------------------------

Result partition_invariant() {
    std::mt19937_64 rng(1);
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 1000; ++i) {
        const auto ds = oracle::random_dataset(rng, 200, 8);
        PlotConfig cfg;
        cfg.visible_sets = oracle::random_visible(rng, ds);
        const auto table = compute_table(ds, cfg);
        if (table.total_size() != ds.element_count()) {
            return fail("dataset " + std::to_string(i) + ": rows sum to " + std::to_string(table.total_size()) +
                        ", expected " + std::to_string(ds.element_count()));
        }
    }
    const double secs = seconds_since(t0);
    if (secs >= 5.0) return fail("1000 datasets took " + std::to_string(secs) + " s");
    std::ostringstream d;
    d << "1000 datasets, " << secs << " s";
    return pass(d.str());
}

Result oracle_equivalence() {
    for (unsigned seed = 0; seed < 500; ++seed) {
        std::mt19937_64 rng(seed);
        const auto ds = oracle::random_dataset(rng, 12, 4);
        PlotConfig cfg;
        cfg.visible_sets = oracle::random_visible(rng, ds);
        const auto expected = oracle::brute_force(ds, cfg.visible_sets);
        std::map<std::vector<std::string>, std::size_t> got;
        for (const auto& row : compute_table(ds, cfg).rows) got[row.names] = row.size;
        if (got != expected) return fail("seed " + std::to_string(seed) + " differs from enumeration");
    }
    return pass("500 seeds match 2^n enumeration");
}

IntersectionTable ranked_table(std::size_t n, std::size_t rank, std::size_t value) {
    IntersectionTable t;
    t.n_visible = n;
    for (std::size_t i = 1; i <= n; ++i) {
        const std::size_t size = i < rank ? i : i == rank ? value : value + i;
        t.rows.push_back(Intersection{{i - 1}, {"S" + std::to_string(i)}, size});
    }
    return t;
}

Result percentile_fidelity() {
    const auto a = summarize_statistics(ranked_table(32, 29, 179), {}).p90;
    const auto b = summarize_statistics(ranked_table(28, 26, 218), {}).p90;
    const std::string d = "p90 = " + std::to_string(a) + " (32 rows), " + std::to_string(b) + " (28 rows)";
    return a == 179 && b == 218 ? pass(d) : fail(d);
}

Result dominance() {
    IntersectionTable t;
    t.n_visible = 3;
    t.rows = {Intersection{{}, {}, 2569}, Intersection{{0}, {"A"}, 349}, Intersection{{1}, {"B"}, 218}};
    const auto f = summarize_statistics(t, {}).dominance_factor;
    t.rows[0].size = 690;  // 690 / 349 < 2
    const auto none = summarize_statistics(t, {}).dominance_factor;
    if (f != 7u) return fail("factor " + (f ? std::to_string(*f) : std::string("absent")) + ", expected 7");
    if (none) return fail("factor reported for peak/second < 2");
    return pass("2569/349 -> 7; 690/349 -> absent");
}

Result distribution_recovery() {
    struct Family {
        std::string name;
        DistributionLabel want;
        std::function<double(double, std::mt19937_64&)> shape;
    };
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Family families[] = {
        {"exponential beta=0.5", DistributionLabel::rapidly_flattening,
         [](double x, std::mt19937_64&) { return std::exp(-0.5 * x); }},
        {"exponential beta=0.9", DistributionLabel::drastically_flattening,
         [](double x, std::mt19937_64&) { return std::exp(-0.9 * x); }},
        {"quadratic", DistributionLabel::quickly_flattening, {}},
        {"linear", DistributionLabel::steadily_flattening, {}},
    };
    std::ostringstream d;
    bool ok = true;
    for (const auto& fam : families) {
        int hits = 0;
        for (unsigned seed = 0; seed < 50; ++seed) {
            std::mt19937_64 rng(seed * 7919 + 13);
            const int n = 5 + static_cast<int>(u(rng) * 36);
            const double scale = 10.0 + u(rng) * 5000.0;
            const double c = 0.05 + 0.5 * u(rng);   // quadratic floor
            const double s = 0.2 + 0.75 * u(rng);   // linear drop
            std::vector<double> v;
            for (int i = 0; i < n; ++i) {
                const double x = static_cast<double>(i) / (n - 1);
                double y;
                if (fam.name == "quadratic") y = c + (1 - x) * (1 - x);
                else if (fam.name == "linear") y = 1.0 - s * x;
                else y = fam.shape(x, rng);
                v.push_back(scale * y);
            }
            if (fit_distribution(v).label == fam.want) ++hits;
        }
        if (hits != 50) ok = false;
        d << fam.name << " " << hits << "/50; ";
    }
    auto text = d.str();
    text.resize(text.size() - 2);
    return ok ? pass(text) : fail(text);
}

Result template_structure() {
    const bool update = std::getenv("UPSET_ALT_UPDATE_GOLDENS") != nullptr;
    const std::pair<std::string, std::string> fixtures[] = {
        {"symptoms", "symptoms.csv"}, {"genres", "genres.csv"}, {"small", "small.json"}};
    std::ostringstream d;
    for (const auto& [name, data] : fixtures) {
        const auto ds = load_dataset(fixture(data));
        const auto cfg = load_config(fixture(name + ".config.json"), ds);
        const auto doc = describe(ds, cfg, {});

        std::vector<std::string> heads;
        std::istringstream lines(doc.long_markdown);
        for (std::string line; std::getline(lines, line);) {
            if (line.rfind("# ", 0) == 0) heads.push_back(line.substr(2));
        }
        std::vector<std::string> want(std::begin(kSectionHeadings), std::end(kSectionHeadings));
        want.emplace_back(kGlossaryHeading);
        if (heads != want) return fail(name + ": headings differ");
        const auto intro = section(doc.long_markdown, kSectionHeadings[0]);
        if (intro.find(doc.short_text) == std::string::npos) return fail(name + ": short text missing from intro");

        const auto golden_md = std::string(UPSET_ALT_GOLDEN_DIR) + "/" + name + ".long.md";
        const auto golden_short = std::string(UPSET_ALT_GOLDEN_DIR) + "/" + name + ".short.txt";
        if (update) {
            oracle::write_file(golden_md, doc.long_markdown);
            oracle::write_file(golden_short, doc.short_text + "\n");
            d << name << " written; ";
            continue;
        }
        if (!fs::exists(golden_md) || !fs::exists(golden_short)) return fail(name + ": golden file missing");
        if (oracle::read_file(golden_md) != doc.long_markdown) return fail(name + ": long text differs from golden");
        if (oracle::read_file(golden_short) != doc.short_text + "\n") {
            return fail(name + ": short text differs from golden");
        }
        d << name << " ok; ";
    }
    auto text = d.str();
    text.resize(text.size() - 2);
    return pass("6 headings in order, short text in intro, goldens: " + text);
}

Result paper_reproduction() {
    const std::string dataset_sentence =
        "The dataset contains 17 sets and 6303 elements, of which 6 sets are shown in the plot.";
    const std::string set_sentence_plain =
        "The set sizes are diverging a lot, ranging from 68 to 503. The largest set is Action with 503 elements, "
        "followed by Thriller with 492, Adventure with 283, Children with 251, War with 143, and Western with 68.";
    const std::string set_sentence_movies =
        "The set sizes are diverging a lot, ranging from 68 to 503. The largest set is Action with 503 movies, "
        "followed by Thriller with 492, Adventure with 283, Children with 251, War with 143, and Western with 68.";

    const auto check = [&](const SetDataset& ds, const std::string& where) -> std::optional<std::string> {
        PlotConfig plain;
        plain.visible_sets = {"Action", "Thriller", "Adventure", "Children", "War", "Western"};
        DescriptionOptions opts;
        opts.bullets = false;
        opts.glossary = false;
        auto md = describe(ds, plain, opts).long_markdown;
        if (section(md, "Dataset Properties") != dataset_sentence) {
            return where + ": Dataset Properties was \"" + section(md, "Dataset Properties") + "\"";
        }
        if (section(md, "Set Properties") != set_sentence_plain) {
            return where + ": Set Properties was \"" + section(md, "Set Properties") + "\"";
        }
        auto labeled = plain;
        labeled.item_label = NounPair{"movie", "movies"};
        md = describe(ds, labeled, opts).long_markdown;
        if (section(md, "Set Properties") != set_sentence_movies) {
            return where + ": labeled Set Properties was \"" + section(md, "Set Properties") + "\"";
        }
        return std::nullopt;
    };

    const auto bundled = load_dataset(fixture("genres.csv"));
    if (auto err = check(bundled, "bundled reconstruction")) return fail(*err);

    PlotConfig cfg;
    cfg.visible_sets = {"Action", "Thriller", "Adventure", "Children", "War", "Western"};
    const auto report = analyze(bundled, cfg);
    std::ostringstream note;
    note << "bundled genres reconstruction reproduces the Dataset and Set Properties sentences; "
         << "reconciliation: partition semantics put " << report.special.empty.value_or(0)
         << " elements in the empty row (published 2569), " << report.table.rows.size()
         << " non-empty rows (published 28)";

    const char* real = std::getenv("UPSET_ALT_REAL_DATA");
    if (!real || !*real) {
        std::cout << "SKIP criterion 7b: real dataset check (set UPSET_ALT_REAL_DATA to a directory with movies.csv)\n";
        return pass(note.str());
    }
    const auto path = std::string(real) + "/movies.csv";
    if (!fs::exists(path)) return fail("UPSET_ALT_REAL_DATA set but " + path + " is missing");
    if (auto err = check(load_dataset(path), "real dataset")) return fail(*err);
    return pass(note.str() + "; real dataset also reproduces both sentences");
}

struct LiveServer {
    Server server;
    int port;
    std::thread worker;

    explicit LiveServer(std::size_t max_body) : server(settings(max_body)), port(server.bind()) {
        if (port > 0) {
            worker = std::thread([this] { server.listen(); });
            server.wait_until_ready();
        }
    }
    ~LiveServer() {
        server.stop();
        if (worker.joinable()) worker.join();
    }
    static ServerSettings settings(std::size_t max_body) {
        ServerSettings s;
        s.port = 0;
        s.max_body_bytes = max_body;
        return s;
    }
};

std::string http_request_body(const std::string& data_csv, const std::string& config_text) {
    auto doc = json::parse(config_text);
    doc["data"] = {{"csv", data_csv}};
    return doc.dump();
}

Result determinism() {
    const auto data_path = fixture("symptoms.csv");
    const auto config_path = fixture("symptoms.config.json");
    const std::vector<std::string> args{"--data", data_path, "--config", config_path};

    std::string first_cli;
    for (int i = 0; i < 100; ++i) {
        std::ostringstream out, err;
        if (cli_run(args, out, err) != 0) return fail("cli run " + std::to_string(i) + " failed: " + err.str());
        if (i == 0) first_cli = out.str();
        else if (out.str() != first_cli) return fail("cli run " + std::to_string(i) + " differs");
    }

    LiveServer live(kDefaultMaxBodyBytes);
    if (live.port <= 0) return fail("cannot bind a local port");
    httplib::Client client("127.0.0.1", live.port);
    const auto body = http_request_body(oracle::read_file(data_path), oracle::read_file(config_path));
    std::string first_http;
    for (int i = 0; i < 100; ++i) {
        auto res = client.Post("/api/v1/description", body, "application/json");
        if (!res || res->status != 200) return fail("http run " + std::to_string(i) + " failed");
        if (i == 0) first_http = res->body;
        else if (res->body != first_http) return fail("http run " + std::to_string(i) + " differs");
    }
    const auto parsed = json::parse(first_http);
    const auto joined = parsed["shortDescription"].get<std::string>() + "\n\n" +
                        parsed["longDescription"].get<std::string>();
    if (joined != first_cli) return fail("cli and http descriptions differ");
    return pass("100 cli + 100 http runs byte-identical; cli == http");
}

Result http_contract() {
    const auto t0 = std::chrono::steady_clock::now();
    LiveServer live(64 * 1024);
    if (live.port <= 0) return fail("cannot bind a local port");
    httplib::Client client("127.0.0.1", live.port);
    const auto valid = http_request_body("id,A,B\na,1,0\nb,1,1\nc,0,1\n", R"({"visibleSets":["A","B"]})");

    struct Case {
        std::string what;
        std::function<httplib::Result()> send;
        int status;
        std::string code;
    };
    const Case cases[] = {
        {"valid", [&] { return client.Post("/api/v1/description", valid, "application/json"); }, 200, ""},
        {"malformed json", [&] { return client.Post("/api/v1/description", "{\"data\":", "application/json"); },
         400, "SyntaxError"},
        {"bad csv cell",
         [&] {
             return client.Post("/api/v1/description", http_request_body("id,A\na,9\n", "{}"), "application/json");
         },
         400, "NonBinaryCell"},
        {"oversize",
         [&] { return client.Post("/api/v1/description", std::string(65 * 1024, ' '), "application/json"); }, 413,
         "PayloadTooLarge"},
        {"unknown visible set",
         [&] {
             return client.Post("/api/v1/description",
                                http_request_body("id,A\na,1\n", R"({"visibleSets":["Z"]})"), "application/json");
         },
         422, "UnknownVisibleSet"},
        {"topK out of range",
         [&] {
             return client.Post("/api/v1/description", http_request_body("id,A\na,1\n", R"({"topK":42})"),
                                "application/json");
         },
         422, "TopKOutOfRange"},
    };
    for (const auto& c : cases) {
        const auto res = c.send();
        if (!res) return fail(c.what + ": no response");
        if (res->status != c.status) {
            return fail(c.what + ": status " + std::to_string(res->status) + ", expected " + std::to_string(c.status));
        }
        const auto b = json::parse(res->body, nullptr, false);
        if (b.is_discarded()) return fail(c.what + ": body is not JSON");
        if (c.status == 200) {
            if (!b.contains("shortDescription") || !b.contains("longDescription") || !b.contains("engineVersion")) {
                return fail("valid: response fields missing");
            }
        } else if (b.value("code", "") != c.code || !b.contains("message") || !b.contains("path")) {
            return fail(c.what + ": error body " + res->body);
        }
    }

    auto health = client.Get("/api/v1/health");
    if (!health || health->status != 200 || health->body != "ok") return fail("health endpoint");
    auto schema = client.Get("/api/v1/schema");
    if (!schema || schema->status != 200) return fail("schema endpoint status");
    const auto sj = json::parse(schema->body, nullptr, false);
    if (sj.is_discarded() || sj.value("$id", "") != "urn:upset-alt:config-schema:v1") return fail("schema body");

    const double secs = seconds_since(t0);
    if (secs >= 30.0) return fail("contract suite took " + std::to_string(secs) + " s");
    std::ostringstream d;
    d << "400/413/422, health, schema; " << secs << " s";
    return pass(d.str());
}

}  // namespace

int main() {
    const std::pair<const char*, Result (*)()> criteria[] = {
        {"partition invariant", partition_invariant},
        {"oracle equivalence", oracle_equivalence},
        {"percentile fidelity", percentile_fidelity},
        {"dominance factor", dominance},
        {"distribution-fit recovery", distribution_recovery},
        {"template structure", template_structure},
        {"reference text reproduction", paper_reproduction},
        {"determinism", determinism},
        {"http contract", http_contract},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Result r;
        try {
            r = run();
        } catch (const std::exception& e) {
            r = fail(std::string("exception: ") + e.what());
        }
        const char* tag = r.outcome == Outcome::pass ? "PASS" : r.outcome == Outcome::skip ? "SKIP" : "FAIL";
        if (r.outcome == Outcome::fail) ++failures;
        std::cout << tag << " criterion " << index << " (" << name << "): " << r.detail << '\n';
    }
    return failures == 0 ? 0 : 1;
}

#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "upset_alt/api.hpp"
#include "upset_alt/server.hpp"

using namespace upset_alt;
using nlohmann::json;

namespace {

const char* kRequest = R"({
  "visibleSets": ["S", "T"],
  "itemLabel": {"singular": "movie", "plural": "movies"},
  "data": {"sets": {"S": ["a", "b", "c"], "T": ["c", "d"], "U": ["e"]}}
})";

json body_of(const HttpResponse& r) { return json::parse(r.body); }

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("upset_alt_test_" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        const auto p = (path / name).string();
        oracle::write_file(p, content);
        return p;
    }
};

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli_run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("http_describe happy path returns both tiers") {
    const auto r = http_describe(kRequest, {});
    REQUIRE(r.status == 200);
    const auto b = body_of(r);
    CHECK(b["shortDescription"].get<std::string>().find("2 sets") != std::string::npos);
    CHECK(b["longDescription"].get<std::string>().find("# Trend Analysis") != std::string::npos);
    CHECK(b["engineVersion"] == std::string(engine_version()));
    CHECK(b["warnings"].is_array());
    // verbosity never drops a tier
    const auto s = http_describe(kRequest, {{"verbosity", "short"}});
    CHECK(body_of(s)["longDescription"] == b["longDescription"]);
}

TEST_CASE("http_describe is byte-identical on repeat") {
    const auto first = http_describe(kRequest, {}).body;
    for (int i = 0; i < 20; ++i) CHECK(http_describe(kRequest, {}).body == first);
}

TEST_CASE("http_describe error statuses") {
    auto r = http_describe("{not json", {});
    CHECK(r.status == 400);
    CHECK(body_of(r)["code"] == "SyntaxError");
    CHECK(body_of(r).contains("path"));
    CHECK(body_of(r).contains("message"));

    r = http_describe(R"({"visibleSets":["Nope"],"data":{"sets":{"S":["a"]}}})", {});
    CHECK(r.status == 422);
    CHECK(body_of(r)["code"] == "UnknownVisibleSet");
    CHECK(body_of(r)["path"] == "visibleSets[0]");
    CHECK(body_of(r)["message"].get<std::string>().find("Nope") != std::string::npos);

    r = http_describe(R"({"visibleSets":["S"]})", {});
    CHECK(r.status == 400);
    CHECK(body_of(r)["code"] == "MissingData");

    r = http_describe(R"({"data":"movies.csv"})", {});
    CHECK(r.status == 400);
    CHECK(body_of(r)["code"] == "InlineDataRequired");

    r = http_describe(R"({"sortBy":"cardinality","data":{"sets":{"S":["a"]}}})", {});
    CHECK(r.status == 400);
    CHECK(body_of(r)["code"] == "UnknownSortKey");

    r = http_describe(R"({"topK":3,"data":{"sets":{"S":["a"]}}})", {});
    CHECK(r.status == 422);
    CHECK(body_of(r)["code"] == "TopKOutOfRange");

    r = http_describe(R"({"data":{"csv":"id,S\na,7\n"}})", {});
    CHECK(r.status == 400);
    CHECK(body_of(r)["code"] == "NonBinaryCell");

    r = http_describe(kRequest, {}, 16);
    CHECK(r.status == 413);
    CHECK(body_of(r)["code"] == "PayloadTooLarge");

    r = http_describe(kRequest, {{"bullets", "maybe"}});
    CHECK(r.status == 400);
    CHECK(body_of(r)["path"] == "bullets");
}

TEST_CASE("http_describe options from body and query") {
    const std::string wrapped = std::string(R"({"config":)") + kRequest + R"(,"options":{"bullets":false,"glossary":false}})";
    auto b = body_of(http_describe(wrapped, {}));
    const auto md = b["longDescription"].get<std::string>();
    CHECK(md.find("# Glossary") == std::string::npos);
    CHECK(md.find("\n- ") == std::string::npos);

    b = body_of(http_describe(wrapped, {{"glossary", "true"}}));
    CHECK(b["longDescription"].get<std::string>().find("# Glossary") != std::string::npos);
}

TEST_CASE("health and schema") {
    const auto h = http_health();
    CHECK(h.status == 200);
    CHECK(h.body == "ok");
    const auto s = http_schema();
    CHECK(s.status == 200);
    const auto schema = json::parse(s.body);
    CHECK(schema["$id"] == "urn:upset-alt:config-schema:v1");
    CHECK(schema["properties"].contains("visibleSets"));
}

TEST_CASE("cli: missing --data exits 2 and names the flag") {
    const auto r = run_cli({});
    CHECK(r.code == 2);
    CHECK(r.err.find("--data") != std::string::npos);
    const auto line = r.err.substr(0, r.err.find('\n'));
    CHECK(json::parse(line)["error"].contains("code"));
}

TEST_CASE("cli: verbosity, format, top-k and output file") {
    TempDir dir;
    const auto data = dir.file("d.csv", "id,A,B,C\n" + [] {
        std::string rows;
        const char* patterns[] = {"1,0,0", "0,1,0", "0,0,1", "1,1,0", "1,0,1", "0,1,1", "1,1,1", "0,0,0"};
        for (int i = 0; i < 8; ++i) {
            for (int k = 0; k <= i; ++k) rows += "e" + std::to_string(i) + "_" + std::to_string(k) + "," + patterns[i] + "\n";
        }
        return rows;
    }());
    const auto config = dir.file("c.json", R"({"visibleSets":["A","B","C"],"title":"Demo"})");

    auto r = run_cli({"--data", data, "--config", config, "--verbosity", "short"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("# ") == std::string::npos);
    CHECK(r.out.find('\n') == r.out.size() - 1);

    r = run_cli({"--data", data, "--verbosity", "long", "--top-k", "7"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("The largest 7 intersections are ") != std::string::npos);

    r = run_cli({"--data", data, "--verbosity", "long", "--format", "text", "--no-glossary"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("# ") == std::string::npos);
    CHECK(r.out.find("Trend Analysis\n") != std::string::npos);

    r = run_cli({"--data", data, "--top-k", "11"});
    CHECK(r.code == 2);
    CHECK(json::parse(r.err)["error"]["code"] == "TopKOutOfRange");

    const auto out_file = (dir.path / "out.md").string();
    r = run_cli({"--data", data, "--output", out_file});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(oracle::read_file(out_file).find("# UpSet Introduction") != std::string::npos);

    r = run_cli({"--data", (dir.path / "missing.csv").string()});
    CHECK(r.code == 2);
    CHECK(json::parse(r.err)["error"]["code"] == "FileNotFound");
}

TEST_CASE("cli and http produce the same descriptions") {
    TempDir dir;
    const auto data = dir.file("d.json", R"({"sets": {"S": ["a", "b", "c"], "T": ["c", "d"], "U": ["e"]}})");
    const auto config = dir.file("c.json", R"({"visibleSets": ["S", "T"],
        "itemLabel": {"singular": "movie", "plural": "movies"}})");
    const auto cli = run_cli({"--data", data, "--config", config});
    REQUIRE(cli.code == 0);
    const auto http = body_of(http_describe(kRequest, {}));
    CHECK(cli.out == http["shortDescription"].get<std::string>() + "\n\n" +
                         http["longDescription"].get<std::string>());
}

TEST_CASE("server contract over a real socket") {
    ServerSettings settings;
    settings.port = 0;
    settings.max_body_bytes = 4096;
    Server server(settings);
    const int port = server.bind();
    REQUIRE(port > 0);
    std::thread worker([&] { server.listen(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    auto res = client.Get("/api/v1/health");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->body == "ok");

    res = client.Get("/api/v1/schema");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(json::parse(res->body)["$id"] == "urn:upset-alt:config-schema:v1");

    res = client.Post("/api/v1/description", kRequest, "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->body == http_describe(kRequest, {}).body);

    res = client.Post("/api/v1/description?glossary=false", kRequest, "application/json");
    REQUIRE(res);
    CHECK(json::parse(res->body)["longDescription"].get<std::string>().find("# Glossary") == std::string::npos);

    res = client.Post("/api/v1/description", "{", "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);

    res = client.Post("/api/v1/description", R"({"visibleSets":["X"],"data":{"sets":{"S":["a"]}}})",
                      "application/json");
    REQUIRE(res);
    CHECK(res->status == 422);
    CHECK(json::parse(res->body)["code"] == "UnknownVisibleSet");

    res = client.Post("/api/v1/description", std::string(5000, ' '), "application/json");
    REQUIRE(res);
    CHECK(res->status == 413);
    CHECK(json::parse(res->body)["code"] == "PayloadTooLarge");

    res = client.Get("/api/v2/nothing");
    REQUIRE(res);
    CHECK(res->status == 404);

    server.stop();
    worker.join();
}

TEST_CASE("settings from the environment") {
    setenv("BIND_ADDR", "0.0.0.0:9191", 1);
    setenv("MAX_BODY_BYTES", "1234", 1);
    const auto s = settings_from_env();
    CHECK(s.host == "0.0.0.0");
    CHECK(s.port == 9191);
    CHECK(s.max_body_bytes == 1234);
    unsetenv("BIND_ADDR");
    unsetenv("MAX_BODY_BYTES");
    const auto d = settings_from_env();
    CHECK(d.port == 8080);
    CHECK(d.max_body_bytes == kDefaultMaxBodyBytes);
}

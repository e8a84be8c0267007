#include <csignal>
#include <iostream>

#include <CLI11.hpp>

#include "upset_alt/server.hpp"

namespace {
upset_alt::Server* g_server = nullptr;
}

int main(int argc, char** argv) {
    CLI::App app{"Stateless HTTP service for UpSet plot descriptions.", "upset-alt-server"};
    auto settings = upset_alt::settings_from_env();
    app.add_option("--host", settings.host, "interface to bind (env BIND_ADDR)");
    app.add_option("--port", settings.port, "port to bind, 0 for any (env BIND_ADDR)");
    app.add_option("--max-body-bytes", settings.max_body_bytes, "request size cap (env MAX_BODY_BYTES)");
    CLI11_PARSE(app, argc, argv);

    upset_alt::Server server(settings);
    const int port = server.bind();
    if (port < 0) {
        std::cerr << "cannot bind " << settings.host << ":" << settings.port << '\n';
        return 1;
    }
    g_server = &server;
    std::signal(SIGINT, [](int) { g_server->stop(); });
    std::signal(SIGTERM, [](int) { g_server->stop(); });
    std::cerr << "listening on " << settings.host << ":" << port << '\n';
    server.listen();
    return 0;
}

#include "upset_alt/server.hpp"

#include <cstdlib>

#include <httplib.h>

namespace upset_alt {

ServerSettings settings_from_env() {
    ServerSettings settings;
    if (const char* bind = std::getenv("BIND_ADDR"); bind && *bind) {
        std::string value(bind);
        const auto colon = value.rfind(':');
        if (colon == std::string::npos) {
            settings.host = value;
        } else {
            if (colon > 0) settings.host = value.substr(0, colon);
            settings.port = std::stoi(value.substr(colon + 1));
        }
    }
    if (const char* max = std::getenv("MAX_BODY_BYTES"); max && *max) {
        settings.max_body_bytes = static_cast<std::size_t>(std::stoull(max));
    }
    return settings;
}

struct Server::Impl {
    ServerSettings settings;
    httplib::Server http;
};

namespace {

void send(httplib::Response& res, const HttpResponse& response) {
    res.status = response.status;
    res.set_content(response.body, response.content_type);
}

}  // namespace

Server::Server(ServerSettings settings) : impl_(std::make_unique<Impl>()) {
    impl_->settings = std::move(settings);
    auto& http = impl_->http;
    const auto max_body = impl_->settings.max_body_bytes;

    http.set_payload_max_length(max_body);
    http.Post("/api/v1/description", [max_body](const httplib::Request& req, httplib::Response& res) {
        QueryParams query(req.params.begin(), req.params.end());
        send(res, http_describe(req.body, query, max_body));
    });
    http.Get("/api/v1/health", [](const httplib::Request&, httplib::Response& res) { send(res, http_health()); });
    http.Get("/api/v1/schema", [](const httplib::Request&, httplib::Response& res) { send(res, http_schema()); });

    // Statuses produced inside httplib (oversize bodies, unknown routes) get
    // the same structured body as the handlers'.
    http.set_error_handler([max_body](const httplib::Request&, httplib::Response& res) {
        if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
        if (res.status == 413) {
            send(res, http_error(413, "PayloadTooLarge", "request body exceeds " + std::to_string(max_body) + " bytes"));
        } else if (res.status == 404) {
            send(res, http_error(404, "NotFound", "no such endpoint"));
        } else {
            send(res, http_error(res.status, "HttpError", httplib::status_message(res.status)));
        }
        return httplib::Server::HandlerResponse::Handled;
    });
}

Server::~Server() { stop(); }

int Server::bind() {
    auto& s = impl_->settings;
    if (s.port == 0) return impl_->http.bind_to_any_port(s.host);
    return impl_->http.bind_to_port(s.host, s.port) ? s.port : -1;
}

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop() {
    if (impl_) impl_->http.stop();
}

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace upset_alt

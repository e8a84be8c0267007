#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "upset_alt/api.hpp"

namespace upset_alt {

struct ServerSettings {
    std::string host = "127.0.0.1";
    int port = 8080;  // 0 picks a free port
    std::size_t max_body_bytes = kDefaultMaxBodyBytes;
};

/// Reads BIND_ADDR ("host:port") and MAX_BODY_BYTES, falling back to the
/// defaults above.
ServerSettings settings_from_env();

/// Stateless HTTP front end over http_describe() and friends.
class Server {
public:
    explicit Server(ServerSettings settings);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds the socket and returns the bound port, or -1 on failure.
    int bind();
    /// Serves until stop(); call bind() first.
    void listen();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace upset_alt

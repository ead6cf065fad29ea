#pragma once

#include <memory>
#include <string>

#include "cbp/api.hpp"

namespace cbp {

// cpp-httplib front for ApiService.
class HttpServer {
public:
    explicit HttpServer(ApiService& api);
    ~HttpServer();

    // Binds (port 0 picks a free one) and serves on a background thread.
    // Returns the bound port; throws IoError if binding fails.
    int start(const std::string& host, int port);
    // Serves on the calling thread until stop().
    void run(const std::string& host, int port);
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace cbp

#include "cbp/http_server.hpp"

#include <httplib.h>

#include <thread>

namespace cbp {

struct HttpServer::Impl {
    ApiService& api;
    httplib::Server server;
    std::thread thread;

    explicit Impl(ApiService& a) : api(a) {
        auto handler = [this](const httplib::Request& req, httplib::Response& res) {
            ApiRequest r{req.method, req.path, {}, req.body};
            for (const auto& [k, v] : req.params) r.query[k] = v;
            auto out = api.handle(r);
            res.status = out.status;
            res.set_content(out.body, out.content_type);
        };
        const std::string pattern = "/v1(/.*)?";
        server.Get(pattern, handler);
        server.Post(pattern, handler);
        server.Put(pattern, handler);
        server.Patch(pattern, handler);
        server.Delete(pattern, handler);
    }
};

HttpServer::HttpServer(ApiService& api) : impl_(std::make_unique<Impl>(api)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
    int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) fail(ErrorCode::IoError, "cannot bind " + host + ":" + std::to_string(port));
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return bound;
}

void HttpServer::run(const std::string& host, int port) {
    if (!impl_->server.listen(host, port)) fail(ErrorCode::IoError, "cannot listen on " + host + ":" + std::to_string(port));
}

void HttpServer::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace cbp

#pragma once

#include "service.hpp"

#include <httplib.h>

#include <string>

namespace graphgames::service {

class HttpServer {
public:
    explicit HttpServer(SessionStore& store, std::string cors_origin = "*") : store_(store), origin_(std::move(cors_origin))
    {
        svr_.set_default_headers({{"Access-Control-Allow-Origin", origin_},
                                  {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                                  {"Access-Control-Allow-Headers", "Content-Type"}});
        auto h = [this](const httplib::Request& req, httplib::Response& res) { serve(req, res); };
        svr_.Get(".*", h);
        svr_.Post(".*", h);
        svr_.Delete(".*", h);
        svr_.Options(".*", h);
    }

    // Port 0 picks a free port. Returns the bound port, or -1.
    int bind(const std::string& host, int port)
    {
        port_ = port == 0 ? svr_.bind_to_any_port(host) : (svr_.bind_to_port(host, port) ? port : -1);
        return port_;
    }

    bool listen() { return svr_.listen_after_bind(); }
    void stop() { svr_.stop(); }
    void wait_until_ready() { svr_.wait_until_ready(); }
    int port() const { return port_; }

private:
    void serve(const httplib::Request& req, httplib::Response& res)
    {
        auto r = handle(store_, {req.method, req.path, req.body});
        res.status = r.status;
        if (!r.body.is_null()) res.set_content(r.body.dump(), "application/json");
    }

    SessionStore& store_;
    std::string origin_;
    httplib::Server svr_;
    int port_ = -1;
};

} // namespace graphgames::service

#include "aucplan/service.hpp"

#include <functional>
#include <iostream>

#include <httplib.h>

#include "aucplan/errors.hpp"

namespace aucplan::app {

namespace {

using Handler = std::function<Json(const Json&)>;

void reply(httplib::Response& res, int status, const Json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

Json error_body(const std::string& message) {
    Json j;
    j["error"] = message;
    return j;
}

void handle(const httplib::Request& req, httplib::Response& res, const Handler& handler) {
    Json body;
    try {
        body = Json::parse(req.body);
    } catch (const Json::parse_error& e) {
        Json j = error_body(std::string("body is not valid JSON: ") + e.what());
        j["fields"] = Json::object();
        reply(res, 400, j);
        return;
    }
    try {
        reply(res, 200, handler(body));
    } catch (const RequestError& e) {
        Json j = error_body(e.what());
        j["fields"] = Json::object();
        for (const auto& [k, m] : e.fields()) j["fields"][k] = m;
        reply(res, 400, j);
    } catch (const LimitError& e) {
        reply(res, 413, error_body(e.what()));
    } catch (const ValidationError& e) {
        reply(res, 422, error_body(e.what()));
    } catch (const std::exception& e) {
        reply(res, 500, error_body(e.what()));
    }
}

} // namespace

void parse_bind(const std::string& bind, ServiceConfig& cfg) {
    const auto colon = bind.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == bind.size()) {
        throw ValidationError("bind address must look like host:port");
    }
    int port = 0;
    try {
        std::size_t used = 0;
        port = std::stoi(bind.substr(colon + 1), &used);
        if (used != bind.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw ValidationError("bind port must be an integer");
    }
    if (port < 0 || port > 65535) {
        throw ValidationError("bind port must be in [0, 65535]");
    }
    cfg.host = bind.substr(0, colon);
    cfg.port = port;
}

void install_routes(httplib::Server& server, const ServiceConfig& cfg) {
    const ExecOptions opts{cfg.max_runs, cfg.threads};
    auto post = [&server](const char* path, Handler h) {
        server.Post(path, [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
            handle(req, res, h);
        });
    };
    post("/v1/size/single", [](const Json& b) { return plan_single(b); });
    post("/v1/size/diff", [](const Json& b) { return plan_diff(b); });
    post("/v1/assurance", [](const Json& b) { return assurance(b); });
    post("/v1/simulate", [opts](const Json& b) { return simulate(b, opts); });
    post("/v1/convert-rho", [opts](const Json& b) { return convert_rho(b, opts); });
    server.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
        Json j;
        j["status"] = "ok";
        reply(res, 200, j);
    });
}

bool serve(const ServiceConfig& cfg) {
    httplib::Server server;
    install_routes(server, cfg);
    std::cerr << "listening on " << cfg.host << ":" << cfg.port << " (run cap " << cfg.max_runs << ")\n";
    return server.listen(cfg.host, cfg.port);
}

} // namespace aucplan::app

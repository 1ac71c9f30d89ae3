#pragma once

#include <string>

#include "aucplan/requests.hpp"

namespace httplib {
class Server;
}

namespace aucplan::app {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    long max_runs = 20000;
    int threads = 0;
};

/// "host:port" -> config fields; throws ValidationError on bad input.
void parse_bind(const std::string& bind, ServiceConfig& cfg);

/// Registers the /v1 endpoints:
///   POST /v1/size/single, /v1/size/diff, /v1/assurance, /v1/simulate,
///        /v1/convert-rho
///   GET  /v1/health
/// Status codes: 400 malformed body, 422 constraint violation, 413 run cap.
void install_routes(httplib::Server& server, const ServiceConfig& cfg);

/// Blocks serving until the process is stopped. Returns false if binding fails.
bool serve(const ServiceConfig& cfg);

} // namespace aucplan::app

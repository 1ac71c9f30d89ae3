#pragma once

#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

// JSON request handlers shared by the CLI, the HTTP service and table
// reproduction. Every surface builds a request object and calls one of these,
// so all of them produce the same numbers for the same inputs.
//
// Error mapping:
//   RequestError    - malformed body (missing field, wrong type, unknown key)
//   ValidationError - well-formed but violates a constraint
//   LimitError      - simulation size above the configured cap

namespace aucplan::app {

using Json = nlohmann::ordered_json;

class RequestError : public std::runtime_error {
public:
    RequestError(std::string message, std::map<std::string, std::string> fields)
        : std::runtime_error(std::move(message)), fields_(std::move(fields)) {}

    const std::map<std::string, std::string>& fields() const { return fields_; }

private:
    std::map<std::string, std::string> fields_;
};

class LimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExecOptions {
    long max_runs = std::numeric_limits<long>::max(); ///< cap on runs / reps
    int threads = 0;
};

Json plan_single(const Json& body);
Json plan_diff(const Json& body);
Json assurance(const Json& body);
Json simulate(const Json& body, const ExecOptions& opts = {});
Json convert_rho(const Json& body, const ExecOptions& opts = {});

} // namespace aucplan::app

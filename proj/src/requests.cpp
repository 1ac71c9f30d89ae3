#include "aucplan/requests.hpp"

#include <cmath>
#include <optional>
#include <set>

#include "aucplan/errors.hpp"
#include "aucplan/sample_size.hpp"
#include "aucplan/simulation.hpp"

namespace aucplan::app {

namespace {

// Pulls typed fields out of a request object, collecting per-field problems
// so the caller sees all of them at once.
class FieldReader {
public:
    explicit FieldReader(const Json& body) : body_(body) {
        if (!body_.is_object()) {
            throw RequestError("request body must be a JSON object", {});
        }
    }

    std::optional<double> opt_number(const std::string& key) {
        const Json* v = lookup(key);
        if (v == nullptr) return std::nullopt;
        if (!v->is_number()) {
            errors_[key] = "must be a number";
            return std::nullopt;
        }
        return v->get<double>();
    }

    double number(const std::string& key) {
        if (!body_.contains(key)) {
            known_.insert(key);
            errors_[key] = "required field is missing";
            return 0.0;
        }
        return opt_number(key).value_or(0.0);
    }

    double number_or(const std::string& key, double fallback) {
        return opt_number(key).value_or(fallback);
    }

    std::optional<long> opt_integer(const std::string& key) {
        const Json* v = lookup(key);
        if (v == nullptr) return std::nullopt;
        if (!v->is_number_integer()) {
            errors_[key] = "must be an integer";
            return std::nullopt;
        }
        return v->get<long>();
    }

    std::uint64_t seed(const std::string& key, std::uint64_t fallback) {
        const Json* v = lookup(key);
        if (v == nullptr) return fallback;
        if (v->is_number_unsigned()) return v->get<std::uint64_t>();
        if (v->is_number_integer() && v->get<long long>() >= 0) return v->get<std::uint64_t>();
        errors_[key] = "must be a non-negative integer";
        return fallback;
    }

    std::string string_or(const std::string& key, const std::string& fallback) {
        const Json* v = lookup(key);
        if (v == nullptr) return fallback;
        if (!v->is_string()) {
            errors_[key] = "must be a string";
            return fallback;
        }
        return v->get<std::string>();
    }

    bool has(const std::string& key) const { return body_.contains(key); }

    void finish() {
        for (const auto& [key, _] : body_.items()) {
            if (!known_.contains(key)) errors_[key] = "unknown field";
        }
        if (!errors_.empty()) {
            std::string msg = "malformed request:";
            for (const auto& [k, m] : errors_) msg += " " + k + " (" + m + ");";
            msg.pop_back();
            throw RequestError(msg, errors_);
        }
    }

private:
    const Json* lookup(const std::string& key) {
        known_.insert(key);
        auto it = body_.find(key);
        if (it == body_.end() || it->is_null()) return nullptr;
        return &*it;
    }

    const Json& body_;
    std::set<std::string> known_;
    std::map<std::string, std::string> errors_;
};

// Exactly one of r / prevalence; echoes whichever was given.
double read_ratio(FieldReader& in, Json& echo) {
    const auto r = in.opt_number("r");
    const auto prevalence = in.opt_number("prevalence");
    const bool has_r = in.has("r");
    const bool has_p = in.has("prevalence");
    if (has_r == has_p) {
        in.finish();
        throw ValidationError("supply exactly one of r or prevalence");
    }
    if (has_p) {
        in.finish();
        echo["prevalence"] = *prevalence;
        const double ratio = ratio_from_prevalence(*prevalence);
        echo["r"] = ratio;
        return ratio;
    }
    echo["r"] = r.value_or(0.0);
    return r.value_or(0.0);
}

struct SingleInputs {
    PlanningTarget target;
    Json echo;
};

SingleInputs read_single(FieldReader& in, bool need_assurance) {
    SingleInputs s;
    auto& t = s.target;
    auto& e = s.echo;
    e["mode"] = "single";
    t.theta = in.number("theta");
    t.theta0 = in.number("theta0");
    t.alpha = in.number_or("alpha", 0.05);
    const std::string kernel = in.string_or("kernel", "proposed");
    const bool obuchowski = kernel == "obuchowski";
    t.groups.B = obuchowski ? in.number_or("B", 1.0) : in.number("B");
    if (need_assurance) t.assurance = in.number("assurance");
    e["theta"] = t.theta;
    e["theta0"] = t.theta0;
    e["alpha"] = t.alpha;
    if (need_assurance) e["assurance"] = t.assurance;
    t.groups.r = read_ratio(in, e);
    e["B"] = t.groups.B;
    t.kernel = parse_kernel(kernel);
    e["kernel"] = std::string(to_string(t.kernel));
    return s;
}

struct DiffInputs {
    DiffPlanningTarget target;
    Json echo;
};

DiffInputs read_diff(FieldReader& in, bool need_assurance) {
    DiffInputs d;
    auto& t = d.target;
    auto& e = d.echo;
    e["mode"] = "diff";
    t.theta1 = in.number("theta1");
    t.theta2 = in.number("theta2");
    t.delta0 = in.number("delta0");
    t.alpha = in.number_or("alpha", 0.05);
    if (need_assurance) t.assurance = in.number("assurance");
    t.B1 = in.number("B1");
    t.B2 = in.number("B2");
    t.rho = in.number("rho");
    e["theta1"] = t.theta1;
    e["theta2"] = t.theta2;
    e["delta0"] = t.delta0;
    e["alpha"] = t.alpha;
    if (need_assurance) e["assurance"] = t.assurance;
    t.r = read_ratio(in, e);
    e["B1"] = t.B1;
    e["B2"] = t.B2;
    e["rho"] = t.rho;
    return d;
}

void put_allocation(Json& out, const Allocation& a) {
    out["n_raw"] = a.n_raw;
    out["n_cases"] = a.n_cases;
    out["n_controls"] = a.n_controls;
    out["n_total"] = a.n_total;
}

void put_sim(Json& out, const SimResult& s) {
    out["runs"] = s.runs;
    out["seed"] = s.seed;
    out["eap"] = s.eap;
    out["ecp"] = s.ecp;
    out["assured"] = s.assured;
    out["covered"] = s.covered;
    out["degenerate_count"] = s.degenerate_count;
}

std::string read_mode(FieldReader& in) {
    const std::string mode = in.string_or("mode", "single");
    if (mode != "single" && mode != "diff") {
        throw ValidationError("mode must be 'single' or 'diff'");
    }
    return mode;
}

void check_cap(long requested, const ExecOptions& opts, const char* what) {
    if (requested > opts.max_runs) {
        throw LimitError(std::string(what) + " " + std::to_string(requested) +
                         " exceeds the configured limit of " + std::to_string(opts.max_runs));
    }
}

// Allocation for a simulation: explicit groups, an explicit total split by r,
// or the planned allocation when neither is given.
template <typename Target>
Allocation read_sim_allocation(FieldReader& in, const Target& t, double r, bool& planned) {
    const auto n_total = in.opt_integer("n_total");
    const auto n_cases = in.opt_integer("n_cases");
    const auto n_controls = in.opt_integer("n_controls");
    in.finish();
    planned = false;
    if (n_cases || n_controls) {
        if (!n_cases || !n_controls || n_total) {
            throw ValidationError("give n_cases and n_controls together, without n_total");
        }
        Allocation a;
        a.n_cases = *n_cases;
        a.n_controls = *n_controls;
        a.n_total = *n_cases + *n_controls;
        a.n_raw = static_cast<double>(a.n_total);
        return a;
    }
    if (n_total) return split_total(*n_total, r);
    planned = true;
    if constexpr (std::is_same_v<Target, PlanningTarget>) {
        return size_single(t);
    } else {
        return size_diff(t);
    }
}

} // namespace

Json plan_single(const Json& body) {
    FieldReader in(body);
    SingleInputs s = read_single(in, true);
    in.finish();
    Json out = std::move(s.echo);
    put_allocation(out, size_single(s.target));
    return out;
}

Json plan_diff(const Json& body) {
    FieldReader in(body);
    DiffInputs d = read_diff(in, true);
    in.finish();
    Json out = std::move(d.echo);
    put_allocation(out, size_diff(d.target));
    return out;
}

Json assurance(const Json& body) {
    FieldReader in(body);
    const std::string mode = read_mode(in);
    const double n_total = in.number("n_total");
    Json out;
    if (mode == "single") {
        SingleInputs s = read_single(in, false);
        in.finish();
        out = std::move(s.echo);
        out["n_total"] = n_total;
        out["assurance"] = assurance_for_n(n_total, s.target);
    } else {
        DiffInputs d = read_diff(in, false);
        in.finish();
        out = std::move(d.echo);
        out["n_total"] = n_total;
        out["assurance"] = assurance_for_n(n_total, d.target);
    }
    return out;
}

Json simulate(const Json& body, const ExecOptions& opts) {
    FieldReader in(body);
    const std::string mode = read_mode(in);
    const long runs = in.opt_integer("runs").value_or(10000);
    const std::uint64_t seed = in.seed("seed", 1);
    Json out;
    SimResult result;
    if (mode == "single") {
        // Only the planned path needs assurance; with a fixed n, theta0 >= theta
        // (a null configuration) is allowed.
        const bool plan = !in.has("n_total") && !in.has("n_cases") && !in.has("n_controls");
        SingleInputs s = read_single(in, plan);
        bool planned = false;
        const PlanningTarget& t = s.target;
        const Allocation a = read_sim_allocation(in, t, t.groups.r, planned);
        check_cap(runs, opts, "runs");
        SingleSimConfig c;
        c.theta = t.theta;
        c.theta0 = t.theta0;
        c.alpha = t.alpha;
        c.B = t.groups.B;
        c.n_cases = a.n_cases;
        c.n_controls = a.n_controls;
        c.runs = runs;
        c.seed = seed;
        c.threads = opts.threads;
        result = simulate_single(c);
        out = std::move(s.echo);
        put_allocation(out, a);
        out["allocation"] = planned ? "planned" : "fixed";
    } else {
        const bool plan = !in.has("n_total") && !in.has("n_cases") && !in.has("n_controls");
        DiffInputs d = read_diff(in, plan);
        const auto rating_rho = in.opt_number("rating_rho");
        if (!in.has("rating_rho")) {
            in.finish();
            throw ValidationError("rating_rho is required for two-test simulation");
        }
        bool planned = false;
        const Allocation a = read_sim_allocation(in, d.target, d.target.r, planned);
        check_cap(runs, opts, "runs");
        DiffSimConfig c;
        c.theta1 = d.target.theta1;
        c.theta2 = d.target.theta2;
        c.delta0 = d.target.delta0;
        c.alpha = d.target.alpha;
        c.B1 = d.target.B1;
        c.B2 = d.target.B2;
        c.rating_rho = rating_rho;
        c.n_cases = a.n_cases;
        c.n_controls = a.n_controls;
        c.runs = runs;
        c.seed = seed;
        c.threads = opts.threads;
        result = simulate_diff(c);
        out = std::move(d.echo);
        out["rating_rho"] = *rating_rho;
        put_allocation(out, a);
        out["allocation"] = planned ? "planned" : "fixed";
    }
    put_sim(out, result);
    return out;
}

Json convert_rho(const Json& body, const ExecOptions& opts) {
    FieldReader in(body);
    CorrelationConversion c;
    c.theta1 = in.number("theta1");
    c.theta2 = in.number("theta2");
    c.B = in.number("B");
    c.rating_rho = in.number("rating_rho");
    c.reps = in.opt_integer("reps").value_or(5000);
    c.n_per = in.opt_integer("n_per").value_or(5000);
    c.seed = in.seed("seed", 1);
    in.finish();
    c.threads = opts.threads;
    c.validate();
    check_cap(c.reps, opts, "reps");
    Json out;
    out["theta1"] = c.theta1;
    out["theta2"] = c.theta2;
    out["B"] = c.B;
    out["rating_rho"] = c.rating_rho;
    out["reps"] = c.reps;
    out["n_per"] = c.n_per;
    out["seed"] = c.seed;
    out["auc_correlation"] = rating_to_auc_correlation(c);
    return out;
}

} // namespace aucplan::app

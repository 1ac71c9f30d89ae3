#include "aucplan/cli.hpp"

#include <cstdint>
#include <functional>
#include <memory>

#include <CLI11.hpp>

#include "aucplan/errors.hpp"
#include "aucplan/report.hpp"
#include "aucplan/requests.hpp"
#include "aucplan/service.hpp"

namespace aucplan::app {

namespace {

// Options whose values are copied into the request object only when given,
// so the handlers apply their own defaults and required-field checks.
class RequestOptions {
public:
    explicit RequestOptions(CLI::App* sub) : sub_(sub) {}

    void number(const std::string& flag, const std::string& key, const std::string& help) {
        auto slot = std::make_shared<double>();
        auto* opt = sub_->add_option(flag, *slot, help);
        fillers_.push_back([opt, slot, key](Json& j) {
            if (opt->count() > 0) j[key] = *slot;
        });
    }

    void integer(const std::string& flag, const std::string& key, const std::string& help) {
        auto slot = std::make_shared<long>();
        auto* opt = sub_->add_option(flag, *slot, help);
        fillers_.push_back([opt, slot, key](Json& j) {
            if (opt->count() > 0) j[key] = *slot;
        });
    }

    void unsigned_integer(const std::string& flag, const std::string& key, const std::string& help) {
        auto slot = std::make_shared<std::uint64_t>();
        auto* opt = sub_->add_option(flag, *slot, help);
        fillers_.push_back([opt, slot, key](Json& j) {
            if (opt->count() > 0) j[key] = *slot;
        });
    }

    void text(const std::string& flag, const std::string& key, const std::string& help) {
        auto slot = std::make_shared<std::string>();
        auto* opt = sub_->add_option(flag, *slot, help);
        fillers_.push_back([opt, slot, key](Json& j) {
            if (opt->count() > 0) j[key] = *slot;
        });
    }

    Json build() const {
        Json j = Json::object();
        for (const auto& f : fillers_) f(j);
        return j;
    }

private:
    CLI::App* sub_;
    std::vector<std::function<void(Json&)>> fillers_;
};

void single_target_options(RequestOptions& o) {
    o.number("--theta", "theta", "anticipated AUC");
    o.number("--theta0", "theta0", "required lower confidence limit");
    o.number("--alpha", "alpha", "two-sided CI significance (default 0.05)");
    o.number("--r", "r", "control:case size ratio");
    o.number("--prevalence", "prevalence", "disease prevalence (instead of --r)");
    o.number("--B", "B", "control:case SD ratio");
    o.text("--kernel", "kernel", "proposed | obuchowski");
}

void diff_target_options(RequestOptions& o) {
    o.number("--theta1", "theta1", "AUC of test 1");
    o.number("--theta2", "theta2", "AUC of test 2");
    o.number("--delta0", "delta0", "required lower limit of theta2 - theta1");
    o.number("--alpha", "alpha", "two-sided CI significance (default 0.05)");
    o.number("--r", "r", "control:case size ratio");
    o.number("--prevalence", "prevalence", "disease prevalence (instead of --r)");
    o.number("--B1", "B1", "control:case SD ratio, test 1");
    o.number("--B2", "B2", "control:case SD ratio, test 2");
    o.number("--rho", "rho", "correlation between the two estimated AUCs");
}

struct Command {
    CLI::App* sub = nullptr;
    std::unique_ptr<RequestOptions> single;
    std::unique_ptr<RequestOptions> diff;
    std::string format = "text";
    std::string mode = "single";
};

} // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sample size planning and Monte-Carlo checks for AUC confidence limits", "aucplan"};
    app.require_subcommand(1);

    auto add_format = [](CLI::App* sub, std::string& format) {
        sub->add_option("--format", format, "text | json | csv")
            ->check(CLI::IsMember({"text", "json", "csv"}))
            ->capture_default_str();
    };

    // size-single
    Command size_single;
    size_single.sub = app.add_subcommand("size-single", "sample size for one AUC");
    size_single.single = std::make_unique<RequestOptions>(size_single.sub);
    single_target_options(*size_single.single);
    size_single.single->number("--assurance", "assurance", "probability the lower limit reaches theta0");
    add_format(size_single.sub, size_single.format);

    // size-diff
    Command size_diff;
    size_diff.sub = app.add_subcommand("size-diff", "sample size for a difference of two correlated AUCs");
    size_diff.diff = std::make_unique<RequestOptions>(size_diff.sub);
    diff_target_options(*size_diff.diff);
    size_diff.diff->number("--assurance", "assurance", "probability the lower limit reaches delta0");
    add_format(size_diff.sub, size_diff.format);

    // assurance / simulate share the single|diff option sets; flags of the
    // unused mode are rejected by the handler as unknown fields.
    auto mode_command = [&](Command& cmd, const char* name, const char* help) {
        cmd.sub = app.add_subcommand(name, help);
        cmd.sub->add_option("--mode", cmd.mode, "single | diff")
            ->check(CLI::IsMember({"single", "diff"}))
            ->capture_default_str();
        cmd.single = std::make_unique<RequestOptions>(cmd.sub);
        single_target_options(*cmd.single);
        cmd.diff = std::make_unique<RequestOptions>(cmd.sub);
        cmd.diff->number("--theta1", "theta1", "AUC of test 1");
        cmd.diff->number("--theta2", "theta2", "AUC of test 2");
        cmd.diff->number("--delta0", "delta0", "required lower limit of theta2 - theta1");
        cmd.diff->number("--B1", "B1", "control:case SD ratio, test 1");
        cmd.diff->number("--B2", "B2", "control:case SD ratio, test 2");
        cmd.diff->number("--rho", "rho", "correlation between the two estimated AUCs");
        add_format(cmd.sub, cmd.format);
    };

    Command assurance_cmd;
    mode_command(assurance_cmd, "assurance", "assurance probability reached by a given total n");
    assurance_cmd.single->number("--n", "n_total", "total sample size");

    Command simulate_cmd;
    mode_command(simulate_cmd, "simulate", "Monte-Carlo empirical assurance and coverage");
    simulate_cmd.single->number("--assurance", "assurance", "plan n with this assurance when --n is absent");
    simulate_cmd.single->integer("--n", "n_total", "total sample size, split by r");
    simulate_cmd.single->integer("--cases", "n_cases", "number of cases");
    simulate_cmd.single->integer("--controls", "n_controls", "number of controls");
    simulate_cmd.single->integer("--runs", "runs", "simulation runs (default 10000)");
    simulate_cmd.single->unsigned_integer("--seed", "seed", "random seed (default 1)");
    simulate_cmd.diff->number("--rating-rho", "rating_rho", "correlation of the two tests' ratings");
    int sim_threads = 0;
    simulate_cmd.sub->add_option("--threads", sim_threads, "worker threads (0: OpenMP default)");

    // convert-rho
    Command convert;
    convert.sub = app.add_subcommand("convert-rho", "between-AUC correlation implied by a rating correlation");
    convert.single = std::make_unique<RequestOptions>(convert.sub);
    convert.single->number("--theta1", "theta1", "AUC of test 1");
    convert.single->number("--theta2", "theta2", "AUC of test 2");
    convert.single->number("--B", "B", "control:case SD ratio (both tests)");
    convert.single->number("--rating-rho", "rating_rho", "correlation of the two tests' ratings");
    convert.single->integer("--reps", "reps", "datasets to average over (default 5000)");
    convert.single->integer("--n-per", "n_per", "participants per dataset (default 5000)");
    convert.single->unsigned_integer("--seed", "seed", "random seed (default 1)");
    int convert_threads = 0;
    convert.sub->add_option("--threads", convert_threads, "worker threads (0: OpenMP default)");
    add_format(convert.sub, convert.format);

    // reproduce-table
    Command table_cmd;
    table_cmd.sub = app.add_subcommand("reproduce-table", "recompute a published design grid");
    int table_id = 1;
    std::string rows = "deterministic";
    long table_runs = 10000;
    std::uint64_t table_seed = 1;
    std::string out_path;
    int table_threads = 0;
    table_cmd.sub->add_option("--table", table_id, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
    table_cmd.sub->add_option("--rows", rows, "deterministic | all")
        ->check(CLI::IsMember({"deterministic", "all"}))
        ->capture_default_str();
    table_cmd.sub->add_option("--runs", table_runs, "runs per row when --rows all")->capture_default_str();
    table_cmd.sub->add_option("--seed", table_seed, "random seed")->capture_default_str();
    table_cmd.sub->add_option("--out", out_path, "write CSV to this path");
    table_cmd.sub->add_option("--threads", table_threads, "worker threads (0: OpenMP default)");
    table_cmd.format = "csv";
    add_format(table_cmd.sub, table_cmd.format);

    // serve
    auto* serve_cmd = app.add_subcommand("serve", "JSON-over-HTTP service");
    std::string bind = "127.0.0.1:8080";
    long max_runs = 20000;
    serve_cmd->add_option("--bind", bind, "host:port")->envname("AUCPLAN_BIND")->capture_default_str();
    serve_cmd->add_option("--max-runs", max_runs, "cap on runs / reps per request")
        ->envname("AUCPLAN_MAX_RUNS")
        ->capture_default_str();

    std::vector<const char*> argv;
    argv.push_back("aucplan");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            return app.exit(e, out, err);
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    auto emit_record = [&](const Json& record, const std::string& format) {
        switch (parse_format(format)) {
        case OutputFormat::Json: out << record.dump(2) << '\n'; break;
        case OutputFormat::Csv: write_csv(out, {record}); break;
        case OutputFormat::Text: write_text_record(out, record); break;
        }
    };

    auto mode_request = [](const Command& cmd) {
        Json req = cmd.single->build();
        const Json d = cmd.diff->build();
        for (const auto& [k, v] : d.items()) req[k] = v;
        req["mode"] = cmd.mode;
        return req;
    };

    try {
        if (size_single.sub->parsed()) {
            emit_record(plan_single(size_single.single->build()), size_single.format);
        } else if (size_diff.sub->parsed()) {
            emit_record(plan_diff(size_diff.diff->build()), size_diff.format);
        } else if (assurance_cmd.sub->parsed()) {
            emit_record(assurance(mode_request(assurance_cmd)), assurance_cmd.format);
        } else if (simulate_cmd.sub->parsed()) {
            emit_record(simulate(mode_request(simulate_cmd), {.threads = sim_threads}), simulate_cmd.format);
        } else if (convert.sub->parsed()) {
            emit_record(convert_rho(convert.single->build(), {.threads = convert_threads}), convert.format);
        } else if (table_cmd.sub->parsed()) {
            const long runs = rows == "all" ? table_runs : 0;
            const auto table = reproduce_table(table_id, runs, table_seed, table_threads);
            if (!out_path.empty()) {
                write_csv_file(out_path, table);
                err << "wrote " << table.size() << " rows to " << out_path << '\n';
            } else {
                write_rows(out, table, parse_format(table_cmd.format));
            }
        } else if (serve_cmd->parsed()) {
            ServiceConfig cfg;
            parse_bind(bind, cfg);
            if (max_runs < 1) throw ValidationError("max-runs must be at least 1");
            cfg.max_runs = max_runs;
            if (!serve(cfg)) {
                err << "error: cannot listen on " << bind << '\n';
                return 1;
            }
        }
    } catch (const RequestError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const LimitError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace aucplan::app

#include "aucplan/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "aucplan/errors.hpp"
#include "aucplan/variance_kernels.hpp"

namespace aucplan::app {

namespace {

constexpr std::array<double, 2> kAssurances = {0.5, 0.8};
constexpr std::array<double, 2> kLevels = {1.0, 2.0};

struct SingleCell {
    double theta;
    double theta0;
};

constexpr std::array<SingleCell, 6> kSingleCells = {{
    {0.9, 0.85}, {0.9, 0.80}, {0.8, 0.75}, {0.8, 0.70}, {0.7, 0.65}, {0.7, 0.60},
}};

struct CorrelationBand {
    const char* label;
    double rating_rho;
    double auc_rho_b1; // between-AUC correlation for B = 1
    double auc_rho_b2; // and for B = 2
};

constexpr std::array<CorrelationBand, 3> kBands = {{
    {"strong", 0.8, 0.71, 0.63},
    {"moderate", 0.5, 0.42, 0.37},
    {"weak", 0.2, 0.15, 0.13},
}};

std::string percent(double proportion) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", 100.0 * proportion);
    return buf;
}

std::string cell(const std::string& key, const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if ((key == "eap" || key == "ecp") && v.is_number()) return percent(v.get<double>());
    return v.dump();
}

void add_sim_columns(Json& row, const Json& sim, long runs, std::uint64_t seed) {
    if (sim.is_null()) {
        row["ecp"] = nullptr;
        row["eap"] = nullptr;
        row["runs"] = 0;
    } else {
        row["ecp"] = sim["ecp"];
        row["eap"] = sim["eap"];
        row["runs"] = runs;
    }
    row["seed"] = seed;
}

std::vector<Json> single_table(KernelChoice kernel, long runs, std::uint64_t seed, int threads) {
    std::vector<Json> rows;
    for (const auto& c : kSingleCells) {
        for (double B : kLevels) {
            for (double r : kLevels) {
                for (double assurance : kAssurances) {
                    Json req;
                    req["theta"] = c.theta;
                    req["theta0"] = c.theta0;
                    req["assurance"] = assurance;
                    req["r"] = r;
                    req["B"] = B;
                    req["kernel"] = std::string(to_string(kernel));
                    const Json plan = plan_single(req);

                    Json sim;
                    if (runs > 0) {
                        Json sreq = req;
                        sreq.erase("assurance");
                        sreq["n_cases"] = plan["n_cases"];
                        sreq["n_controls"] = plan["n_controls"];
                        sreq["runs"] = runs;
                        sreq["seed"] = seed;
                        sim = simulate(sreq, {.threads = threads});
                    }
                    Json row;
                    row["theta"] = c.theta;
                    row["theta0"] = c.theta0;
                    row["B"] = B;
                    row["r"] = r;
                    row["assurance"] = assurance;
                    row["n"] = plan["n_total"];
                    add_sim_columns(row, sim, runs, seed);
                    row["n_raw"] = plan["n_raw"];
                    row["n_cases"] = plan["n_cases"];
                    row["n_controls"] = plan["n_controls"];
                    row["kernel"] = plan["kernel"];
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

std::vector<Json> diff_table(long runs, std::uint64_t seed, int threads) {
    constexpr double theta1 = 0.7;
    constexpr double theta2 = 0.9;
    constexpr std::array<double, 2> kDelta0 = {0.15, 0.1};
    std::vector<Json> rows;
    for (const auto& band : kBands) {
        for (double delta0 : kDelta0) {
            for (double B : kLevels) {
                const double rho = B == 1.0 ? band.auc_rho_b1 : band.auc_rho_b2;
                for (double r : kLevels) {
                    for (double assurance : kAssurances) {
                        Json req;
                        req["theta1"] = theta1;
                        req["theta2"] = theta2;
                        req["delta0"] = delta0;
                        req["assurance"] = assurance;
                        req["r"] = r;
                        req["B1"] = B;
                        req["B2"] = B;
                        req["rho"] = rho;
                        const Json plan = plan_diff(req);

                        Json sim;
                        if (runs > 0) {
                            Json sreq = req;
                            sreq.erase("assurance");
                            sreq["mode"] = "diff";
                            sreq["n_cases"] = plan["n_cases"];
                            sreq["n_controls"] = plan["n_controls"];
                            sreq["rating_rho"] = band.rating_rho;
                            sreq["runs"] = runs;
                            sreq["seed"] = seed;
                            sim = simulate(sreq, {.threads = threads});
                        }
                        Json row;
                        row["correlation"] = band.label;
                        row["rho"] = rho;
                        row["rating_rho"] = band.rating_rho;
                        row["delta0"] = delta0;
                        row["B"] = B;
                        row["r"] = r;
                        row["assurance"] = assurance;
                        row["n"] = plan["n_total"];
                        add_sim_columns(row, sim, runs, seed);
                        row["n_raw"] = plan["n_raw"];
                        row["n_cases"] = plan["n_cases"];
                        row["n_controls"] = plan["n_controls"];
                        rows.push_back(std::move(row));
                    }
                }
            }
        }
    }
    return rows;
}

} // namespace

OutputFormat parse_format(const std::string& name) {
    if (name == "text") return OutputFormat::Text;
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    throw ValidationError("format must be one of text, json, csv");
}

std::vector<Json> reproduce_table(int table, long runs, std::uint64_t seed, int threads) {
    if (runs < 0) throw ValidationError("runs must be non-negative");
    switch (table) {
    case 1: return single_table(KernelChoice::Proposed, runs, seed, threads);
    case 2: return diff_table(runs, seed, threads);
    case 3: return single_table(KernelChoice::Obuchowski, runs, seed, threads);
    default: throw ValidationError("table must be 1, 2 or 3");
    }
}

void write_csv(std::ostream& os, const std::vector<Json>& rows) {
    if (rows.empty()) return;
    bool first = true;
    for (const auto& [key, _] : rows.front().items()) {
        os << (first ? "" : ",") << key;
        first = false;
    }
    os << '\n';
    for (const auto& row : rows) {
        first = true;
        for (const auto& [key, v] : row.items()) {
            os << (first ? "" : ",") << cell(key, v);
            first = false;
        }
        os << '\n';
    }
}

void write_text_table(std::ostream& os, const std::vector<Json>& rows) {
    if (rows.empty()) return;
    std::vector<std::string> keys;
    for (const auto& [key, _] : rows.front().items()) keys.push_back(key);
    std::vector<std::size_t> width(keys.size());
    for (std::size_t k = 0; k < keys.size(); ++k) width[k] = keys[k].size();
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : rows) {
        auto& line = cells.emplace_back();
        for (std::size_t k = 0; k < keys.size(); ++k) {
            line.push_back(cell(keys[k], row.value(keys[k], Json())));
            width[k] = std::max(width[k], line.back().size());
        }
    }
    auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t k = 0; k < line.size(); ++k) {
            os << (k ? "  " : "");
            os << std::string(width[k] - line[k].size(), ' ') << line[k];
        }
        os << '\n';
    };
    emit(keys);
    for (const auto& line : cells) emit(line);
}

void write_text_record(std::ostream& os, const Json& record) {
    std::size_t width = 0;
    for (const auto& [key, _] : record.items()) width = std::max(width, key.size());
    for (const auto& [key, v] : record.items()) {
        os << key << std::string(width - key.size() + 2, ' ');
        if ((key == "eap" || key == "ecp") && v.is_number()) {
            os << percent(v.get<double>()) << "%";
        } else {
            os << cell(key, v);
        }
        os << '\n';
    }
}

void write_rows(std::ostream& os, const std::vector<Json>& rows, OutputFormat fmt) {
    switch (fmt) {
    case OutputFormat::Json: os << Json(rows).dump(2) << '\n'; break;
    case OutputFormat::Csv: write_csv(os, rows); break;
    case OutputFormat::Text: write_text_table(os, rows); break;
    }
}

void write_csv_file(const std::filesystem::path& path, const std::vector<Json>& rows) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    write_csv(out, rows);
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

} // namespace aucplan::app

// crisp — confusion-matrix performance measures, property checks, threshold
// and boundary analysis, and multi-measure ranking.
//
// Subcommands: eval, props, sweep, iso, boundary, rank.
// Exit codes: 0 success, 2 input error, 3 reconciliation mismatch,
// 4 infeasible request.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crisp/analysis.hpp"
#include "crisp/confusion.hpp"
#include "crisp/csv.hpp"
#include "crisp/measures.hpp"
#include "crisp/properties.hpp"
#include "crisp/ranking.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace crisp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitReconciliation = 3;
constexpr int kExitInfeasible = 4;
constexpr const char* kSchemaVersion = "1";

std::string fmt_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return buffer;
}

std::string fmt_angle(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6f", v);
    return buffer;
}

std::string metric_text(const MetricValue& v) {
    if (v.is_defined()) return fmt_double(v.value());
    return "undefined(" + std::string(to_string(v.reason())) + ")";
}

ordered_json metric_json(const MetricValue& v) {
    ordered_json j;
    j["defined"] = v.is_defined();
    if (v.is_defined())
        j["value"] = v.value();
    else
        j["reason"] = std::string(to_string(v.reason()));
    return j;
}

ordered_json matrix_json(const ConfusionMatrix& m) {
    ordered_json j;
    j["a"] = m.a();
    j["b"] = m.b();
    j["c"] = m.c();
    j["d"] = m.d();
    return j;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(csv);
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<MeasureId> parse_measure_list(const std::string& csv) {
    std::vector<MeasureId> out;
    for (const auto& name : split_list(csv)) out.push_back(require_measure(name));
    if (out.empty()) throw input_error("measure list is empty");
    return out;
}

ConfusionMatrix parse_counts(const std::string& csv) {
    const auto fields = split_list(csv);
    if (fields.size() != 4)
        throw input_error("--counts expects four comma-separated integers a,b,c,d");
    std::int64_t cells[4];
    for (std::size_t i = 0; i < 4; ++i) {
        try {
            std::size_t used = 0;
            cells[i] = std::stoll(fields[i], &used);
            if (used != fields[i].size()) throw std::invalid_argument(fields[i]);
        } catch (const std::exception&) {
            throw input_error("invalid count: '" + fields[i] + "'");
        }
    }
    return ConfusionMatrix(cells[0], cells[1], cells[2], cells[3]);
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw input_error("cannot open output file: " + out_path);
    out << content;
}

/// Optional JSON config file mirroring the command options; explicitly passed
/// flags take precedence over file values.
class ConfigFile {
public:
    static ConfigFile load(const std::string& path) {
        ConfigFile cfg;
        if (path.empty()) return cfg;
        std::ifstream in(path);
        if (!in) throw input_error("cannot open config file: " + path);
        try {
            in >> cfg.json_;
        } catch (const std::exception& e) {
            throw input_error("config file " + path + ": " + e.what());
        }
        if (!cfg.json_.is_object()) throw input_error("config file must hold a JSON object");
        return cfg;
    }

    bool has(const char* key) const { return json_.contains(key); }

    template <typename T>
    void apply(const CLI::Option* opt, const char* key, T& target) const {
        if (opt != nullptr && opt->count() > 0) return;
        if (!json_.contains(key)) return;
        try {
            target = json_.at(key).get<T>();
        } catch (const std::exception& e) {
            throw input_error(std::string("config key '") + key + "': " + e.what());
        }
    }

private:
    nlohmann::json json_ = nlohmann::json::object();
};

/// Cost parameters shared by every subcommand, with documented defaults
/// recorded in the emitted config.
struct ParamOptions {
    double k = 0.3;
    double alpha = 0.5;
    double theta = 1.0;
    double k_fraud = 10.0;

    CLI::Option* opt_k = nullptr;
    CLI::Option* opt_alpha = nullptr;
    CLI::Option* opt_theta = nullptr;
    CLI::Option* opt_k_fraud = nullptr;

    void attach(CLI::App* cmd) {
        opt_k = cmd->add_option("--k", k, "WER severity weight in (0,1) [default 0.3]");
        opt_alpha =
            cmd->add_option("--alpha", alpha, "Fbeta precision weight in (0,1) [default 0.5]");
        opt_theta = cmd->add_option("--theta", theta, "T1 investigation cost [default 1]");
        opt_k_fraud =
            cmd->add_option("--k-fraud", k_fraud, "T1 missed-fraud cost ratio [default 10]");
    }

    void merge(const ConfigFile& file) {
        file.apply(opt_k, "k", k);
        file.apply(opt_alpha, "alpha", alpha);
        file.apply(opt_theta, "theta", theta);
        file.apply(opt_k_fraud, "k_fraud", k_fraud);
    }

    CostParams cost_params() const {
        return CostParams{.k = k, .alpha = alpha, .theta = theta, .k_fraud = k_fraud};
    }

    void emit(ordered_json& config) const {
        config["k"] = k;
        config["alpha"] = alpha;
        config["theta"] = theta;
        config["k_fraud"] = k_fraud;
    }
};

// ---------------------------------------------------------------------------
// eval

struct EvalOptions {
    std::string config_path;
    std::string counts;
    std::string data_path;
    double threshold = 0.0;
    std::string measures;
    std::string format = "text";
    std::string out_path;
    ParamOptions params;

    CLI::Option* opt_counts = nullptr;
    CLI::Option* opt_data = nullptr;
    CLI::Option* opt_threshold = nullptr;
    CLI::Option* opt_measures = nullptr;
    CLI::Option* opt_format = nullptr;
    CLI::Option* opt_out = nullptr;
};

int run_eval(EvalOptions& opt) {
    const auto file = ConfigFile::load(opt.config_path);
    file.apply(opt.opt_counts, "counts", opt.counts);
    file.apply(opt.opt_data, "data", opt.data_path);
    file.apply(opt.opt_threshold, "threshold", opt.threshold);
    file.apply(opt.opt_measures, "measures", opt.measures);
    file.apply(opt.opt_format, "format", opt.format);
    file.apply(opt.opt_out, "out", opt.out_path);
    opt.params.merge(file);

    const bool have_counts = !opt.counts.empty();
    const bool have_data = !opt.data_path.empty();
    if (have_counts == have_data)
        throw input_error("eval needs exactly one input: --counts a,b,c,d or --data file "
                          "--threshold t");
    const bool have_threshold =
        (opt.opt_threshold != nullptr && opt.opt_threshold->count() > 0) || file.has("threshold");
    if (have_data && !have_threshold) throw input_error("--data requires --threshold");

    std::vector<MeasureId> measures;
    if (opt.measures.empty())
        measures.assign(all_measure_ids().begin(), all_measure_ids().end());
    else
        measures = parse_measure_list(opt.measures);

    const ConfusionMatrix m =
        have_counts ? parse_counts(opt.counts)
                    : build_confusion(read_scored_dataset(opt.data_path), opt.threshold);

    const CostParams params = opt.params.cost_params();

    if (opt.format == "text") {
        std::ostringstream out;
        for (const MeasureId id : measures)
            out << descriptor(id).cli_id << "=" << metric_text(evaluate(id, m, params)) << "\n";
        write_output(opt.out_path, out.str());
    } else if (opt.format == "csv") {
        std::ostringstream out;
        out << "measure,value,reason\n";
        for (const MeasureId id : measures) {
            const MetricValue v = evaluate(id, m, params);
            out << descriptor(id).cli_id << ",";
            if (v.is_defined())
                out << fmt_double(v.value()) << ",";
            else
                out << "," << to_string(v.reason());
            out << "\n";
        }
        write_output(opt.out_path, out.str());
    } else if (opt.format == "json") {
        ordered_json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["command"] = "eval";
        ordered_json config;
        config["counts"] = matrix_json(m);
        if (have_data) {
            config["data"] = opt.data_path;
            config["threshold"] = opt.threshold;
        }
        ordered_json names = ordered_json::array();
        for (const MeasureId id : measures) names.push_back(std::string(descriptor(id).cli_id));
        config["measures"] = names;
        opt.params.emit(config);
        config["format"] = opt.format;
        doc["config"] = config;
        ordered_json results = ordered_json::array();
        for (const MeasureId id : measures) {
            ordered_json row;
            row["measure"] = std::string(descriptor(id).cli_id);
            row["result"] = metric_json(evaluate(id, m, params));
            results.push_back(row);
        }
        doc["results"] = results;
        write_output(opt.out_path, doc.dump(2) + "\n");
    } else {
        throw input_error("unknown format: " + opt.format);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// props

struct PropsOptions {
    std::string config_path;
    std::string measures;
    std::string property = "all";
    std::int64_t n_max = 50;
    std::int64_t trials = 200;
    std::uint64_t seed = 0;
    std::int64_t baseline_n = 100;
    std::int64_t baseline_trials = 20000;
    double baseline_pi1 = 0.3;
    double tol = 1e-12;
    std::string expected = "builtin";
    std::string format = "text";
    std::string out_path;
    ParamOptions params;

    CLI::Option* opt_measures = nullptr;
    CLI::Option* opt_property = nullptr;
    CLI::Option* opt_n_max = nullptr;
    CLI::Option* opt_trials = nullptr;
    CLI::Option* opt_seed = nullptr;
    CLI::Option* opt_baseline_n = nullptr;
    CLI::Option* opt_baseline_trials = nullptr;
    CLI::Option* opt_baseline_pi1 = nullptr;
    CLI::Option* opt_tol = nullptr;
    CLI::Option* opt_expected = nullptr;
    CLI::Option* opt_format = nullptr;
    CLI::Option* opt_out = nullptr;
};

ordered_json check_json(const PropertyCheckResult& r) {
    ordered_json j;
    j["measure"] = std::string(descriptor(r.measure).cli_id);
    j["property"] = std::string(to_string(r.property));
    j["verdict"] = std::string(to_string(r.verdict));
    if (r.counterexample) j["counterexample"] = matrix_json(*r.counterexample);
    if (r.counterexample_pair) j["counterexample_pair"] = matrix_json(*r.counterexample_pair);
    if (r.property == PropertyId::Complete || r.property == PropertyId::IgnoresCells) {
        ordered_json cells = ordered_json::array();
        const char* names = "abcd";
        for (int i = 0; i < 4; ++i)
            if (!r.sensitive_cells[i]) cells.push_back(std::string(1, names[i]));
        j["insensitive_cells"] = cells;
    }
    if (r.observed_min) j["observed_min"] = *r.observed_min;
    if (r.observed_max) j["observed_max"] = *r.observed_max;
    if (!r.baseline_stats.empty()) {
        ordered_json grid = ordered_json::array();
        for (const auto& s : r.baseline_stats) {
            ordered_json g;
            g["q"] = s.q;
            g["mean"] = s.mean;
            g["stddev"] = s.stddev;
            g["stderr"] = s.stderr_mean;
            g["defined_draws"] = s.defined_draws;
            g["skipped_draws"] = s.skipped_draws;
            grid.push_back(g);
        }
        j["grid"] = grid;
    }
    j["note"] = r.domain_note;
    j["pairs_checked"] = r.pairs_checked;
    j["pairs_skipped"] = r.pairs_skipped;
    return j;
}

int run_props(PropsOptions& opt) {
    const auto file = ConfigFile::load(opt.config_path);
    file.apply(opt.opt_measures, "measures", opt.measures);
    file.apply(opt.opt_property, "property", opt.property);
    file.apply(opt.opt_n_max, "n_max", opt.n_max);
    file.apply(opt.opt_trials, "trials", opt.trials);
    file.apply(opt.opt_seed, "seed", opt.seed);
    file.apply(opt.opt_baseline_n, "baseline_n", opt.baseline_n);
    file.apply(opt.opt_baseline_trials, "baseline_trials", opt.baseline_trials);
    file.apply(opt.opt_baseline_pi1, "baseline_pi1", opt.baseline_pi1);
    file.apply(opt.opt_tol, "tol", opt.tol);
    file.apply(opt.opt_expected, "expected", opt.expected);
    file.apply(opt.opt_format, "format", opt.format);
    file.apply(opt.opt_out, "out", opt.out_path);
    opt.params.merge(file);

    // Randomized checks run under an explicit seed only.
    const bool seed_given = (opt.opt_seed && opt.opt_seed->count() > 0) || file.has("seed");
    const bool randomized = opt.property == "all" || opt.property == "complete" ||
                            opt.property == "constant_baseline";
    if (randomized && !seed_given)
        throw input_error("props runs randomized checks; pass an explicit --seed");

    if (opt.expected != "builtin" && opt.expected != "none")
        throw input_error("--expected must be 'builtin' or 'none'");
    if (opt.n_max < 2) throw input_error("--n-max must be at least 2");
    if (opt.trials < 1) throw input_error("--trials must be positive");

    CheckConfig cfg;
    cfg.n_max = opt.n_max;
    cfg.trials = opt.trials;
    cfg.seed = opt.seed;
    cfg.baseline_n = opt.baseline_n;
    cfg.baseline_trials = opt.baseline_trials;
    cfg.baseline_pi1 = opt.baseline_pi1;
    cfg.tol = opt.tol;
    cfg.params = opt.params.cost_params();

    std::vector<MeasureId> measures;
    if (opt.measures.empty())
        measures.assign(all_measure_ids().begin(), all_measure_ids().end());
    else
        measures = parse_measure_list(opt.measures);

    const bool full_run = opt.measures.empty() && opt.property == "all";

    std::vector<PropertyCheckResult> results;
    if (opt.property == "all") {
        results = run_all_checks(measures, cfg);
    } else {
        for (const MeasureId id : measures) {
            if (opt.property == "monotonicity") {
                results.push_back(check_monotonicity(id, cfg));
            } else if (opt.property == "bounds") {
                const auto r = check_bounds(id, cfg);
                results.insert(results.end(), r.begin(), r.end());
            } else if (opt.property == "symmetry") {
                results.push_back(check_symmetry(id, cfg));
            } else if (opt.property == "complete") {
                const auto r = check_completeness(id, cfg);
                results.push_back(r[0]);
                results.push_back(r[1]);
            } else if (opt.property == "constant_baseline") {
                results.push_back(check_constant_baseline(id, cfg));
            } else if (opt.property == "balanced") {
                results.push_back(check_balanced(id, cfg));
            } else {
                throw input_error("unknown property: " + opt.property);
            }
        }
    }

    const auto report = reconcile_reference_flags(results, full_run, opt.expected == "builtin");
    const auto unexpected = report.unexpected();

    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "props";
    {
        ordered_json config;
        ordered_json names = ordered_json::array();
        for (const MeasureId id : measures) names.push_back(std::string(descriptor(id).cli_id));
        config["measures"] = names;
        config["property"] = opt.property;
        config["n_max"] = opt.n_max;
        config["trials"] = opt.trials;
        config["seed"] = opt.seed;
        config["baseline_n"] = opt.baseline_n;
        config["baseline_trials"] = opt.baseline_trials;
        config["baseline_pi1"] = opt.baseline_pi1;
        config["tol"] = opt.tol;
        config["expected"] = opt.expected;
        opt.params.emit(config);
        config["format"] = opt.format;
        doc["config"] = config;
    }
    {
        ordered_json checks = ordered_json::array();
        for (const auto& r : results) checks.push_back(check_json(r));
        doc["checks"] = checks;
    }
    {
        ordered_json rec;
        ordered_json cells = ordered_json::array();
        for (const auto& cell : report.cells) {
            ordered_json c;
            c["measure"] = std::string(descriptor(cell.measure).cli_id);
            c["column"] = std::string(to_string(cell.column));
            c["claimed"] = cell.claimed;
            c["machine_checkable"] = cell.machine_checkable;
            if (cell.machine_checkable) {
                c["checked"] = std::string(to_string(cell.checked));
                c["agree"] = cell.agree;
                c["expected_discrepancy"] = cell.expected_discrepancy;
            }
            c["note"] = cell.note;
            cells.push_back(c);
        }
        rec["cells"] = cells;
        rec["complement_identity_claimed"] = report.complement_identity_claimed;
        rec["complement_identity_checked"] = report.complement_identity_checked;
        ordered_json bad = ordered_json::array();
        for (const auto& cell : unexpected) {
            ordered_json c;
            c["measure"] = std::string(descriptor(cell.measure).cli_id);
            c["column"] = std::string(to_string(cell.column));
            bad.push_back(c);
        }
        rec["unexpected"] = bad;
        doc["reconciliation"] = rec;
    }

    if (opt.format == "json") {
        write_output(opt.out_path, doc.dump(2) + "\n");
    } else if (opt.format == "text") {
        std::ostringstream out;
        for (const auto& r : results)
            out << descriptor(r.measure).cli_id << " " << to_string(r.property) << ": "
                << to_string(r.verdict) << " (" << r.domain_note << ")\n";
        out << "reconciliation cells: " << report.cells.size()
            << ", complement identity (claimed/checked): "
            << (report.complement_identity_claimed ? "ok" : "VIOLATED") << "/"
            << (report.complement_identity_checked ? "ok" : "VIOLATED") << "\n";
        std::size_t documented = 0;
        for (const auto& cell : report.cells) {
            if (!cell.expected_discrepancy) continue;
            ++documented;
            out << "documented discrepancy: " << descriptor(cell.measure).cli_id << " "
                << to_string(cell.column) << " (claimed " << (cell.claimed ? "yes" : "no")
                << ", checked " << to_string(cell.checked) << "): " << cell.note << "\n";
        }
        out << "documented discrepancies: " << documented << "\n";
        out << "unexpected cells: " << unexpected.size() << "\n";
        for (const auto& cell : unexpected)
            out << "UNEXPECTED: " << descriptor(cell.measure).cli_id << " "
                << to_string(cell.column) << "\n";
        write_output(opt.out_path, out.str());
    } else {
        throw input_error("unknown format: " + opt.format);
    }

    return unexpected.empty() ? kExitOk : kExitReconciliation;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
    std::string config_path;
    std::string data_path;
    std::string measure;
    std::string fix;
    double target = 0.0;
    std::string format = "csv";
    std::string out_path;
    ParamOptions params;

    CLI::Option* opt_data = nullptr;
    CLI::Option* opt_measure = nullptr;
    CLI::Option* opt_fix = nullptr;
    CLI::Option* opt_target = nullptr;
    CLI::Option* opt_format = nullptr;
    CLI::Option* opt_out = nullptr;
};

int run_sweep(SweepOptions& opt) {
    const auto file = ConfigFile::load(opt.config_path);
    file.apply(opt.opt_data, "data", opt.data_path);
    file.apply(opt.opt_measure, "measure", opt.measure);
    file.apply(opt.opt_fix, "fix", opt.fix);
    file.apply(opt.opt_target, "target", opt.target);
    file.apply(opt.opt_format, "format", opt.format);
    file.apply(opt.opt_out, "out", opt.out_path);
    opt.params.merge(file);

    if (opt.data_path.empty()) throw input_error("sweep requires --data");
    if (opt.measure.empty()) throw input_error("sweep requires --measure");
    const MeasureId id = require_measure(opt.measure);
    const CostParams params = opt.params.cost_params();
    const auto data = read_scored_dataset(opt.data_path);

    ordered_json config;
    config["data"] = opt.data_path;
    config["measure"] = std::string(descriptor(id).cli_id);
    opt.params.emit(config);
    config["format"] = opt.format;

    if (!opt.fix.empty()) {
        const bool have_target =
            (opt.opt_target && opt.opt_target->count() > 0) || file.has("target");
        if (!have_target) throw input_error("--fix requires --target");
        const MeasureId fixed = require_measure(opt.fix);
        const auto result = constrained_optimum(data, fixed, opt.target, id, params);
        if (!result.feasible)
            throw infeasible_error("no threshold satisfies " +
                                   std::string(descriptor(fixed).cli_id) + " target " +
                                   fmt_double(opt.target));
        config["fix"] = std::string(descriptor(fixed).cli_id);
        config["target"] = opt.target;
        if (opt.format == "json") {
            ordered_json doc;
            doc["schema_version"] = kSchemaVersion;
            doc["command"] = "sweep";
            doc["config"] = config;
            ordered_json res;
            res["feasible"] = true;
            res["t"] = result.t;
            res["value"] = metric_json(result.value);
            res["fixed_value"] = metric_json(result.fixed_value);
            doc["constrained"] = res;
            write_output(opt.out_path, doc.dump(2) + "\n");
        } else {
            std::ostringstream out;
            out << "t=" << fmt_double(result.t) << "\n"
                << descriptor(id).cli_id << "=" << metric_text(result.value) << "\n"
                << descriptor(fixed).cli_id << "=" << metric_text(result.fixed_value) << "\n";
            write_output(opt.out_path, out.str());
        }
        return kExitOk;
    }

    const auto curve = sweep_thresholds(data, id, params);
    if (opt.format == "csv") {
        std::ostringstream out;
        out << "t,a,b,c,d,value,reason\n";
        for (const auto& p : curve.points) {
            out << fmt_double(p.t) << "," << p.matrix.a() << "," << p.matrix.b() << ","
                << p.matrix.c() << "," << p.matrix.d() << ",";
            if (p.value.is_defined())
                out << fmt_double(p.value.value()) << ",";
            else
                out << "," << to_string(p.value.reason());
            out << "\n";
        }
        write_output(opt.out_path, out.str());
    } else if (opt.format == "json") {
        ordered_json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["command"] = "sweep";
        doc["config"] = config;
        ordered_json points = ordered_json::array();
        for (const auto& p : curve.points) {
            ordered_json row;
            row["t"] = p.t;
            row["matrix"] = matrix_json(p.matrix);
            row["value"] = metric_json(p.value);
            points.push_back(row);
        }
        doc["curve"] = points;
        const auto best = optimal_threshold(curve);
        ordered_json opt_row;
        opt_row["t"] = best.t;
        opt_row["value"] = metric_json(best.value);
        opt_row["index"] = best.index;
        doc["optimal"] = opt_row;
        write_output(opt.out_path, doc.dump(2) + "\n");
    } else {
        throw input_error("unknown format: " + opt.format);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// iso

struct IsoOptions {
    std::string config_path;
    std::string measure;
    std::int64_t n = 0;
    double target = 0.0;
    double tol = 0.0;
    std::int64_t guard = 200;
    std::string format = "csv";
    std::string out_path;
    ParamOptions params;

    CLI::Option* opt_measure = nullptr;
    CLI::Option* opt_n = nullptr;
    CLI::Option* opt_target = nullptr;
    CLI::Option* opt_tol = nullptr;
    CLI::Option* opt_guard = nullptr;
    CLI::Option* opt_format = nullptr;
    CLI::Option* opt_out = nullptr;
};

int run_iso(IsoOptions& opt) {
    const auto file = ConfigFile::load(opt.config_path);
    file.apply(opt.opt_measure, "measure", opt.measure);
    file.apply(opt.opt_n, "n", opt.n);
    file.apply(opt.opt_target, "target", opt.target);
    file.apply(opt.opt_tol, "tol", opt.tol);
    file.apply(opt.opt_guard, "guard", opt.guard);
    file.apply(opt.opt_format, "format", opt.format);
    file.apply(opt.opt_out, "out", opt.out_path);
    opt.params.merge(file);

    if (opt.measure.empty()) throw input_error("iso requires --measure");
    if (opt.n < 1) throw input_error("iso requires --n >= 1");
    const MeasureId id = require_measure(opt.measure);
    const auto set =
        isoeffectiveness_set(id, opt.n, opt.target, opt.tol, opt.params.cost_params(), opt.guard);

    if (opt.format == "csv") {
        std::ostringstream out;
        out << "a,b,c,d,value\n";
        for (const auto& m : set) {
            const auto v = evaluate(id, m, opt.params.cost_params());
            out << m.a() << "," << m.b() << "," << m.c() << "," << m.d() << ","
                << fmt_double(v.value()) << "\n";
        }
        write_output(opt.out_path, out.str());
    } else if (opt.format == "json") {
        ordered_json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["command"] = "iso";
        ordered_json config;
        config["measure"] = std::string(descriptor(id).cli_id);
        config["n"] = opt.n;
        config["target"] = opt.target;
        config["tol"] = opt.tol;
        config["guard"] = opt.guard;
        opt.params.emit(config);
        config["format"] = opt.format;
        doc["config"] = config;
        ordered_json matrices = ordered_json::array();
        for (const auto& m : set) matrices.push_back(matrix_json(m));
        doc["count"] = set.size();
        doc["matrices"] = matrices;
        write_output(opt.out_path, doc.dump(2) + "\n");
    } else {
        throw input_error("unknown format: " + opt.format);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// boundary

struct BoundaryOptions {
    std::string config_path;
    std::string points_path;
    std::string measure;
    int angles = 360;
    int rounds = 2;
    int refine_factor = 10;
    std::string format = "text";
    std::string out_path;
    ParamOptions params;

    CLI::Option* opt_points = nullptr;
    CLI::Option* opt_measure = nullptr;
    CLI::Option* opt_angles = nullptr;
    CLI::Option* opt_rounds = nullptr;
    CLI::Option* opt_refine = nullptr;
    CLI::Option* opt_format = nullptr;
    CLI::Option* opt_out = nullptr;
};

int run_boundary(BoundaryOptions& opt) {
    const auto file = ConfigFile::load(opt.config_path);
    file.apply(opt.opt_points, "points", opt.points_path);
    file.apply(opt.opt_measure, "measure", opt.measure);
    file.apply(opt.opt_angles, "angles", opt.angles);
    file.apply(opt.opt_rounds, "rounds", opt.rounds);
    file.apply(opt.opt_refine, "refine_factor", opt.refine_factor);
    file.apply(opt.opt_format, "format", opt.format);
    file.apply(opt.opt_out, "out", opt.out_path);
    opt.params.merge(file);

    if (opt.points_path.empty()) throw input_error("boundary requires --points");
    if (opt.measure.empty()) throw input_error("boundary requires --measure");
    const MeasureId id = require_measure(opt.measure);
    const auto points = read_points(opt.points_path);
    const SearchBudget budget{opt.angles, opt.rounds, opt.refine_factor};
    const auto result = fit_linear_boundary(points, id, opt.params.cost_params(), budget);

    if (opt.format == "text") {
        std::ostringstream out;
        out << "angle=" << fmt_angle(result.boundary.angle) << "\n"
            << "offset=" << fmt_double(result.boundary.offset) << "\n"
            << "polarity=" << result.boundary.polarity << "\n"
            << "measure=" << descriptor(id).cli_id << "\n"
            << "value=" << metric_text(result.value) << "\n";
        write_output(opt.out_path, out.str());
    } else if (opt.format == "csv") {
        std::ostringstream out;
        out << "angle,offset,polarity,measure,value\n";
        out << fmt_angle(result.boundary.angle) << "," << fmt_double(result.boundary.offset)
            << "," << result.boundary.polarity << "," << descriptor(id).cli_id << ","
            << metric_text(result.value) << "\n";
        write_output(opt.out_path, out.str());
    } else if (opt.format == "json") {
        ordered_json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["command"] = "boundary";
        ordered_json config;
        config["points"] = opt.points_path;
        config["measure"] = std::string(descriptor(id).cli_id);
        config["angles"] = opt.angles;
        config["rounds"] = opt.rounds;
        config["refine_factor"] = opt.refine_factor;
        opt.params.emit(config);
        config["format"] = opt.format;
        doc["config"] = config;
        ordered_json b;
        b["angle"] = result.boundary.angle;
        b["offset"] = result.boundary.offset;
        b["polarity"] = result.boundary.polarity;
        b["value"] = metric_json(result.value);
        b["candidates_evaluated"] = result.candidates_evaluated;
        doc["boundary"] = b;
        write_output(opt.out_path, doc.dump(2) + "\n");
    } else {
        throw input_error("unknown format: " + opt.format);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// rank

struct RankOptions {
    std::string config_path;
    std::string manifest_path;
    std::string measures = "acc,er,se,sp,pr,f1,bacc,mcc,kappa,j";
    std::string format = "csv";
    std::string out_path;
    ParamOptions params;

    CLI::Option* opt_manifest = nullptr;
    CLI::Option* opt_measures = nullptr;
    CLI::Option* opt_format = nullptr;
    CLI::Option* opt_out = nullptr;
};

int run_rank(RankOptions& opt) {
    const auto file = ConfigFile::load(opt.config_path);
    file.apply(opt.opt_manifest, "manifest", opt.manifest_path);
    file.apply(opt.opt_measures, "measures", opt.measures);
    file.apply(opt.opt_format, "format", opt.format);
    file.apply(opt.opt_out, "out", opt.out_path);
    opt.params.merge(file);

    if (opt.manifest_path.empty()) throw input_error("rank requires --manifest");
    const auto measures = parse_measure_list(opt.measures);

    std::vector<ClassifierScores> classifiers;
    for (const auto& entry : read_manifest(opt.manifest_path))
        classifiers.push_back({entry.name, read_scored_dataset(entry.path), entry.threshold});

    const auto table = rank_classifiers(classifiers, measures, opt.params.cost_params());
    const auto summary = disagreement(table);

    if (opt.format == "csv") {
        std::ostringstream out;
        out << "classifier";
        for (const MeasureId id : measures) out << "," << descriptor(id).cli_id;
        out << "\n";
        for (std::size_t ci = 0; ci < table.classifiers.size(); ++ci) {
            out << table.classifiers[ci];
            for (std::size_t mi = 0; mi < measures.size(); ++mi)
                out << "," << table.ranks[ci][mi];
            out << "\n";
        }
        write_output(opt.out_path, out.str());
    } else if (opt.format == "json") {
        ordered_json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["command"] = "rank";
        ordered_json config;
        config["manifest"] = opt.manifest_path;
        ordered_json names = ordered_json::array();
        for (const MeasureId id : measures) names.push_back(std::string(descriptor(id).cli_id));
        config["measures"] = names;
        opt.params.emit(config);
        config["format"] = opt.format;
        doc["config"] = config;

        doc["classifiers"] = table.classifiers;
        doc["undefined_policy"] = "rank_last";
        ordered_json values = ordered_json::array();
        ordered_json ranks = ordered_json::array();
        for (std::size_t ci = 0; ci < table.classifiers.size(); ++ci) {
            ordered_json vrow = ordered_json::array();
            ordered_json rrow = ordered_json::array();
            for (std::size_t mi = 0; mi < measures.size(); ++mi) {
                vrow.push_back(metric_json(table.values[ci][mi]));
                rrow.push_back(table.ranks[ci][mi]);
            }
            values.push_back(vrow);
            ranks.push_back(rrow);
        }
        doc["values"] = values;
        doc["ranks"] = ranks;

        ordered_json dis;
        ordered_json taus = ordered_json::array();
        for (const auto& t : summary.taus) {
            ordered_json row;
            row["measure_1"] = std::string(descriptor(measures[t.measure_i]).cli_id);
            row["measure_2"] = std::string(descriptor(measures[t.measure_j]).cli_id);
            row["tau"] = t.tau;
            taus.push_back(row);
        }
        dis["kendall_tau_b"] = taus;
        ordered_json revs = ordered_json::array();
        for (const auto& r : summary.reversals) {
            ordered_json row;
            row["classifier_1"] = table.classifiers[r.classifier_i];
            row["classifier_2"] = table.classifiers[r.classifier_j];
            row["measure_1"] = std::string(descriptor(measures[r.measure_i]).cli_id);
            row["measure_2"] = std::string(descriptor(measures[r.measure_j]).cli_id);
            revs.push_back(row);
        }
        dis["reversals"] = revs;
        dis["distinct_winners"] = summary.distinct_winners;
        doc["disagreement"] = dis;
        write_output(opt.out_path, doc.dump(2) + "\n");
    } else {
        throw input_error("unknown format: " + opt.format);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crisp: confusion-matrix performance measures, property checks, "
                 "threshold/boundary analysis, and ranking"};
    app.require_subcommand(1);

    EvalOptions eval_opt;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate measures on a matrix or dataset");
    eval_cmd->add_option("--config", eval_opt.config_path, "JSON config file");
    eval_opt.opt_counts =
        eval_cmd->add_option("--counts", eval_opt.counts, "Literal cell counts a,b,c,d");
    eval_opt.opt_data = eval_cmd->add_option("--data", eval_opt.data_path, "Dataset CSV");
    eval_opt.opt_threshold =
        eval_cmd->add_option("--threshold", eval_opt.threshold, "Score threshold");
    eval_opt.opt_measures = eval_cmd->add_option(
        "--measures", eval_opt.measures, "Comma-separated measure ids/aliases (default: all)");
    eval_opt.opt_format =
        eval_cmd->add_option("--format", eval_opt.format, "text | csv | json [text]");
    eval_opt.opt_out = eval_cmd->add_option("--out", eval_opt.out_path, "Output path [stdout]");
    eval_opt.params.attach(eval_cmd);

    PropsOptions props_opt;
    auto* props_cmd =
        app.add_subcommand("props", "Run property checks and the reference-table reconciliation");
    props_cmd->add_option("--config", props_opt.config_path, "JSON config file");
    props_opt.opt_measures =
        props_cmd->add_option("--measures", props_opt.measures, "Measures to check (default: all)");
    props_opt.opt_property = props_cmd->add_option(
        "--property", props_opt.property,
        "all | monotonicity | bounds | symmetry | complete | constant_baseline | balanced");
    props_opt.opt_n_max = props_cmd->add_option("--n-max", props_opt.n_max, "Enumeration bound [50]");
    props_opt.opt_trials =
        props_cmd->add_option("--trials", props_opt.trials, "Completeness sampling trials [200]");
    props_opt.opt_seed =
        props_cmd->add_option("--seed", props_opt.seed, "Seed for randomized checks (required)");
    props_opt.opt_baseline_n =
        props_cmd->add_option("--baseline-n", props_opt.baseline_n, "Constant-baseline n [100]");
    props_opt.opt_baseline_trials = props_cmd->add_option(
        "--baseline-trials", props_opt.baseline_trials, "Constant-baseline trials [20000]");
    props_opt.opt_baseline_pi1 = props_cmd->add_option(
        "--baseline-pi1", props_opt.baseline_pi1, "Constant-baseline class-1 share [0.3]");
    props_opt.opt_tol = props_cmd->add_option("--tol", props_opt.tol, "Comparison tolerance");
    props_opt.opt_expected = props_cmd->add_option(
        "--expected", props_opt.expected,
        "builtin: use the documented discrepancy list; none: flag all disagreements");
    props_opt.opt_format = props_cmd->add_option("--format", props_opt.format, "text | json [text]");
    props_opt.opt_out = props_cmd->add_option("--out", props_opt.out_path, "Output path");
    props_opt.params.attach(props_cmd);

    SweepOptions sweep_opt;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Threshold sweep, optimal and constrained thresholds");
    sweep_cmd->add_option("--config", sweep_opt.config_path, "JSON config file");
    sweep_opt.opt_data = sweep_cmd->add_option("--data", sweep_opt.data_path, "Dataset CSV");
    sweep_opt.opt_measure =
        sweep_cmd->add_option("--measure", sweep_opt.measure, "Measure to evaluate/optimize");
    sweep_opt.opt_fix = sweep_cmd->add_option(
        "--fix", sweep_opt.fix, "Single-rate measure to constrain (se/sp/pr/fdr/npv/for)");
    sweep_opt.opt_target =
        sweep_cmd->add_option("--target", sweep_opt.target, "Constraint target for --fix");
    sweep_opt.opt_format = sweep_cmd->add_option("--format", sweep_opt.format, "csv | json [csv]");
    sweep_opt.opt_out = sweep_cmd->add_option("--out", sweep_opt.out_path, "Output path");
    sweep_opt.params.attach(sweep_cmd);

    IsoOptions iso_opt;
    auto* iso_cmd = app.add_subcommand("iso", "Isoeffectiveness sets at fixed n");
    iso_cmd->add_option("--config", iso_opt.config_path, "JSON config file");
    iso_opt.opt_measure = iso_cmd->add_option("--measure", iso_opt.measure, "Measure id");
    iso_opt.opt_n = iso_cmd->add_option("--n", iso_opt.n, "Total count of the matrices");
    iso_opt.opt_target = iso_cmd->add_option("--target", iso_opt.target, "Target value");
    iso_opt.opt_tol = iso_cmd->add_option("--tol", iso_opt.tol, "Half-width of the value band");
    iso_opt.opt_guard = iso_cmd->add_option("--guard", iso_opt.guard, "Enumeration guard [200]");
    iso_opt.opt_format = iso_cmd->add_option("--format", iso_opt.format, "csv | json [csv]");
    iso_opt.opt_out = iso_cmd->add_option("--out", iso_opt.out_path, "Output path");
    iso_opt.params.attach(iso_cmd);

    BoundaryOptions boundary_opt;
    auto* boundary_cmd =
        app.add_subcommand("boundary", "Measure-optimal 2-D linear decision boundary");
    boundary_cmd->add_option("--config", boundary_opt.config_path, "JSON config file");
    boundary_opt.opt_points =
        boundary_cmd->add_option("--points", boundary_opt.points_path, "Points CSV (x,y,label)");
    boundary_opt.opt_measure =
        boundary_cmd->add_option("--measure", boundary_opt.measure, "Measure to optimize");
    boundary_opt.opt_angles =
        boundary_cmd->add_option("--angles", boundary_opt.angles, "Base angle grid size [360]");
    boundary_opt.opt_rounds =
        boundary_cmd->add_option("--rounds", boundary_opt.rounds, "Refinement rounds [2]");
    boundary_opt.opt_refine = boundary_cmd->add_option(
        "--refine-factor", boundary_opt.refine_factor, "Per-round resolution factor [10]");
    boundary_opt.opt_format =
        boundary_cmd->add_option("--format", boundary_opt.format, "text | csv | json [text]");
    boundary_opt.opt_out = boundary_cmd->add_option("--out", boundary_opt.out_path, "Output path");
    boundary_opt.params.attach(boundary_cmd);

    RankOptions rank_opt;
    auto* rank_cmd =
        app.add_subcommand("rank", "Rank classifiers under many measures; disagreement summary");
    rank_cmd->add_option("--config", rank_opt.config_path, "JSON config file");
    rank_opt.opt_manifest = rank_cmd->add_option("--manifest", rank_opt.manifest_path,
                                                 "Manifest CSV (name,path,threshold)");
    rank_opt.opt_measures = rank_cmd->add_option(
        "--measures", rank_opt.measures, "Measures [acc,er,se,sp,pr,f1,bacc,mcc,kappa,j]");
    rank_opt.opt_format = rank_cmd->add_option("--format", rank_opt.format, "csv | json [csv]");
    rank_opt.opt_out = rank_cmd->add_option("--out", rank_opt.out_path, "Output path");
    rank_opt.params.attach(rank_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(eval_opt);
        if (props_cmd->parsed()) return run_props(props_opt);
        if (sweep_cmd->parsed()) return run_sweep(sweep_opt);
        if (iso_cmd->parsed()) return run_iso(iso_opt);
        if (boundary_cmd->parsed()) return run_boundary(boundary_opt);
        if (rank_cmd->parsed()) return run_rank(rank_opt);
    } catch (const infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

#include "qlp/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlp/query.hpp"
#include "qlp/sampling.hpp"
#include "qlp/sensor.hpp"
#include "qlp/state.hpp"
#include "qlp/sweep.hpp"

namespace qlp::cli {
namespace {

using json = nlohmann::json;

std::string full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string percent(double p) { return fixed(100.0 * p, 2) + "%"; }

std::string frame_text(const RawFrame &f) {
    std::string s = "(";
    for (std::size_t i = 0; i < f.size(); ++i) {
        s += (i ? "," : "") + std::to_string(f.readings[i]);
    }
    return s + ")";
}

std::string vector_text(std::span<const double> v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + fixed(v[i], 4);
    }
    return s + "]";
}

/// Options shared by every subcommand.
struct Common {
    std::string config_path;
    bool clamp = false;
    double tau = kDefaultTau;
    std::string format;
    std::string output;

    void attach(CLI::App *cmd, std::string default_format, std::vector<std::string> formats) {
        format = std::move(default_format);
        cmd->add_option("--config", config_path, "Sensor configuration file (JSON)")
            ->envname(kConfigEnvVar);
        cmd->add_flag("--clamp", clamp, "Clamp out-of-range readings instead of failing");
        cmd->add_option("--tau", tau, "Rotation divisor (>= 1)")->capture_default_str();
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember(std::move(formats)))
            ->capture_default_str();
        cmd->add_option("--output,-o", output, "Write to this file instead of stdout");
    }

    [[nodiscard]] SensorConfig config() const {
        return config_path.empty() ? SensorConfig::rgb() : load_config(config_path);
    }
    [[nodiscard]] OutOfRange policy() const {
        return clamp ? OutOfRange::kClamp : OutOfRange::kReject;
    }
};

/// Either a raw frame (--frame) or a normalized vector (--x).
struct InputOptions {
    std::vector<std::int64_t> frame;
    std::vector<double> x;

    void attach(CLI::App *cmd, const std::string &frame_flag, const std::string &x_flag,
                const std::string &what) {
        auto *f = cmd->add_option(frame_flag, frame, "Raw " + what + " readings, comma separated")
                      ->delimiter(',');
        auto *n = cmd->add_option(x_flag, x, "Normalized " + what + " in [0,1], comma separated")
                      ->delimiter(',');
        f->excludes(n);
    }

    [[nodiscard]] bool given() const { return !frame.empty() || !x.empty(); }
    [[nodiscard]] std::optional<RawFrame> raw() const {
        if (frame.empty()) {
            return std::nullopt;
        }
        return RawFrame{frame};
    }
    [[nodiscard]] NormalizedInput normalized(const SensorConfig &config, OutOfRange policy) const {
        if (!frame.empty()) {
            return normalize_frame(RawFrame{frame}, config, policy);
        }
        return NormalizedInput(x);
    }
};

/// Owns the --output stream when one is requested.
class Sink {
  public:
    Sink(const std::string &path, std::ostream &fallback) : out_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw ConfigError("cannot write to '" + path + "'");
            }
            out_ = file_.get();
        }
    }
    std::ostream &get() { return *out_; }

  private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream *out_;
};

std::string qubit_name(const SensorConfig &config, std::size_t n, std::size_t i) {
    return config.size() == n ? config[i].name() : "q" + std::to_string(i + 1);
}

void cmd_encode(const Common &common, const InputOptions &input, std::ostream &stdout_) {
    const SensorConfig config = common.config();
    const NormalizedInput x = input.normalized(config, common.policy());
    const StateVector state = product_state(x, common.tau);
    const auto probs = probabilities(state);
    const std::size_t n = state.num_qubits();

    Sink sink(common.output, stdout_);
    std::ostream &out = sink.get();
    if (common.format == "text") {
        out << "input x = " << vector_text(x.values());
        if (const auto raw = input.raw()) {
            out << " from frame " << frame_text(*raw);
        }
        out << "  (tau = " << common.tau << ")\n\n";
        out << "state  amplitude   probability\n";
        for (std::size_t b = 0; b < state.size(); ++b) {
            out << basis_label(b, n) << std::string(n < 7 ? 7 - n : 1, ' ') << fixed(state[b], 6)
                << "    " << percent(probs[b]) << '\n';
        }
        out << "\nqubit  sensor  x        bloch (x, y, z)\n";
        for (std::size_t i = 0; i < n; ++i) {
            const BlochPoint p = bloch_coordinates(x[i] / common.tau);
            out << 'q' << i + 1 << "     " << qubit_name(config, n, i) << "       "
                << fixed(x[i], 4) << "   (" << fixed(p.x, 4) << ", " << fixed(p.y, 4) << ", "
                << fixed(p.z, 4) << ")\n";
        }
    } else if (common.format == "csv") {
        out << "kind,label,amplitude,probability,bloch_x,bloch_y,bloch_z\n";
        for (std::size_t b = 0; b < state.size(); ++b) {
            out << "state," << basis_label(b, n) << ',' << full(state[b]) << ',' << full(probs[b])
                << ",,,\n";
        }
        for (std::size_t i = 0; i < n; ++i) {
            const BlochPoint p = bloch_coordinates(x[i] / common.tau);
            out << "qubit,q" << i + 1 << ",,," << full(p.x) << ',' << full(p.y) << ','
                << full(p.z) << '\n';
        }
    } else {
        for (std::size_t b = 0; b < state.size(); ++b) {
            out << json{{"kind", "state"}, {"label", basis_label(b, n)}, {"index", b},
                        {"amplitude", state[b]}, {"probability", probs[b]}}
                       .dump()
                << '\n';
        }
        for (std::size_t i = 0; i < n; ++i) {
            const BlochPoint p = bloch_coordinates(x[i] / common.tau);
            out << json{{"kind", "qubit"}, {"qubit", i + 1}, {"sensor", qubit_name(config, n, i)},
                        {"x", x[i]}, {"bloch", {p.x, p.y, p.z}}}
                       .dump()
                << '\n';
        }
    }
}

void cmd_query(const Common &common, const InputOptions &input, const InputOptions &target,
               std::uint64_t shots, std::uint64_t seed, std::ostream &stdout_) {
    const SensorConfig config = common.config();
    const NormalizedInput x = input.normalized(config, common.policy());
    const QueryTarget xbar(target.normalized(config, common.policy()));
    const StateVector state = apply_query(x, xbar, common.tau);
    const auto probs = probabilities(state);
    const std::size_t n = state.num_qubits();
    const ZeroGroupSummary groups = zero_group_probabilities(probs, n);

    std::optional<double> distance;
    if (input.raw() && target.raw()) {
        distance = euclidean_distance(*input.raw(), *target.raw());
    }
    std::vector<double> sampled;
    if (shots > 0) {
        sampled = frequencies(sample(probs, shots, seed));
    }

    Sink sink(common.output, stdout_);
    std::ostream &out = sink.get();
    if (common.format == "text") {
        out << "input  " << (input.raw() ? frame_text(*input.raw()) : vector_text(x.values()))
            << "\ntarget " << (target.raw() ? frame_text(*target.raw()) : vector_text(xbar.values()))
            << "\nd      " << (distance ? fixed(*distance, 2) : std::string("--")) << "\n\n";
        out << "state  exact";
        if (!sampled.empty()) {
            out << "     sampled (N=" << shots << ", seed=" << seed << ")";
        }
        out << '\n';
        for (std::size_t b = 0; b < probs.size(); ++b) {
            out << basis_label(b, n) << std::string(n < 7 ? 7 - n : 1, ' ') << percent(probs[b]);
            if (!sampled.empty()) {
                out << "    " << percent(sampled[b]);
            }
            out << '\n';
        }
        out << "\nzero-count groups\n";
        for (std::size_t k = n + 1; k-- > 0;) {
            out << k << (k == 1 ? " zero   " : " zeros  ") << percent(groups[k]) << '\n';
        }
    } else if (common.format == "csv") {
        out << "kind,label,amplitude,probability,frequency\n";
        for (std::size_t b = 0; b < probs.size(); ++b) {
            out << "state," << basis_label(b, n) << ',' << full(state[b]) << ',' << full(probs[b])
                << ',' << (sampled.empty() ? "" : full(sampled[b])) << '\n';
        }
        for (std::size_t k = n + 1; k-- > 0;) {
            out << "group,g" << k << ",," << full(groups[k]) << ",\n";
        }
        if (distance) {
            out << "distance,d,,," << full(*distance) << '\n';
        }
    } else {
        json row;
        row["input"] = input.raw() ? json(input.raw()->readings) : json(x.values());
        row["target"] = target.raw() ? json(target.raw()->readings) : json(xbar.values());
        row["distance"] = distance ? json(*distance) : json(nullptr);
        json p = json::object();
        json a = json::object();
        for (std::size_t b = 0; b < probs.size(); ++b) {
            p[basis_label(b, n)] = probs[b];
            a[basis_label(b, n)] = state[b];
        }
        row["amplitudes"] = std::move(a);
        row["probabilities"] = std::move(p);
        json g = json::object();
        for (std::size_t k = 0; k <= n; ++k) {
            g["g" + std::to_string(k)] = groups[k];
        }
        row["groups"] = std::move(g);
        if (!sampled.empty()) {
            json f = json::object();
            for (std::size_t b = 0; b < sampled.size(); ++b) {
                f[basis_label(b, n)] = sampled[b];
            }
            row["sampled"] = std::move(f);
            row["shots"] = shots;
            row["seed"] = seed;
        }
        out << row.dump() << '\n';
    }
}

void cmd_sample(const Common &common, const InputOptions &input, const InputOptions &target,
                std::uint64_t shots, std::uint64_t seed, std::ostream &stdout_) {
    const SensorConfig config = common.config();
    const NormalizedInput x = input.normalized(config, common.policy());
    const StateVector state =
        target.given() ? apply_query(x, QueryTarget(target.normalized(config, common.policy())),
                                     common.tau)
                       : product_state(x, common.tau);
    const MeasurementHistogram hist = sample(probabilities(state), shots, seed);

    Sink sink(common.output, stdout_);
    std::ostream &out = sink.get();
    if (common.format == "csv") {
        write_histogram(out, hist);
    } else {
        const auto freq = frequencies(hist);
        for (std::size_t b = 0; b < hist.counts.size(); ++b) {
            out << json{{"state", basis_label(b, hist.num_qubits())}, {"count", hist.counts[b]},
                        {"frequency", freq[b]}, {"shots", shots}, {"seed", seed}}
                       .dump()
                << '\n';
        }
    }
}

struct SweepOptions {
    std::int64_t step = 5;
    std::vector<std::int64_t> target;
    std::string grid = "from-lower";
    std::string mode = "exact";
    std::uint64_t shots = 0;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
    std::string metadata;
};

void cmd_sweep(const Common &common, const SweepOptions &opts, std::ostream &stdout_) {
    const SensorConfig config = common.config();
    SweepSpec spec;
    spec.step = opts.step;
    if (!opts.target.empty()) {
        spec.target = RawFrame{opts.target};
    }
    spec.grid = opts.grid == "from-lower" ? GridAnchor::kFromLower : GridAnchor::kToUpper;
    spec.mode = opts.mode == "exact" ? SweepMode::kExact : SweepMode::kSampled;
    spec.shots = opts.shots;
    spec.base_seed = opts.seed;
    spec.tau = common.tau;
    spec.threads = opts.threads;

    const auto records = run_sweep(spec, config);

    Sink sink(common.output, stdout_);
    if (common.format == "csv") {
        write_sweep_csv(sink.get(), records, config, spec.mode);
    } else {
        write_sweep_json_lines(sink.get(), records, config);
    }

    std::string meta_path = opts.metadata;
    if (meta_path.empty() && !common.output.empty()) {
        meta_path = common.output + ".meta.json";
    }
    if (!meta_path.empty()) {
        Sink meta(meta_path, stdout_);
        write_sweep_metadata(meta.get(), spec, config, records.size());
    }
}

/// "r,g,b" or "r,g,b:R,G,B".
TableRow parse_row(const std::string &text) {
    auto parse_frame = [](const std::string &part) {
        RawFrame frame;
        std::stringstream ss(part);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                frame.readings.push_back(std::stoll(item, &used));
                if (used != item.size()) {
                    throw std::invalid_argument(item);
                }
            } catch (const std::logic_error &) {
                throw CLI::ValidationError("--row", "'" + item + "' is not an integer reading");
            }
        }
        return frame;
    };
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        return {parse_frame(text), std::nullopt};
    }
    return {parse_frame(text.substr(0, colon)), parse_frame(text.substr(colon + 1))};
}

void cmd_table(const Common &common, const std::vector<std::string> &row_texts,
               std::uint64_t shots, std::uint64_t seed, std::ostream &stdout_) {
    const SensorConfig config = common.config();
    std::vector<TableRow> rows;
    for (const auto &t : row_texts) {
        rows.push_back(parse_row(t));
    }
    if (rows.empty()) {
        rows = case_study_rows();
    }
    const auto results = reproduce_table(rows, config, shots, seed, common.tau);
    Sink sink(common.output, stdout_);
    if (common.format == "text") {
        write_table_text(sink.get(), results);
    } else {
        write_table_csv(sink.get(), results);
    }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum-like multi-sensor perception model"};
    app.name(args.empty() ? "qlp" : args.front());
    app.require_subcommand(1);
    app.set_version_flag("--version", QLP_VERSION);

    Common common_encode, common_query, common_sample, common_sweep, common_table;
    InputOptions encode_in, query_in, query_target, sample_in, sample_target;
    std::uint64_t query_shots = 0;
    std::uint64_t query_seed = kDefaultSeed;
    std::uint64_t sample_shots = 1'000'000;
    std::uint64_t sample_seed = kDefaultSeed;
    SweepOptions sweep_opts;
    std::vector<std::string> table_rows;
    std::uint64_t table_shots = 1'000'000;
    std::uint64_t table_seed = kDefaultSeed;

    auto *encode = app.add_subcommand("encode", "Print the encoded statevector");
    common_encode.attach(encode, "text", {"text", "csv", "json-lines"});
    encode_in.attach(encode, "--frame", "--x", "sensor");

    auto *query = app.add_subcommand("query", "Apply the query operator for a target perception");
    common_query.attach(query, "text", {"text", "csv", "json-lines"});
    query_in.attach(query, "--frame", "--x", "sensor input");
    query_target.attach(query, "--target", "--target-x", "target");
    query->add_option("--shots", query_shots, "Also sample this many measurements");
    query->add_option("--seed", query_seed, "Sampling seed")->capture_default_str();

    auto *sample_cmd = app.add_subcommand("sample", "Simulate measurements and print a histogram");
    common_sample.attach(sample_cmd, "csv", {"csv", "json-lines"});
    sample_in.attach(sample_cmd, "--frame", "--x", "sensor input");
    sample_target.attach(sample_cmd, "--target", "--target-x", "target");
    sample_cmd->add_option("--shots", sample_shots, "Number of measurements")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sample_cmd->add_option("--seed", sample_seed, "Sampling seed")->capture_default_str();

    auto *sweep = app.add_subcommand("sweep", "Evaluate the model over the whole sensor grid");
    common_sweep.attach(sweep, "csv", {"csv", "json-lines"});
    sweep->add_option("--step", sweep_opts.step, "Grid stride in raw units")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--target", sweep_opts.target, "Raw target readings")->delimiter(',');
    sweep->add_option("--grid", sweep_opts.grid, "Grid anchoring")
        ->check(CLI::IsMember({"from-lower", "to-upper"}))
        ->capture_default_str();
    auto *mode = sweep->add_option("--mode", sweep_opts.mode, "exact or sampled")
                     ->check(CLI::IsMember({"exact", "sampled"}))
                     ->capture_default_str();
    auto *sweep_shots = sweep->add_option("--shots", sweep_opts.shots, "Shots per grid point")
                            ->check(CLI::PositiveNumber);
    sweep->add_option("--seed", sweep_opts.seed, "Base seed for sampled mode")
        ->capture_default_str();
    sweep->add_option("--threads", sweep_opts.threads, "Worker threads (0 = all cores)");
    sweep->add_option("--metadata", sweep_opts.metadata,
                      "Metadata file (default <output>.meta.json when --output is set)");
    (void)mode;

    auto *table = app.add_subcommand("table", "Reproduce the RGB case-study table");
    common_table.attach(table, "text", {"text", "csv"});
    table->add_option("--row", table_rows, "Row as r,g,b or r,g,b:R,G,B (repeatable)");
    table->add_option("--shots", table_shots, "Shots per row (0 disables sampling)")
        ->capture_default_str();
    table->add_option("--seed", table_seed, "Base seed")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();
    }
    try {
        app.parse(reversed);
        if (*encode && !encode_in.given()) {
            throw CLI::RequiredError("--frame or --x");
        }
        if (*query && !query_in.given()) {
            throw CLI::RequiredError("--frame or --x");
        }
        if (*query && !query_target.given()) {
            throw CLI::RequiredError("--target or --target-x");
        }
        if (*sample_cmd && !sample_in.given()) {
            throw CLI::RequiredError("--frame or --x");
        }
        if (*sweep) {
            const bool sampled = sweep_opts.mode == "sampled";
            if (sampled && sweep_shots->count() == 0) {
                throw CLI::ValidationError("--shots", "sampled mode needs --shots");
            }
            if (!sampled && sweep_shots->count() > 0) {
                throw CLI::ValidationError("--shots", "--shots requires --mode sampled");
            }
        }
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*encode) {
            cmd_encode(common_encode, encode_in, out);
        } else if (*query) {
            cmd_query(common_query, query_in, query_target, query_shots, query_seed, out);
        } else if (*sample_cmd) {
            cmd_sample(common_sample, sample_in, sample_target, sample_shots, sample_seed, out);
        } else if (*sweep) {
            cmd_sweep(common_sweep, sweep_opts, out);
        } else if (*table) {
            cmd_table(common_table, table_rows, table_shots, table_seed, out);
        }
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    } catch (const ConfigError &e) {
        err << "configuration error: " << e.what() << '\n';
        return kConfig;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const RangeError &e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const DimensionError &e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kFailure;
    }
    out.flush();
    return kOk;
}

} // namespace qlp::cli

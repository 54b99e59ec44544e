#include "qlp/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <exception>
#include <ostream>
#include <thread>

#include <json.hpp>

namespace qlp {
namespace {

using json = nlohmann::json;

// Upper bound on grid points per sweep; records are held in memory.
constexpr std::size_t kMaxSweepPoints = 100'000'000;

std::string format_g(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

std::string format_fixed2(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

std::string lower_ascii(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

void check_spec(const SweepSpec &spec, const SensorConfig &config) {
    if (spec.step <= 0) {
        throw DomainError("sweep step must be positive, got " + std::to_string(spec.step));
    }
    if (spec.mode == SweepMode::kSampled && spec.shots == 0) {
        throw DomainError("sampled sweeps need a positive shot count");
    }
    if (spec.mode == SweepMode::kExact && spec.shots != 0) {
        throw DomainError("exact sweeps do not take a shot count");
    }
    if (spec.target && spec.target->size() != config.size()) {
        throw DimensionError("sweep target has " + std::to_string(spec.target->size()) +
                             " readings but the configuration has " +
                             std::to_string(config.size()) + " sensors");
    }
}

struct PointEvaluator {
    const SweepSpec &spec;
    const SensorConfig &config;
    std::optional<QueryTarget> target;
    RawFrame reference;

    SweepRecord operator()(RawFrame raw, std::size_t index) const {
        const NormalizedInput x = normalize_frame(raw, config);
        const StateVector state =
            target ? apply_query(x, *target, spec.tau) : product_state(x, spec.tau);
        std::vector<double> probs = probabilities(state);
        if (spec.mode == SweepMode::kSampled) {
            probs = frequencies(sample(probs, spec.shots, derive_seed(spec.base_seed, index)));
        }
        SweepRecord record;
        record.distance_to_reference = euclidean_distance(raw, reference);
        record.groups = zero_group_probabilities(probs, config.size());
        record.probs = std::move(probs);
        record.raw_input = std::move(raw);
        return record;
    }
};

} // namespace

std::vector<std::int64_t> grid_axis(const SensorSpec &sensor, std::int64_t step, GridAnchor grid) {
    if (step <= 0) {
        throw DomainError("sweep step must be positive, got " + std::to_string(step));
    }
    std::vector<std::int64_t> values;
    if (grid == GridAnchor::kFromLower) {
        for (std::int64_t v = sensor.lower(); v < sensor.upper(); v += step) {
            values.push_back(v);
        }
    } else {
        for (std::int64_t v = sensor.lower() + step; v <= sensor.upper(); v += step) {
            values.push_back(v);
        }
    }
    if (values.empty()) {
        throw DomainError("step " + std::to_string(step) + " leaves no grid points on sensor '" +
                          sensor.name() + "'");
    }
    return values;
}

std::vector<SweepRecord> run_sweep(const SweepSpec &spec, const SensorConfig &config) {
    check_spec(spec, config);

    std::vector<std::vector<std::int64_t>> axes;
    std::size_t total = 1;
    for (const SensorSpec &s : config.sensors()) {
        axes.push_back(grid_axis(s, spec.step, spec.grid));
        total *= axes.back().size();
        if (total > kMaxSweepPoints) {
            throw DomainError("sweep exceeds " + std::to_string(kMaxSweepPoints) + " points");
        }
    }

    PointEvaluator evaluate{spec, config, std::nullopt,
                            spec.target ? *spec.target : lower_bound_frame(config)};
    if (spec.target) {
        evaluate.target.emplace(normalize_frame(*spec.target, config));
    }

    // Mixed radix, last sensor fastest: index order is lexicographic order.
    auto frame_at = [&axes](std::size_t index) {
        RawFrame frame;
        frame.readings.resize(axes.size());
        for (std::size_t k = axes.size(); k-- > 0;) {
            frame.readings[k] = axes[k][index % axes[k].size()];
            index /= axes[k].size();
        }
        return frame;
    };

    std::vector<SweepRecord> records(total);
    unsigned workers = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
    workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, total));
    const std::size_t chunk = (total + workers - 1) / workers;

    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    const std::size_t end = std::min(total, (w + 1) * chunk);
                    for (std::size_t i = w * chunk; i < end; ++i) {
                        records[i] = evaluate(frame_at(i), i);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return records;
}

std::vector<ConfidencePoint> confidence_curve(std::span<const SweepRecord> records) {
    std::vector<ConfidencePoint> curve;
    curve.reserve(records.size());
    for (const SweepRecord &r : records) {
        curve.push_back({r.distance_to_reference, r.groups, r.raw_input});
    }
    std::stable_sort(curve.begin(), curve.end(), [](const auto &a, const auto &b) {
        if (a.distance != b.distance) {
            return a.distance < b.distance;
        }
        return a.raw_input < b.raw_input;
    });
    return curve;
}

void write_sweep_csv(std::ostream &out, std::span<const SweepRecord> records,
                     const SensorConfig &config, SweepMode mode) {
    const std::size_t n = config.size();
    // 12 significant digits keep exact-mode output byte-stable across libms
    // that differ in the last ulp.
    const int digits = mode == SweepMode::kExact ? 12 : 17;

    for (const SensorSpec &s : config.sensors()) {
        out << lower_ascii(s.name()) << ',';
    }
    out << "distance";
    for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) {
        out << ",p_" << basis_label(b, n);
    }
    for (std::size_t k = n + 1; k-- > 0;) {
        out << ",g" << k;
    }
    out << '\n';

    std::string line;
    for (const SweepRecord &r : records) {
        line.clear();
        for (std::int64_t v : r.raw_input.readings) {
            line += std::to_string(v);
            line += ',';
        }
        line += format_g(r.distance_to_reference, digits);
        for (double p : r.probs) {
            line += ',';
            line += format_g(p, digits);
        }
        for (std::size_t k = n + 1; k-- > 0;) {
            line += ',';
            line += format_g(r.groups[k], digits);
        }
        line += '\n';
        out << line;
    }
}

void write_sweep_json_lines(std::ostream &out, std::span<const SweepRecord> records,
                            const SensorConfig &config) {
    const std::size_t n = config.size();
    for (const SweepRecord &r : records) {
        json row;
        row["input"] = r.raw_input.readings;
        row["distance"] = r.distance_to_reference;
        json probs = json::object();
        for (std::size_t b = 0; b < r.probs.size(); ++b) {
            probs[basis_label(b, n)] = r.probs[b];
        }
        row["probs"] = std::move(probs);
        json groups = json::object();
        for (std::size_t k = 0; k <= n; ++k) {
            groups["g" + std::to_string(k)] = r.groups[k];
        }
        row["groups"] = std::move(groups);
        out << row.dump() << '\n';
    }
}

void write_sweep_metadata(std::ostream &out, const SweepSpec &spec, const SensorConfig &config,
                          std::size_t record_count) {
    json meta;
    meta["tool"] = "qlperception";
    meta["version"] = QLP_VERSION;
    meta["config"] = json::parse(config.to_json());
    json grid;
    grid["step"] = spec.step;
    grid["anchor"] = spec.grid == GridAnchor::kFromLower ? "from-lower" : "to-upper";
    grid["definition"] = spec.grid == GridAnchor::kFromLower
                             ? "lower + k*step for k >= 0 while value < upper"
                             : "lower + k*step for k >= 1 while value <= upper";
    json axes = json::array();
    for (const SensorSpec &s : config.sensors()) {
        const auto axis = grid_axis(s, spec.step, spec.grid);
        axes.push_back({{"sensor", s.name()}, {"first", axis.front()}, {"last", axis.back()},
                        {"count", axis.size()}});
    }
    grid["axes"] = std::move(axes);
    meta["grid"] = std::move(grid);
    meta["order"] = "lexicographic in raw readings, first sensor slowest";
    meta["bit_order"] = "bitstrings are MSB-first: q_n ... q_1, sensor 1 is the least significant bit";
    meta["mode"] = spec.mode == SweepMode::kExact ? "exact" : "sampled";
    if (spec.mode == SweepMode::kSampled) {
        meta["shots"] = spec.shots;
        meta["base_seed"] = spec.base_seed;
        meta["seed_derivation"] = "splitmix64(base_seed ^ splitmix64(point_index))";
        meta["rng"] = "std::mt19937_64, uniform = (next() >> 11) * 2^-53, inverse CDF";
    }
    meta["tau"] = spec.tau;
    meta["target"] = spec.target ? json(spec.target->readings) : json(nullptr);
    meta["distance_reference"] =
        spec.target ? spec.target->readings : lower_bound_frame(config).readings;
    meta["records"] = record_count;
    out << meta.dump(2) << '\n';
}

std::vector<TableRow> case_study_rows() {
    const RawFrame target{{132, 35, 107}};
    return {
        {{{0, 25, 0}}, std::nullopt},
        {{{55, 0, 210}}, std::nullopt},
        {{{10, 75, 125}}, std::nullopt},
        {{{0, 200, 200}}, std::nullopt},
        {{{230, 15, 230}}, std::nullopt},
        {{{215, 225, 220}}, std::nullopt},
        {{{102, 18, 124}}, target},
        {{{84, 48, 38}}, target},
        {{{36, 101, 84}}, target},
        {{{239, 239, 110}}, target},
    };
}

std::vector<TableResult> reproduce_table(std::span<const TableRow> rows, const SensorConfig &config,
                                         std::uint64_t shots, std::uint64_t seed, double tau) {
    std::vector<TableResult> results;
    results.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const TableRow &row = rows[i];
        TableResult result{row, {}, {}, std::nullopt, derive_seed(seed, i)};
        const NormalizedInput x = normalize_frame(row.input, config);
        if (row.target) {
            const QueryTarget target(normalize_frame(*row.target, config));
            result.exact = probabilities(apply_query(x, target, tau));
            result.distance = euclidean_distance(row.input, *row.target);
        } else {
            result.exact = probabilities(product_state(x, tau));
        }
        if (shots > 0) {
            result.sampled = frequencies(sample(result.exact, shots, result.seed));
        }
        results.push_back(std::move(result));
    }
    return results;
}

namespace {

std::string frame_text(const RawFrame &frame) {
    std::string s = "(";
    for (std::size_t i = 0; i < frame.size(); ++i) {
        s += (i ? "," : "") + std::to_string(frame.readings[i]);
    }
    return s + ")";
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

} // namespace

void write_table_text(std::ostream &out, std::span<const TableResult> results) {
    if (results.empty()) {
        return;
    }
    const std::size_t n = results.front().row.input.size();
    out << pad("input", 16) << pad("target", 16) << pad("kind", 9);
    for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) {
        out << pad("|" + basis_label(b, n) + ">", 9);
    }
    out << "d\n";
    for (const TableResult &r : results) {
        const std::string distance = r.distance ? format_fixed2(*r.distance) : "--";
        auto emit = [&](const std::string &kind, const std::vector<double> &probs, bool first) {
            out << pad(first ? frame_text(r.row.input) : "", 16)
                << pad(first ? (r.row.target ? frame_text(*r.row.target) : "--") : "", 16)
                << pad(kind, 9);
            for (double p : probs) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * p);
                out << pad(buf, 9);
            }
            out << (first ? distance : "") << '\n';
        };
        emit("exact", r.exact, true);
        if (!r.sampled.empty()) {
            emit("sampled", r.sampled, false);
        }
    }
}

void write_table_csv(std::ostream &out, std::span<const TableResult> results) {
    if (results.empty()) {
        return;
    }
    const std::size_t n = results.front().row.input.size();
    out << "kind,seed";
    for (std::size_t i = 1; i <= n; ++i) {
        out << ",input_" << i;
    }
    for (std::size_t i = 1; i <= n; ++i) {
        out << ",target_" << i;
    }
    out << ",distance";
    for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) {
        out << ",p_" << basis_label(b, n);
    }
    out << '\n';
    for (const TableResult &r : results) {
        auto emit = [&](const char *kind, const std::vector<double> &probs) {
            out << kind << ',' << r.seed;
            for (std::int64_t v : r.row.input.readings) {
                out << ',' << v;
            }
            for (std::size_t i = 0; i < n; ++i) {
                out << ',';
                if (r.row.target) {
                    out << r.row.target->readings[i];
                }
            }
            out << ',' << (r.distance ? format_g(*r.distance, 17) : "");
            for (double p : probs) {
                out << ',' << format_g(p, 17);
            }
            out << '\n';
        };
        emit("exact", r.exact);
        if (!r.sampled.empty()) {
            emit("sampled", r.sampled);
        }
    }
}

} // namespace qlp

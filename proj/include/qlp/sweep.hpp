#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "qlp/query.hpp"
#include "qlp/sampling.hpp"
#include "qlp/sensor.hpp"

namespace qlp {

/**
 * Which grid points a stride-s sweep visits on each channel.
 *
 * kFromLower: lower, lower+s, ... while < upper. For 8-bit channels and
 *             s = 5 this is {0, 5, ..., 250}: 51 values, 51^3 = 132651
 *             points in RGB.
 * kToUpper:   lower+s, lower+2s, ... while <= upper ({5, ..., 255}).
 */
enum class GridAnchor { kFromLower, kToUpper };

enum class SweepMode { kExact, kSampled };

struct SweepSpec {
    std::int64_t step = 5;
    /// Raw target frame; when present Q(target) is applied at every point
    /// and distances are measured to it.
    std::optional<RawFrame> target;
    SweepMode mode = SweepMode::kExact;
    /// Shots per point; required (> 0) in sampled mode, must be 0 otherwise.
    std::uint64_t shots = 0;
    std::uint64_t base_seed = kDefaultSeed;
    GridAnchor grid = GridAnchor::kFromLower;
    double tau = kDefaultTau;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

struct SweepRecord {
    RawFrame raw_input;
    double distance_to_reference = 0.0;
    std::vector<double> probs;
    ZeroGroupSummary groups;
};

/// Values visited on one channel.
std::vector<std::int64_t> grid_axis(const SensorSpec &sensor, std::int64_t step, GridAnchor grid);

/**
 * Evaluates the model at every grid point, lexicographic in the raw
 * readings (first sensor slowest). Points run in parallel; the output
 * order never depends on scheduling. In sampled mode point i uses
 * derive_seed(base_seed, i).
 */
std::vector<SweepRecord> run_sweep(const SweepSpec &spec, const SensorConfig &config);

struct ConfidencePoint {
    double distance = 0.0;
    ZeroGroupSummary groups;
    RawFrame raw_input;
};

/// Records sorted by distance, ties broken by lexicographic raw input.
std::vector<ConfidencePoint> confidence_curve(std::span<const SweepRecord> records);

/// Header `r,g,b,distance,p_000,...,p_111,g3,g2,g1,g0` for RGB. Column names
/// come from the config (lower-cased sensor names) and the qubit count.
void write_sweep_csv(std::ostream &out, std::span<const SweepRecord> records,
                     const SensorConfig &config, SweepMode mode = SweepMode::kExact);
void write_sweep_json_lines(std::ostream &out, std::span<const SweepRecord> records,
                            const SensorConfig &config);
/// JSON description of how a dataset was produced.
void write_sweep_metadata(std::ostream &out, const SweepSpec &spec, const SensorConfig &config,
                          std::size_t record_count);

// Table reproduction -------------------------------------------------------

struct TableRow {
    RawFrame input;
    std::optional<RawFrame> target;
};

struct TableResult {
    TableRow row;
    std::vector<double> exact;
    /// Empty when shots == 0.
    std::vector<double> sampled;
    std::optional<double> distance;
    std::uint64_t seed = 0;
};

/// The ten rows of the RGB camera case study: six in the canonical basis,
/// four queried against RGB(132,35,107).
std::vector<TableRow> case_study_rows();

/// Row i is sampled with derive_seed(seed, i).
std::vector<TableResult> reproduce_table(std::span<const TableRow> rows,
                                         const SensorConfig &config,
                                         std::uint64_t shots = 1'000'000,
                                         std::uint64_t seed = kDefaultSeed,
                                         double tau = kDefaultTau);

/// Percentages with two decimals, one line per row.
void write_table_text(std::ostream &out, std::span<const TableResult> results);
/// Full-precision CSV: kind,input,target,distance,p_000..p_111.
void write_table_csv(std::ostream &out, std::span<const TableResult> results);

} // namespace qlp

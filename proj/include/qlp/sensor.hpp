#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qlp/state.hpp"

namespace qlp {

/// Bounded discrete sensor channel: readings are integers in [lower, upper].
class SensorSpec {
  public:
    SensorSpec(std::string name, std::int64_t lower, std::int64_t upper);

    [[nodiscard]] const std::string &name() const noexcept { return name_; }
    [[nodiscard]] std::int64_t lower() const noexcept { return lower_; }
    [[nodiscard]] std::int64_t upper() const noexcept { return upper_; }

    friend bool operator==(const SensorSpec &, const SensorSpec &) = default;

  private:
    std::string name_;
    std::int64_t lower_;
    std::int64_t upper_;
};

/**
 * Ordered list of sensors. Position i is qubit i+1, so the order in a
 * configuration file is the qubit assignment.
 *
 * File format (JSON):
 *
 *     { "name": "rgb-camera",
 *       "sensors": [ { "name": "R", "lower": 0, "upper": 255 }, ... ] }
 *
 * "name" at the top level is optional.
 */
class SensorConfig {
  public:
    explicit SensorConfig(std::vector<SensorSpec> sensors, std::string name = {});

    /// Three 8-bit channels R, G, B (the camera case study).
    static SensorConfig rgb();

    static SensorConfig from_json(std::string_view text);
    [[nodiscard]] std::string to_json() const;

    [[nodiscard]] std::size_t size() const noexcept { return sensors_.size(); }
    [[nodiscard]] const SensorSpec &operator[](std::size_t i) const { return sensors_[i]; }
    [[nodiscard]] std::span<const SensorSpec> sensors() const noexcept { return sensors_; }
    [[nodiscard]] const std::string &name() const noexcept { return name_; }

  private:
    std::vector<SensorSpec> sensors_;
    std::string name_;
};

SensorConfig load_config(const std::filesystem::path &path);

/// One raw reading per configured sensor, in domain units.
struct RawFrame {
    std::vector<std::int64_t> readings;

    [[nodiscard]] std::size_t size() const noexcept { return readings.size(); }
    friend bool operator==(const RawFrame &, const RawFrame &) = default;
    friend auto operator<=>(const RawFrame &, const RawFrame &) = default;
};

enum class OutOfRange {
    kReject, ///< throw RangeError
    kClamp,  ///< clamp to the nearest bound
};

/// (reading - lower) / (upper - lower).
double normalize(std::int64_t reading, const SensorSpec &spec,
                 OutOfRange policy = OutOfRange::kReject);
double normalize(double reading, const SensorSpec &spec,
                 OutOfRange policy = OutOfRange::kReject);

NormalizedInput normalize_frame(const RawFrame &frame, const SensorConfig &config,
                                OutOfRange policy = OutOfRange::kReject);

/// Frame with every channel at its lower bound, e.g. RGB(0,0,0).
RawFrame lower_bound_frame(const SensorConfig &config);

} // namespace qlp

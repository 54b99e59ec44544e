#include "qlp/sensor.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qlp {

using json = nlohmann::json;

SensorSpec::SensorSpec(std::string name, std::int64_t lower, std::int64_t upper)
    : name_(std::move(name)), lower_(lower), upper_(upper) {
    if (name_.empty()) {
        throw ConfigError("sensor name must not be empty");
    }
    if (!(lower_ < upper_)) {
        throw ConfigError("sensor '" + name_ + "': lower bound " + std::to_string(lower_) +
                          " must be below upper bound " + std::to_string(upper_));
    }
}

SensorConfig::SensorConfig(std::vector<SensorSpec> sensors, std::string name)
    : sensors_(std::move(sensors)), name_(std::move(name)) {
    if (sensors_.empty()) {
        throw ConfigError("configuration must list at least one sensor");
    }
    if (sensors_.size() > kMaxQubits) {
        throw ConfigError("configuration lists " + std::to_string(sensors_.size()) +
                          " sensors; at most " + std::to_string(kMaxQubits) + " are supported");
    }
    std::set<std::string> seen;
    for (const SensorSpec &s : sensors_) {
        if (!seen.insert(s.name()).second) {
            throw ConfigError("duplicate sensor name '" + s.name() + "'");
        }
    }
}

SensorConfig SensorConfig::rgb() {
    return SensorConfig({{"R", 0, 255}, {"G", 0, 255}, {"B", 0, 255}}, "rgb-camera");
}

SensorConfig SensorConfig::from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("invalid sensor configuration: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("sensors") || !doc["sensors"].is_array()) {
        throw ConfigError("sensor configuration needs a \"sensors\" array");
    }
    std::string name;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) {
            throw ConfigError("\"name\" must be a string");
        }
        name = doc["name"].get<std::string>();
    }
    std::vector<SensorSpec> sensors;
    for (const json &entry : doc["sensors"]) {
        if (!entry.is_object() || !entry.contains("name") || !entry.contains("lower") ||
            !entry.contains("upper")) {
            throw ConfigError("each sensor needs \"name\", \"lower\" and \"upper\"");
        }
        if (!entry["name"].is_string() || !entry["lower"].is_number_integer() ||
            !entry["upper"].is_number_integer()) {
            throw ConfigError("sensor \"name\" must be a string and bounds integers");
        }
        sensors.emplace_back(entry["name"].get<std::string>(), entry["lower"].get<std::int64_t>(),
                             entry["upper"].get<std::int64_t>());
    }
    return SensorConfig(std::move(sensors), std::move(name));
}

std::string SensorConfig::to_json() const {
    json doc = json::object();
    if (!name_.empty()) {
        doc["name"] = name_;
    }
    doc["sensors"] = json::array();
    for (const SensorSpec &s : sensors_) {
        doc["sensors"].push_back({{"name", s.name()}, {"lower", s.lower()}, {"upper", s.upper()}});
    }
    return doc.dump(2);
}

SensorConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open sensor configuration '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return SensorConfig::from_json(text.str());
}

double normalize(std::int64_t reading, const SensorSpec &spec, OutOfRange policy) {
    if (reading < spec.lower() || reading > spec.upper()) {
        if (policy == OutOfRange::kReject) {
            throw RangeError("reading " + std::to_string(reading) + " of sensor '" + spec.name() +
                             "' is outside [" + std::to_string(spec.lower()) + ", " +
                             std::to_string(spec.upper()) + "]");
        }
        reading = std::clamp(reading, spec.lower(), spec.upper());
    }
    // Exact at both bounds: 0/span and span/span.
    return static_cast<double>(reading - spec.lower()) /
           static_cast<double>(spec.upper() - spec.lower());
}

double normalize(double reading, const SensorSpec &spec, OutOfRange policy) {
    if (!std::isfinite(reading)) {
        throw RangeError("reading of sensor '" + spec.name() + "' is not finite");
    }
    const auto lower = static_cast<double>(spec.lower());
    const auto upper = static_cast<double>(spec.upper());
    if (reading < lower || reading > upper) {
        if (policy == OutOfRange::kReject) {
            throw RangeError("reading " + std::to_string(reading) + " of sensor '" + spec.name() +
                             "' is outside [" + std::to_string(spec.lower()) + ", " +
                             std::to_string(spec.upper()) + "]");
        }
        reading = std::clamp(reading, lower, upper);
    }
    return std::clamp((reading - lower) / (upper - lower), 0.0, 1.0);
}

NormalizedInput normalize_frame(const RawFrame &frame, const SensorConfig &config,
                                OutOfRange policy) {
    if (frame.size() != config.size()) {
        throw DimensionError("frame has " + std::to_string(frame.size()) +
                             " readings but the configuration has " +
                             std::to_string(config.size()) + " sensors");
    }
    std::vector<double> x;
    x.reserve(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) {
        x.push_back(normalize(frame.readings[i], config[i], policy));
    }
    return NormalizedInput(std::move(x));
}

RawFrame lower_bound_frame(const SensorConfig &config) {
    RawFrame frame;
    for (const SensorSpec &s : config.sensors()) {
        frame.readings.push_back(s.lower());
    }
    return frame;
}

} // namespace qlp

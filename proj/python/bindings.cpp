#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qlp/query.hpp"
#include "qlp/sampling.hpp"
#include "qlp/sensor.hpp"
#include "qlp/state.hpp"
#include "qlp/sweep.hpp"

namespace py = pybind11;
using namespace qlp;

namespace {

RawFrame frame(const std::vector<std::int64_t> &readings) { return RawFrame{readings}; }

OutOfRange policy(bool clamp) { return clamp ? OutOfRange::kClamp : OutOfRange::kReject; }

py::dict record_dict(const SweepRecord &r) {
    py::dict d;
    d["input"] = r.raw_input.readings;
    d["distance"] = r.distance_to_reference;
    d["probs"] = r.probs;
    d["groups"] = r.groups.by_zero_count;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantum-like multi-sensor perception model (C++ core)";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.attr("MAX_QUBITS") = kMaxQubits;
    m.attr("DEFAULT_SEED") = kDefaultSeed;

    py::class_<StateVector>(m, "StateVector")
        .def_static("basis", &StateVector::basis, py::arg("num_qubits"), py::arg("index") = 0)
        .def_static("from_amplitudes", &StateVector::from_amplitudes, py::arg("amplitudes"),
                    py::arg("norm_tolerance") = 1e-12)
        .def_property_readonly("num_qubits", &StateVector::num_qubits)
        .def_property_readonly("amplitudes",
                               [](const StateVector &s) {
                                   return std::vector<double>(s.amplitudes().begin(),
                                                              s.amplitudes().end());
                               })
        .def("norm_squared", &StateVector::norm_squared)
        .def("__len__", &StateVector::size)
        .def("__getitem__", [](const StateVector &s, std::size_t i) {
            if (i >= s.size()) {
                throw py::index_error();
            }
            return s[i];
        });

    m.def(
        "qubit_amplitudes",
        [](double x, double tau) {
            const auto a = qubit_amplitudes(x, tau);
            return std::pair{a.zero, a.one};
        },
        py::arg("x"), py::arg("tau") = kDefaultTau);
    m.def(
        "product_state",
        [](const std::vector<double> &x, double tau) {
            return product_state(NormalizedInput(x), tau);
        },
        py::arg("x"), py::arg("tau") = kDefaultTau);
    m.def(
        "apply_ry",
        [](const StateVector &s, std::size_t qubit, double angle) {
            return apply_ry(s, qubit, RotationAngle{angle});
        },
        py::arg("state"), py::arg("qubit"), py::arg("angle"));
    m.def("probabilities", &probabilities, py::arg("state"));
    m.def(
        "bloch_coordinates",
        [](double x) {
            const auto p = bloch_coordinates(x);
            return std::tuple{p.x, p.y, p.z};
        },
        py::arg("x"));
    m.def("basis_label", &basis_label, py::arg("index"), py::arg("num_qubits"));

    m.def(
        "normalize",
        [](double reading, std::int64_t lower, std::int64_t upper, bool clamp) {
            return normalize(reading, SensorSpec("sensor", lower, upper), policy(clamp));
        },
        py::arg("reading"), py::arg("lower"), py::arg("upper"), py::arg("clamp") = false);
    m.def(
        "normalize_frame",
        [](const std::vector<std::int64_t> &readings, const std::string &config_json,
           bool clamp) {
            const SensorConfig config =
                config_json.empty() ? SensorConfig::rgb() : SensorConfig::from_json(config_json);
            const auto x = normalize_frame(frame(readings), config, policy(clamp));
            return std::vector<double>(x.values().begin(), x.values().end());
        },
        py::arg("readings"), py::arg("config_json") = "", py::arg("clamp") = false,
        "Normalize raw readings; an empty config selects the RGB camera.");

    m.def(
        "apply_query",
        [](const std::vector<double> &x, const std::vector<double> &target, double tau) {
            return apply_query(NormalizedInput(x), QueryTarget(target), tau);
        },
        py::arg("x"), py::arg("target"), py::arg("tau") = kDefaultTau);
    m.def(
        "zero_group_probabilities",
        [](const std::vector<double> &probs, std::size_t n) {
            return zero_group_probabilities(probs, n).by_zero_count;
        },
        py::arg("probs"), py::arg("num_qubits"),
        "Entry k is the probability mass of outcomes with exactly k zero bits.");
    m.def(
        "euclidean_distance",
        [](const std::vector<std::int64_t> &a, const std::vector<std::int64_t> &b) {
            return euclidean_distance(frame(a), frame(b));
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "sample",
        [](const std::vector<double> &probs, std::uint64_t shots, std::uint64_t seed) {
            return sample(probs, shots, seed).counts;
        },
        py::arg("probs"), py::arg("shots"), py::arg("seed"));
    m.def(
        "frequencies",
        [](const std::vector<std::uint64_t> &counts) {
            std::uint64_t shots = 0;
            for (auto c : counts) {
                shots += c;
            }
            return frequencies(MeasurementHistogram{counts, shots, 0});
        },
        py::arg("counts"));
    m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("index"));

    m.def(
        "run_sweep",
        [](std::int64_t step, std::optional<std::vector<std::int64_t>> target, std::uint64_t shots,
           std::uint64_t seed, bool to_upper, unsigned threads) {
            SweepSpec spec;
            spec.step = step;
            if (target) {
                spec.target = frame(*target);
            }
            if (shots > 0) {
                spec.mode = SweepMode::kSampled;
                spec.shots = shots;
            }
            spec.base_seed = seed;
            spec.grid = to_upper ? GridAnchor::kToUpper : GridAnchor::kFromLower;
            spec.threads = threads;
            std::vector<SweepRecord> records;
            {
                py::gil_scoped_release release;
                records = run_sweep(spec, SensorConfig::rgb());
            }
            py::list out;
            for (const auto &r : records) {
                out.append(record_dict(r));
            }
            return out;
        },
        py::arg("step") = 5, py::arg("target") = py::none(), py::arg("shots") = 0,
        py::arg("seed") = kDefaultSeed, py::arg("to_upper") = false, py::arg("threads") = 0,
        "RGB-cube sweep; shots > 0 switches to sampled mode.");

    m.def(
        "reproduce_table",
        [](std::uint64_t shots, std::uint64_t seed) {
            const auto rows = case_study_rows();
            py::list out;
            for (const auto &r : reproduce_table(rows, SensorConfig::rgb(), shots, seed)) {
                py::dict d;
                d["input"] = r.row.input.readings;
                d["target"] = r.row.target ? py::cast(r.row.target->readings) : py::none();
                d["exact"] = r.exact;
                d["sampled"] = r.sampled;
                d["distance"] = r.distance ? py::cast(*r.distance) : py::none();
                out.append(d);
            }
            return out;
        },
        py::arg("shots") = 1'000'000, py::arg("seed") = kDefaultSeed);

    m.attr("__version__") = QLP_VERSION;
}

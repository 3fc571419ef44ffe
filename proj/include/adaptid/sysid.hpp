#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "adaptid/adaptation.hpp"
#include "adaptid/evolution.hpp"
#include "adaptid/report.hpp"
#include "adaptid/signals.hpp"

namespace adaptid {

/// Unknown system driven by the training input. `a` is empty for an FIR plant
/// and uses the y(n) = ... + sum a_k y(n-k) sign convention otherwise.
struct Plant {
    Eigen::VectorXd b;
    Eigen::VectorXd a;

    bool recursive() const noexcept { return a.size() > 0; }
    void validate() const;

    /// H(z) = 0.03 + 0.24 z^-1 + 0.54 z^-2 + 0.8 z^-3
    static Plant fir_benchmark();
    /// H(z) = 0.6 / (1 - 0.2 z^-1)
    static Plant iir_benchmark();
    /// H(z) = (0.05 - 0.4 z^-1) / (1 - 1.1314 z^-1 + 0.25 z^-2); identified by a
    /// first-order recursive filter it has a bimodal error surface.
    static Plant reduced_order_benchmark();
};

/// Noiseless plant output for input x. Throws InvalidPlantError for an unstable plant.
Signal plant_response(const Plant& p, const Signal& x);

enum class Method { LmsFir, LmsIir, LmsGa, Ga };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct InputConfig {
    std::int64_t samples = 10000;
    bool colored = false;
    std::optional<FilterTaps> lpf; ///< empty: the standard 8-tap low-pass
    double noise_std = 0.0;        ///< additive white noise on d; off by default

    FilterTaps coloring_filter() const;
};

/// Everything that determines an experiment. Same config and seed, same report.
struct ExperimentConfig {
    Method method = Method::LmsFir;
    Plant plant = Plant::fir_benchmark();
    InputConfig input;
    double mu = 0.045;
    FilterStructure structure = FilterStructure::fir(4);
    std::uint64_t seed = 1;
    LmsGaConfig lms_ga;
    bool gt_auto = false; ///< estimate GT from a pure-LMS run on the same record
    GaConfig ga;
    std::int64_t max_iterations = 10000;
    double threshold_db = -140.0;
    std::int64_t hold = 8;
    std::int64_t mse_window = 8;
    std::optional<Eigen::VectorXd> initial;

    LmsRunConfig run_config() const;
    void validate() const;
};

/// Training record (x, d) for a config: four-level input from the seed,
/// optionally colored, pushed through the plant.
struct TrainingRecord {
    Signal x;
    Signal d;
};
TrainingRecord make_training_record(const ExperimentConfig& cfg);

/// GT from the plateau of a pure-LMS run (no early stop) on the same record, delta = gamma.
GtEstimate auto_gradient_threshold(const ExperimentConfig& cfg, const TrainingRecord& rec);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

enum class CostModel { FirWhite, Iir, FirColored };

/// Multiplications per iteration: FIR 2N, IIR (M + L)(L + 2), colored FIR N P + 2N.
std::int64_t theoretical_cost(CostModel kind, std::int64_t n, std::int64_t m, std::int64_t l, std::int64_t p);

} // namespace adaptid

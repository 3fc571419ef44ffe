#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

namespace adaptid {

inline constexpr double kMseFloorDb = -400.0;

/// 10 log10(mse), clamped below at -400 dB (so mse = 0 maps to the floor).
double mse_db(double mse);

/// Mean of the last t_e squared errors. Throws if fewer than t_e errors are given.
double windowed_mse(std::span<const double> errors, std::int64_t t_e);

struct CurvePoint {
    double eps_squared = 0.0;
    double mse_db_window = 0.0;
};

using LearningCurve = std::vector<CurvePoint>;

/// Streaming form of convergence_iterations(): feed windowed-MSE dB values in
/// order; converged_at() is set once a run of hold + 1 values at or below the
/// threshold has been seen.
class ConvergenceDetector {
public:
    ConvergenceDetector(double threshold_db, std::int64_t hold);

    /// Returns true on the call that completes the sustained crossing.
    bool push(double mse_db_value);

    std::optional<std::int64_t> converged_at() const noexcept { return converged_at_; }

private:
    double threshold_db_;
    std::int64_t hold_;
    std::int64_t index_ = 0;
    std::optional<std::int64_t> run_start_;
    std::optional<std::int64_t> converged_at_;
};

/// First iteration whose windowed MSE is <= threshold_db and stays there for
/// the next `hold` iterations.
std::optional<std::int64_t> convergence_iterations(std::span<const double> mse_db_curve, double threshold_db,
                                                   std::int64_t hold);
std::optional<std::int64_t> convergence_iterations(const LearningCurve& curve, double threshold_db,
                                                   std::int64_t hold);

/// One gradient-stall check of the hybrid learner.
struct TriggerEvent {
    std::int64_t iteration = 0;
    double delta_e = 0.0;
    bool triggered = false;
    std::optional<double> best_candidate_mse_db;
    std::optional<double> parent_mse_db; ///< parent on the same block; not part of the trigger CSV
    bool offspring_selected = false;
};

/// Outcome of one adaptation run, shaped like a row of the result tables.
struct ExperimentReport {
    LearningCurve curve;
    std::optional<std::int64_t> converged_at;
    /// FIR: weights. IIR: [b_0..b_M, a_1..a_L] with a in the y(n) = ... + sum a_k y(n-k) convention.
    Eigen::VectorXd final_weights;
    std::int64_t feedback_order = 0;
    std::optional<double> final_mse_db;
    std::vector<TriggerEvent> trigger_events;
    std::uint64_t seed = 0;
    nlohmann::json config;

    std::int64_t iterations() const noexcept { return static_cast<std::int64_t>(curve.size()); }
    std::int64_t trigger_count() const noexcept;
    std::vector<double> mse_db_trace() const;

    Eigen::VectorXd feedforward() const { return final_weights.head(final_weights.size() - feedback_order); }
    Eigen::VectorXd feedback() const { return final_weights.tail(feedback_order); }
};

} // namespace adaptid

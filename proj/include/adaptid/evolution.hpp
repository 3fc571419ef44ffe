#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "adaptid/adaptation.hpp"
#include "adaptid/adaptive_fir.hpp"
#include "adaptid/adaptive_iir.hpp"
#include "adaptid/report.hpp"
#include "adaptid/rng.hpp"
#include "adaptid/signals.hpp"

namespace adaptid {

/// Candidate filter: FIR weights, or [b_0..b_M, a_1..a_L] for a recursive filter.
struct Chromosome {
    Eigen::VectorXd genes;
    std::optional<double> cached_mse;
};

/// Which adaptive filter a search runs on.
struct FilterStructure {
    bool recursive = false;
    Eigen::Index fir_order = 0;         ///< N, FIR only
    Eigen::Index feedforward_order = 0; ///< M, IIR only
    Eigen::Index feedback_order = 0;    ///< L, IIR only

    static FilterStructure fir(Eigen::Index n) { return {false, n, 0, 0}; }
    static FilterStructure iir(Eigen::Index m, Eigen::Index l) { return {true, 0, m, l}; }

    Eigen::Index gene_count() const noexcept { return recursive ? feedforward_order + 1 + feedback_order : fir_order; }
    void validate() const;
};

/// Knobs of the hybrid LMS-GA learner. The LMS step size itself lives in LmsRunConfig.
struct LmsGaConfig {
    std::int64_t m = 5;              ///< offspring per evolution
    double offset_d = 0.02;          ///< D, permissible offset per gene
    std::int64_t gamma = 8;          ///< window for the error-gradient estimate, and check cadence
    double gradient_threshold = 0.0; ///< GT in dB per iteration; 0 disables evolution
    std::int64_t t_e = 8;            ///< candidate evaluation block

    void validate() const;
};

/// F = 1 / (1 + f) for a non-negative cost f.
double fitness(double cost);

/// Offspring genes g' = g + sigma * D with sigma drawn per gene from `draw_sigma`,
/// which must return values in [-1, 1].
template <typename SigmaSource>
std::vector<Chromosome> spawn_offsprings(const Chromosome& parent, std::int64_t m, double offset_d,
                                         SigmaSource&& draw_sigma)
{
    if (m < 1)
        throw InvalidArgument("offspring count must be at least 1");
    if (!(offset_d >= 0.0) || !std::isfinite(offset_d))
        throw InvalidArgument("offset range must be non-negative");
    std::vector<Chromosome> out;
    out.reserve(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) {
        Chromosome child{parent.genes, std::nullopt};
        for (Eigen::Index k = 0; k < child.genes.size(); ++k)
            child.genes(k) += draw_sigma(i, k) * offset_d;
        out.push_back(std::move(child));
    }
    return out;
}

/// Eq.-30 offspring with independent uniform sigma in [-1, 1) per gene; each
/// offspring draws from its own stream forked off `rng`.
std::vector<Chromosome> spawn_offsprings(const Chromosome& parent, std::int64_t m, double offset_d, RngStream& rng);

struct GtEstimate {
    double gt;
    std::int64_t plateau_start;
    std::int64_t plateau_end; ///< one past the last plateau iteration
};

/// Gradient threshold from a pure-LMS learning curve (windowed MSE in dB).
/// The plateau starts at the first iteration where the curve stays inside a
/// `band_db` band for `sustain_factor * delta` iterations, and extends while it
/// keeps inside the band. GT = (max - min over the plateau) / delta.
GtEstimate estimate_gt(std::span<const double> mse_db_curve, std::int64_t delta, double band_db = 10.0,
                       std::int64_t sustain_factor = 5);
GtEstimate estimate_gt(const LearningCurve& curve, std::int64_t delta, double band_db = 10.0,
                       std::int64_t sustain_factor = 5);

/// Hybrid learner: LMS steps, and every gamma iterations the windowed-MSE
/// slope dE = (e(n) - e(n - gamma)) / gamma. When |dE| < GT, m offspring of the
/// current coefficients are scored on the next t_e samples with adaptation
/// frozen, and LMS resumes from the best of parent and offspring.
ExperimentReport lms_ga_run(const Signal& x, const Signal& d, const FilterStructure& structure,
                            const LmsGaConfig& cfg, const LmsRunConfig& run_cfg, RngStream& rng,
                            const std::optional<Eigen::VectorXd>& initial = std::nullopt);

struct GaConfig {
    std::int64_t population_size = 40;
    std::int64_t generations = 200;
    std::int64_t tournament_size = 2;
    double crossover_rate = 0.9;
    double mutation_rate = 0.1;
    double mutation_width = 0.1;
    double init_range = 1.0;
    std::int64_t eval_window = 64; ///< t_e for the fitness cost
    double convergence_threshold_db = -140.0;
    std::int64_t hold = 8;
    /// Chromosomes placed into the initial population ahead of the random ones.
    std::vector<Eigen::VectorXd> seeded;

    void validate() const;
};

/// Windowed MSE of a fixed-coefficient filter over the first `window` samples,
/// starting from a silent state.
double evaluate_mse(const Eigen::VectorXd& genes, const FilterStructure& structure, const Signal& x,
                    const Signal& d, std::int64_t window);

/// Real-coded GA baseline: tournament selection, uniform arithmetic crossover,
/// additive uniform mutation, one elite. The curve holds the best windowed MSE
/// of each generation.
ExperimentReport ga_baseline_run(const Signal& x, const Signal& d, const FilterStructure& structure,
                                 const GaConfig& cfg, RngStream& rng);

} // namespace adaptid

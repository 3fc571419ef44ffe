#include "adaptid/sysid.hpp"

#include "adaptid/adaptive_fir.hpp"
#include "adaptid/adaptive_iir.hpp"
#include "adaptid/config.hpp"

namespace adaptid {

void Plant::validate() const
{
    if (b.size() < 1)
        throw InvalidPlantError("plant needs at least one numerator tap");
    if (!all_finite(b) || !all_finite(a))
        throw InvalidPlantError("plant coefficients must be finite");
    if (recursive() && max_pole_radius<double>(a) >= 1.0)
        throw InvalidPlantError("plant has a pole on or outside the unit circle");
}

Plant Plant::fir_benchmark()
{
    Plant p;
    p.b = (Eigen::VectorXd(4) << 0.03, 0.24, 0.54, 0.8).finished();
    return p;
}

Plant Plant::iir_benchmark()
{
    return {Eigen::VectorXd::Constant(1, 0.6), Eigen::VectorXd::Constant(1, 0.2)};
}

Plant Plant::reduced_order_benchmark()
{
    return {(Eigen::VectorXd(2) << 0.05, -0.4).finished(), (Eigen::VectorXd(2) << 1.1314, -0.25).finished()};
}

Signal plant_response(const Plant& p, const Signal& x)
{
    p.validate();
    require_finite(x, "plant input");
    if (!p.recursive())
        return causal_convolve(x, p.b);
    IirFilter<double> f(p.b, p.a);
    Signal y(x.size());
    for (Eigen::Index n = 0; n < x.size(); ++n)
        y(n) = f.filter(x(n));
    return y;
}

std::string to_string(Method m)
{
    switch (m) {
    case Method::LmsFir:
        return "lms_fir";
    case Method::LmsIir:
        return "lms_iir";
    case Method::LmsGa:
        return "lms_ga";
    case Method::Ga:
        return "ga";
    }
    return "?";
}

Method method_from_string(const std::string& s)
{
    if (s == "lms_fir")
        return Method::LmsFir;
    if (s == "lms_iir")
        return Method::LmsIir;
    if (s == "lms_ga")
        return Method::LmsGa;
    if (s == "ga")
        return Method::Ga;
    throw ConfigError("unknown method '" + s + "'", "method");
}

FilterTaps InputConfig::coloring_filter() const
{
    return lpf ? *lpf : standard_lpf_8tap();
}

LmsRunConfig ExperimentConfig::run_config() const
{
    LmsRunConfig r;
    r.mu = mu;
    r.max_iterations = max_iterations;
    r.convergence_threshold_db = threshold_db;
    r.hold = hold;
    r.mse_window = mse_window;
    return r;
}

void ExperimentConfig::validate() const
{
    if (input.samples < 1)
        throw ConfigError("input.samples must be positive", "samples");
    if (!(input.noise_std >= 0.0))
        throw ConfigError("input.noise_std must be non-negative", "noise_std");
    try {
        structure.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what(), "orders");
    }
    if (method == Method::LmsFir && structure.recursive)
        throw ConfigError("lms_fir needs orders.N", "orders");
    if (method == Method::LmsIir && !structure.recursive)
        throw ConfigError("lms_iir needs orders.M and orders.L", "orders");
    if (!structure.recursive && structure.fir_order > input.samples)
        throw ConfigError("record is shorter than the filter order", "samples");
    if (initial && initial->size() != structure.gene_count())
        throw ConfigError("initial coefficients do not match the filter structure", "initial");
    try {
        run_config().validate();
        if (method == Method::LmsGa)
            lms_ga.validate();
        if (method == Method::Ga)
            ga.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what(), "run");
    }
    try {
        plant.validate();
    } catch (const InvalidPlantError& e) {
        throw ConfigError(e.what(), "plant");
    }
}

TrainingRecord make_training_record(const ExperimentConfig& cfg)
{
    RngStream input_rng(derive_seed(cfg.seed, 0));
    TrainingRecord rec;
    rec.x = gen_four_level(cfg.input.samples, input_rng);
    if (cfg.input.colored)
        rec.x = color(rec.x, cfg.input.coloring_filter());
    rec.d = plant_response(cfg.plant, rec.x);
    if (cfg.input.noise_std > 0.0) {
        // Box-Muller on the dedicated noise stream
        RngStream noise_rng(derive_seed(cfg.seed, 1));
        for (Eigen::Index n = 0; n < rec.d.size(); ++n) {
            const double u1 = 1.0 - noise_rng.uniform();
            const double u2 = noise_rng.uniform();
            rec.d(n) += cfg.input.noise_std * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        }
    }
    return rec;
}

namespace {

ExperimentReport run_pure_lms(const ExperimentConfig& cfg, const TrainingRecord& rec, const LmsRunConfig& run)
{
    if (!cfg.structure.recursive)
        return run_fir_lms(rec.x, rec.d, cfg.structure.fir_order, run, cfg.initial);
    std::optional<IirCoefficients> init;
    if (cfg.initial)
        init = IirCoefficients{cfg.initial->head(cfg.structure.feedforward_order + 1),
                               cfg.initial->tail(cfg.structure.feedback_order)};
    return run_iir_lms(rec.x, rec.d, cfg.structure.feedforward_order, cfg.structure.feedback_order, run, init);
}

} // namespace

GtEstimate auto_gradient_threshold(const ExperimentConfig& cfg, const TrainingRecord& rec)
{
    LmsRunConfig run = cfg.run_config();
    run.stop_on_convergence = false;
    const auto pure = run_pure_lms(cfg, rec, run);
    return estimate_gt(pure.curve, cfg.lms_ga.gamma);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();
    const TrainingRecord rec = make_training_record(cfg);
    RngStream search_rng(derive_seed(cfg.seed, 2));

    ExperimentReport report;
    switch (cfg.method) {
    case Method::LmsFir:
    case Method::LmsIir:
        report = run_pure_lms(cfg, rec, cfg.run_config());
        break;
    case Method::LmsGa: {
        LmsGaConfig hybrid = cfg.lms_ga;
        if (cfg.gt_auto)
            hybrid.gradient_threshold = auto_gradient_threshold(cfg, rec).gt;
        report = lms_ga_run(rec.x, rec.d, cfg.structure, hybrid, cfg.run_config(), search_rng, cfg.initial);
        break;
    }
    case Method::Ga: {
        GaConfig ga = cfg.ga;
        ga.convergence_threshold_db = cfg.threshold_db;
        ga.hold = cfg.hold;
        report = ga_baseline_run(rec.x, rec.d, cfg.structure, ga, search_rng);
        break;
    }
    }
    report.seed = cfg.seed;
    report.config = config_to_json(cfg);
    return report;
}

std::int64_t theoretical_cost(CostModel kind, std::int64_t n, std::int64_t m, std::int64_t l, std::int64_t p)
{
    if (n < 0 || m < 0 || l < 0 || p < 0)
        throw InvalidArgument("dimensions must be non-negative");
    switch (kind) {
    case CostModel::FirWhite:
        return 2 * n;
    case CostModel::Iir:
        return (m + l) * (l + 2);
    case CostModel::FirColored:
        return n * p + 2 * n;
    }
    return 0;
}

} // namespace adaptid

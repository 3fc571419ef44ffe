#include "adaptid/evolution.hpp"

#include <algorithm>
#include <limits>

namespace adaptid {

void FilterStructure::validate() const
{
    if (recursive) {
        if (feedforward_order < 0 || feedback_order < 0 || feedforward_order + feedback_order < 1)
            throw InvalidArgument("IIR orders must satisfy M, L >= 0 and M + L >= 1");
    } else if (fir_order < 1) {
        throw InvalidArgument("FIR order must be at least 1");
    }
}

void LmsGaConfig::validate() const
{
    if (m < 1)
        throw InvalidArgument("m must be at least 1");
    if (!(offset_d >= 0.0) || !std::isfinite(offset_d))
        throw InvalidArgument("offset D must be non-negative");
    if (gamma < 1)
        throw InvalidArgument("gamma must be at least 1");
    if (t_e < 1)
        throw InvalidArgument("t_e must be at least 1");
    if (!(gradient_threshold >= 0.0))
        throw InvalidArgument("gradient threshold must be non-negative");
}

void GaConfig::validate() const
{
    if (population_size < 2)
        throw InvalidArgument("population_size must be at least 2");
    if (generations < 0)
        throw InvalidArgument("generations must be non-negative");
    if (tournament_size < 1)
        throw InvalidArgument("tournament_size must be at least 1");
    if (eval_window < 1)
        throw InvalidArgument("eval_window must be at least 1");
}

double fitness(double cost)
{
    if (std::isnan(cost) || cost < 0.0)
        throw InvalidArgument("cost must be non-negative");
    return 1.0 / (1.0 + cost);
}

std::vector<Chromosome> spawn_offsprings(const Chromosome& parent, std::int64_t m, double offset_d, RngStream& rng)
{
    std::vector<RngStream> streams;
    for (std::int64_t i = 0; i < std::max<std::int64_t>(m, 0); ++i)
        streams.push_back(rng.fork());
    return spawn_offsprings(parent, m, offset_d, [&](std::int64_t i, Eigen::Index) {
        return streams[static_cast<std::size_t>(i)].uniform(-1.0, 1.0);
    });
}

GtEstimate estimate_gt(std::span<const double> curve, std::int64_t delta, double band_db,
                       std::int64_t sustain_factor)
{
    if (curve.empty())
        throw InvalidArgument("learning curve is empty");
    if (delta < 1)
        throw InvalidArgument("delta must be at least 1");
    const auto n = static_cast<std::int64_t>(curve.size());
    const std::int64_t sustain = sustain_factor * delta;

    for (std::int64_t start = 0; start + sustain <= n; ++start) {
        double lo = curve[static_cast<std::size_t>(start)];
        double hi = lo;
        std::int64_t end = start + 1;
        for (; end < n; ++end) {
            const double v = curve[static_cast<std::size_t>(end)];
            const double nlo = std::min(lo, v);
            const double nhi = std::max(hi, v);
            if (nhi - nlo > band_db)
                break;
            lo = nlo;
            hi = nhi;
        }
        if (end - start >= sustain)
            return {(hi - lo) / static_cast<double>(delta), start, end};
    }
    throw NoPlateauError("learning curve never settles into a plateau");
}

GtEstimate estimate_gt(const LearningCurve& curve, std::int64_t delta, double band_db, std::int64_t sustain_factor)
{
    std::vector<double> trace;
    trace.reserve(curve.size());
    for (const auto& p : curve)
        trace.push_back(p.mse_db_window);
    return estimate_gt(trace, delta, band_db, sustain_factor);
}

namespace {

void stabilize_genes(Eigen::VectorXd& genes, const FilterStructure& s)
{
    if (s.recursive && s.feedback_order > 0)
        genes.tail(s.feedback_order) = stabilize_poles<double>(genes.tail(s.feedback_order));
}

/// Squared-error mean of `filter` run with frozen coefficients over x[from, from + count).
template <typename Filter>
double frozen_mse(Filter filter, const Signal& x, const Signal& d, std::int64_t from, std::int64_t count)
{
    double acc = 0.0;
    for (std::int64_t k = from; k < from + count; ++k) {
        const double e = d(k) - filter.filter(x(k));
        acc += e * e;
    }
    return acc / static_cast<double>(count);
}

template <typename Filter>
ExperimentReport run_hybrid(Filter filter, const Signal& x, const Signal& d, const FilterStructure& structure,
                            const LmsGaConfig& cfg, const LmsRunConfig& run_cfg, RngStream& rng)
{
    RunMonitor monitor(run_cfg);
    std::vector<TriggerEvent> events;
    const std::int64_t len = x.size();
    const std::int64_t steps = std::min<std::int64_t>(run_cfg.max_iterations, len);

    for (std::int64_t n = 0; n < steps; ++n) {
        StepResult<double> s{};
        try {
            s = filter.adapt(x(n), d(n), run_cfg.mu);
        } catch (const DivergenceError&) {
            throw DivergenceError("LMS-GA adaptation diverged", n);
        }
        if (monitor.record(s.eps))
            break;

        if (n < cfg.gamma || (n + 1) % cfg.gamma != 0)
            continue;
        const auto& curve = monitor.curve();
        TriggerEvent ev;
        ev.iteration = n;
        ev.delta_e = (curve[static_cast<std::size_t>(n)].mse_db_window -
                      curve[static_cast<std::size_t>(n - cfg.gamma)].mse_db_window) /
                     static_cast<double>(cfg.gamma);

        if (std::abs(ev.delta_e) < cfg.gradient_threshold && n + cfg.t_e < len) {
            const Chromosome parent{filter.coefficients(), std::nullopt};
            auto candidates = spawn_offsprings(parent, cfg.m, cfg.offset_d, rng);
            candidates.insert(candidates.begin(), parent);

            std::size_t best = 0;
            double best_mse = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                stabilize_genes(candidates[i].genes, structure);
                Filter trial = filter;
                trial.set_coefficients(candidates[i].genes);
                const double mse = frozen_mse(trial, x, d, n + 1, cfg.t_e);
                candidates[i].cached_mse = mse;
                if (mse < best_mse) {
                    best_mse = mse;
                    best = i;
                }
            }
            filter.set_coefficients(candidates[best].genes);
            ev.triggered = true;
            ev.best_candidate_mse_db = mse_db(best_mse);
            ev.parent_mse_db = mse_db(*candidates[0].cached_mse);
            ev.offspring_selected = best != 0;
        }
        events.push_back(ev);
    }

    auto report = std::move(monitor).finish(filter.coefficients(), structure.recursive ? structure.feedback_order : 0);
    report.trigger_events = std::move(events);
    return report;
}

} // namespace

ExperimentReport lms_ga_run(const Signal& x, const Signal& d, const FilterStructure& structure,
                            const LmsGaConfig& cfg, const LmsRunConfig& run_cfg, RngStream& rng,
                            const std::optional<Eigen::VectorXd>& initial)
{
    structure.validate();
    cfg.validate();
    require_training_record(x, d, structure.recursive ? 1 : structure.fir_order);

    Eigen::VectorXd start = initial ? *initial : Eigen::VectorXd::Zero(structure.gene_count());
    if (start.size() != structure.gene_count())
        throw InvalidArgument("initial coefficients do not match the filter structure");

    if (!structure.recursive)
        return run_hybrid(FirFilter<double>(start), x, d, structure, cfg, run_cfg, rng);

    stabilize_genes(start, structure);
    IirFilter<double> filter(start.head(structure.feedforward_order + 1), start.tail(structure.feedback_order));
    return run_hybrid(std::move(filter), x, d, structure, cfg, run_cfg, rng);
}

double evaluate_mse(const Eigen::VectorXd& genes, const FilterStructure& structure, const Signal& x,
                    const Signal& d, std::int64_t window)
{
    const std::int64_t w = std::min<std::int64_t>(window, x.size());
    if (w < 1)
        throw InvalidArgument("evaluation window is empty");
    if (!structure.recursive)
        return frozen_mse(FirFilter<double>(genes), x, d, 0, w);
    return frozen_mse(IirFilter<double>(genes.head(structure.feedforward_order + 1),
                                        genes.tail(structure.feedback_order)),
                      x, d, 0, w);
}

namespace {

/// Fitness-evaluated individual; lower MSE is fitter.
double score(Chromosome& c, const FilterStructure& s, const Signal& x, const Signal& d, std::int64_t window)
{
    if (!c.cached_mse) {
        double mse = std::numeric_limits<double>::infinity();
        try {
            mse = evaluate_mse(c.genes, s, x, d, window);
        } catch (const DivergenceError&) {
        }
        c.cached_mse = std::isfinite(mse) ? mse : std::numeric_limits<double>::infinity();
    }
    return *c.cached_mse;
}

const Chromosome& tournament(const std::vector<Chromosome>& pop, std::int64_t size, RngStream& rng)
{
    const auto n = static_cast<std::uint64_t>(pop.size());
    const Chromosome* best = &pop[rng.next_u64() % n];
    for (std::int64_t i = 1; i < size; ++i) {
        const Chromosome* c = &pop[rng.next_u64() % n];
        if (fitness(*c->cached_mse) > fitness(*best->cached_mse))
            best = c;
    }
    return *best;
}

} // namespace

ExperimentReport ga_baseline_run(const Signal& x, const Signal& d, const FilterStructure& structure,
                                 const GaConfig& cfg, RngStream& rng)
{
    structure.validate();
    cfg.validate();
    require_training_record(x, d, structure.recursive ? 1 : structure.fir_order);
    const Eigen::Index genes = structure.gene_count();

    std::vector<Chromosome> pop;
    for (const auto& s : cfg.seeded) {
        if (static_cast<std::int64_t>(pop.size()) == cfg.population_size)
            break;
        if (s.size() != genes)
            throw InvalidArgument("seeded chromosome has the wrong gene count");
        pop.push_back({s, std::nullopt});
    }
    while (static_cast<std::int64_t>(pop.size()) < cfg.population_size) {
        Chromosome c{Eigen::VectorXd(genes), std::nullopt};
        for (Eigen::Index k = 0; k < genes; ++k)
            c.genes(k) = rng.uniform(-cfg.init_range, cfg.init_range);
        pop.push_back(std::move(c));
    }
    for (auto& c : pop)
        stabilize_genes(c.genes, structure);

    LearningCurve curve;
    ConvergenceDetector detector(cfg.convergence_threshold_db, cfg.hold);
    Chromosome elite;
    for (std::int64_t gen = 0;; ++gen) {
        for (auto& c : pop)
            score(c, structure, x, d, cfg.eval_window);
        // epsilon_min of this generation
        const auto best = std::min_element(pop.begin(), pop.end(), [](const auto& l, const auto& r) {
            return *l.cached_mse < *r.cached_mse;
        });
        elite = *best;
        const double emin = *elite.cached_mse;
        curve.push_back({emin, std::isfinite(emin) ? mse_db(emin) : -kMseFloorDb});
        detector.push(curve.back().mse_db_window);
        if (gen == cfg.generations)
            break;

        std::vector<Chromosome> next;
        next.reserve(pop.size());
        next.push_back(elite);
        while (next.size() < pop.size()) {
            const Chromosome& p1 = tournament(pop, cfg.tournament_size, rng);
            const Chromosome& p2 = tournament(pop, cfg.tournament_size, rng);
            Chromosome child{p1.genes, std::nullopt};
            if (rng.uniform() < cfg.crossover_rate) {
                for (Eigen::Index k = 0; k < genes; ++k) {
                    const double lambda = rng.uniform();
                    child.genes(k) = lambda * p1.genes(k) + (1.0 - lambda) * p2.genes(k);
                }
            }
            for (Eigen::Index k = 0; k < genes; ++k)
                if (rng.uniform() < cfg.mutation_rate)
                    child.genes(k) += rng.uniform(-cfg.mutation_width, cfg.mutation_width);
            stabilize_genes(child.genes, structure);
            next.push_back(std::move(child));
        }
        pop = std::move(next);
    }

    ExperimentReport r;
    r.curve = std::move(curve);
    r.converged_at = detector.converged_at();
    r.final_weights = elite.genes;
    r.feedback_order = structure.recursive ? structure.feedback_order : 0;
    r.final_mse_db = r.curve.back().mse_db_window;
    return r;
}

} // namespace adaptid

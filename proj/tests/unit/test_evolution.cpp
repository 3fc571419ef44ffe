#include <gtest/gtest.h>

#include "adaptid/evolution.hpp"
#include "adaptid/rng.hpp"
#include "test_support.hpp"

using namespace adaptid;

namespace {

const Eigen::VectorXd kPlant = vec({0.03, 0.24, 0.54, 0.8});

struct Record {
    Signal x;
    Signal d;
};

Record fir_task(std::uint64_t seed, Eigen::Index n = 10000)
{
    RngStream rng(seed);
    Record r;
    r.x = gen_four_level(n, rng);
    r.d = causal_convolve(r.x, kPlant);
    return r;
}

Record iir_task(std::uint64_t seed, Eigen::Index n = 10000)
{
    RngStream rng(seed);
    Record r;
    r.x = gen_four_level(n, rng);
    r.d = Signal(n);
    double prev = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        prev = r.d(i) = 0.6 * r.x(i) + 0.2 * prev;
    return r;
}

LmsRunConfig run_cfg(double mu)
{
    LmsRunConfig c;
    c.mu = mu;
    return c;
}

} // namespace

TEST(WindowedMse, Examples)
{
    const std::vector<double> ones(4, 1.0);
    EXPECT_DOUBLE_EQ(windowed_mse(ones, 4), 1.0);
    const std::vector<double> zeros(8, 0.0);
    EXPECT_DOUBLE_EQ(windowed_mse(zeros, 8), 0.0);
    const std::vector<double> e{1.0, 2.0};
    EXPECT_DOUBLE_EQ(windowed_mse(e, 2), 2.5);
}

TEST(WindowedMse, UsesTrailingWindowAndChecksLength)
{
    const std::vector<double> e{100.0, 1.0, 1.0};
    EXPECT_DOUBLE_EQ(windowed_mse(e, 2), 1.0);
    EXPECT_THROW(windowed_mse(e, 4), InvalidArgument);
    EXPECT_THROW(windowed_mse(e, 0), InvalidArgument);
}

TEST(Fitness, Examples)
{
    EXPECT_EQ(fitness(0.0), 1.0);
    EXPECT_EQ(fitness(1.0), 0.5);
    EXPECT_EQ(fitness(3.0), 0.25);
    EXPECT_THROW(fitness(-1e-9), InvalidArgument);
    EXPECT_THROW(fitness(std::nan("")), InvalidArgument);
}

TEST(FitnessProperty, StrictlyDecreasingIntoUnitInterval)
{
    RngStream rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double f1 = rng.uniform(0, 100), f2 = f1 + rng.uniform(1e-6, 10);
        ASSERT_GT(fitness(f1), fitness(f2));
        ASSERT_GT(fitness(f2), 0.0);
        ASSERT_LE(fitness(f1), 1.0);
        // bijection: the inverse recovers the cost
        ASSERT_NEAR(1.0 / fitness(f1) - 1.0, f1, 1e-9 * std::max(1.0, f1));
    }
}

TEST(Offspring, ZeroOffsetClones)
{
    RngStream rng(1);
    const Chromosome parent{vec({0.1, 0.2, 0.3}), 0.5};
    const auto kids = spawn_offsprings(parent, 4, 0.0, rng);
    ASSERT_EQ(kids.size(), 4u);
    for (const auto& k : kids) {
        EXPECT_TRUE(near_all(k.genes, parent.genes, 0));
        EXPECT_FALSE(k.cached_mse.has_value());
    }
}

TEST(Offspring, FiveWithinTwoHundredths)
{
    RngStream rng(2);
    const Chromosome parent{kPlant, std::nullopt};
    const auto kids = spawn_offsprings(parent, 5, 0.02, rng);
    ASSERT_EQ(kids.size(), 5u);
    for (const auto& k : kids)
        EXPECT_LE((k.genes - parent.genes).cwiseAbs().maxCoeff(), 0.02);
}

TEST(Offspring, SigmaSubstitution)
{
    const Chromosome parent{vec({0.5, 0.5}), std::nullopt};
    const double sigma[] = {1.0, -1.0};
    const auto kids = spawn_offsprings(parent, 1, 0.02, [&](std::int64_t, Eigen::Index k) { return sigma[k]; });
    EXPECT_TRUE(near_all(kids[0].genes, vec({0.52, 0.48}), 1e-15));
}

TEST(Offspring, Errors)
{
    RngStream rng(1);
    const Chromosome parent{vec({0.5}), std::nullopt};
    EXPECT_THROW(spawn_offsprings(parent, 0, 0.1, rng), InvalidArgument);
    EXPECT_THROW(spawn_offsprings(parent, 2, -0.1, rng), InvalidArgument);
}

TEST(OffspringProperty, GenesStayWithinOffset)
{
    RngStream gen(4);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(gen.next_u64() % 6);
        Chromosome parent{Eigen::VectorXd(n), std::nullopt};
        for (auto& g : parent.genes)
            g = gen.uniform(-2, 2);
        const double d = gen.uniform(0, 1);
        RngStream rng(gen.next_u64());
        for (const auto& k : spawn_offsprings(parent, 1 + static_cast<std::int64_t>(gen.next_u64() % 8), d, rng))
            ASSERT_LE((k.genes - parent.genes).cwiseAbs().maxCoeff(), d + 1e-15);
    }
}

TEST(OffspringProperty, DistinctPerOffspringAndPerGene)
{
    RngStream rng(5);
    const auto kids = spawn_offsprings(Chromosome{Eigen::VectorXd::Zero(3), std::nullopt}, 3, 1.0, rng);
    EXPECT_NE(kids[0].genes(0), kids[1].genes(0));
    EXPECT_NE(kids[0].genes(0), kids[0].genes(1));
}

TEST(EstimateGt, OscillatingPlateau)
{
    std::vector<double> curve;
    for (int i = 0; i < 50; ++i)
        curve.push_back(-2.0 * i); // steep descent, never 10 dB-flat for long
    for (int i = 0; i < 200; ++i)
        curve.push_back(i % 2 ? -159.0 : -166.0);
    const auto est = estimate_gt(curve, 8);
    EXPECT_DOUBLE_EQ(est.gt, 0.875);
    EXPECT_EQ(est.plateau_start, 50);
    EXPECT_EQ(est.plateau_end, 250);
}

TEST(EstimateGt, FlatPlateau)
{
    const std::vector<double> curve(100, -300.0);
    EXPECT_EQ(estimate_gt(curve, 8).gt, 0.0);
}

TEST(EstimateGt, MonotoneCurveHasNoPlateau)
{
    std::vector<double> curve;
    for (int i = 0; i < 500; ++i)
        curve.push_back(-50.0 + 3.0 * i);
    EXPECT_THROW(estimate_gt(curve, 8), NoPlateauError);
}

TEST(EstimateGt, Errors)
{
    EXPECT_THROW(estimate_gt(std::vector<double>{}, 8), InvalidArgument);
    EXPECT_THROW(estimate_gt(std::vector<double>(100, 1.0), 0), InvalidArgument);
    EXPECT_THROW(estimate_gt(std::vector<double>(10, 1.0), 8), NoPlateauError);
}

TEST(LmsGa, ZeroThresholdIsPureLmsForFir)
{
    const auto task = fir_task(6);
    LmsGaConfig cfg;
    cfg.gradient_threshold = 0.0;
    RngStream rng(1);
    const auto hybrid = lms_ga_run(task.x, task.d, FilterStructure::fir(4), cfg, run_cfg(0.045), rng);
    const auto pure = run_fir_lms(task.x, task.d, 4, run_cfg(0.045));
    EXPECT_EQ(hybrid.trigger_count(), 0);
    ASSERT_EQ(hybrid.iterations(), pure.iterations());
    EXPECT_TRUE(near_all(hybrid.final_weights, pure.final_weights, 0));
    for (std::size_t n = 0; n < pure.curve.size(); ++n)
        ASSERT_EQ(hybrid.curve[n].eps_squared, pure.curve[n].eps_squared);
}

TEST(LmsGa, ZeroThresholdIsPureLmsForIir)
{
    const auto task = iir_task(7);
    LmsGaConfig cfg;
    RngStream rng(1);
    const auto hybrid = lms_ga_run(task.x, task.d, FilterStructure::iir(0, 1), cfg, run_cfg(0.06), rng);
    const auto pure = run_iir_lms(task.x, task.d, 0, 1, run_cfg(0.06));
    EXPECT_EQ(hybrid.trigger_count(), 0);
    EXPECT_TRUE(near_all(hybrid.final_weights, pure.final_weights, 0));
    EXPECT_EQ(hybrid.converged_at, pure.converged_at);
}

TEST(LmsGa, FirHybridRecoversPlant)
{
    const auto task = fir_task(8);
    LmsGaConfig cfg;
    cfg.m = 5;
    cfg.offset_d = 0.02;
    cfg.gamma = 8;
    cfg.gradient_threshold = 2.0;
    RngStream rng(3);
    const auto report = lms_ga_run(task.x, task.d, FilterStructure::fir(4), cfg, run_cfg(0.045), rng);
    EXPECT_GT(report.trigger_count(), 0);
    ASSERT_TRUE(report.converged_at.has_value());
    EXPECT_TRUE(near_all(report.final_weights, kPlant, 1e-4));
}

TEST(LmsGa, TriggerLogShape)
{
    const auto task = fir_task(9, 400);
    LmsGaConfig cfg;
    cfg.gradient_threshold = 1e9; // fire at every check
    auto rc = run_cfg(0.02);
    rc.stop_on_convergence = false;
    rc.max_iterations = 400;
    RngStream rng(4);
    const auto report = lms_ga_run(task.x, task.d, FilterStructure::fir(4), cfg, rc, rng);
    ASSERT_FALSE(report.trigger_events.empty());
    for (const auto& ev : report.trigger_events) {
        EXPECT_EQ((ev.iteration + 1) % cfg.gamma, 0);
        // candidates need t_e samples after the check
        const bool room = ev.iteration + cfg.t_e < 400;
        EXPECT_EQ(ev.triggered, room) << ev.iteration;
        EXPECT_EQ(ev.best_candidate_mse_db.has_value(), room);
    }
}

TEST(LmsGaProperty, SelectionNeverWorseThanParent)
{
    for (std::uint64_t s = 0; s < 5; ++s) {
        const bool recursive = s % 2;
        const auto task = recursive ? iir_task(s, 1500) : fir_task(s, 1500);
        LmsGaConfig cfg;
        cfg.offset_d = 0.1;
        cfg.gradient_threshold = 1e9;
        auto rc = run_cfg(0.01);
        rc.stop_on_convergence = false;
        rc.max_iterations = 1500;
        RngStream rng(s);
        const auto structure = recursive ? FilterStructure::iir(0, 1) : FilterStructure::fir(4);
        const auto report = lms_ga_run(task.x, task.d, structure, cfg, rc, rng);
        for (const auto& ev : report.trigger_events) {
            if (!ev.triggered)
                continue;
            ASSERT_TRUE(ev.parent_mse_db.has_value());
            EXPECT_LE(*ev.best_candidate_mse_db, *ev.parent_mse_db) << "iteration " << ev.iteration;
        }
    }
}

TEST(LmsGaProperty, DeterministicForSameStream)
{
    const auto task = fir_task(10, 2000);
    LmsGaConfig cfg;
    cfg.gradient_threshold = 3.0;
    RngStream r1(77), r2(77);
    const auto a = lms_ga_run(task.x, task.d, FilterStructure::fir(4), cfg, run_cfg(0.02), r1);
    const auto b = lms_ga_run(task.x, task.d, FilterStructure::fir(4), cfg, run_cfg(0.02), r2);
    EXPECT_TRUE(near_all(a.final_weights, b.final_weights, 0));
    EXPECT_EQ(a.trigger_count(), b.trigger_count());
}

TEST(LmsGa, ConfigChecks)
{
    const auto task = fir_task(1, 100);
    RngStream rng(1);
    LmsGaConfig cfg;
    cfg.m = 0;
    EXPECT_THROW(lms_ga_run(task.x, task.d, FilterStructure::fir(4), cfg, run_cfg(0.01), rng), InvalidArgument);
    cfg = {};
    cfg.t_e = 0;
    EXPECT_THROW(lms_ga_run(task.x, task.d, FilterStructure::fir(4), cfg, run_cfg(0.01), rng), InvalidArgument);
    cfg = {};
    EXPECT_THROW(lms_ga_run(task.x, task.d, FilterStructure::fir(0), cfg, run_cfg(0.01), rng), InvalidArgument);
}

TEST(GaBaseline, SeededPlantSurvivesByElitism)
{
    const auto task = fir_task(11, 2000);
    GaConfig cfg;
    cfg.population_size = 10;
    cfg.generations = 20;
    cfg.seeded = {kPlant};
    RngStream rng(5);
    const auto report = ga_baseline_run(task.x, task.d, FilterStructure::fir(4), cfg, rng);
    EXPECT_TRUE(near_all(report.final_weights, kPlant, 0));
    EXPECT_LE(report.curve.back().eps_squared, report.curve.front().eps_squared);
    EXPECT_LE(report.curve.back().eps_squared, 1e-30);
}

TEST(GaBaseline, EliteFitnessNeverDrops)
{
    for (std::uint64_t s = 0; s < 4; ++s) {
        const bool recursive = s % 2;
        const auto task = recursive ? iir_task(s, 2000) : fir_task(s, 2000);
        GaConfig cfg;
        cfg.population_size = 20;
        cfg.generations = 60;
        RngStream rng(s);
        const auto report = ga_baseline_run(task.x, task.d, recursive ? FilterStructure::iir(0, 1) : FilterStructure::fir(4),
                                            cfg, rng);
        ASSERT_EQ(report.curve.size(), 61u);
        for (std::size_t g = 1; g < report.curve.size(); ++g)
            ASSERT_GE(fitness(report.curve[g].eps_squared), fitness(report.curve[g - 1].eps_squared));
    }
}

TEST(GaBaseline, FindsFirPlantAgreeingWithRandomSearch)
{
    const auto task = fir_task(12, 4000);
    GaConfig cfg;
    cfg.population_size = 40;
    cfg.generations = 200;
    RngStream rng(6);
    const auto report = ga_baseline_run(task.x, task.d, FilterStructure::fir(4), cfg, rng);
    EXPECT_LT((report.final_weights - kPlant).cwiseAbs().maxCoeff(), 0.05);

    // independent random search over the same cost: its best point must also
    // sit near the plant, and not beat the GA
    RngStream search(7);
    Eigen::VectorXd best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 20000; ++i) {
        Eigen::VectorXd c(4);
        for (auto& v : c)
            v = search.uniform(-1, 1);
        const double cost = evaluate_mse(c, FilterStructure::fir(4), task.x, task.d, cfg.eval_window);
        if (cost < best_cost) {
            best_cost = cost;
            best = c;
        }
    }
    EXPECT_LT((best - kPlant).cwiseAbs().maxCoeff(), 0.25);
    EXPECT_LE(report.curve.back().eps_squared, best_cost);
}

TEST(GaBaseline, RecursiveGenesStayStable)
{
    const auto task = iir_task(13, 2000);
    GaConfig cfg;
    cfg.population_size = 20;
    cfg.generations = 30;
    cfg.init_range = 3.0;
    RngStream rng(8);
    const auto report = ga_baseline_run(task.x, task.d, FilterStructure::iir(0, 1), cfg, rng);
    EXPECT_LE(std::abs(report.feedback()(0)), 0.99);
}

TEST(GaBaseline, ConfigChecks)
{
    const auto task = fir_task(1, 100);
    RngStream rng(1);
    GaConfig cfg;
    cfg.population_size = 1;
    EXPECT_THROW(ga_baseline_run(task.x, task.d, FilterStructure::fir(4), cfg, rng), InvalidArgument);
    cfg = {};
    cfg.seeded = {vec({1, 2})};
    EXPECT_THROW(ga_baseline_run(task.x, task.d, FilterStructure::fir(4), cfg, rng), InvalidArgument);
}

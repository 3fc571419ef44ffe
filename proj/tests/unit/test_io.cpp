#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "adaptid/config.hpp"
#include "adaptid/csv.hpp"
#include "adaptid/report_io.hpp"
#include "adaptid/rng.hpp"
#include "test_support.hpp"

using namespace adaptid;
using nlohmann::json;

namespace {

json table1_doc()
{
    return json::parse(R"({"method": "lms_fir", "plant": {"b": [0.03, 0.24, 0.54, 0.8]},
                           "mu": 0.045, "orders": {"N": 4}, "seed": 7})");
}

std::string config_error_key(const json& doc)
{
    try {
        parse_experiment_config(doc);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<accepted>";
}

} // namespace

TEST(FormatNumber, RoundTripsExactly)
{
    RngStream rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double v = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform(-300, 300));
        ASSERT_EQ(parse_number(format_number(v)), v);
    }
    for (double v : {0.0, -0.0, 1.0, 0.1, -166.25, 1e-320, 1.7976931348623157e308})
        EXPECT_EQ(parse_number(format_number(v)), v);
    EXPECT_EQ(format_number(0.045), "0.045");
    EXPECT_THROW(parse_number("abc"), InvalidArgument);
    EXPECT_THROW(parse_number("1.5x"), InvalidArgument);
}

TEST(Csv, SignalRoundTrip)
{
    ScratchDir dir;
    RngStream rng(2);
    const Signal x = gen_four_level(100, rng) * 0.3;
    write_signal_csv(dir / "x.csv", x);
    EXPECT_EQ(read_signal_csv(dir / "x.csv"), x);
    EXPECT_EQ(read_csv(dir / "x.csv").header, (std::vector<std::string>{"n", "x"}));
}

TEST(Csv, TapsRoundTrip)
{
    ScratchDir dir;
    write_taps_csv(dir / "h.csv", standard_lpf_8tap());
    EXPECT_EQ(read_taps_csv(dir / "h.csv").coefficients(), standard_lpf_8tap().coefficients());
}

TEST(Csv, CurveRoundTrip)
{
    ScratchDir dir;
    LearningCurve curve{{1.0, 0.0}, {0.25, -3.0103}, {0.0, -400.0}};
    write_curve_csv(dir / "c.csv", curve);
    const auto back = read_curve_csv(dir / "c.csv");
    ASSERT_EQ(back.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(back[i].eps_squared, curve[i].eps_squared);
        EXPECT_EQ(back[i].mse_db_window, curve[i].mse_db_window);
    }
    EXPECT_EQ(read_csv(dir / "c.csv").header, (std::vector<std::string>{"iteration", "eps_squared", "mse_db_window"}));
}

TEST(Csv, TriggerRoundTrip)
{
    ScratchDir dir;
    std::vector<TriggerEvent> events(2);
    events[0] = {7, -0.125, false, std::nullopt, std::nullopt, false};
    events[1] = {15, 0.5, true, -160.5, std::nullopt, true};
    write_trigger_csv(dir / "t.csv", events);
    const auto back = read_trigger_csv(dir / "t.csv");
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].iteration, 7);
    EXPECT_EQ(back[0].delta_e, -0.125);
    EXPECT_FALSE(back[0].triggered);
    EXPECT_FALSE(back[0].best_candidate_mse_db.has_value());
    EXPECT_TRUE(back[1].triggered);
    EXPECT_EQ(*back[1].best_candidate_mse_db, -160.5);
    EXPECT_EQ(read_csv(dir / "t.csv").header,
              (std::vector<std::string>{"iteration", "delta_e", "triggered", "best_candidate_mse_db"}));
}

TEST(Csv, SpectralRoundTrips)
{
    ScratchDir dir;
    const AutocorrSeq<double> r{vec({5, 0.5, -0.25}), 100};
    write_autocorr_csv(dir / "r.csv", r);
    EXPECT_EQ(read_csv(dir / "r.csv").rows.size(), 3u);

    const auto psd = psd_from_autocorr(r, 64);
    write_psd_csv(dir / "psd.csv", psd);
    const auto back = read_psd_csv(dir / "psd.csv");
    EXPECT_EQ(back.omega, psd.omega);
    EXPECT_EQ(back.values, psd.values);

    const Eigen::VectorXd eigs = vec({0.1, 2.5, 7.75});
    write_eigenvalues_csv(dir / "e.csv", eigs);
    EXPECT_EQ(read_eigenvalues_csv(dir / "e.csv"), eigs);
    EXPECT_EQ(read_csv(dir / "e.csv").header, (std::vector<std::string>{"i", "lambda"}));
}

TEST(Csv, CoefficientsColumns)
{
    ScratchDir dir;
    write_coefficients_csv(dir / "ba.csv", vec({0.6, 0.1}), vec({0.2}));
    const auto t = read_csv(dir / "ba.csv");
    EXPECT_EQ(t.header, (std::vector<std::string>{"b", "a"}));
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(parse_number(t.rows[0][1]), 0.2);
    EXPECT_EQ(t.rows[1][1], "");
}

TEST(Csv, MalformedInput)
{
    ScratchDir dir;
    std::ofstream(dir / "bad.csv") << "n,x\n0,1,2\n";
    EXPECT_THROW(read_csv(dir / "bad.csv"), InvalidArgument);
    std::ofstream(dir / "wrong.csv") << "a,b\n0,1\n";
    EXPECT_THROW(read_signal_csv(dir / "wrong.csv"), InvalidArgument);
    EXPECT_THROW(read_csv(dir / "missing.csv"), InvalidArgument);
}

TEST(Config, ParsesTableRow)
{
    const auto cfg = parse_experiment_config(table1_doc());
    EXPECT_EQ(cfg.method, Method::LmsFir);
    EXPECT_EQ(cfg.mu, 0.045);
    EXPECT_EQ(cfg.structure.fir_order, 4);
    EXPECT_EQ(cfg.seed, 7u);
    EXPECT_EQ(cfg.input.samples, 10000);
    EXPECT_FALSE(cfg.input.colored);
    EXPECT_EQ(cfg.threshold_db, -140.0);
}

TEST(Config, RejectsUnknownKeysAtEveryLevel)
{
    json doc = table1_doc();
    doc.erase("mu");
    doc["stepsize"] = 0.045;
    EXPECT_EQ(config_error_key(doc), "stepsize");

    doc = table1_doc();
    doc["plant"]["c"] = json::array();
    EXPECT_EQ(config_error_key(doc), "c");

    doc = table1_doc();
    doc["run"] = {{"holdd", 3}};
    EXPECT_EQ(config_error_key(doc), "holdd");

    doc = table1_doc();
    doc["input"] = {{"colour", true}};
    EXPECT_EQ(config_error_key(doc), "colour");
}

TEST(Config, MissingAndMistypedFields)
{
    json doc = table1_doc();
    doc.erase("mu");
    EXPECT_EQ(config_error_key(doc), "mu");

    doc = table1_doc();
    doc["mu"] = "fast";
    EXPECT_EQ(config_error_key(doc), "mu");

    doc = table1_doc();
    doc["orders"] = {{"N", 2.5}};
    EXPECT_EQ(config_error_key(doc), "N");

    doc = table1_doc();
    doc["method"] = "rls";
    EXPECT_EQ(config_error_key(doc), "method");

    doc = table1_doc();
    doc["method"] = "lms_ga";
    EXPECT_EQ(config_error_key(doc), "lms_ga");

    doc = table1_doc();
    doc["seed"] = -1;
    EXPECT_EQ(config_error_key(doc), "seed");

    EXPECT_EQ(config_error_key(json::array()), "config");
}

TEST(Config, HybridAndColoredFields)
{
    json doc = table1_doc();
    doc["method"] = "lms_ga";
    doc["lms_ga"] = {{"m", 5}, {"D", 0.02}, {"gamma", 8}, {"gt", "auto"}, {"t_e", 8}};
    doc["input"] = {{"kind", "four_level"}, {"colored", true}, {"lpf", "standard8"}};
    auto cfg = parse_experiment_config(doc);
    EXPECT_TRUE(cfg.gt_auto);
    EXPECT_EQ(cfg.lms_ga.m, 5);
    EXPECT_TRUE(cfg.input.colored);

    doc["lms_ga"]["gt"] = 0.5;
    doc["input"]["lpf"] = {0.5, 0.5};
    cfg = parse_experiment_config(doc);
    EXPECT_FALSE(cfg.gt_auto);
    EXPECT_EQ(cfg.lms_ga.gradient_threshold, 0.5);
    EXPECT_EQ(cfg.input.coloring_filter().size(), 2);

    doc["lms_ga"]["gt"] = "fast";
    EXPECT_EQ(config_error_key(doc), "gt");
}

TEST(Config, IirOrders)
{
    json doc = table1_doc();
    doc["method"] = "lms_iir";
    doc["plant"] = {{"b", {0.6}}, {"a", {0.2}}};
    doc["orders"] = {{"M", 0}, {"L", 1}};
    const auto cfg = parse_experiment_config(doc);
    EXPECT_TRUE(cfg.structure.recursive);
    EXPECT_EQ(cfg.structure.feedback_order, 1);

    doc["orders"] = {{"N", 4}, {"L", 1}};
    EXPECT_EQ(config_error_key(doc), "orders");
    doc["orders"] = {{"M", 0}, {"L", 1}};
    doc["plant"]["a"] = {1.5};
    EXPECT_EQ(config_error_key(doc), "plant");
}

TEST(Config, CanonicalFormRoundTrips)
{
    json doc = table1_doc();
    doc["method"] = "lms_ga";
    doc["lms_ga"] = {{"m", 3}, {"D", 0.1}, {"gamma", 4}, {"gt", 0.25}, {"t_e", 16}};
    doc["initial"] = {0.1, 0.2, 0.3, 0.4};
    const auto cfg = parse_experiment_config(doc);
    const json canon = config_to_json(cfg);
    EXPECT_EQ(config_to_json(parse_experiment_config(canon)), canon);
}

TEST(Config, LoadFileAndSeedOverride)
{
    ScratchDir dir;
    std::ofstream(dir / "c.json") << table1_doc().dump();
    EXPECT_EQ(load_experiment_config(dir / "c.json").seed, 7u);
    EXPECT_EQ(load_experiment_config(dir / "c.json", 99).seed, 99u);
    std::ofstream(dir / "broken.json") << "{\"method\": ";
    EXPECT_THROW(load_experiment_config(dir / "broken.json"), ConfigError);
    EXPECT_THROW(load_experiment_config(dir / "absent.json"), ConfigError);
}

TEST(Config, SeedFromEnvironment)
{
    ::unsetenv("ADAPTID_SEED");
    EXPECT_FALSE(seed_from_environment().has_value());
    ::setenv("ADAPTID_SEED", "1234", 1);
    EXPECT_EQ(seed_from_environment(), 1234u);
    ::setenv("ADAPTID_SEED", "12x", 1);
    EXPECT_THROW(seed_from_environment(), ConfigError);
    ::unsetenv("ADAPTID_SEED");
}

TEST(ReportJson, ExactFieldSet)
{
    ExperimentReport r;
    r.curve = {{1.0, 0.0}};
    r.final_weights = vec({0.5, 0.25});
    r.converged_at = 3;
    r.final_mse_db = -150.0;
    r.seed = 11;
    r.config = {{"mu", 0.1}};
    r.trigger_events = {{8, 0.1, true, -100.0, -90.0, true}};
    const json j = report_to_json(r, "run.curve.csv");
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items())
        keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"config", "converged_at", "curve_file", "final_mse_db",
                                              "final_weights", "seed", "trigger_events"}));
    EXPECT_EQ(j["curve_file"], "run.curve.csv");
    EXPECT_EQ(j["final_weights"], json({0.5, 0.25}));
    EXPECT_EQ(j["trigger_events"].size(), 1u);

    r.converged_at.reset();
    EXPECT_TRUE(report_to_json(r, "x").at("converged_at").is_null());
}

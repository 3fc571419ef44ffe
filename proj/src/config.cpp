#include "adaptid/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

namespace adaptid {

using nlohmann::json;

namespace {

/// Strict view over a JSON object: every key must be consumed or named as known.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ConfigError(label() + " must be an object", path_.empty() ? "config" : path_);
    }

    /// Rejects keys outside `known` right away, before any field is read.
    void allow(std::initializer_list<const char*> known)
    {
        std::set<std::string> ok(known.begin(), known.end());
        for (const auto& [key, value] : j_.items())
            if (!ok.count(key))
                throw ConfigError("unknown key '" + key + "'" + (path_.empty() ? "" : " in " + path_), key);
    }

    /// Rejects any key that was never asked for.
    void done() const
    {
        for (const auto& [key, value] : j_.items())
            if (!seen_.count(key))
                throw ConfigError("unknown key '" + key + "'" + (path_.empty() ? "" : " in " + path_), key);
    }

    bool has(const std::string& key)
    {
        seen_.insert(key);
        return j_.contains(key);
    }

    const json& required(const std::string& key)
    {
        if (!has(key))
            throw ConfigError("missing required key '" + key + "'" + (path_.empty() ? "" : " in " + path_), key);
        return j_.at(key);
    }

    double number(const std::string& key)
    {
        const json& v = required(key);
        if (!v.is_number())
            throw ConfigError("'" + key + "' must be a number", key);
        return v.get<double>();
    }

    double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

    std::int64_t integer(const std::string& key)
    {
        const json& v = required(key);
        if (!v.is_number_integer())
            throw ConfigError("'" + key + "' must be an integer", key);
        return v.get<std::int64_t>();
    }

    std::int64_t integer_or(const std::string& key, std::int64_t fallback)
    {
        return has(key) ? integer(key) : fallback;
    }

    bool boolean_or(const std::string& key, bool fallback)
    {
        if (!has(key))
            return fallback;
        const json& v = j_.at(key);
        if (!v.is_boolean())
            throw ConfigError("'" + key + "' must be true or false", key);
        return v.get<bool>();
    }

    std::string string(const std::string& key)
    {
        const json& v = required(key);
        if (!v.is_string())
            throw ConfigError("'" + key + "' must be a string", key);
        return v.get<std::string>();
    }

    std::string child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    std::string label() const { return path_.empty() ? "config" : "'" + path_ + "'"; }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

Eigen::VectorXd vector_from(const json& v, const std::string& key)
{
    if (!v.is_array())
        throw ConfigError("'" + key + "' must be an array of numbers", key);
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number())
            throw ConfigError("'" + key + "' must be an array of numbers", key);
        out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
    }
    return out;
}

json vector_to(const Eigen::VectorXd& v)
{
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back(v(i));
    return a;
}

} // namespace

ExperimentConfig parse_experiment_config(const json& doc)
{
    ExperimentConfig cfg;
    ObjectReader root(doc, "");
    root.allow({"method", "plant", "input", "mu", "orders", "seed", "lms_ga", "ga", "run", "initial"});

    cfg.method = method_from_string(root.string("method"));

    {
        ObjectReader plant(root.required("plant"), "plant");
        plant.allow({"b", "a"});
        cfg.plant.b = vector_from(plant.required("b"), "b");
        cfg.plant.a = plant.has("a") ? vector_from(plant.required("a"), "a") : Eigen::VectorXd();
        plant.done();
    }

    if (root.has("input")) {
        ObjectReader in(root.required("input"), "input");
        in.allow({"kind", "colored", "lpf", "samples", "noise_std"});
        if (in.has("kind") && in.string("kind") != "four_level")
            throw ConfigError("input.kind must be 'four_level'", "kind");
        cfg.input.colored = in.boolean_or("colored", false);
        if (in.has("lpf")) {
            const json& lpf = in.required("lpf");
            if (lpf.is_string()) {
                if (lpf.get<std::string>() != "standard8")
                    throw ConfigError("input.lpf must be 'standard8' or a tap list", "lpf");
            } else {
                try {
                    cfg.input.lpf = FilterTaps(vector_from(lpf, "lpf"));
                } catch (const InvalidArgument& e) {
                    throw ConfigError(e.what(), "lpf");
                }
            }
        }
        cfg.input.samples = in.integer_or("samples", cfg.input.samples);
        cfg.input.noise_std = in.number_or("noise_std", 0.0);
        in.done();
    }

    if (cfg.method != Method::Ga)
        cfg.mu = root.number("mu");
    else if (root.has("mu"))
        cfg.mu = root.number("mu");

    {
        ObjectReader orders(root.required("orders"), "orders");
        orders.allow({"N", "M", "L"});
        const bool fir = orders.has("N");
        const bool iir = orders.has("M") || orders.has("L");
        if (fir == iir)
            throw ConfigError("orders must give either N or both M and L", "orders");
        if (fir)
            cfg.structure = FilterStructure::fir(orders.integer("N"));
        else
            cfg.structure = FilterStructure::iir(orders.integer("M"), orders.integer("L"));
        orders.done();
    }

    if (root.has("seed")) {
        const json& s = root.required("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
            throw ConfigError("'seed' must be a non-negative integer", "seed");
        cfg.seed = s.get<std::uint64_t>();
    }

    if (cfg.method == Method::LmsGa || root.has("lms_ga")) {
        ObjectReader g(root.required("lms_ga"), "lms_ga");
        g.allow({"m", "D", "gamma", "gt", "t_e"});
        cfg.lms_ga.m = g.integer("m");
        cfg.lms_ga.offset_d = g.number("D");
        cfg.lms_ga.gamma = g.integer("gamma");
        cfg.lms_ga.t_e = g.integer("t_e");
        const json& gt = g.required("gt");
        if (gt.is_string()) {
            if (gt.get<std::string>() != "auto")
                throw ConfigError("lms_ga.gt must be a number or 'auto'", "gt");
            cfg.gt_auto = true;
        } else if (gt.is_number()) {
            cfg.lms_ga.gradient_threshold = gt.get<double>();
        } else {
            throw ConfigError("lms_ga.gt must be a number or 'auto'", "gt");
        }
        g.done();
    }

    if (cfg.method == Method::Ga || root.has("ga")) {
        ObjectReader g(root.required("ga"), "ga");
        g.allow({"population", "generations", "tournament_size", "crossover_rate", "mutation_rate",
                 "mutation_width", "init_range", "t_e"});
        cfg.ga.population_size = g.integer("population");
        cfg.ga.generations = g.integer("generations");
        cfg.ga.tournament_size = g.integer_or("tournament_size", cfg.ga.tournament_size);
        cfg.ga.crossover_rate = g.number_or("crossover_rate", cfg.ga.crossover_rate);
        cfg.ga.mutation_rate = g.number_or("mutation_rate", cfg.ga.mutation_rate);
        cfg.ga.mutation_width = g.number_or("mutation_width", cfg.ga.mutation_width);
        cfg.ga.init_range = g.number_or("init_range", cfg.ga.init_range);
        cfg.ga.eval_window = g.integer_or("t_e", cfg.ga.eval_window);
        g.done();
    }

    if (root.has("run")) {
        ObjectReader run(root.required("run"), "run");
        run.allow({"max_iterations", "threshold_db", "hold", "mse_window"});
        cfg.max_iterations = run.integer_or("max_iterations", cfg.max_iterations);
        cfg.threshold_db = run.number_or("threshold_db", cfg.threshold_db);
        cfg.hold = run.integer_or("hold", cfg.hold);
        cfg.mse_window = run.integer_or("mse_window", cfg.mse_window);
        run.done();
    }

    if (root.has("initial"))
        cfg.initial = vector_from(root.required("initial"), "initial");
    root.done();

    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string(), "config");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what(), "config");
    }
    ExperimentConfig cfg = parse_experiment_config(doc);
    if (seed_override)
        cfg.seed = *seed_override;
    return cfg;
}

json config_to_json(const ExperimentConfig& cfg)
{
    json j;
    j["method"] = to_string(cfg.method);
    j["plant"] = {{"b", vector_to(cfg.plant.b)}, {"a", vector_to(cfg.plant.a)}};
    json in = {{"kind", "four_level"},
               {"colored", cfg.input.colored},
               {"samples", cfg.input.samples},
               {"noise_std", cfg.input.noise_std}};
    in["lpf"] = cfg.input.lpf ? vector_to(cfg.input.lpf->coefficients()) : json("standard8");
    j["input"] = in;
    j["mu"] = cfg.mu;
    if (cfg.structure.recursive)
        j["orders"] = {{"M", cfg.structure.feedforward_order}, {"L", cfg.structure.feedback_order}};
    else
        j["orders"] = {{"N", cfg.structure.fir_order}};
    j["seed"] = cfg.seed;
    if (cfg.method == Method::LmsGa) {
        j["lms_ga"] = {{"m", cfg.lms_ga.m},
                       {"D", cfg.lms_ga.offset_d},
                       {"gamma", cfg.lms_ga.gamma},
                       {"t_e", cfg.lms_ga.t_e}};
        j["lms_ga"]["gt"] = cfg.gt_auto ? json("auto") : json(cfg.lms_ga.gradient_threshold);
    }
    if (cfg.method == Method::Ga) {
        j["ga"] = {{"population", cfg.ga.population_size},
                   {"generations", cfg.ga.generations},
                   {"tournament_size", cfg.ga.tournament_size},
                   {"crossover_rate", cfg.ga.crossover_rate},
                   {"mutation_rate", cfg.ga.mutation_rate},
                   {"mutation_width", cfg.ga.mutation_width},
                   {"init_range", cfg.ga.init_range},
                   {"t_e", cfg.ga.eval_window}};
    }
    j["run"] = {{"max_iterations", cfg.max_iterations},
                {"threshold_db", cfg.threshold_db},
                {"hold", cfg.hold},
                {"mse_window", cfg.mse_window}};
    if (cfg.initial)
        j["initial"] = vector_to(*cfg.initial);
    return j;
}

std::optional<std::uint64_t> seed_from_environment()
{
    const char* v = std::getenv("ADAPTID_SEED");
    if (v == nullptr || *v == '\0')
        return std::nullopt;
    try {
        std::size_t pos = 0;
        const std::string s(v);
        if (s.front() == '-')
            throw std::invalid_argument("negative");
        const auto seed = std::stoull(s, &pos, 10);
        if (pos != s.size())
            throw std::invalid_argument("trailing characters");
        return seed;
    } catch (const std::exception&) {
        throw ConfigError("ADAPTID_SEED must be an unsigned integer", "ADAPTID_SEED");
    }
}

} // namespace adaptid

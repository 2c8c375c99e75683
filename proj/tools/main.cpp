#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "soids/harness.hpp"
#include "soids/verify.hpp"

using nlohmann::json;

namespace {

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    return json::parse(in);
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides,
            std::optional<std::uint64_t> seed, std::optional<int> workers,
            const std::string& output_dir, bool verbose) {
    json doc = load_config(config_path);
    for (const auto& assignment : overrides) soids::apply_override(doc, assignment);
    if (seed) doc["seed"] = *seed;
    if (workers) doc["workers"] = *workers;
    if (!output_dir.empty()) doc["output_dir"] = output_dir;
    const soids::ExperimentConfig cfg = soids::config_from_json(doc);
    if (verbose)
        std::cerr << "running " << cfg.dims.size() * cfg.algorithms.size() * cfg.repetitions
                  << " runs into " << cfg.output_dir << "\n";
    const soids::ExperimentResult result = soids::run_experiment(cfg);
    for (const auto& [key, value] : result.final_mean)
        std::cerr << "d=" << key.first << " " << soids::algorithm_to_string(key.second)
                  << " final mean regret " << value << "\n";
    std::cout << result.manifest_path << "\n";
    return 0;
}

int cmd_verify(const std::optional<std::string>& lemma, std::uint64_t seed) {
    const auto reports = soids::run_all_lemmas(seed, lemma);
    json out = json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        out.push_back(soids::report_to_json(r));
        all_pass = all_pass && r.pass;
        std::cerr << (r.pass ? "pass" : "FAIL") << "  " << r.lemma
                  << "  max_violation=" << r.max_violation << " tol=" << r.tolerance << "\n";
    }
    std::cout << out.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

int cmd_plot(const std::vector<std::string>& csvs, const std::string& output) {
    soids::emit_plot(csvs, output);
    std::cout << output << "\n";
    return 0;
}

int cmd_instance(int d, int K, std::uint64_t seed) {
    soids::Rng rng(seed);
    const soids::Instance inst = soids::make_paper_instance(d, K, rng);
    std::cout << soids::instance_to_json(inst).dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse optimistic information directed sampling laboratory"};
    app.require_subcommand(1);

    std::string config_path, output_dir, plot_output = "regret.svg";
    std::vector<std::string> overrides, plot_csvs;
    std::optional<std::uint64_t> seed_opt;
    std::optional<int> workers_opt;
    std::optional<std::string> lemma;
    bool verbose = false;
    std::uint64_t verify_seed = 7;
    int inst_d = 20, inst_K = 200;
    std::uint64_t inst_seed = 1;

    auto* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("--config", config_path, "JSON config path");
    run->add_option("--seed", seed_opt, "master seed override");
    run->add_option("--workers", workers_opt, "concurrent runs");
    run->add_option("--output", output_dir, "output directory override");
    run->add_flag("--verbose", verbose, "progress to stderr");
    run->add_option("overrides", overrides, "dotted-path overrides, e.g. soids.sampler.M=200");

    auto* verify = app.add_subcommand("verify", "run the lemma checkers");
    verify->add_option("--lemma", lemma, "run a single lemma by id");
    verify->add_option("--seed", verify_seed, "checker seed");

    auto* plot = app.add_subcommand("plot", "render aggregate CSVs as an SVG");
    plot->add_option("csvs", plot_csvs, "aggregate CSV files")->required();
    plot->add_option("--output", plot_output, "output SVG path");

    auto* instance = app.add_subcommand("instance", "print a generated instance as JSON");
    instance->add_option("--d", inst_d, "ambient dimension");
    instance->add_option("--K", inst_K, "number of actions");
    instance->add_option("--seed", inst_seed, "instance seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed())
            return cmd_run(config_path, overrides, seed_opt, workers_opt, output_dir, verbose);
        if (verify->parsed()) return cmd_verify(lemma, verify_seed);
        if (plot->parsed()) return cmd_plot(plot_csvs, plot_output);
        if (instance->parsed()) return cmd_instance(inst_d, inst_K, inst_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

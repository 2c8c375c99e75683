#include "soids/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace soids {

namespace fs = std::filesystem;
using nlohmann::json;

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "soids") return Algorithm::soids;
    if (name == "linucb") return Algorithm::linucb;
    if (name == "estc") return Algorithm::estc;
    if (name == "otcs") return Algorithm::otcs;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::string algorithm_to_string(Algorithm algo) {
    switch (algo) {
        case Algorithm::soids: return "soids";
        case Algorithm::linucb: return "linucb";
        case Algorithm::estc: return "estc";
        case Algorithm::otcs: return "otcs";
    }
    throw std::logic_error("unreachable");
}

int ExperimentConfig::t1_for(int d) const {
    auto it = estc_t1.find(d);
    if (it != estc_t1.end()) return it->second;
    return d <= 20 ? 50 : 100;
}

namespace {

SamplerConfig sampler_from_json(const json& j) {
    SamplerConfig cfg;
    cfg.M = j.value("M", cfg.M);
    cfg.burn_in = j.value("burn_in", cfg.burn_in);
    cfg.thin = j.value("thin", cfg.thin);
    cfg.step_size = j.value("step_size", cfg.step_size);
    cfg.target_acceptance = j.value("target_acceptance", cfg.target_acceptance);
    return cfg;
}

json sampler_to_json(const SamplerConfig& cfg) {
    return json{{"M", cfg.M},
                {"burn_in", cfg.burn_in},
                {"thin", cfg.thin},
                {"step_size", cfg.step_size},
                {"target_acceptance", cfg.target_acceptance}};
}

RelaxedPrior prior_from_json(const json& j) {
    RelaxedPrior prior;
    prior.rho1 = j.value("rho1", prior.rho1);
    prior.rho0 = j.value("rho0", prior.rho0);
    prior.beta = j.value("beta", prior.beta);
    return prior;
}

json prior_to_json(const RelaxedPrior& prior) {
    return json{{"rho1", prior.rho1}, {"rho0", prior.rho0}, {"beta", prior.beta}};
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    cfg.dims = j.value("dims", cfg.dims);
    cfg.K = j.value("K", cfg.K);
    cfg.T = j.value("T", cfg.T);
    cfg.repetitions = j.value("repetitions", cfg.repetitions);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.workers = j.value("workers", cfg.workers);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    if (j.contains("algorithms")) {
        cfg.algorithms.clear();
        for (const auto& name : j.at("algorithms"))
            cfg.algorithms.push_back(algorithm_from_string(name.get<std::string>()));
    }
    if (j.contains("soids")) {
        const json& s = j.at("soids");
        if (s.contains("schedule"))
            cfg.soids.schedule = schedule_from_string(s.at("schedule").get<std::string>());
        cfg.soids.eta = s.value("eta", cfg.soids.schedule == Schedule::experimental ? 0.5 : 0.25);
        if (s.contains("sampler")) cfg.soids.sampler = sampler_from_json(s.at("sampler"));
        if (s.contains("prior")) cfg.soids.prior = prior_from_json(s.at("prior"));
    } else {
        cfg.soids = SoidsConfig::defaults_for(Schedule::experimental);
    }
    if (j.contains("linucb")) {
        const json& l = j.at("linucb");
        cfg.linucb.lambda_ridge = l.value("lambda_ridge", cfg.linucb.lambda_ridge);
        cfg.linucb.delta = l.value("delta", cfg.linucb.delta);
        cfg.linucb.S = l.value("S", cfg.linucb.S);
    }
    if (j.contains("otcs")) {
        const json& o = j.at("otcs");
        cfg.otcs.eta = o.value("eta", cfg.otcs.eta);
        if (o.contains("sampler")) cfg.otcs.sampler = sampler_from_json(o.at("sampler"));
        if (o.contains("prior")) cfg.otcs.prior = prior_from_json(o.at("prior"));
        cfg.otcs.radius.lambda_ridge = o.value("lambda_ridge", cfg.otcs.radius.lambda_ridge);
        cfg.otcs.radius.delta = o.value("delta", cfg.otcs.radius.delta);
        cfg.otcs.radius.S = o.value("S", cfg.otcs.radius.S);
        cfg.otcs.radius.scale = o.value("radius_scale", cfg.otcs.radius.scale);
        if (o.contains("radius_fixed")) cfg.otcs.radius.fixed = o.at("radius_fixed").get<double>();
    }
    if (j.contains("estc")) {
        cfg.estc_reg_scale = j.at("estc").value("reg_scale", cfg.estc_reg_scale);
        if (j.at("estc").contains("t1")) {
            cfg.estc_t1.clear();
            for (const auto& [key, value] : j.at("estc").at("t1").items())
                cfg.estc_t1[std::stoi(key)] = value.get<int>();
        }
    }
    if (cfg.repetitions < 1 || cfg.T < 1)
        throw std::invalid_argument("experiment config: repetitions and T must be >= 1");
    return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
    json algos = json::array();
    for (Algorithm a : cfg.algorithms) algos.push_back(algorithm_to_string(a));
    json t1;
    for (const auto& [d, v] : cfg.estc_t1) t1[std::to_string(d)] = v;
    json j{{"dims", cfg.dims},
           {"K", cfg.K},
           {"T", cfg.T},
           {"repetitions", cfg.repetitions},
           {"seed", cfg.seed},
           {"workers", cfg.workers},
           {"output_dir", cfg.output_dir},
           {"algorithms", algos},
           {"soids",
            {{"eta", cfg.soids.eta},
             {"schedule", schedule_to_string(cfg.soids.schedule)},
             {"sampler", sampler_to_json(cfg.soids.sampler)},
             {"prior", prior_to_json(cfg.soids.prior)}}},
           {"linucb",
            {{"lambda_ridge", cfg.linucb.lambda_ridge},
             {"delta", cfg.linucb.delta},
             {"S", cfg.linucb.S}}},
           {"otcs",
            {{"eta", cfg.otcs.eta},
             {"sampler", sampler_to_json(cfg.otcs.sampler)},
             {"prior", prior_to_json(cfg.otcs.prior)},
             {"lambda_ridge", cfg.otcs.radius.lambda_ridge},
             {"delta", cfg.otcs.radius.delta},
             {"S", cfg.otcs.radius.S},
             {"radius_scale", cfg.otcs.radius.scale}}},
           {"estc", {{"t1", t1}, {"reg_scale", cfg.estc_reg_scale}}}};
    if (cfg.otcs.radius.fixed) j["otcs"]["radius_fixed"] = *cfg.otcs.radius.fixed;
    return j;
}

void apply_override(json& j, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("override must look like path.to.key=value: " + assignment);
    std::string path = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    for (auto& c : path)
        if (c == '.') c = '/';
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value;  // plain string
    }
    j[json::json_pointer("/" + path)] = parsed;
}

std::uint64_t derive_seed(std::uint64_t master, int d_index, int algo_index, int repetition) {
    const std::uint64_t packed = (static_cast<std::uint64_t>(d_index & 0xFFFF) << 40) |
                                 (static_cast<std::uint64_t>(algo_index & 0xFF) << 32) |
                                 static_cast<std::uint32_t>(repetition);
    return mix64(mix64(master) ^ packed);
}

void aggregate_traces(const std::vector<std::vector<double>>& cumulative,
                      std::vector<double>& mean, std::vector<double>& std_dev) {
    const std::size_t n = cumulative.size();
    if (n == 0) throw std::invalid_argument("aggregate_traces: no runs");
    const std::size_t T = cumulative.front().size();
    for (const auto& run : cumulative)
        if (run.size() != T) throw std::invalid_argument("aggregate_traces: ragged traces");
    mean.assign(T, 0.0);
    std_dev.assign(T, 0.0);
    for (std::size_t t = 0; t < T; ++t) {
        double sum = 0.0;
        for (const auto& run : cumulative) sum += run[t];
        mean[t] = sum / static_cast<double>(n);
        if (n > 1) {
            double ss = 0.0;
            for (const auto& run : cumulative) {
                const double d = run[t] - mean[t];
                ss += d * d;
            }
            std_dev[t] = std::sqrt(ss / static_cast<double>(n - 1));
        }
    }
}

namespace {

struct RunJob {
    int d_index;
    int d;
    Algorithm algorithm;
    int repetition;
    std::uint64_t seed;
};

RegretTrace execute(const RunJob& job, const Instance& inst, const ExperimentConfig& cfg) {
    switch (job.algorithm) {
        case Algorithm::soids:
            return run_soids(inst, cfg.T, cfg.soids, job.seed).trace;
        case Algorithm::linucb: {
            Rng rng(job.seed);
            return linucb_run(inst, cfg.T, cfg.linucb, rng);
        }
        case Algorithm::estc: {
            Rng rng(job.seed);
            return estc_run(inst, cfg.T, std::min(cfg.T, cfg.t1_for(job.d)), rng);
        }
        case Algorithm::otcs: {
            Rng rng(job.seed);
            return otcs_run(inst, cfg.T, cfg.otcs, rng);
        }
    }
    throw std::logic_error("unreachable");
}

void write_run_csv(const std::string& path, const RegretTrace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "round,gap,cumulative_regret\n";
    for (std::size_t t = 0; t < trace.gaps.size(); ++t)
        out << (t + 1) << ',' << format_double(trace.gaps[t]) << ','
            << format_double(trace.cumulative[t]) << '\n';
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    fs::create_directories(cfg.output_dir);
    {
        std::ofstream probe(fs::path(cfg.output_dir) / ".write_probe");
        if (!probe) throw std::runtime_error("output dir not writable: " + cfg.output_dir);
    }
    fs::remove(fs::path(cfg.output_dir) / ".write_probe");

    const std::string started = std::to_string(std::time(nullptr));

    // One instance per d, shared across algorithms and repetitions.
    std::vector<Instance> instances;
    for (std::size_t i = 0; i < cfg.dims.size(); ++i) {
        Rng rng(derive_seed(cfg.seed, static_cast<int>(i), 0xFF, 0));
        instances.push_back(make_paper_instance(cfg.dims[i], cfg.K, rng));
    }

    std::vector<RunJob> jobs;
    for (std::size_t i = 0; i < cfg.dims.size(); ++i)
        for (Algorithm algo : cfg.algorithms)
            for (int rep = 0; rep < cfg.repetitions; ++rep)
                jobs.push_back({static_cast<int>(i), cfg.dims[i], algo, rep,
                                derive_seed(cfg.seed, static_cast<int>(i),
                                            static_cast<int>(algo), rep)});

    std::vector<RegretTrace> traces(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= jobs.size()) return;
            try {
                traces[idx] = execute(jobs[idx], instances[static_cast<std::size_t>(
                                                     jobs[idx].d_index)], cfg);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    const int n_threads = std::max(1, cfg.workers);
    std::vector<std::thread> pool;
    for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    ExperimentResult result;
    json manifest_runs = json::array();
    for (std::size_t idx = 0; idx < jobs.size(); ++idx) {
        const RunJob& job = jobs[idx];
        char name[128];
        std::snprintf(name, sizeof(name), "run_d%d_%s_rep%d.csv", job.d,
                      algorithm_to_string(job.algorithm).c_str(), job.repetition);
        const std::string path = (fs::path(cfg.output_dir) / name).string();
        write_run_csv(path, traces[idx]);
        result.runs.push_back({job.d, job.algorithm, job.repetition,
                               traces[idx].cumulative.back(), path});
        manifest_runs.push_back({{"d", job.d},
                                 {"algorithm", algorithm_to_string(job.algorithm)},
                                 {"repetition", job.repetition},
                                 {"seed", job.seed},
                                 {"csv", path}});
    }

    for (std::size_t i = 0; i < cfg.dims.size(); ++i) {
        for (Algorithm algo : cfg.algorithms) {
            std::vector<std::vector<double>> cumulative;
            for (std::size_t idx = 0; idx < jobs.size(); ++idx)
                if (jobs[idx].d_index == static_cast<int>(i) && jobs[idx].algorithm == algo)
                    cumulative.push_back(traces[idx].cumulative);
            std::vector<double> mean, std_dev;
            aggregate_traces(cumulative, mean, std_dev);
            char name[128];
            std::snprintf(name, sizeof(name), "agg_d%d_%s.csv", cfg.dims[i],
                          algorithm_to_string(algo).c_str());
            const std::string path = (fs::path(cfg.output_dir) / name).string();
            std::ofstream out(path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + path);
            out << "round,mean,std\n";
            for (std::size_t t = 0; t < mean.size(); ++t)
                out << (t + 1) << ',' << format_double(mean[t]) << ','
                    << format_double(std_dev[t]) << '\n';
            result.aggregate_csvs.push_back(path);
            result.final_mean[{cfg.dims[i], algo}] = mean.back();
        }
    }

    json manifest{{"config", config_to_json(cfg)},
                  {"config_hash", fnv1a(config_to_json(cfg).dump())},
                  {"version", "0.1.0"},
                  {"started", started},
                  {"finished", std::to_string(std::time(nullptr))},
                  {"runs", manifest_runs}};
    result.manifest_path = (fs::path(cfg.output_dir) / "manifest.json").string();
    std::ofstream mout(result.manifest_path, std::ios::binary);
    mout << manifest.dump(2) << '\n';
    return result;
}

namespace {

struct Series {
    int d = 0;
    std::string algorithm;
    std::vector<double> rounds, mean, std_dev;
};

Series parse_aggregate_csv(const std::string& path) {
    Series series;
    // d and algorithm ride on the file name: agg_d<dim>_<algo>.csv
    const std::string stem = fs::path(path).stem().string();
    if (stem.rfind("agg_d", 0) == 0) {
        const auto underscore = stem.find('_', 5);
        if (underscore != std::string::npos) {
            series.d = std::atoi(stem.substr(5, underscore - 5).c_str());
            series.algorithm = stem.substr(underscore + 1);
        }
    }
    if (series.algorithm.empty())
        throw std::runtime_error("aggregate csv name must look like agg_d<dim>_<algo>.csv: " +
                                 path);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (row == 1) {
            if (line != "round,mean,std")
                throw std::runtime_error(path + ": bad header at row 1");
            continue;
        }
        if (line.empty()) continue;
        double r, m, s;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &r, &m, &s) != 3)
            throw std::runtime_error(path + ": parse error at row " + std::to_string(row));
        series.rounds.push_back(r);
        series.mean.push_back(m);
        series.std_dev.push_back(s);
    }
    if (series.rounds.empty()) throw std::runtime_error(path + ": no data rows");
    return series;
}

const char* color_for(const std::string& algorithm) {
    if (algorithm == "soids") return "#1f77b4";
    if (algorithm == "linucb") return "#ff7f0e";
    if (algorithm == "estc") return "#2ca02c";
    if (algorithm == "otcs") return "#d62728";
    return "#7f7f7f";
}

}  // namespace

void emit_plot(const std::vector<std::string>& aggregate_csvs, const std::string& output_path) {
    if (aggregate_csvs.empty()) throw std::invalid_argument("emit_plot: no input csvs");
    std::vector<Series> series;
    for (const auto& path : aggregate_csvs) series.push_back(parse_aggregate_csv(path));

    std::vector<int> dims;
    for (const auto& s : series)
        if (std::find(dims.begin(), dims.end(), s.d) == dims.end()) dims.push_back(s.d);
    std::sort(dims.begin(), dims.end());

    const double panel_w = 360, panel_h = 300, margin = 48;
    const double width = dims.size() * panel_w, height = panel_h;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";

    for (std::size_t p = 0; p < dims.size(); ++p) {
        const int d = dims[p];
        const double x0 = p * panel_w + margin, y0 = height - margin;
        const double plot_w = panel_w - margin - 16, plot_h = panel_h - 2 * margin;

        double max_round = 1, max_y = 1e-9;
        for (const auto& s : series) {
            if (s.d != d) continue;
            max_round = std::max(max_round, s.rounds.back());
            for (std::size_t t = 0; t < s.mean.size(); ++t)
                max_y = std::max(max_y, s.mean[t] + s.std_dev[t]);
        }
        auto px = [&](double r) { return x0 + r / max_round * plot_w; };
        auto py = [&](double v) { return y0 - v / max_y * plot_h; };

        svg << "<g data-panel-d=\"" << d << "\">\n";
        svg << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 + plot_w
            << "\" y2=\"" << y0 << "\" stroke=\"black\"/>\n";
        svg << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\""
            << y0 - plot_h << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << x0 + plot_w / 2 << "\" y=\"" << y0 + 30
            << "\" text-anchor=\"middle\">round</text>\n";
        svg << "<text x=\"" << x0 - 34 << "\" y=\"" << y0 - plot_h / 2
            << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << x0 - 34 << ' '
            << y0 - plot_h / 2 << ")\">cumulative regret</text>\n";
        svg << "<text x=\"" << x0 + plot_w / 2 << "\" y=\"" << y0 - plot_h - 8
            << "\" text-anchor=\"middle\">d = " << d << "</text>\n";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6g", max_y);
        svg << "<text x=\"" << x0 - 4 << "\" y=\"" << y0 - plot_h + 4
            << "\" text-anchor=\"end\">" << buf << "</text>\n";
        std::snprintf(buf, sizeof(buf), "%.6g", max_round);
        svg << "<text x=\"" << x0 + plot_w << "\" y=\"" << y0 + 14
            << "\" text-anchor=\"middle\">" << buf << "</text>\n";

        int legend_slot = 0;
        for (const auto& s : series) {
            if (s.d != d) continue;
            const char* color = color_for(s.algorithm);
            // +-1 std band: upper edge forward, lower edge back.
            std::ostringstream band;
            for (std::size_t t = 0; t < s.mean.size(); ++t)
                band << (t ? " L" : "M") << px(s.rounds[t]) << ' '
                     << py(s.mean[t] + s.std_dev[t]);
            for (std::size_t t = s.mean.size(); t-- > 0;)
                band << " L" << px(s.rounds[t]) << ' '
                     << py(std::max(0.0, s.mean[t] - s.std_dev[t]));
            svg << "<path d=\"" << band.str() << " Z\" fill=\"" << color
                << "\" opacity=\"0.15\" stroke=\"none\"/>\n";

            std::ostringstream points, data;
            for (std::size_t t = 0; t < s.mean.size(); ++t) {
                points << px(s.rounds[t]) << ',' << py(s.mean[t]) << ' ';
                data << (t ? " " : "") << format_double(s.mean[t]);
            }
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
                << " data-d=\"" << d << "\" data-algorithm=\"" << s.algorithm << "\""
                << " data-final-mean=\"" << format_double(s.mean.back()) << "\""
                << " data-points=\"" << data.str() << "\" points=\"" << points.str()
                << "\"/>\n";

            const double ly = y0 - plot_h + 14 + 14 * legend_slot++;
            svg << "<line x1=\"" << x0 + 8 << "\" y1=\"" << ly << "\" x2=\"" << x0 + 28
                << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
            svg << "<text x=\"" << x0 + 32 << "\" y=\"" << ly + 4 << "\">" << s.algorithm
                << "</text>\n";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";

    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + output_path);
    out << svg.str();
}

}  // namespace soids

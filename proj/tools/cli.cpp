#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>

#include "ephemera/experiment.hpp"
#include "ephemera/plot.hpp"

namespace ephemera::cli {
namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void print_scenarios(std::ostream& out) {
    out << "name  robots(I,M,R,G,Y,B)  targets/color  memory_duration  memory_size  learning  iterations  trials\n";
    for (const auto& s : builtin_scenarios()) {
        std::string robots;
        for (std::size_t i = 0; i < s.robot_counts.size(); ++i) {
            robots += (i ? "," : "") + std::to_string(s.robot_counts[i]);
        }
        out << s.name << "  " << robots << "  " << s.targets_per_color << "  " << s.memory_duration << "  "
            << s.memory_size.to_string() << "  " << (s.learning_enabled ? "on" : "off") << "  " << s.max_iterations
            << "  " << s.trials << '\n';
    }
}

struct RunArgs {
    std::string scenario;
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::vector<std::string> settings;
    unsigned threads = 0;
    bool events = false;
};

struct PlotArgs {
    std::string metric = "knowledge";
    std::string out = "plot.svg";
    std::string title;
    std::vector<std::string> inputs;
};

ScenarioConfig resolve_config(const RunArgs& a) {
    ScenarioConfig config;
    if (!a.scenario.empty()) {
        auto found = find_scenario(a.scenario);
        if (!found) throw UsageError("unknown scenario '" + a.scenario + "' (see `ephemera list`)");
        config = *found;
    } else {
        config = load_config(a.config_path);
    }
    for (const auto& kv : a.settings) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + kv + "'");
        try {
            apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw UsageError(std::string("--set ") + kv + ": " + e.what());
        }
    }
    if (a.seed) config.base_seed = *a.seed;
    if (a.trials) config.trials = *a.trials;
    try {
        config.validate();
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    return config;
}

int do_run(const RunArgs& a, std::ostream& out) {
    const auto config = resolve_config(a);
    std::filesystem::path dir = a.out_dir;
    if (dir.empty()) {
        const char* env = std::getenv("EPHEMERA_OUT");
        dir = env != nullptr && *env != '\0' ? env : "results";
    }
    const auto result = run_scenario(config, dir, RunOptions{a.threads, a.events});
    const auto& last = result.aggregate.back();
    out << config.name << ": " << config.trials << " trials, t=" << last.t
        << " mean captured=" << format_fixed4(last.mean_captured) << " [" << last.min_captured << ","
        << last.max_captured << "] mean knowledge=" << format_fixed4(last.mean_knowledge) << "%\n";
    for (const auto& f : result.files) out << "wrote " << f.string() << '\n';
    return kOk;
}

int do_plot(const PlotArgs& a, std::ostream& out) {
    if (a.inputs.empty()) throw UsageError("plot needs at least one aggregate CSV");
    const bool knowledge = a.metric == "knowledge";
    std::vector<PlotSeries> series;
    for (const auto& input : a.inputs) {
        PlotSeries s;
        s.name = std::filesystem::path(input).stem().string();
        for (const auto& row : read_aggregate_csv(input)) {
            s.points.emplace_back(static_cast<double>(row.t), knowledge ? row.mean_knowledge : row.mean_captured);
        }
        if (s.points.empty()) throw std::runtime_error(input + ": no data rows");
        series.push_back(std::move(s));
    }
    PlotLabels labels;
    labels.title = !a.title.empty() ? a.title : knowledge ? "Group knowledge over time" : "Targets captured over time";
    labels.y_label = knowledge ? "knowledge (%)" : "targets captured (mean)";
    render_plot(series, labels, a.out);
    out << "wrote " << a.out << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ephemeral knowledge-sharing foraging simulator", "ephemera"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List builtin scenarios");

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario and write per-trial and aggregate CSVs");
    auto* scenario_opt = run_cmd->add_option("--scenario", run_args.scenario, "Builtin scenario name");
    auto* config_opt = run_cmd->add_option("--config", run_args.config_path, "Scenario config file (key=value)");
    scenario_opt->excludes(config_opt);
    run_cmd->add_option("--out", run_args.out_dir, "Output directory (default: $EPHEMERA_OUT or ./results)");
    run_cmd->add_option("--seed", run_args.seed, "Override base_seed");
    run_cmd->add_option("--trials", run_args.trials, "Override trial count")->check(CLI::PositiveNumber);
    run_cmd->add_option("--set", run_args.settings, "Override any config key (key=value), repeatable");
    run_cmd->add_option("--threads", run_args.threads, "Worker threads (0 = hardware concurrency)");
    run_cmd->add_flag("--events", run_args.events, "Also write per-trial event logs");

    PlotArgs plot_args;
    auto* plot_cmd = app.add_subcommand("plot", "Plot mean curves from aggregate CSVs as SVG");
    plot_cmd->add_option("--metric", plot_args.metric, "knowledge | targets")
        ->check(CLI::IsMember({"knowledge", "targets"}));
    plot_cmd->add_option("--out", plot_args.out, "Output SVG path");
    plot_cmd->add_option("--title", plot_args.title, "Chart title");
    plot_cmd->add_option("inputs", plot_args.inputs, "Aggregate CSV files");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (run_cmd->parsed() && run_args.scenario.empty() && run_args.config_path.empty()) {
            throw UsageError("run requires --scenario or --config");
        }
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "ephemera: " << e.what() << '\n' << app.help();
        return kUsage;
    } catch (const UsageError& e) {
        err << "ephemera: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (list->parsed()) {
            print_scenarios(out);
            return kOk;
        }
        if (run_cmd->parsed()) return do_run(run_args, out);
        return do_plot(plot_args, out);
    } catch (const UsageError& e) {
        err << "ephemera: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "ephemera: " << e.what() << '\n';
        return kRuntime;
    }
}

}  // namespace ephemera::cli

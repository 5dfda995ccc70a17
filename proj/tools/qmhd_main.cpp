#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"

#include "qmhd/config.hpp"
#include "qmhd/runner.hpp"

namespace {

void print_presets() {
    std::printf("%-18s %-11s %-9s %-8s %-7s %12s %10s\n", "name", "geometry", "grid",
                "Ha", "field", "ref psi_min", "ref steps");
    for (const auto& p : qmhd::presets()) {
        const auto& c = p.config;
        char grid[16];
        std::snprintf(grid, sizeof grid, "%dx%d", c.n1, c.n2);
        std::printf("%-18s %-11s %-9s %-8g %-7s %12g %10ld\n", p.name.c_str(),
                    qmhd::to_string(c.geometry).c_str(), grid, c.phys.Ha,
                    qmhd::to_string(c.variant).c_str(), p.expected_psi_min,
                    p.expected_steps);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermocapillary melt convection under a static magnetic field"};

    std::string config_path, preset_name, output_dir;
    long max_steps = -1, snapshot_every = -1;
    int threads = 0;
    bool overwrite = false, list_presets = false;

    app.add_option("--config", config_path, "case file (key = value lines)");
    app.add_option("--preset", preset_name, "named benchmark case (see --list-presets)");
    app.add_option("--output", output_dir, "output directory");
    app.add_option("--max-steps", max_steps, "cap on time steps");
    app.add_option("--snapshot-every", snapshot_every, "progress line interval");
    app.add_option("--threads", threads, "worker threads (or QMHD_THREADS)");
    app.add_flag("--overwrite", overwrite, "reuse an existing output directory");
    app.add_flag("--list-presets", list_presets, "print the preset table and exit");

    CLI11_PARSE(app, argc, argv);

    if (list_presets) {
        print_presets();
        return qmhd::exit_ok;
    }

    qmhd::CaseConfig cfg;
    try {
        if (!config_path.empty())
            cfg = qmhd::parse_config_file(config_path);
        else if (!preset_name.empty())
            cfg = qmhd::expand_preset(preset_name);
        else {
            std::fprintf(stderr, "config error: pass --config FILE or --preset NAME\n");
            return qmhd::exit_config_error;
        }

        // flags override file/preset values
        if (!preset_name.empty() && !config_path.empty() && preset_name != cfg.preset_name) {
            std::fprintf(stderr, "config error: --preset conflicts with the config file\n");
            return qmhd::exit_config_error;
        }
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        if (max_steps >= 0) cfg.max_steps = max_steps;
        if (snapshot_every >= 0) cfg.snapshot_every = snapshot_every;
        if (overwrite) cfg.overwrite = true;
        if (threads > 0)
            cfg.threads = threads;
        else if (const char* env = std::getenv("QMHD_THREADS"))
            cfg.threads = std::atoi(env);

        if (cfg.output_dir.empty())
            cfg.output_dir = "runs/" + (cfg.preset_name.empty() ? std::string("case")
                                                                : cfg.preset_name);
        cfg.validate();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return qmhd::exit_config_error;
    }

    return qmhd::run_case(cfg);
}

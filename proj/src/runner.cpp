#include "qmhd/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>

#include "qmhd/integrator.hpp"
#include "qmhd/operators.hpp"
#include "qmhd/postprocess.hpp"

namespace qmhd {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// explicit-diffusion stability estimate; the fastest diffusive process is
// heat at Pr << 1 (diffusivity 1/Pr), the viscous one has diffusivity 2
double diffusive_stability_number(const CaseConfig& cfg) {
    const Grid g = cfg.make_grid();
    const double kappa = std::max(1.0 / cfg.phys.Pr, 2.0);
    return cfg.phys.dt * kappa * (2.0 / (g.h1 * g.h1) + 2.0 / (g.h2 * g.h2));
}

} // namespace

int run_case(const CaseConfig& cfg) {
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config_error;
    }
    if (cfg.output_dir.empty()) {
        std::fprintf(stderr, "config error: output directory not set\n");
        return exit_config_error;
    }

    namespace fs = std::filesystem;
    const fs::path dir(cfg.output_dir);
    std::error_code ec;
    if (fs::exists(dir, ec)) {
        if (!fs::is_directory(dir, ec)) {
            std::fprintf(stderr, "i/o error: %s exists and is not a directory\n",
                         cfg.output_dir.c_str());
            return exit_io_error;
        }
        if (!cfg.overwrite) {
            std::fprintf(stderr,
                         "i/o error: output directory %s exists (pass overwrite to reuse)\n",
                         cfg.output_dir.c_str());
            return exit_io_error;
        }
    } else {
        fs::create_directories(dir, ec);
        if (ec) {
            std::fprintf(stderr, "i/o error: cannot create %s: %s\n",
                         cfg.output_dir.c_str(), ec.message().c_str());
            return exit_io_error;
        }
    }

    const std::string hist_path = (dir / "history.tsv").string();
    FilePtr hist(std::fopen(hist_path.c_str(), "w"));
    if (!hist) {
        std::fprintf(stderr, "i/o error: cannot write %s\n", hist_path.c_str());
        return exit_io_error;
    }
    std::fputs("# step\tresidual\tpsi_min\n", hist.get());

    const std::string label = cfg.preset_name.empty() ? "case" : cfg.preset_name;
    std::fprintf(stderr, "[%s] %s %dx%d Ha=%g variant=%s dt=%g eps=%g\n", label.c_str(),
                 to_string(cfg.geometry).c_str(), cfg.n1, cfg.n2, cfg.phys.Ha,
                 to_string(cfg.variant).c_str(), cfg.phys.dt, cfg.phys.eps_steady);
    std::fprintf(stderr, "[%s] advisory diffusive stability number %.3f (explicit limit ~1)\n",
                 label.c_str(), diffusive_stability_number(cfg));

    const long print_every = std::max<long>(1, cfg.snapshot_every);
    auto progress = [&](const HistorySample& h) {
        std::fprintf(hist.get(), "%ld\t%.17g\t%.17g\n", h.step, h.residual, h.psi_min);
        if (h.step % print_every == 0)
            std::fprintf(stderr, "[%s] step %ld residual %.6e psi_min %.6f\n",
                         label.c_str(), h.step, h.residual, h.psi_min);
    };

    SteadyResult result;
    try {
        result = run_to_steady(cfg, progress);
    } catch (const BlowupError& e) {
        std::fprintf(stderr, "blow-up: %s\n", e.what());
        FilePtr sum(std::fopen((dir / "summary.txt").string().c_str(), "w"));
        if (sum) {
            std::fprintf(sum.get(), "status = blow-up\nmessage = %s\n", e.what());
            std::fprintf(sum.get(), "step = %ld\nnode_i = %d\nnode_j = %d\nfield = %s\n",
                         e.step, e.i, e.j, e.field.c_str());
        }
        return exit_blowup;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config_error;
    }
    hist.reset();  // flush before the dumps

    const VectorField w = compute_w(result.state, cfg.phys, cfg.variant);
    const PsiField psi = stream_function(result.state, w);
    try {
        export_fields(result.state, psi.psi, cfg, (dir / "fields.tsv").string());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return exit_io_error;
    }

    {
        FilePtr fp(std::fopen((dir / "psi.tsv").string().c_str(), "w"));
        if (!fp) {
            std::fprintf(stderr, "i/o error: cannot write psi.tsv\n");
            return exit_io_error;
        }
        const Grid& g = result.state.grid();
        std::fputs("# i\tj\tx1\tx2\tpsi\n", fp.get());
        for (int j = 0; j < g.n2; ++j)
            for (int i = 0; i < g.n1; ++i)
                std::fprintf(fp.get(), "%d\t%d\t%.17g\t%.17g\t%.17g\n", i, j, g.x1(i),
                             g.x2(j), psi.psi(i, j));
    }

    {
        FilePtr fp(std::fopen((dir / "summary.txt").string().c_str(), "w"));
        if (!fp) {
            std::fprintf(stderr, "i/o error: cannot write summary.txt\n");
            return exit_io_error;
        }
        std::fprintf(fp.get(), "status = %s\n", result.converged ? "converged" : "not-converged");
        if (!cfg.preset_name.empty())
            std::fprintf(fp.get(), "preset = %s\n", cfg.preset_name.c_str());
        std::fprintf(fp.get(), "steps = %ld\n", result.steps);
        std::fprintf(fp.get(), "residual = %.17g\n", result.residual);
        std::fprintf(fp.get(), "wall_seconds = %.3f\n", result.wall_seconds);
        std::fprintf(fp.get(), "psi_min = %.17g\n", psi.min_value);
        std::fprintf(fp.get(), "psi_min_node = %d %d\n", psi.min_i, psi.min_j);
        std::fprintf(fp.get(), "psi_path_gap = %.17g\n", psi.path_gap);
        std::fprintf(fp.get(), "vortex_count = %d\n", count_vortices(psi.psi));
        if (cfg.expected_psi_min) {
            const double ref = *cfg.expected_psi_min;
            std::fprintf(fp.get(), "reference_psi_min = %.17g\n", ref);
            std::fprintf(fp.get(), "deviation_percent = %.3f\n",
                         100.0 * (psi.min_value - ref) / ref);
        }
        if (cfg.expected_steps) {
            std::fprintf(fp.get(), "reference_steps = %ld\n", *cfg.expected_steps);
            std::fprintf(fp.get(), "step_ratio = %.3f\n",
                         static_cast<double>(result.steps) /
                             static_cast<double>(*cfg.expected_steps));
        }
    }

    std::fprintf(stderr, "[%s] %s after %ld steps: psi_min %.6f (%.1f s)\n", label.c_str(),
                 result.converged ? "converged" : "stopped", result.steps, psi.min_value,
                 result.wall_seconds);
    return result.converged ? exit_ok : exit_not_converged;
}

} // namespace qmhd

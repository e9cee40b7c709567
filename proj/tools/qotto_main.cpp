// qotto: command-line front end for the quantum Otto cycle library.
//
//   qotto cycle    --config cfg.txt
//   qotto sweep    --config cfg.txt --param epsilon_h --from 0.5 --to 4
//                  --steps 30 --variants weak:adiabatic:instantaneous,...
//                  --out sweep.csv [--threads N] [--allow-unconverged]
//   qotto converge --config cfg.txt --n-max 50 [--out conv.csv]
//                  [--allow-unconverged]
//
// Exit status: 0 success, 1 config error, 2 numerical failure,
// 3 unconverged truncation without --allow-unconverged.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "qotto.h"

namespace {

int report(qotto_status status) {
    if (status != QOTTO_OK) {
        std::fprintf(stderr, "qotto: %s\n", qotto_last_error());
    }
    return static_cast<int>(status);
}

struct ConfigHandle {
    qotto_config* cfg{nullptr};
    ~ConfigHandle() { qotto_config_free(cfg); }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Otto cycle evaluation, sweeps, and truncation studies"};
    app.require_subcommand(1);

    std::string config_path;
    std::string param;
    std::string variants = "rc-strong:adiabatic:instantaneous";
    std::string out_path;
    double from = 0.0;
    double to = 0.0;
    int steps = 2;
    int n_max = 0;
    int threads = 0;
    bool allow_unconverged = false;

    CLI::App* cmd_cycle = app.add_subcommand("cycle", "evaluate a single cycle");
    cmd_cycle->add_option("--config", config_path, "config file")->required();
    cmd_cycle->add_flag("--allow-unconverged", allow_unconverged,
                        "exit 0 even if the truncation check fails");

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "1-D parameter sweep to CSV");
    cmd_sweep->add_option("--config", config_path, "config file")->required();
    cmd_sweep->add_option("--param", param, "epsilon_h | delta_h | alpha | beta_c")
        ->required();
    cmd_sweep->add_option("--from", from, "first grid value")->required();
    cmd_sweep->add_option("--to", to, "last grid value")->required();
    cmd_sweep->add_option("--steps", steps, "grid points (>= 2)")->required();
    cmd_sweep->add_option("--variants", variants,
                          "comma-separated coupling:stroke:decoupling triples");
    cmd_sweep->add_option("--out", out_path, "output CSV path")->required();
    cmd_sweep->add_option("--threads", threads, "worker threads (0 = auto)");
    cmd_sweep->add_flag("--allow-unconverged", allow_unconverged,
                        "exit 0 even if rows fail the truncation check");

    CLI::App* cmd_converge =
        app.add_subcommand("converge", "truncation convergence study to CSV");
    cmd_converge->add_option("--config", config_path, "config file")->required();
    cmd_converge->add_option("--n-max", n_max, "largest truncation to test")
        ->required();
    cmd_converge->add_option("--out", out_path, "output CSV path (default stdout)");
    cmd_converge->add_flag("--allow-unconverged", allow_unconverged,
                           "exit 0 even if the study does not converge");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    ConfigHandle config;
    if (int rc = report(qotto_config_load(config_path.c_str(), &config.cfg))) {
        return rc;
    }

    if (cmd_cycle->parsed()) {
        qotto_cycle_result result{};
        if (int rc = report(qotto_cycle_run(config.cfg, &result))) return rc;
        char* row = nullptr;
        if (int rc = report(qotto_cycle_csv_row(config.cfg, &row))) return rc;
        std::printf("%s\n%s\n", qotto_csv_header(), row);
        qotto_string_free(row);
        if (!result.converged && !allow_unconverged) {
            std::fprintf(stderr, "qotto: cycle failed the truncation convergence check\n");
            return QOTTO_ERR_UNCONVERGED;
        }
        return 0;
    }
    if (cmd_sweep->parsed()) {
        return report(qotto_sweep_run(config.cfg, param.c_str(), from, to, steps,
                                      variants.c_str(), out_path.c_str(), threads,
                                      allow_unconverged ? 1 : 0));
    }
    return report(qotto_converge_run(config.cfg, n_max,
                                     out_path.empty() ? "-" : out_path.c_str(),
                                     allow_unconverged ? 1 : 0));
}

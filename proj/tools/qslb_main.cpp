#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qslb/bounds.hpp"
#include "qslb/errors.hpp"
#include "qslb/models.hpp"
#include "qslb/report_io.hpp"
#include "qslb/search.hpp"

namespace {

using namespace qslb;

constexpr double kPi = std::numbers::pi;

// Exit contract: 0 ok, 1 parse/validation, 2 stationary state, 3 a checked
// inequality failed, 4 a search found a sub-bound crossing.
int g_exit = 0;

ModelInstance named_model(const std::string& name, double delta_e, std::int64_t n) {
    if (name == "spin-half") return spin_half_model(delta_e);
    if (name == "relaxed-pair") {
        const ModelInstance base = spin_half_model(delta_e);
        return ModelInstance::build(base.hamiltonian, base.observable_q,
                                    relaxed_pair(delta_e).psi_in, "relaxed-pair");
    }
    if (name == "nspin") return collective_spin_model(n, delta_e);
    throw Error("unknown model: " + name + " (try spin-half, relaxed-pair, nspin)");
}

std::string summary_csv(const std::vector<std::pair<std::string, double>>& kv) {
    std::string out;
    for (const auto& [key, value] : kv) out += "# " + key + " = " + format_double(value) + "\n";
    return out;
}

std::string summary_json(const std::vector<std::pair<std::string, double>>& kv) {
    std::string out = "{";
    for (std::size_t i = 0; i < kv.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + kv[i].first + "\": ";
        const double v = kv[i].second;
        out += std::isfinite(v) ? format_double(v) : "\"" + format_double(v) + "\"";
    }
    return out + "}";
}

void setup_check(CLI::App& app) {
    auto cmd = app.add_subcommand("check", "evaluate every bound along one trajectory");
    auto model = std::make_shared<std::string>();
    auto scenario = std::make_shared<std::string>();
    auto n = std::make_shared<std::int64_t>(2);
    auto delta_e = std::make_shared<double>(1.0);
    auto t_max = std::make_shared<double>(kPi / 4.0);
    auto steps = std::make_shared<int>(400);
    auto hbar = std::make_shared<double>(1.0);
    auto out = std::make_shared<std::string>("csv");

    auto* model_opt = cmd->add_option("--model", *model, "named model: spin-half, relaxed-pair, nspin");
    auto* scenario_opt = cmd->add_option("--scenario", *scenario, "scenario JSON path");
    model_opt->excludes(scenario_opt);
    scenario_opt->excludes(model_opt);
    cmd->add_option("--n", *n, "spin count for nspin");
    cmd->add_option("--delta-e", *delta_e, "energy spread for named models");
    auto* tmax_opt = cmd->add_option("--t-max", *t_max, "end of the time grid");
    auto* steps_opt = cmd->add_option("--steps", *steps, "grid points (inclusive of both ends)");
    auto* hbar_opt = cmd->add_option("--hbar", *hbar, "value of hbar");
    cmd->add_option("--out", *out, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    cmd->callback([=] {
        if (model_opt->count() == 0 && scenario_opt->count() == 0)
            throw Error("check needs exactly one of --model / --scenario");

        Observable h = Observable(Matrix::Identity(2, 2));  // placeholders, reassigned below
        Observable q = h;
        std::optional<QuantumState> psi;
        double tm = *t_max;
        int st = *steps;
        UnitsConfig units;

        if (scenario_opt->count() > 0) {
            Scenario sc = load_scenario(*scenario);
            h = std::move(sc.hamiltonian);
            q = std::move(sc.observable);
            psi = std::move(sc.state);
            units = sc.units;
            if (tmax_opt->count() == 0) tm = sc.t_max;
            if (steps_opt->count() == 0) st = sc.steps;
            if (hbar_opt->count() > 0) units = UnitsConfig(*hbar);
        } else {
            ModelInstance inst = named_model(*model, *delta_e, *n);
            h = std::move(inst.hamiltonian);
            q = std::move(inst.observable_q);
            psi = std::move(inst.initial_state);
            units = UnitsConfig(*hbar);
        }

        const std::vector<double> grid = time_grid(tm, st);
        const BoundReport report = evaluate_trajectory(h, *psi, q, grid, units);
        std::cout << (*out == "csv" ? write_report_csv(report) : write_report_json(report));

        const auto violations = report.violations();
        if (!violations.empty()) {
            std::cerr << "violation: " << violations.front().inequality
                      << " at t = " << format_double(violations.front().t) << "\n";
            g_exit = 3;
        }
    });
}

void setup_search(CLI::App& app) {
    auto cmd = app.add_subcommand("search", "randomized hunt for sub-bound crossing times");
    auto mode = std::make_shared<std::string>();
    auto dim = std::make_shared<int>(2);
    auto trials = std::make_shared<std::int64_t>(100);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto window = std::make_shared<double>(2.0);
    auto grid_points = std::make_shared<int>(2048);
    auto refine_tol = std::make_shared<double>(1e-10);
    auto threads = std::make_shared<int>(1);
    auto out = std::make_shared<std::string>("json");

    cmd->add_option("--mode", *mode, "eigenstate or relaxed")
        ->required()
        ->check(CLI::IsMember({"eigenstate", "relaxed"}));
    cmd->add_option("--dim", *dim, "Hilbert space dimension")->check(CLI::Range(2, 64));
    cmd->add_option("--trials", *trials, "number of random draws");
    auto* seed_opt = cmd->add_option("--seed", *seed, "random seed (beats QSLB_SEED)");
    cmd->add_option("--window", *window, "scan interval upper edge");
    cmd->add_option("--grid-points", *grid_points, "scan grid size");
    cmd->add_option("--refine-tol", *refine_tol, "bisection tolerance");
    cmd->add_option("--threads", *threads, "worker threads (report is identical for any count)")
        ->check(CLI::Range(1, 256));
    cmd->add_option("--out", *out, "output format (json)")->check(CLI::IsMember({"json"}));

    cmd->callback([=] {
        SearchConfig config;
        config.dim = *dim;
        config.trials = *trials;
        config.window = *window;
        config.grid_points = *grid_points;
        config.refine_tol = *refine_tol;
        config.seed = *seed;
        if (seed_opt->count() == 0) {
            if (const char* env = std::getenv("QSLB_SEED")) {
                char* end = nullptr;
                const unsigned long long v = std::strtoull(env, &end, 10);
                if (end == env || *end != '\0') throw Error("QSLB_SEED is not an integer");
                config.seed = static_cast<std::uint64_t>(v);
            }
        }

        const SearchReport report = *mode == "eigenstate"
                                        ? min_crossing_search(config, *threads)
                                        : min_relaxed_search(config, *threads);
        std::cout << write_search_json(report, config, *mode);
        if (report.violation) {
            std::cerr << "violation: crossing " << format_double(*report.min_crossing)
                      << " beats the bound " << format_double(report.bound_compared) << "\n";
            g_exit = 4;
        }
    });
}

void setup_model(CLI::App& app) {
    auto cmd = app.add_subcommand("model", "trajectory plus bound summary for a named system");
    auto name = std::make_shared<std::string>();
    auto n = std::make_shared<std::int64_t>(2);
    auto delta_e = std::make_shared<double>(1.0);
    auto t_max = std::make_shared<double>(1.5);
    auto steps = std::make_shared<int>(400);
    auto hbar = std::make_shared<double>(1.0);
    auto p0 = std::make_shared<double>(0.0);
    auto dp = std::make_shared<double>(1.0);
    auto mass = std::make_shared<double>(1.0);
    auto x0 = std::make_shared<double>(0.0);
    auto out = std::make_shared<std::string>("csv");

    cmd->add_option("name", *name, "spin-half, relaxed-pair, nspin or gaussian")->required();
    cmd->add_option("--n", *n, "spin count for nspin");
    cmd->add_option("--delta-e", *delta_e, "energy spread for the finite models");
    cmd->add_option("--t-max", *t_max, "end of the time grid / packet evaluation time");
    cmd->add_option("--steps", *steps, "grid points");
    cmd->add_option("--hbar", *hbar, "value of hbar");
    cmd->add_option("--p0", *p0, "packet mean momentum");
    cmd->add_option("--dp", *dp, "packet momentum spread");
    cmd->add_option("--mass", *mass, "packet mass");
    cmd->add_option("--x0", *x0, "packet initial position");
    cmd->add_option("--out", *out, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    cmd->callback([=] {
        if (*name == "gaussian") {
            GaussianPacketParams params{*mass, *p0, *dp, *x0, UnitsConfig(*hbar)};
            std::vector<std::pair<std::string, double>> kv;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            try {
                const GaussianPacketReport rep = gaussian_packet_observables(params, *t_max);
                kv = {{"t", *t_max},
                      {"x_mean", rep.x_mean},
                      {"dx", rep.dx},
                      {"de_exact", rep.de_exact},
                      {"de_approx", rep.de_approx},
                      {"de_ratio", rep.de_approx / rep.de_exact},
                      {"crossing_time_exact", rep.crossing_time_exact},
                      {"crossing_time_bound", rep.crossing_time_bound},
                      {"crossing_over_bound", rep.crossing_time_exact / rep.crossing_time_bound}};
            } catch (const NoCrossing&) {
                // spreading outruns drift; the packet never reaches its width
                const double dx0 = *hbar / (2.0 * *dp);
                const double drift = *p0 / *mass;
                kv = {{"t", *t_max},
                      {"x_mean", *x0 + drift * *t_max},
                      {"dx", std::hypot(dx0, *dp * *t_max / *mass)},
                      {"de_exact", (*dp / *mass) * std::sqrt(*p0 * *p0 + 0.5 * *dp * *dp)},
                      {"de_approx", *p0 * *dp / *mass},
                      {"de_ratio", nan},
                      {"crossing_time_exact", nan},
                      {"crossing_time_bound", nan},
                      {"crossing_over_bound", nan}};
            }
            if (*out == "csv") {
                std::string text = "key,value\n";
                for (const auto& [key, value] : kv) text += key + "," + format_double(value) + "\n";
                std::cout << text;
            } else {
                std::cout << summary_json(kv) << "\n";
            }
            return;
        }

        const ModelInstance inst = named_model(*name, *delta_e, *n);
        const UnitsConfig units(*hbar);
        const BoundReport report = evaluate_trajectory(
            inst.hamiltonian, inst.initial_state, inst.observable_q, time_grid(*t_max, *steps),
            units);

        const TauCatalog taus = TauCatalog::for_delta_e(inst.delta_e);
        std::vector<std::pair<std::string, double>> kv{{"delta_e", inst.delta_e},
                                                       {"tau1", taus.tau1},
                                                       {"tau2", taus.tau2},
                                                       {"tau3", taus.tau3},
                                                       {"tau5", taus.tau5},
                                                       {"t_orth", taus.t_orth}};
        const double window = 2.0 / inst.delta_e;
        const int grid = std::max(2048, static_cast<int>(64.0 * window * inst.delta_e) + 2);
        if (*name == "spin-half") {
            const auto crossing = first_crossing_time(inst, window, grid, 1e-10);
            if (crossing) {
                kv.push_back({"first_crossing", *crossing});
                kv.push_back({"abs_diff_tau2", std::abs(*crossing - taus.tau2)});
            }
        } else if (*name == "relaxed-pair") {
            const RelaxedPair pair = relaxed_pair(*delta_e);
            kv.push_back({"transit_time", pair.transit_time});
            const auto crossing = relaxed_crossing_time(inst, window, grid, 1e-10);
            if (crossing) {
                kv.push_back({"relaxed_crossing", *crossing});
                kv.push_back({"abs_diff_tau3", std::abs(*crossing - taus.tau3)});
            }
        } else {  // nspin
            kv.push_back({"tau4", taus.tau4(*n)});
            const auto plain = first_crossing_time(inst, window, grid, 1e-10);
            if (plain) kv.push_back({"eigenstate_crossing", *plain});
            const CollectiveOptimum opt = optimal_collective_crossing(*n, *delta_e);
            kv.push_back({"optimal_tilt", opt.tilt});
            kv.push_back({"relaxed_crossing", opt.crossing_time});
            kv.push_back({"abs_diff_tau4", std::abs(opt.crossing_time - taus.tau4(*n))});
        }

        if (*out == "csv") {
            std::cout << write_report_csv(report) << summary_csv(kv);
        } else {
            std::string text = write_report_json(report);
            text.pop_back();  // trailing newline
            std::cout << "{\n  \"summary\": " << summary_json(kv) << ",\n  \"report\": " << text
                      << "\n}\n";
        }
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bound laws of quantum evolution: check, search, model"};
    app.require_subcommand(1);
    setup_check(app);
    setup_search(app);
    setup_model(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ZeroDeltaE& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return g_exit;
}

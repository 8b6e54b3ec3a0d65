#include "qslb/search.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <utility>

#include <Eigen/QR>

#include "qslb/errors.hpp"

namespace qslb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// splitmix64 with Box-Muller on top. The standard library's engines and
// normal_distribution are not pinned tightly enough for byte-stable reports,
// so the whole random path is spelled out here.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

std::uint64_t mix_key(std::uint64_t seed, std::uint64_t trial, std::uint64_t salt) {
    SplitMix64 s(seed ^ (0x9e3779b97f4a7c15ULL * (trial + 1)) ^
                 (0xd1b54a32d192ed03ULL * (salt + 1)));
    return s.next();
}

Matrix random_hermitian(int dim, SplitMix64& rng) {
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = Complex(rng.gaussian(), rng.gaussian());
    Matrix h = 0.5 * (a + Matrix(a.adjoint()));
    return h;
}

// |delta<Q>|(t) and dQ(t) sampled from one spectral factorization.
class TrajectoryScanner {
public:
    explicit TrajectoryScanner(const ModelInstance& instance)
        : obs_(instance.observable_q),
          prop_(instance.hamiltonian, instance.initial_state),
          q0_(observable_moments(instance.initial_state, instance.observable_q).mean) {}

    std::pair<double, double> at(double t) const {
        const Moments m = observable_moments(prop_.at(t), obs_);
        return {std::abs(m.mean - q0_), m.sd};
    }

    double dq(double t) const { return at(t).second; }

private:
    const Observable& obs_;
    Propagator prop_;
    double q0_;
};

void check_scan_args(const ModelInstance& instance, double window, int grid_points,
                     double refine_tol) {
    if (!(window > 0.0)) throw Error("scan window must be positive");
    if (!(refine_tol > 0.0)) throw Error("refine_tol must be positive");
    if (instance.delta_e <= 1e-12) throw ZeroDeltaE("initial state is stationary");
    if (grid_points < 64 || static_cast<double>(grid_points) < 64.0 * window * instance.delta_e)
        throw GridTooCoarse("need at least 64 grid points per unit of window * delta_e");
}

// Golden-section maximum of f on [a, b]; assumes one interior hump, which is
// what the peak detector hands us. Returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

}  // namespace

std::optional<double> first_crossing_time(const ModelInstance& instance, double window,
                                          int grid_points, double refine_tol) {
    check_scan_args(instance, window, grid_points, refine_tol);
    if (uncertainty(instance.initial_state, instance.observable_q) > 1e-10)
        throw NotEigenstateStart("first_crossing_time needs a Q-eigenstate start");

    const TrajectoryScanner scan(instance);
    double prev_t = 0.0;
    for (int i = 1; i < grid_points; ++i) {
        const double t = window * i / (grid_points - 1);
        const auto [abs_delta, dq] = scan.at(t);
        if (dq - abs_delta < 0.0) {
            double lo = prev_t;  // gap >= 0 here
            double hi = t;       // gap < 0 here
            while (hi - lo > refine_tol) {
                const double mid = 0.5 * (lo + hi);
                const auto [a, d] = scan.at(mid);
                (d - a < 0.0 ? hi : lo) = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev_t = t;
    }
    return std::nullopt;
}

std::optional<double> relaxed_crossing_time(const ModelInstance& instance, double window,
                                            int grid_points, double refine_tol) {
    check_scan_args(instance, window, grid_points, refine_tol);

    const TrajectoryScanner scan(instance);
    const int n = grid_points;
    std::vector<double> ts(n), abs_delta(n), dq(n);
    for (int i = 0; i < n; ++i) {
        ts[i] = window * i / (n - 1);
        std::tie(abs_delta[i], dq[i]) = scan.at(ts[i]);
    }

    // Sharpen interior maxima of dQ: the grid underestimates each hump by
    // O(dt^2), which would bias the crossing; the continuous running max is
    // what the relaxed condition compares against.
    struct Peak {
        double t, v;
    };
    std::vector<Peak> peaks;
    for (int i = 1; i + 1 < n; ++i) {
        const bool local_max = dq[i] >= dq[i - 1] && dq[i] >= dq[i + 1] &&
                               (dq[i] > dq[i - 1] || dq[i] > dq[i + 1]);
        if (local_max) {
            const auto [tp, vp] =
                golden_max([&](double t) { return scan.dq(t); }, ts[i - 1], ts[i + 1], 1e-7);
            peaks.push_back({tp, vp});
        }
    }
    std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.t < b.t; });

    std::vector<double> runmax(n);
    double m = dq[0];
    std::size_t next_peak = 0;
    for (int i = 0; i < n; ++i) {
        m = std::max(m, dq[i]);
        while (next_peak < peaks.size() && peaks[next_peak].t <= ts[i])
            m = std::max(m, peaks[next_peak++].v);
        runmax[i] = m;
    }

    double h_prev = abs_delta[0] - runmax[0];
    for (int i = 1; i < n; ++i) {
        const double h = abs_delta[i] - runmax[i];
        if (h >= 0.0 && h_prev < 0.0) {
            const double frozen = runmax[i - 1];
            std::vector<Peak> cell;  // maxima that switch on inside the bracket
            for (const Peak& p : peaks)
                if (p.t > ts[i - 1] && p.t <= ts[i]) cell.push_back(p);
            const auto gap = [&](double t) {
                const auto [a, d] = scan.at(t);
                double reference = std::max(frozen, d);
                for (const Peak& p : cell)
                    if (p.t <= t) reference = std::max(reference, p.v);
                return a - reference;
            };
            double lo = ts[i - 1];
            double hi = ts[i];
            while (hi - lo > refine_tol) {
                const double mid = 0.5 * (lo + hi);
                (gap(mid) >= 0.0 ? hi : lo) = mid;
            }
            return 0.5 * (lo + hi);
        }
        h_prev = h;
    }
    return std::nullopt;
}

namespace {

ModelInstance sample_impl(int dim, std::uint64_t seed, std::uint64_t trial_index,
                          bool eigenstate_start) {
    if (dim < 2) throw BadDimension("sampling needs dim >= 2");
    for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
        SplitMix64 rng(mix_key(seed, trial_index, attempt * 2 + (eigenstate_start ? 0 : 1)));
        const Matrix h = random_hermitian(dim, rng);
        Observable obs_q(random_hermitian(dim, rng));

        QuantumState psi = [&] {
            if (eigenstate_start) {
                const SpectralDecomposition spec = spectral_decompose(obs_q);
                const auto pick = static_cast<Eigen::Index>(rng.next() % dim);
                return QuantumState::normalized(spec.eigenvectors.col(pick));
            }
            Vector v(dim);
            for (int i = 0; i < dim; ++i) v(i) = Complex(rng.gaussian(), rng.gaussian());
            return QuantumState::normalized(v);
        }();

        const Observable raw_h(h);
        const Moments em = observable_moments(psi, raw_h);
        if (em.sd < 1e-8) continue;  // redraw: start too close to an H-eigenstate
        const Matrix rescaled = (h - em.mean * Matrix::Identity(dim, dim)) / em.sd;

        const std::string label = std::string(eigenstate_start ? "rand-eig-d" : "rand-rel-d") +
                                  std::to_string(dim) + "-t" + std::to_string(trial_index);
        return ModelInstance::build(Observable(rescaled), std::move(obs_q), std::move(psi), label);
    }
    throw DegenerateDraw("100 consecutive draws were energy-degenerate");
}

}  // namespace

ModelInstance sample_instance(int dim, std::uint64_t seed, std::uint64_t trial_index) {
    return sample_impl(dim, seed, trial_index, true);
}

ModelInstance sample_relaxed_instance(int dim, std::uint64_t seed, std::uint64_t trial_index) {
    return sample_impl(dim, seed, trial_index, false);
}

namespace {

// ---- derivative-free local refinement -------------------------------------

void pack_hermitian(const Matrix& m, std::vector<double>& out) {
    const int d = static_cast<int>(m.rows());
    for (int i = 0; i < d; ++i) out.push_back(m(i, i).real());
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            out.push_back(m(i, j).real());
            out.push_back(m(i, j).imag());
        }
}

Matrix unpack_hermitian(const double* p, int d) {
    Matrix m(d, d);
    int k = 0;
    for (int i = 0; i < d; ++i) m(i, i) = p[k++];
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const double re = p[k++];
            const double im = p[k++];
            m(i, j) = Complex(re, im);
            m(j, i) = Complex(re, -im);
        }
    return m;
}

int hermitian_dof(int d) { return d * d; }

// Basis change that sends the start state to e0. For an eigenstate start the
// transformed Q then has a vanishing first row/column (up to round-off),
// which we enforce exactly so perturbing the block keeps e0 an eigenvector.
std::vector<double> canonical_eigen_params(const ModelInstance& instance) {
    const int d = instance.initial_state.dim();
    Matrix a = Matrix::Identity(d, d);
    a.col(0) = instance.initial_state.amplitudes();
    const Eigen::HouseholderQR<Matrix> qr(a);
    Matrix u = qr.householderQ();
    Eigen::Index pivot;
    instance.initial_state.amplitudes().cwiseAbs().maxCoeff(&pivot);
    u.col(0) *= instance.initial_state.amplitudes()(pivot) / u(pivot, 0);

    Matrix ht = u.adjoint() * instance.hamiltonian.entries() * u;
    ht = 0.5 * (ht + Matrix(ht.adjoint()));
    Matrix qt = u.adjoint() * instance.observable_q.entries() * u;
    Matrix qblock = qt.bottomRightCorner(d - 1, d - 1);
    qblock = 0.5 * (qblock + Matrix(qblock.adjoint()));
    qblock.diagonal().array() -= qt(0, 0).real();

    std::vector<double> params;
    params.reserve(hermitian_dof(d) + hermitian_dof(d - 1));
    pack_hermitian(ht, params);
    pack_hermitian(qblock, params);
    return params;
}

std::optional<ModelInstance> rebuild_eigen(const std::vector<double>& params, int d) {
    const Matrix h = unpack_hermitian(params.data(), d);
    Matrix q = Matrix::Zero(d, d);
    q.bottomRightCorner(d - 1, d - 1) = unpack_hermitian(params.data() + hermitian_dof(d), d - 1);

    double var = 0.0;
    for (int k = 1; k < d; ++k) var += std::norm(h(k, 0));
    const double de = std::sqrt(var);
    if (de < 1e-9) return std::nullopt;  // too degenerate to rescale stably
    const Matrix hn = (h - h(0, 0).real() * Matrix::Identity(d, d)) / de;

    Vector e0 = Vector::Zero(d);
    e0(0) = 1.0;
    return ModelInstance::build(Observable(hn), Observable(q), QuantumState(e0), "refined-eig");
}

std::vector<double> relaxed_params(const ModelInstance& instance) {
    const int d = instance.initial_state.dim();
    std::vector<double> params;
    params.reserve(hermitian_dof(d) + 2 * d);
    pack_hermitian(instance.hamiltonian.entries(), params);
    for (int i = 0; i < d; ++i) {
        params.push_back(instance.initial_state.amplitudes()(i).real());
        params.push_back(instance.initial_state.amplitudes()(i).imag());
    }
    return params;
}

std::optional<ModelInstance> rebuild_relaxed(const std::vector<double>& params, int d,
                                             const Observable& fixed_q) {
    const Matrix h = unpack_hermitian(params.data(), d);
    Vector v(d);
    for (int i = 0; i < d; ++i)
        v(i) = Complex(params[hermitian_dof(d) + 2 * i], params[hermitian_dof(d) + 2 * i + 1]);
    if (v.norm() < 1e-8) return std::nullopt;
    QuantumState psi = QuantumState::normalized(v);

    const Observable raw(h);
    const Moments em = observable_moments(psi, raw);
    if (em.sd < 1e-9) return std::nullopt;  // too degenerate to rescale stably
    const Matrix hn = (h - em.mean * Matrix::Identity(d, d)) / em.sd;
    return ModelInstance::build(Observable(hn), fixed_q, std::move(psi), "refined-rel");
}

struct DescentResult {
    std::vector<double> params;
    double value;
};

// Greedy coordinate descent with a shrinking step: cheap, derivative-free,
// and deterministic. The aim is violation hunting, not certified optimality.
DescentResult coordinate_descent(std::vector<double> params, double value,
                                 const std::function<double(const std::vector<double>&)>& f) {
    double step = 0.05;
    for (int sweep = 0; sweep < 200 && step >= 1e-8; ++sweep) {
        bool improved = false;
        for (std::size_t k = 0; k < params.size(); ++k) {
            for (const double sign : {1.0, -1.0}) {
                std::vector<double> trial = params;
                trial[k] += sign * step;
                const double v = f(trial);
                if (v < value) {
                    value = v;
                    params = std::move(trial);
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return {std::move(params), value};
}

SearchReport run_search(const SearchConfig& config, int threads, bool relaxed) {
    if (config.dim < 2 || config.dim > 64)
        throw BadDimension("search covers dimensions 2 through 64");
    if (config.trials < 0) throw Error("trials must be nonnegative");
    if (!(config.window > 0.0)) throw Error("window must be positive");
    if (config.grid_points < 64) throw GridTooCoarse("config needs at least 64 grid points");
    if (!(config.refine_tol > 0.0)) throw Error("refine_tol must be positive");

    SearchReport report;
    report.bound_compared = relaxed ? 0.5 : kPi / 4.0;
    report.trials.resize(static_cast<std::size_t>(config.trials));

    const auto run_trial = [&](std::uint64_t index) {
        const ModelInstance instance =
            relaxed ? sample_relaxed_instance(config.dim, config.seed, index)
                    : sample_instance(config.dim, config.seed, index);
        const auto crossing =
            relaxed
                ? relaxed_crossing_time(instance, config.window, config.grid_points,
                                        config.refine_tol)
                : first_crossing_time(instance, config.window, config.grid_points,
                                      config.refine_tol);
        return TrialOutcome{index, crossing};
    };

    // Trials are independent; any thread partition gives the same per-index
    // outcome, and everything after this loop folds in index order.
    const auto total = static_cast<std::uint64_t>(config.trials);
    std::vector<std::exception_ptr> failures(total);
    const int workers = std::max(1, threads);
    if (workers == 1 || total <= 1) {
        for (std::uint64_t i = 0; i < total; ++i) {
            try {
                report.trials[i] = run_trial(i);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (total + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t begin = chunk * static_cast<std::uint64_t>(w);
            const std::uint64_t end = std::min(total, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back([&, begin, end] {
                for (std::uint64_t i = begin; i < end; ++i) {
                    try {
                        report.trials[i] = run_trial(i);
                    } catch (...) {
                        failures[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    for (std::uint64_t i = 0; i < total; ++i)
        if (failures[i]) std::rethrow_exception(failures[i]);

    // Seed the refinement stage with the few best draws; ties go to the
    // lower trial index so the fold is schedule-independent. Refinement only
    // lowers values, so the global minimum always sits among the refined
    // candidates.
    std::vector<std::pair<double, std::uint64_t>> ranked;
    for (const TrialOutcome& trial : report.trials)
        if (trial.crossing) ranked.emplace_back(*trial.crossing, trial.trial_index);
    std::sort(ranked.begin(), ranked.end());

    std::optional<ModelInstance> best_instance;
    std::optional<double> best_value;
    std::optional<std::uint64_t> best_trial;
    const std::size_t refine_count = std::min<std::size_t>(5, ranked.size());
    for (std::size_t r = 0; r < refine_count; ++r) {
        const double raw_value = ranked[r].first;
        const std::uint64_t index = ranked[r].second;
        ModelInstance sampled = relaxed ? sample_relaxed_instance(config.dim, config.seed, index)
                                        : sample_instance(config.dim, config.seed, index);
        const Observable fixed_q = sampled.observable_q;
        const int d = config.dim;

        // Improvements live below the current value, so a clipped window
        // keeps each objective evaluation cheap without losing any of them.
        double window = std::min(config.window, raw_value * 1.2);
        const auto grid_for = [](double w) {
            return std::max(256, static_cast<int>(64.0 * w) + 2);
        };
        const auto objective = [&](const std::vector<double>& p) -> double {
            const auto inst =
                relaxed ? rebuild_relaxed(p, d, fixed_q) : rebuild_eigen(p, d);
            if (!inst) return kInf;
            const auto t = relaxed
                               ? relaxed_crossing_time(*inst, window, grid_for(window), 1e-10)
                               : first_crossing_time(*inst, window, grid_for(window), 1e-10);
            return t ? *t : kInf;
        };

        std::vector<double> params =
            relaxed ? relaxed_params(sampled) : canonical_eigen_params(sampled);
        double trial_best = raw_value;
        std::optional<ModelInstance> refined_instance;
        double start_value = objective(params);
        if (!std::isfinite(start_value)) {
            // round-off nudged the crossing past the clipped window
            window = config.window;
            start_value = objective(params);
        }
        if (std::isfinite(start_value)) {
            const DescentResult refined =
                coordinate_descent(std::move(params), start_value, objective);
            if (refined.value < trial_best) {
                trial_best = refined.value;
                refined_instance = relaxed ? rebuild_relaxed(refined.params, d, fixed_q)
                                           : rebuild_eigen(refined.params, d);
            }
        }
        report.trials[index].crossing = trial_best;

        if (!best_value || trial_best < *best_value) {
            best_value = trial_best;
            best_trial = index;
            best_instance = refined_instance ? std::move(*refined_instance) : std::move(sampled);
        }
    }

    report.min_crossing = best_value;
    report.argmin_trial = best_trial;
    report.argmin_instance = std::move(best_instance);
    report.violation =
        report.min_crossing && *report.min_crossing < report.bound_compared - 1e-6;
    return report;
}

}  // namespace

SearchReport min_crossing_search(const SearchConfig& config, int threads) {
    return run_search(config, threads, false);
}

SearchReport min_relaxed_search(const SearchConfig& config, int threads) {
    return run_search(config, threads, true);
}

CollectiveOptimum optimal_collective_crossing(std::int64_t n, double delta_e_total) {
    const ModelInstance base = collective_spin_model(n, delta_e_total);
    const double window = 2.0 / delta_e_total;
    const int grid = std::max(2048, static_cast<int>(64.0 * window * delta_e_total) + 2);

    const auto crossing_for = [&](double phi) {
        const ModelInstance tilted =
            ModelInstance::build(base.hamiltonian, base.observable_q,
                                 collective_product_state(n, phi), base.label + "-tilted");
        const auto t = relaxed_crossing_time(tilted, window, grid, 1e-10);
        return t ? *t : kInf;
    };

    // Coarse sweep of the tilt, then golden-section polish around the best
    // cell. The crossing time is smooth and single-dipped in the tilt.
    const int sweep = 64;
    const double lo = 0.01;
    const double hi = kPi / 4.0;
    double best_phi = lo;
    double best_val = kInf;
    for (int i = 0; i <= sweep; ++i) {
        const double phi = lo + (hi - lo) * i / sweep;
        const double v = crossing_for(phi);
        if (v < best_val) {
            best_val = v;
            best_phi = phi;
        }
    }
    const double width = (hi - lo) / sweep;
    const auto [phi_star, neg] = golden_max(
        [&](double phi) { return -crossing_for(phi); }, std::max(lo, best_phi - width),
        std::min(hi, best_phi + width), 1e-7);
    return CollectiveOptimum{phi_star, -neg};
}

}  // namespace qslb

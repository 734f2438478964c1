#include "mums/mc_ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "mums/error.hpp"

namespace mums {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

int resolve_threads(int requested, int runs) {
    int t = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    return std::clamp(t, 1, std::max(runs, 1));
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed + kGolden) ^ mix64(stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL))) {}

std::uint64_t CounterRng::next() {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

void validate(const ChainConfig& config) {
    if (!(config.p >= 0.0 && config.p < 1.0)) throw InputError("chain requires 0 <= p < 1");
    if (!(config.q >= 0.0 && config.q < 1.0)) {
        throw InputError("chain requires 0 <= q < 1 (a negative or explosive q is not a probability)");
    }
    if (config.runs < 1) throw InputError("runs must be >= 1");
    if (config.horizon < 0) throw InputError("horizon must be >= 0");
    for (const auto& s : config.states) {
        if (!std::isfinite(s.impact) || !std::isfinite(s.medium)) throw InputError("state values must be finite");
    }
}

std::array<std::array<double, 3>, 3> transition_matrix(double p, double q) {
    return {{{p, 1.0 - p, 0.0}, {0.0, q, 1.0 - q}, {0.0, 0.0, 1.0}}};
}

std::vector<ChainState> simulate_run(const ChainConfig& config, CounterRng& rng) {
    std::vector<ChainState> path(static_cast<std::size_t>(config.horizon) + 1);
    ChainState s = ChainState::impact;
    path[0] = s;
    for (int n = 1; n <= config.horizon; ++n) {
        if (s == ChainState::impact) {
            if (!(rng.uniform() < config.p)) s = ChainState::medium;
        } else if (s == ChainState::medium) {
            if (!(rng.uniform() < config.q)) s = ChainState::absorbed;
        }
        path[n] = s;
    }
    return path;
}

OccupancyCounts simulate_counts(const ChainConfig& config) {
    validate(config);
    const auto len = static_cast<std::size_t>(config.horizon) + 1;
    const int threads = resolve_threads(config.threads, config.runs);

    std::vector<OccupancyCounts> partial(static_cast<std::size_t>(threads));
    auto work = [&](int t) {
        auto& c = partial[t];
        c.impact.assign(len, 0);
        c.medium.assign(len, 0);
        c.absorbed.assign(len, 0);
        const std::int64_t begin = static_cast<std::int64_t>(config.runs) * t / threads;
        const std::int64_t end = static_cast<std::int64_t>(config.runs) * (t + 1) / threads;
        for (std::int64_t j = begin; j < end; ++j) {
            CounterRng rng(config.seed, static_cast<std::uint64_t>(j));
            const auto path = simulate_run(config, rng);
            for (std::size_t n = 0; n < len; ++n) {
                switch (path[n]) {
                    case ChainState::impact: ++c.impact[n]; break;
                    case ChainState::medium: ++c.medium[n]; break;
                    case ChainState::absorbed: ++c.absorbed[n]; break;
                }
            }
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    // Integer counts: the merge is exact in any order.
    OccupancyCounts total;
    total.runs = config.runs;
    total.impact.assign(len, 0);
    total.medium.assign(len, 0);
    total.absorbed.assign(len, 0);
    for (const auto& c : partial) {
        for (std::size_t n = 0; n < len; ++n) {
            total.impact[n] += c.impact[n];
            total.medium[n] += c.medium[n];
            total.absorbed[n] += c.absorbed[n];
        }
    }
    return total;
}

EnsembleResult summarize(const OccupancyCounts& counts, StateValues values) {
    EnsembleResult r;
    r.runs = counts.runs;
    const auto len = counts.impact.size();
    r.mean.resize(len);
    r.stderr_.resize(len);
    const double j = static_cast<double>(counts.runs);
    for (std::size_t n = 0; n < len; ++n) {
        const double ci = static_cast<double>(counts.impact[n]);
        const double cm = static_cast<double>(counts.medium[n]);
        const double cl = static_cast<double>(counts.absorbed[n]);
        const double mean = (ci * values.impact + cm * values.medium) / j;
        r.mean[n] = mean;
        if (counts.runs > 1) {
            const double di = values.impact - mean;
            const double dm = values.medium - mean;
            const double var = (ci * di * di + cm * dm * dm + cl * mean * mean) / (j - 1.0);
            r.stderr_[n] = std::sqrt(var / j);
        } else {
            r.stderr_[n] = 0.0;
        }
    }
    return r;
}

std::vector<EnsembleResult> ensemble_average(const ChainConfig& config) {
    const auto counts = simulate_counts(config);
    std::vector<EnsembleResult> out;
    out.reserve(config.states.size());
    for (const auto& s : config.states) out.push_back(summarize(counts, s));
    return out;
}

std::pair<double, double> expected_durations(double p, double q) {
    if (!(p >= 0.0 && p < 1.0 && q >= 0.0 && q < 1.0)) throw InputError("durations require 0 <= p, q < 1");
    return {1.0 / (1.0 - p), 1.0 / (1.0 - q)};
}

Figure1Table figure1_experiment(std::uint64_t seed, int horizon, int threads, const Figure1Parameters& fp) {
    if (horizon < 1) throw InputError("horizon must be >= 1");
    Figure1Table table;
    const auto len = static_cast<std::size_t>(horizon) + 1;

    // y_t = (p + eta_kk) y_{t-1} - p eta_kk y_{t-2} + eta_yz eps_t
    //       + (eta_yk eta_kz - eta_yz eta_kk) eps_{t-1}, eps_0 = 1.
    const double ma = fp.eta_yk * fp.eta_kz - fp.eta_yz * fp.eta_kk;
    table.reference.assign(len, 0.0);
    for (std::size_t t = 0; t < len; ++t) {
        double y = 0.0;
        if (t >= 1) y += (fp.p + fp.eta_kk) * table.reference[t - 1];
        if (t >= 2) y -= fp.p * fp.eta_kk * table.reference[t - 2];
        if (t == 0) y += fp.eta_yz;
        if (t == 1) y += ma;
        table.reference[t] = y;
    }

    table.q = fp.eta_kk;
    table.y_impact = table.reference[0];
    table.y_medium = (table.reference[1] - fp.p * table.y_impact) / (1.0 - fp.p);

    for (int runs : {1, 2, 10, 50000}) {
        ChainConfig cfg;
        cfg.p = fp.p;
        cfg.q = table.q;
        cfg.states = {{table.y_impact, table.y_medium}};
        cfg.runs = runs;
        cfg.horizon = horizon;
        cfg.seed = seed;
        cfg.threads = threads;
        table.panels.push_back({runs, ensemble_average(cfg).front()});
    }
    return table;
}

}  // namespace mums

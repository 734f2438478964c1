#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace mums {

// Counter-based generator: output i of stream (seed, stream) is a fixed
// function of (seed, stream, i), so runs can be scheduled in any order.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next();
    // Uniform on [0, 1) with 53 random bits.
    double uniform();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

enum class ChainState : std::uint8_t { impact = 1, medium = 2, absorbed = 3 };

// State values of one tracked series; the absorbing state is always 0.
struct StateValues {
    double impact = 0.0;
    double medium = 0.0;
};

struct ChainConfig {
    double p = 0.0;
    double q = 0.0;
    std::vector<StateValues> states;
    int runs = 50000;
    int horizon = 40;
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = hardware concurrency
};

// Throws InputError unless p and q are probabilities in [0, 1), runs >= 1
// and horizon >= 0.
void validate(const ChainConfig& config);

// Rows of the banded transition matrix [[p, 1-p, 0], [0, q, 1-q], [0, 0, 1]].
std::array<std::array<double, 3>, 3> transition_matrix(double p, double q);

std::vector<ChainState> simulate_run(const ChainConfig& config, CounterRng& rng);

struct EnsembleResult {
    std::vector<double> mean;
    std::vector<double> stderr_;  // sample std / sqrt(J); zero when J = 1
    int runs = 0;
};

// Per-period counts of runs in each state, summed over all runs.
struct OccupancyCounts {
    std::vector<std::int64_t> impact;
    std::vector<std::int64_t> medium;
    std::vector<std::int64_t> absorbed;
    int runs = 0;
};

// Simulates config.runs chains, stream j keyed by (seed, j). Results do not
// depend on config.threads.
OccupancyCounts simulate_counts(const ChainConfig& config);

EnsembleResult summarize(const OccupancyCounts& counts, StateValues values);

// One result per entry of config.states.
std::vector<EnsembleResult> ensemble_average(const ChainConfig& config);

// Expected periods spent in the impact and medium-run states.
std::pair<double, double> expected_durations(double p, double q);

struct Figure1Parameters {
    double eta_kk = 0.8;
    double eta_kz = 0.5;
    double eta_yk = 0.5;
    double eta_yz = 0.1;
    double p = 0.7;
};

struct Figure1Panel {
    int runs = 0;
    EnsembleResult result;
};

struct Figure1Table {
    std::vector<double> reference;  // deterministic ARMA(2,1) path
    std::vector<Figure1Panel> panels;
    double y_impact = 0.0;
    double y_medium = 0.0;
    double q = 0.0;
};

// Ensemble means for J in {1, 2, 10, 50000} against the ARMA(2,1) path of a
// unit shock; all panels share the seed so smaller panels are prefixes.
Figure1Table figure1_experiment(std::uint64_t seed, int horizon = 40, int threads = 0,
                                const Figure1Parameters& params = {});

}  // namespace mums

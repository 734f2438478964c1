#pragma once

#include <string>
#include <vector>

namespace mums {

// Expected paths after an impulse at n = 0, indexed n = 0..horizon.
struct IrfPath {
    int horizon = 0;
    std::vector<std::string> control_names;
    std::vector<double> exogenous;
    std::vector<double> state;
    std::vector<std::vector<double>> controls;  // controls[i][n]

    static IrfPath zeros(int horizon, std::vector<std::string> names) {
        IrfPath path;
        path.horizon = horizon;
        const auto len = static_cast<std::size_t>(horizon) + 1;
        path.exogenous.assign(len, 0.0);
        path.state.assign(len, 0.0);
        path.controls.assign(names.size(), std::vector<double>(len, 0.0));
        path.control_names = std::move(names);
        return path;
    }
};

// Largest absolute entrywise difference across every tracked series.
double max_abs_difference(const IrfPath& a, const IrfPath& b);

}  // namespace mums

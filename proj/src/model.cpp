#include "mums/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "mums/error.hpp"

namespace mums {

namespace {

bool all_finite(const Eigen::Ref<const Matrix>& m) { return m.allFinite(); }

void check_shape(ValidationReport& report, const std::string& field, Eigen::Index rows,
                 Eigen::Index cols, int want_rows, int want_cols) {
    if (rows != want_rows || cols != want_cols) {
        std::ostringstream rule;
        rule << "dimensions " << rows << "x" << cols << " do not conform to " << want_rows << "x"
             << want_cols;
        report.push_back({field, rule.str()});
    }
}

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r' || std::isspace(static_cast<unsigned char>(c)))
            return false;
    }
    return true;
}

}  // namespace

ValidationReport validate(const ModelSpec& model) {
    ValidationReport report;
    const int n = model.n_controls;

    if (n < 1) {
        report.push_back({"n_controls", "must be >= 1"});
    } else {
        if (static_cast<int>(model.control_names.size()) != n) {
            report.push_back({"control_names", "expected " + std::to_string(n) + " names, got " +
                                                   std::to_string(model.control_names.size())});
        }
        check_shape(report, "A0", model.A0.rows(), model.A0.cols(), n, n);
        check_shape(report, "A1", model.A1.rows(), model.A1.cols(), n, n);
        check_shape(report, "B0", model.B0.rows(), 1, n, 1);
        check_shape(report, "B1", model.B1.rows(), 1, n, 1);
        check_shape(report, "C0", model.C0.rows(), 1, n, 1);
        check_shape(report, "D0", 1, model.D0.cols(), 1, n);
    }

    std::set<std::string> seen;
    for (const auto& name : model.control_names) {
        if (!is_identifier(name)) {
            report.push_back({"control_names", "invalid identifier '" + name + "'"});
        } else if (!seen.insert(name).second) {
            report.push_back({"control_names", "duplicate name '" + name + "'"});
        }
    }

    const std::pair<const char*, const Matrix*> mats[] = {{"A0", &model.A0}, {"A1", &model.A1}};
    for (const auto& [field, m] : mats) {
        if (!all_finite(*m)) report.push_back({field, "entries must be finite"});
    }
    if (!model.B0.allFinite()) report.push_back({"B0", "entries must be finite"});
    if (!model.B1.allFinite()) report.push_back({"B1", "entries must be finite"});
    if (!model.C0.allFinite()) report.push_back({"C0", "entries must be finite"});
    if (!model.D0.allFinite()) report.push_back({"D0", "entries must be finite"});
    if (!std::isfinite(model.rho)) report.push_back({"rho", "must be finite"});
    if (!std::isfinite(model.e)) report.push_back({"e", "must be finite"});

    if (!std::isfinite(model.p)) {
        report.push_back({"p", "must be finite"});
    } else if (!(model.p >= 0.0 && model.p < 1.0)) {
        report.push_back({"p", "must satisfy 0 <= p < 1"});
    }
    return report;
}

ValidationReport validate(const ShockImpulse& shock) {
    ValidationReport report;
    if (!std::isfinite(shock.size)) {
        report.push_back({"shock", "must be finite"});
    } else if (shock.size == 0.0) {
        report.push_back({"shock", "must be nonzero"});
    }
    return report;
}

std::string format_report(const ValidationReport& report) {
    std::ostringstream out;
    for (std::size_t i = 0; i < report.size(); ++i) {
        if (i) out << "; ";
        out << report[i].field << ": " << report[i].rule;
    }
    return out.str();
}

void require_valid(const ModelSpec& model) {
    const auto report = validate(model);
    if (!report.empty()) throw InputError("invalid model: " + format_report(report));
}

ReducedModel reduce(const ModelSpec& model) {
    require_valid(model);
    ReducedModel r;
    r.A0 = model.A0;
    r.A = model.A1 + model.B1 * model.D0;
    r.B = model.B0 + model.rho * model.B1;
    r.C = model.C0 + model.e * model.p * model.B1;
    r.D0 = model.D0;
    r.rho = model.rho;
    r.e = model.e;
    r.p = model.p;
    return r;
}

}  // namespace mums

#include "mums/io.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "mums/error.hpp"

namespace mums::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const std::set<std::string> kRequired = {"n_controls", "control_names", "A0", "A1", "B0", "B1",
                                         "C0",         "D0",            "rho", "e", "p"};
const std::set<std::string> kOptional = {"shock", "horizon", "beta"};

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
    throw InputError("schema error in field '" + field + "': " + what);
}

double number(const json& v, const std::string& field) {
    if (!v.is_number()) schema_error(field, "expected a number");
    return v.get<double>();
}

Vector column(const json& v, const std::string& field) {
    if (!v.is_array()) schema_error(field, "expected an array of numbers");
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = number(v[i], field);
    return out;
}

Matrix matrix(const json& v, const std::string& field) {
    if (!v.is_array()) schema_error(field, "expected a row-major array of rows");
    const auto rows = v.size();
    const auto cols = rows ? (v[0].is_array() ? v[0].size() : 0) : 0;
    Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        if (!v[i].is_array()) schema_error(field, "row " + std::to_string(i) + " is not an array");
        if (v[i].size() != cols) schema_error(field, "ragged rows");
        for (std::size_t j = 0; j < cols; ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = number(v[i][j], field);
        }
    }
    return out;
}

ordered_json matrix_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

template <class V>
ordered_json vector_json(const V& v) {
    ordered_json out = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

ordered_json number_or_null(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

}  // namespace

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ModelDocument parse_model(std::string_view contents) {
    json doc;
    try {
        doc = json::parse(contents.begin(), contents.end());
    } catch (const json::parse_error& e) {
        throw InputError("malformed model document at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw InputError("schema error: model document must be a JSON object");

    for (const auto& [key, value] : doc.items()) {
        if (!kRequired.count(key) && !kOptional.count(key)) schema_error(key, "unknown field");
    }
    for (const auto& key : kRequired) {
        if (!doc.contains(key)) schema_error(key, "required field missing");
    }

    ModelDocument out;
    ModelSpec& m = out.model;
    const auto& n = doc["n_controls"];
    if (!n.is_number_integer()) schema_error("n_controls", "expected an integer");
    m.n_controls = n.get<int>();

    const auto& names = doc["control_names"];
    if (!names.is_array()) schema_error("control_names", "expected an array of strings");
    for (const auto& name : names) {
        if (!name.is_string()) schema_error("control_names", "expected an array of strings");
        m.control_names.push_back(name.get<std::string>());
    }

    m.A0 = matrix(doc["A0"], "A0");
    m.A1 = matrix(doc["A1"], "A1");
    m.B0 = column(doc["B0"], "B0");
    m.B1 = column(doc["B1"], "B1");
    m.C0 = column(doc["C0"], "C0");
    m.D0 = column(doc["D0"], "D0").transpose();
    m.rho = number(doc["rho"], "rho");
    m.e = number(doc["e"], "e");
    m.p = number(doc["p"], "p");

    if (doc.contains("shock")) out.shock = number(doc["shock"], "shock");
    if (doc.contains("beta")) out.beta = number(doc["beta"], "beta");
    if (doc.contains("horizon")) {
        if (!doc["horizon"].is_number_integer()) schema_error("horizon", "expected an integer");
        out.horizon = doc["horizon"].get<int>();
    }

    const auto report = validate(m);
    if (!report.empty()) throw InputError("validation failed: " + format_report(report));
    return out;
}

std::string emit_model(const ModelDocument& doc) {
    const ModelSpec& m = doc.model;
    ordered_json j;
    j["n_controls"] = m.n_controls;
    j["control_names"] = m.control_names;
    j["A0"] = matrix_json(m.A0);
    j["A1"] = matrix_json(m.A1);
    j["B0"] = vector_json(m.B0);
    j["B1"] = vector_json(m.B1);
    j["C0"] = vector_json(m.C0);
    j["D0"] = vector_json(m.D0);
    j["rho"] = m.rho;
    j["e"] = m.e;
    j["p"] = m.p;
    if (doc.shock) j["shock"] = *doc.shock;
    if (doc.horizon) j["horizon"] = *doc.horizon;
    if (doc.beta) j["beta"] = *doc.beta;
    return j.dump(2) + "\n";
}

ordered_json to_json(const MarkovSolution& sol) {
    ordered_json j;
    j["q"] = sol.q;
    j["markov_valid"] = sol.markov_valid;
    j["q_equals_p"] = sol.q_equals_p;
    j["p"] = sol.p;
    j["shock"] = sol.shock;
    j["state"] = {{"impact", sol.k_I}, {"medium_run", sol.k_M}};
    ordered_json controls = ordered_json::object();
    for (int i = 0; i < sol.n_controls(); ++i) {
        controls[sol.control_names[i]] = {{"impact", sol.Y_I(i)}, {"medium_run", sol.Y_M(i)}};
    }
    j["controls"] = controls;
    return j;
}

ordered_json to_json(const RestrictionReport& r) {
    return {{"forward_impact", r.forward_impact},   {"forward_medium", r.forward_medium},
            {"backward_impact", r.backward_impact}, {"backward_medium", r.backward_medium},
            {"ar2_link", r.ar2_link}};
}

ordered_json to_json(const numerics::TrackingTrace& trace) {
    ordered_json pts = ordered_json::array();
    for (const auto& p : trace.points) pts.push_back({p.s, p.root});
    return {{"steps", static_cast<int>(trace.points.size()) - 1},
            {"window_expansions", trace.expansions},
            {"final_residual", trace.residual()},
            {"path", pts}};
}

ordered_json to_json(const nk::NKSolution& s) {
    return {{"q", s.q},       {"lambda_I", s.lambda_I}, {"lambda_M", s.lambda_M}, {"pi_I", s.pi_I},
            {"pi_M", s.pi_M}, {"y_I", s.y_I},           {"y_M", s.y_M}};
}

ordered_json to_json(const nk::NKDerivedStats& d) {
    ordered_json j;
    j["q"] = d.q;
    j["Psi"] = number_or_null(d.psi);
    j["euler_slope_I"] = number_or_null(d.euler_slope_I);
    j["pc_slope_I"] = number_or_null(d.pc_slope_I);
    j["pdv_coefficient"] = number_or_null(d.pdv_coefficient);
    j["pdv_scaling"] = number_or_null(d.pdv_scaling);
    j["drag"] = d.drag;
    j["sigma_EE"] = d.sigma_EE;
    j["sigma_PC"] = d.sigma_PC;
    j["sigma_EE_inflation"] = d.sigma_EE_inflation;
    j["sigma_PC_inflation"] = d.sigma_PC_inflation;
    j["shift_ratio"] = d.shift_ratio ? ordered_json(*d.shift_ratio) : ordered_json(nullptr);
    j["shift_ratio_reference"] = d.shift_ratio_reference;
    j["q_lower_bound"] = d.q_lower_bound;
    j["hump"] = d.hump;
    j["warnings"] = d.warnings;
    return j;
}

std::string irf_csv(const IrfPath& path) {
    std::ostringstream out;
    out << "n,exogenous,state";
    for (const auto& name : path.control_names) out << ',' << name;
    out << '\n';
    for (int n = 0; n <= path.horizon; ++n) {
        out << n << ',' << format_number(path.exogenous[n]) << ',' << format_number(path.state[n]);
        for (const auto& c : path.controls) out << ',' << format_number(c[n]);
        out << '\n';
    }
    return out.str();
}

std::string ensemble_csv(const EnsembleResult& r) {
    std::ostringstream out;
    out << "n,mean,stderr\n";
    for (std::size_t n = 0; n < r.mean.size(); ++n) {
        out << n << ',' << format_number(r.mean[n]) << ',' << format_number(r.stderr_[n]) << '\n';
    }
    return out.str();
}

std::string figure1_csv(const Figure1Table& t) {
    std::ostringstream out;
    out << "panel,n,mean,stderr,reference\n";
    for (const auto& panel : t.panels) {
        for (std::size_t n = 0; n < panel.result.mean.size(); ++n) {
            out << "J=" << panel.runs << ',' << n << ',' << format_number(panel.result.mean[n]) << ','
                << format_number(panel.result.stderr_[n]) << ',' << format_number(t.reference[n]) << '\n';
        }
    }
    return out.str();
}

std::string loci_csv(const std::vector<nk::LociPoint>& loci) {
    std::ostringstream out;
    out << "panel,locus,y,pi\n";
    for (const auto& p : loci) {
        out << p.panel << ',' << p.locus << ',' << format_number(p.y) << ',' << format_number(p.pi) << '\n';
    }
    return out.str();
}

}  // namespace mums::io

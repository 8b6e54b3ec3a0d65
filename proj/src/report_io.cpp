#include "qslb/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "qslb/errors.hpp"

namespace qslb {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j) {
    if (!j.is_object()) throw Error("complex entries must be {\"re\":..., \"im\":...} objects");
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

Matrix parse_matrix(const json& j, const char* field) {
    if (!j.is_array() || j.empty())
        throw Error(std::string(field) + " must be a nonempty array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const json& row = j.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw Error(std::string(field) + " must be square");
        for (Eigen::Index c = 0; c < n; ++c)
            m(r, c) = parse_complex(row.at(static_cast<std::size_t>(c)));
    }
    return m;
}

Vector parse_vector(const json& j) {
    if (!j.is_array() || j.empty()) throw Error("state must be a nonempty array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = parse_complex(j.at(static_cast<std::size_t>(i)));
    return v;
}

// Finite values go in bare, the rest quoted so the document stays valid JSON.
std::string json_double(double v) {
    if (std::isfinite(v)) return format_double(v);
    return "\"" + format_double(v) + "\"";
}

void append_complex(std::string& out, const Complex& z) {
    out += "{\"re\": ";
    out += json_double(z.real());
    out += ", \"im\": ";
    out += json_double(z.imag());
    out += "}";
}

void append_matrix(std::string& out, const Matrix& m, const std::string& indent) {
    out += "[\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out += indent + "  [";
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out += ", ";
            append_complex(out, m(r, c));
        }
        out += r + 1 < m.rows() ? "],\n" : "]\n";
    }
    out += indent + "]";
}

void append_state(std::string& out, const Vector& v) {
    out += "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        append_complex(out, v(i));
    }
    out += "]";
}

void append_instance(std::string& out, const ModelInstance& inst, const std::string& indent) {
    out += "{\n";
    out += indent + "  \"label\": \"" + inst.label + "\",\n";
    out += indent + "  \"delta_e\": " + json_double(inst.delta_e) + ",\n";
    out += indent + "  \"hamiltonian\": ";
    append_matrix(out, inst.hamiltonian.entries(), indent + "  ");
    out += ",\n" + indent + "  \"observable\": ";
    append_matrix(out, inst.observable_q.entries(), indent + "  ");
    out += ",\n" + indent + "  \"state\": ";
    append_state(out, inst.initial_state.amplitudes());
    out += "\n" + indent + "}";
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("scenario parse: ") + e.what());
    }
    try {
        const Matrix h = parse_matrix(j.at("hamiltonian"), "hamiltonian");
        const Matrix q = parse_matrix(j.at("observable"), "observable");
        const Vector s = parse_vector(j.at("state"));
        if (q.rows() != h.rows() || s.size() != h.rows())
            throw DimensionMismatch("hamiltonian, observable and state sizes disagree");
        const double hbar = j.contains("hbar") ? j.at("hbar").get<double>() : 1.0;
        const double t_max = j.at("t_max").get<double>();
        const int steps = j.at("steps").get<int>();
        if (!(t_max > 0.0)) throw Error("t_max must be positive");
        if (steps < 2) throw Error("steps must be at least 2");
        return Scenario{Observable(h),   Observable(q), QuantumState(s),
                        UnitsConfig(hbar), t_max,        steps};
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(std::string("scenario fields: ") + e.what());
    }
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

std::string write_scenario(const Scenario& scenario) {
    std::string out = "{\n  \"hamiltonian\": ";
    append_matrix(out, scenario.hamiltonian.entries(), "  ");
    out += ",\n  \"observable\": ";
    append_matrix(out, scenario.observable.entries(), "  ");
    out += ",\n  \"state\": ";
    append_state(out, scenario.state.amplitudes());
    out += ",\n  \"hbar\": " + json_double(scenario.units.hbar);
    out += ",\n  \"t_max\": " + json_double(scenario.t_max);
    out += ",\n  \"steps\": " + std::to_string(scenario.steps);
    out += "\n}\n";
    return out;
}

std::vector<double> time_grid(double t_max, int steps) {
    if (!(t_max > 0.0)) throw Error("t_max must be positive");
    if (steps < 2) throw Error("steps must be at least 2");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        grid[static_cast<std::size_t>(i)] = t_max * i / (steps - 1);
    return grid;
}

std::string format_double(double value) {
    if (std::isnan(value)) return "NaN";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string write_report_csv(const BoundReport& report) {
    std::string out = "t,q_mean,delta_q,dq,fidelity,beta,ratio,tan_ceiling,franson_ok,tan_ok\n";
    for (const BoundPoint& p : report.points) {
        out += format_double(p.t) + ',' + format_double(p.q_mean) + ',' +
               format_double(p.delta_q) + ',' + format_double(p.dq) + ',' +
               format_double(p.fid) + ',' + format_double(p.beta) + ',' +
               format_double(p.ratio) + ',' + format_double(p.tan_ceiling) + ',';
        out += p.franson_ok ? "true," : "false,";
        out += p.tan_ok ? "true\n" : "false\n";
    }
    return out;
}

std::string write_report_json(const BoundReport& report) {
    std::string out = "{\n";
    out += "  \"delta_e\": " + json_double(report.delta_e) + ",\n";
    out += "  \"window_end\": " + json_double(report.window_end) + ",\n";
    out += "  \"franson_end\": " + json_double(report.franson_end) + ",\n";
    out += std::string("  \"eigenstate_start\": ") +
           (report.eigenstate_start ? "true" : "false") + ",\n";
    out += std::string("  \"window_respected\": ") +
           (report.window_respected ? "true" : "false") + ",\n";
    out += "  \"rows\": [\n";
    for (std::size_t i = 0; i < report.points.size(); ++i) {
        const BoundPoint& p = report.points[i];
        out += "    {\"t\": " + json_double(p.t) + ", \"q_mean\": " + json_double(p.q_mean) +
               ", \"delta_q\": " + json_double(p.delta_q) + ", \"dq\": " + json_double(p.dq) +
               ", \"fidelity\": " + json_double(p.fid) + ", \"beta\": " + json_double(p.beta) +
               ", \"ratio\": " + json_double(p.ratio) +
               ", \"tan_ceiling\": " + json_double(p.tan_ceiling) + ", \"in_window\": " +
               (p.in_window ? "true" : "false") + ", \"franson_ok\": " +
               (p.franson_ok ? "true" : "false") + ", \"fidelity_ok\": " +
               (p.fidelity_ok ? "true" : "false") + ", \"beta_ok\": " +
               (p.beta_ok ? "true" : "false") + ", \"tan_ok\": " + (p.tan_ok ? "true" : "false") +
               "}";
        out += i + 1 < report.points.size() ? ",\n" : "\n";
    }
    out += "  ],\n  \"violations\": [";
    const auto violations = report.violations();
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) out += ", ";
        out += "{\"inequality\": \"" + violations[i].inequality +
               "\", \"t\": " + json_double(violations[i].t) + "}";
    }
    out += "]\n}\n";
    return out;
}

std::string write_search_json(const SearchReport& report, const SearchConfig& config,
                              const std::string& mode) {
    std::string out = "{\n";
    out += "  \"mode\": \"" + mode + "\",\n";
    out += "  \"dim\": " + std::to_string(config.dim) + ",\n";
    out += "  \"trials\": " + std::to_string(config.trials) + ",\n";
    out += "  \"seed\": " + std::to_string(config.seed) + ",\n";
    out += "  \"window\": " + json_double(config.window) + ",\n";
    out += "  \"grid_points\": " + std::to_string(config.grid_points) + ",\n";
    out += "  \"refine_tol\": " + json_double(config.refine_tol) + ",\n";
    out += "  \"bound_compared\": " + json_double(report.bound_compared) + ",\n";
    out += "  \"min_crossing\": " +
           (report.min_crossing ? json_double(*report.min_crossing) : "null") + ",\n";
    out += "  \"argmin_trial\": " +
           (report.argmin_trial ? std::to_string(*report.argmin_trial) : "null") + ",\n";
    out += std::string("  \"verdict\": ") +
           (report.violation ? "\"violation\"" : "\"no-violation\"") + ",\n";
    out += "  \"argmin_instance\": ";
    if (report.argmin_instance) {
        append_instance(out, *report.argmin_instance, "  ");
    } else {
        out += "null";
    }
    out += ",\n  \"crossings\": [";
    for (std::size_t i = 0; i < report.trials.size(); ++i) {
        if (i) out += ", ";
        out += report.trials[i].crossing ? json_double(*report.trials[i].crossing) : "null";
    }
    out += "]\n}\n";
    return out;
}

}  // namespace qslb

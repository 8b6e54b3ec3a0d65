#pragma once

#include <string>
#include <vector>

#include "qslb/bounds.hpp"
#include "qslb/quantum.hpp"
#include "qslb/search.hpp"

namespace qslb {

/// One self-contained trajectory problem, as read from a scenario file.
struct Scenario {
    Observable hamiltonian;
    Observable observable;
    QuantumState state;
    UnitsConfig units;
    double t_max;
    int steps;
};

/// Parses the scenario JSON schema: complex entries as {"re": x, "im": y},
/// "hamiltonian" and "observable" as row-major matrices, "state" as a vector,
/// optional "hbar" (default 1), plus "t_max" and "steps" (>= 2). Structural
/// and validation problems surface as Error subtypes.
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario(const std::string& path);

/// Inverse of parse_scenario_text; 17 significant digits so a round trip is
/// value-exact for doubles.
std::string write_scenario(const Scenario& scenario);

/// steps points from 0 to t_max inclusive.
std::vector<double> time_grid(double t_max, int steps);

/// %.17g, with "NaN" / "inf" / "-inf" for the non-finite values.
std::string format_double(double value);

/// CSV with the fixed column set
/// t,q_mean,delta_q,dq,fidelity,beta,ratio,tan_ceiling,franson_ok,tan_ok.
std::string write_report_csv(const BoundReport& report);
std::string write_report_json(const BoundReport& report);

/// Search report with the generating config echoed (never the thread count:
/// reports must be identical for any parallel schedule).
std::string write_search_json(const SearchReport& report, const SearchConfig& config,
                              const std::string& mode);

}  // namespace qslb

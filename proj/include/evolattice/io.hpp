#pragma once

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include "evolattice/regions.hpp"
#include "evolattice/simulator.hpp"

namespace evolattice {

// Shortest decimal representation that parses back to exactly the same double.
inline std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

inline void write_comment_block(std::ostream& os, const std::vector<std::string>& lines) {
    for (const auto& l : lines) os << "# " << l << "\n";
}

inline const char* sweep_csv_header() {
    return "a11,a22,a12,a21,N,regime,a1,a2,u_star,thm1,thm2a,thm2b,lemma2wins,thm4,pd_triangle";
}

// One row per grid cell, a11-major. Optional per-cell simulated winner-1
// frequencies append a sim_winner1_freq column.
inline void write_sweep_csv(std::ostream& os, const SweepResult& result,
                            const std::vector<std::string>& comment_lines = {},
                            const std::vector<double>* sim_winner1_freq = nullptr) {
    write_comment_block(os, comment_lines);
    os << sweep_csv_header();
    if (sim_winner1_freq) os << ",sim_winner1_freq";
    os << "\n";
    for (std::size_t k = 0; k < result.cells.size(); ++k) {
        const RegionVerdict& v = result.cells[k];
        os << format_double(v.a11) << ',' << format_double(v.a22) << ','
           << format_double(v.a12) << ',' << format_double(v.a21) << ',' << v.N << ','
           << regime_name(v.regime.regime) << ',' << format_double(v.regime.a1) << ','
           << format_double(v.regime.a2) << ',';
        if (v.regime.interior_fixed_point) os << format_double(*v.regime.interior_fixed_point);
        os << ',' << (v.coexists ? 1 : 0) << ',' << (v.s1_dominates ? 1 : 0) << ','
           << (v.s2_dominates ? 1 : 0) << ',' << (v.extrema_condition ? 1 : 0) << ',';
        if (v.drift_winner) os << strategy_label(*v.drift_winner);
        os << ',' << (v.prisoners_dilemma ? 1 : 0);
        if (sim_winner1_freq) os << ',' << format_double((*sim_winner1_freq)[k]);
        os << "\n";
    }
}

inline const char* record_csv_header() { return "time,density1,fixed,winner"; }

inline void write_record_csv(std::ostream& os, const SimulationRecord& rec,
                             const std::vector<std::string>& comment_lines = {},
                             bool with_header = true) {
    write_comment_block(os, comment_lines);
    if (with_header) os << record_csv_header() << "\n";
    for (const auto& row : rec.samples)
        os << format_double(row.time) << ',' << format_double(row.density1) << ",0,\n";
    if (rec.fixation) {
        const double d = rec.fixation->winner == Strategy::s1 ? 1.0 : 0.0;
        os << format_double(rec.fixation->time) << ',' << format_double(d) << ",1,"
           << strategy_label(rec.fixation->winner) << "\n";
    }
}

inline const char* drift_csv_header() {
    return "gap_class,mean_drift,std_error,events,replicas,closed_form";
}

struct DriftRow {
    int gap_class;
    DriftEstimate estimate;
    double closed_form;
};

inline void write_drift_csv(std::ostream& os, const std::vector<DriftRow>& rows,
                            const std::vector<std::string>& comment_lines = {}) {
    write_comment_block(os, comment_lines);
    os << drift_csv_header() << "\n";
    for (const auto& r : rows)
        os << r.gap_class << ',' << format_double(r.estimate.mean_drift) << ','
           << format_double(r.estimate.std_error) << ',' << r.estimate.events_used << ','
           << r.estimate.replicas << ',' << format_double(r.closed_form) << "\n";
}

}  // namespace evolattice

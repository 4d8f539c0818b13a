#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncts/data_model.hpp"

namespace ncts {

struct InstanceRow {
    std::string id;
    double sari = 0.0;
    int chosen_rank = 0;
};

// One row of a results table: mean sentence SARI and corpus FKGL of a
// system's selections, with gains relative to a baseline system.
struct SystemReport {
    std::string system;
    double sari_mean = 0.0;
    double fkgl = 0.0;
    std::optional<double> delta_sari;  // present iff the report has a baseline
    std::optional<double> delta_fkgl;
    std::vector<InstanceRow> per_instance;
};

struct NamedSelections {
    std::string name;
    std::vector<Selection> selections;
};

// Every selection id must name a set in `sets` that has references, and the
// chosen rank/text must match that set. `baseline`, when given, must be one of
// the system names.
std::vector<SystemReport> evaluate_systems(const std::vector<CandidateSet>& sets,
                                           const std::vector<NamedSelections>& systems,
                                           const std::optional<std::string>& baseline);

std::string reports_to_json(const std::vector<SystemReport>& reports,
                            const std::optional<std::string>& baseline);

// Aligned columns separated by tabs, e.g.
//   System  SARI          FKGL
//   NC-TS   46.86 (+2.6)  7.20 (-0.6)
std::string reports_to_table(const std::vector<SystemReport>& reports);

} // namespace ncts

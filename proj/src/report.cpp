#include "ncts/report.hpp"

#include "ncts/error.hpp"
#include "ncts/exact_sum.hpp"
#include "ncts/format.hpp"
#include "ncts/metrics.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace ncts {

std::vector<SystemReport> evaluate_systems(const std::vector<CandidateSet>& sets,
                                           const std::vector<NamedSelections>& systems,
                                           const std::optional<std::string>& baseline)
{
    std::unordered_map<std::string, const CandidateSet*> by_id;
    for (const CandidateSet& set : sets)
        by_id.emplace(set.id, &set);

    std::unordered_set<std::string> names;
    for (const auto& system : systems)
        if (!names.insert(system.name).second)
            throw ValidationError("system '" + system.name + "' given twice");
    if (baseline && !names.count(*baseline))
        throw ValidationError("baseline '" + *baseline + "' is not among the evaluated systems");

    std::vector<SystemReport> reports;
    for (const auto& system : systems) {
        if (system.selections.empty())
            throw ValidationError("system '" + system.name + "' has no selections");
        SystemReport report;
        report.system = system.name;
        std::vector<double> scores;
        std::vector<std::string> texts;
        for (const Selection& s : system.selections) {
            auto it = by_id.find(s.set_id);
            if (it == by_id.end())
                throw ValidationError("system '" + system.name + "': id '" + s.set_id +
                                      "' is not in the candidate file");
            const CandidateSet& set = *it->second;
            if (!set.has_references())
                throw ValidationError("set '" + set.id + "' has no references");
            check_selection_against(s, set);
            const double value = sari(set.source, s.chosen_text, *set.references).final;
            scores.push_back(value);
            texts.push_back(s.chosen_text);
            report.per_instance.push_back({s.set_id, value, s.chosen_rank});
        }
        report.sari_mean = exact_mean(scores);
        report.fkgl = fkgl(texts).grade;
        reports.push_back(std::move(report));
    }

    if (baseline) {
        const auto base = std::find_if(reports.begin(), reports.end(),
                                       [&](const SystemReport& r) { return r.system == *baseline; });
        const double base_sari = base->sari_mean;
        const double base_fkgl = base->fkgl;
        for (auto& r : reports) {
            r.delta_sari = r.sari_mean - base_sari;
            r.delta_fkgl = r.fkgl - base_fkgl;
        }
    }
    return reports;
}

std::string reports_to_json(const std::vector<SystemReport>& reports,
                            const std::optional<std::string>& baseline)
{
    nlohmann::ordered_json doc;
    doc["baseline"] = baseline ? nlohmann::ordered_json(*baseline) : nlohmann::ordered_json();
    auto systems = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json s;
        s["system"] = r.system;
        s["sari_mean"] = r.sari_mean;
        s["fkgl"] = r.fkgl;
        if (r.delta_sari) {
            s["delta_sari"] = *r.delta_sari;
            s["delta_fkgl"] = *r.delta_fkgl;
            s["delta_sari_display"] = format_signed_delta(*r.delta_sari);
            s["delta_fkgl_display"] = format_signed_delta(*r.delta_fkgl);
        }
        auto rows = nlohmann::ordered_json::array();
        for (const auto& row : r.per_instance) {
            nlohmann::ordered_json item;
            item["id"] = row.id;
            item["sari"] = row.sari;
            item["chosen_rank"] = row.chosen_rank;
            rows.push_back(std::move(item));
        }
        s["per_instance"] = std::move(rows);
        systems.push_back(std::move(s));
    }
    doc["systems"] = std::move(systems);
    return doc.dump(2) + "\n";
}

std::string reports_to_table(const std::vector<SystemReport>& reports)
{
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"System", "SARI", "FKGL"});
    for (const auto& r : reports) {
        std::string sari_cell = format_fixed(r.sari_mean, 2);
        std::string fkgl_cell = format_fixed(r.fkgl, 2);
        if (r.delta_sari) {
            sari_cell += " (" + format_signed_delta(*r.delta_sari) + ")";
            fkgl_cell += " (" + format_signed_delta(*r.delta_fkgl) + ")";
        }
        rows.push_back({r.system, sari_cell, fkgl_cell});
    }

    std::vector<std::size_t> widths(3, 0);
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            widths[c] = std::max(widths[c], row[c].size());

    std::string out;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            if (c + 1 < row.size()) {
                out.append(widths[c] - row[c].size(), ' ');
                out += '\t';
            }
        }
        out += '\n';
    }
    return out;
}

} // namespace ncts

// Copyright 2026 The qnlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnl/report.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace qnl {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out += c;
        }
    }
    out += "\"";
    return out;
}

ordered_json tuple_values(const OutcomeTuple& t) {
    ordered_json values = ordered_json::array();
    for (int v : t.values()) {
        values.push_back(v);
    }
    return values;
}

}  // namespace

std::optional<std::pair<long long, long long>> dyadic_fraction(double x, long long max_den,
                                                               double tol) {
    for (long long den = 1; den <= max_den; den *= 2) {
        const double scaled = x * static_cast<double>(den);
        const long long num = std::llround(scaled);
        if (std::abs(x - static_cast<double>(num) / static_cast<double>(den)) <= tol) {
            const long long g = std::gcd(std::abs(num) == 0 ? den : std::abs(num), den);
            return std::make_pair(num / g, den / g);
        }
    }
    return std::nullopt;
}

std::string format_number(double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

std::string format_probability(double x) {
    std::string out = format_number(x);
    if (const auto frac = dyadic_fraction(x)) {
        const auto [num, den] = *frac;
        if (den == 1) {
            out += " (" + std::to_string(num) + ")";
        } else {
            out += " (" + std::to_string(num) + "/" + std::to_string(den) + ")";
        }
    }
    return out;
}

std::string to_text(const Report& report) {
    std::ostringstream out;
    out << "qnlab report (schema " << report.schema_version << ")\n";
    out << "scenario: " << report.scenario << "\n";
    out << "tolerance: " << format_number(report.metadata.tolerance) << "\n";

    if (report.predictions) {
        out << "\n== predictions ==\n";
        for (const RowCheck& row : report.predictions->check.rows) {
            out << row.row << "\n";
            out << "  expected " << format_probability(row.expected) << "  computed "
                << format_probability(row.computed) << "  deviation "
                << format_number(row.deviation) << "\n";
        }
        out << "max deviation: " << format_number(report.predictions->check.max_deviation)
            << "\n";
    }

    if (report.distribution) {
        out << "\n== joint distribution " << report.distribution->context << " ==\n";
        for (const auto& [tuple, p] : report.distribution->distribution.entries()) {
            out << "  (" << tuple.str() << ")  " << format_probability(p) << "\n";
        }
    }

    if (report.lhv) {
        const LhvRun& run = report.lhv->run;
        out << "\n== hidden-variable search (" << run.case_name << ") ==\n";
        out << "quantities:";
        for (const std::string& q : run.quantities) {
            out << " " << q;
        }
        out << "\n";
        for (const Constraint& c : run.constraints) {
            out << "constraint: " << c.str() << "   [context " << c.context_tag() << "]\n";
        }
        if (run.event) {
            out << "event: " << run.event->str() << "   [context "
                << run.event->context_tag() << "]\n";
        }
        out << "searched: " << run.report.searched << "\n";
        out << "models: " << run.report.models.size() << "\n";
        if (run.expected_models) {
            out << "expected models: " << *run.expected_models << "\n";
        }
        out << "contradiction: " << (run.report.contradiction ? "true" : "false") << "\n";
        out << "mixes incompatible contexts: "
            << (run.report.mixed_contexts ? "true" : "false") << "\n";
        for (const Assignment& model : run.report.models) {
            out << "  model: " << model.str() << "\n";
        }
        if (run.core) {
            out << "minimal contradictory core:\n";
            for (const Constraint& c : run.core->core) {
                out << "  " << c.name << ": " << c.str() << "\n";
            }
            for (const std::string& line : run.core->trace) {
                out << "  " << line << "\n";
            }
        }
    }

    if (report.disturbance) {
        out << "\n== disturbance ==\n";
        for (const DisturbanceReport& r : report.disturbance->reports) {
            out << r.prediction << "\n";
            out << "  p_before " << format_probability(r.p_before) << "  p_after "
                << format_probability(r.p_after) << "  given probability "
                << format_probability(r.given_probability) << "\n";
            out << "  ordering: " << r.ordering << "\n";
            for (const BranchEntry& b : r.branches) {
                out << "    branch (" << b.outcomes.str() << ")  probability "
                    << format_probability(b.probability) << "  target "
                    << format_probability(b.target_probability) << "\n";
            }
        }
    }

    if (report.audit) {
        out << "\n== commutation audit " << report.audit->audit.context << " ==\n";
        for (const AuditEntry& e : report.audit->audit.entries) {
            out << "  [" << e.quantity << ", " << e.observable << "] "
                << (e.commutes ? "commute" : "do not commute") << "\n";
        }
    }

    if (report.sampling) {
        out << "\n== sampling " << report.sampling->context << " ==\n";
        out << "samples: " << report.sampling->samples << "  seed: " << report.sampling->seed
            << "\n";
        for (const SampleRow& row : report.sampling->rows) {
            out << "  (" << row.outcomes.str() << ")  count " << row.count << "  expected "
                << format_probability(row.expected_probability) << "\n";
        }
    }

    return out.str();
}

std::string to_json(const Report& report) {
    ordered_json j;
    j["schema_version"] = report.schema_version;
    j["scenario"] = report.scenario;
    ordered_json meta;
    meta["tolerance"] = report.metadata.tolerance;
    if (report.metadata.seed) {
        meta["seed"] = *report.metadata.seed;
    }
    if (report.metadata.samples) {
        meta["samples"] = *report.metadata.samples;
    }
    j["metadata"] = std::move(meta);

    if (report.predictions) {
        ordered_json rows = ordered_json::array();
        for (const RowCheck& row : report.predictions->check.rows) {
            ordered_json r;
            r["name"] = row.row;
            r["expected"] = row.expected;
            r["computed"] = row.computed;
            r["deviation"] = row.deviation;
            rows.push_back(std::move(r));
        }
        j["predictions"] = {
            {"rows", std::move(rows)},
            {"max_deviation", report.predictions->check.max_deviation},
        };
    }

    if (report.distribution) {
        ordered_json outcomes = ordered_json::array();
        for (const auto& [tuple, p] : report.distribution->distribution.entries()) {
            ordered_json o;
            o["values"] = tuple_values(tuple);
            o["probability"] = p;
            if (const auto frac = dyadic_fraction(p)) {
                o["fraction"] = std::to_string(frac->first) + "/" +
                                std::to_string(frac->second);
            }
            outcomes.push_back(std::move(o));
        }
        j["distribution"] = {
            {"context", report.distribution->context},
            {"labels", report.distribution->distribution.labels()},
            {"outcomes", std::move(outcomes)},
        };
    }

    if (report.lhv) {
        const LhvRun& run = report.lhv->run;
        ordered_json l;
        l["case"] = run.case_name;
        l["quantities"] = run.quantities;
        ordered_json constraints = ordered_json::array();
        for (const Constraint& c : run.constraints) {
            constraints.push_back(
                ordered_json{{"name", c.name}, {"rule", c.str()}, {"context", c.context_tag()}});
        }
        l["constraints"] = std::move(constraints);
        if (run.event) {
            l["event"] = ordered_json{{"name", run.event->name},
                                      {"rule", run.event->str()},
                                      {"context", run.event->context_tag()}};
        }
        l["searched"] = run.report.searched;
        l["model_count"] = run.report.models.size();
        if (run.expected_models) {
            l["expected_models"] = *run.expected_models;
        }
        l["contradiction"] = run.report.contradiction;
        l["mixes_incompatible_contexts"] = run.report.mixed_contexts;
        ordered_json models = ordered_json::array();
        for (const Assignment& model : run.report.models) {
            ordered_json m = ordered_json::object();
            for (const auto& [name, value] : model.values) {
                m[name] = value;
            }
            models.push_back(std::move(m));
        }
        l["models"] = std::move(models);
        if (run.core) {
            ordered_json core;
            ordered_json names = ordered_json::array();
            for (const Constraint& c : run.core->core) {
                names.push_back(c.name);
            }
            core["constraints"] = std::move(names);
            core["trace"] = run.core->trace;
            l["core"] = std::move(core);
        }
        j["lhv"] = std::move(l);
    }

    if (report.disturbance) {
        ordered_json reports = ordered_json::array();
        for (const DisturbanceReport& r : report.disturbance->reports) {
            ordered_json d;
            d["prediction"] = r.prediction;
            d["p_before"] = r.p_before;
            d["p_after"] = r.p_after;
            d["given_probability"] = r.given_probability;
            d["ordering"] = r.ordering;
            d["stage_labels"] = r.stage_labels;
            ordered_json branches = ordered_json::array();
            for (const BranchEntry& b : r.branches) {
                branches.push_back(ordered_json{{"outcomes", tuple_values(b.outcomes)},
                                                {"probability", b.probability},
                                                {"target_probability", b.target_probability}});
            }
            d["branches"] = std::move(branches);
            reports.push_back(std::move(d));
        }
        j["disturbance"] = {{"reports", std::move(reports)}};
    }

    if (report.audit) {
        ordered_json entries = ordered_json::array();
        for (const AuditEntry& e : report.audit->audit.entries) {
            entries.push_back(ordered_json{{"quantity", e.quantity},
                                           {"observable", e.observable},
                                           {"commutes", e.commutes}});
        }
        j["audit"] = {{"context", report.audit->audit.context},
                      {"entries", std::move(entries)}};
    }

    if (report.sampling) {
        ordered_json rows = ordered_json::array();
        for (const SampleRow& row : report.sampling->rows) {
            rows.push_back(ordered_json{{"values", tuple_values(row.outcomes)},
                                        {"count", row.count},
                                        {"expected_probability", row.expected_probability}});
        }
        j["sampling"] = {{"context", report.sampling->context},
                         {"samples", report.sampling->samples},
                         {"seed", report.sampling->seed},
                         {"rows", std::move(rows)}};
    }

    return j.dump(2) + "\n";
}

std::string to_csv(const Report& report) {
    std::ostringstream out;
    out << "section,key,value,extra\n";
    out << "meta,schema_version," << report.schema_version << ",\n";
    out << "meta,scenario," << report.scenario << ",\n";
    out << "meta,tolerance," << format_number(report.metadata.tolerance) << ",\n";
    if (report.metadata.seed) {
        out << "meta,seed," << *report.metadata.seed << ",\n";
    }
    if (report.metadata.samples) {
        out << "meta,samples," << *report.metadata.samples << ",\n";
    }
    if (report.predictions) {
        for (const RowCheck& row : report.predictions->check.rows) {
            out << "prediction," << csv_escape(row.row) << "," << format_number(row.computed)
                << "," << format_number(row.deviation) << "\n";
        }
        out << "prediction,max_deviation,"
            << format_number(report.predictions->check.max_deviation) << ",\n";
    }
    if (report.distribution) {
        for (const auto& [tuple, p] : report.distribution->distribution.entries()) {
            out << "outcome," << csv_escape(tuple.str()) << "," << format_number(p) << ",\n";
        }
    }
    if (report.lhv) {
        const LhvRun& run = report.lhv->run;
        out << "lhv,searched," << run.report.searched << ",\n";
        out << "lhv,models," << run.report.models.size() << ",\n";
        out << "lhv,contradiction," << (run.report.contradiction ? "true" : "false") << ",\n";
        out << "lhv,mixes_incompatible_contexts,"
            << (run.report.mixed_contexts ? "true" : "false") << ",\n";
        for (const Assignment& model : run.report.models) {
            out << "model," << csv_escape(model.str()) << ",,\n";
        }
    }
    if (report.disturbance) {
        for (const DisturbanceReport& r : report.disturbance->reports) {
            out << "disturbance," << csv_escape(r.prediction) << ","
                << format_number(r.p_before) << "," << format_number(r.p_after) << "\n";
        }
    }
    if (report.audit) {
        for (const AuditEntry& e : report.audit->audit.entries) {
            out << "audit," << csv_escape(e.quantity) << "," << csv_escape(e.observable)
                << "," << (e.commutes ? "true" : "false") << "\n";
        }
    }
    if (report.sampling) {
        for (const SampleRow& row : report.sampling->rows) {
            out << "sample," << csv_escape(row.outcomes.str()) << "," << row.count << ","
                << format_number(row.expected_probability) << "\n";
        }
    }
    return out.str();
}

}  // namespace qnl

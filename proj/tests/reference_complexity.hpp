#pragma once

// Plain-loop reference implementation of the redesign-complexity metric.
// Deliberately unoptimized and independent of the engine in
// src/complexity.cpp; the equivalence suite checks the two agree exactly on
// small random monoliths.

#include <set>
#include <string>
#include <vector>

#include "monodec/complexity.hpp"
#include "monodec/model.hpp"

namespace monodec::test {

inline std::string ref_cluster_of(const Decomposition& d, EntityId e) {
    for (const auto& [name, members] : d.clusters) {
        if (members.contains(e)) {
            return name;
        }
    }
    throw std::runtime_error("unassigned entity in reference oracle");
}

inline std::vector<std::vector<Access>> ref_runs(const Trace& t,
                                                 const Decomposition& d) {
    std::vector<std::vector<Access>> runs;
    for (const Access& a : t.accesses) {
        if (runs.empty() ||
            ref_cluster_of(d, runs.back().back().entity) != ref_cluster_of(d, a.entity)) {
            runs.emplace_back();
        }
        runs.back().push_back(a);
    }
    return runs;
}

inline std::set<Access> ref_prune(const std::vector<Access>& run) {
    std::set<Access> kept;
    std::set<EntityId> entities;
    for (const Access& a : run) {
        entities.insert(a.entity);
    }
    for (EntityId e : entities) {
        bool has_write = false;
        bool read_before_write = false;
        bool has_read = false;
        for (const Access& a : run) {
            if (a.entity != e) {
                continue;
            }
            if (a.mode == Mode::Write) {
                has_write = true;
            } else {
                has_read = true;
                if (!has_write) {
                    read_before_write = true;
                }
            }
        }
        if (has_write) {
            kept.insert({e, Mode::Write});
            if (read_before_write) {
                kept.insert({e, Mode::Read});
            }
        } else if (has_read) {
            kept.insert({e, Mode::Read});
        }
    }
    return kept;
}

inline bool ref_distributed(const Functionality& f, const Decomposition& d) {
    for (const Trace& t : f.traces) {
        if (ref_runs(t, d).size() >= 2) {
            return true;
        }
    }
    return false;
}

inline std::set<Access> ref_pruned_union(const Functionality& f,
                                         const Decomposition& d) {
    std::set<Access> u;
    for (const Trace& t : f.traces) {
        for (const auto& run : ref_runs(t, d)) {
            const auto pruned = ref_prune(run);
            u.insert(pruned.begin(), pruned.end());
        }
    }
    return u;
}

inline double ref_functionality_complexity(const Monolith& m, const std::string& name,
                                           const Decomposition& d,
                                           const ComplexityOptions& opts = {}) {
    const Functionality& f = m.functionalities.at(name);
    std::vector<double> per_trace;
    for (const Trace& t : f.traces) {
        const auto runs = ref_runs(t, d);
        if (runs.size() < 2 && !opts.strict_summation) {
            per_trace.push_back(0.0);
            continue;
        }
        double trace_score = 0.0;
        for (const auto& run : runs) {
            std::set<std::string> others;
            for (const Access& a : ref_prune(run)) {
                const Access inv{a.entity, inverse(a.mode)};
                for (const auto& [other_name, other] : m.functionalities) {
                    if (other_name == name || !ref_distributed(other, d)) {
                        continue;
                    }
                    if (ref_pruned_union(other, d).contains(inv)) {
                        others.insert(other_name);
                    }
                }
            }
            trace_score += static_cast<double>(others.size());
        }
        per_trace.push_back(trace_score);
    }
    if (per_trace.empty()) {
        return 0.0;
    }
    if (opts.aggregation == TraceAggregation::Max) {
        double best = 0.0;
        for (double v : per_trace) {
            best = std::max(best, v);
        }
        return best;
    }
    double sum = 0.0;
    for (double v : per_trace) {
        sum += v;
    }
    return sum / static_cast<double>(per_trace.size());
}

inline double ref_total_complexity(const Monolith& m, const Decomposition& d,
                                   const ComplexityOptions& opts = {}) {
    double total = 0.0;
    for (const auto& [name, f] : m.functionalities) {
        total += ref_functionality_complexity(m, name, d, opts);
    }
    return total;
}

} // namespace monodec::test

#include "monodec/model.hpp"

#include <algorithm>
#include <unordered_set>

#include "monodec/errors.hpp"

namespace monodec {

Mode inverse(Mode m) noexcept {
    return m == Mode::Read ? Mode::Write : Mode::Read;
}

std::set<EntityId> Decomposition::universe() const {
    std::set<EntityId> u;
    for (const auto& [name, members] : clusters) {
        u.insert(members.begin(), members.end());
    }
    return u;
}

std::size_t Decomposition::universe_size() const {
    std::size_t n = 0;
    for (const auto& [name, members] : clusters) {
        n += members.size();
    }
    return n;
}

ValidationReport validate_monolith(const Monolith& m) {
    ValidationReport report;
    std::set<EntityId> accessed;

    for (const auto& [name, f] : m.functionalities) {
        const std::string loc = "functionality '" + name + "'";
        if (f.traces.empty()) {
            report.errors.push_back({std::string(kNonEmptyTraces),
                                     "functionality has no traces", loc});
        }
        std::set<std::int64_t> seen_ids;
        for (const Trace& t : f.traces) {
            const std::string tloc = loc + " trace " + std::to_string(t.id);
            if (!seen_ids.insert(t.id).second) {
                report.errors.push_back({std::string(kDupTraceId),
                                         "duplicate trace id", tloc});
            }
            if (t.accesses.empty()) {
                report.errors.push_back({std::string(kEmptyTrace),
                                         "trace has no accesses", tloc});
            }
            for (const Access& a : t.accesses) {
                accessed.insert(a.entity);
                if (!m.entities.contains(a.entity)) {
                    report.errors.push_back(
                        {std::string(kMissingEntity),
                         "entity " + std::to_string(a.entity) +
                             " is accessed but not declared",
                         tloc});
                }
            }
        }
        for (std::size_t i = 0; i < f.traces.size(); ++i) {
            for (std::size_t j = i + 1; j < f.traces.size(); ++j) {
                if (f.traces[i].accesses == f.traces[j].accesses) {
                    report.warnings.push_back(
                        {std::string(kDuplicateTraces),
                         "traces " + std::to_string(f.traces[i].id) + " and " +
                             std::to_string(f.traces[j].id) +
                             " have identical access sequences",
                         loc});
                    j = f.traces.size();  // one warning per offending pair head
                }
            }
        }
    }

    for (const auto& [id, name] : m.entities) {
        if (!accessed.contains(id)) {
            report.warnings.push_back({std::string(kUnusedEntity),
                                       "entity is declared but never accessed",
                                       "entity " + std::to_string(id)});
        }
    }
    return report;
}

RestrictResult restrict_monolith(const Monolith& m,
                                 const std::set<std::string>& keep_functionalities,
                                 const std::set<EntityId>& keep_entities) {
    for (const auto& name : keep_functionalities) {
        if (!m.functionalities.contains(name)) {
            throw DomainError("UNKNOWN_FUNCTIONALITY",
                              "keep set references unknown functionality '" + name + "'");
        }
    }
    for (EntityId id : keep_entities) {
        if (!m.entities.contains(id)) {
            throw DomainError("UNKNOWN_ENTITY",
                              "keep set references unknown entity " + std::to_string(id));
        }
    }

    RestrictResult result;
    for (const auto& [id, name] : m.entities) {
        if (keep_entities.contains(id)) {
            result.monolith.entities.emplace(id, name);
        }
    }
    for (const auto& [name, f] : m.functionalities) {
        if (!keep_functionalities.contains(name)) {
            continue;
        }
        Functionality kept;
        kept.name = f.name;
        for (const Trace& t : f.traces) {
            Trace filtered;
            filtered.id = t.id;
            for (const Access& a : t.accesses) {
                if (keep_entities.contains(a.entity)) {
                    filtered.accesses.push_back(a);
                }
            }
            if (!filtered.accesses.empty()) {
                kept.traces.push_back(std::move(filtered));
            }
        }
        if (kept.traces.empty()) {
            result.warnings.push_back(
                {std::string(kEmptyAfterRestrict),
                 "all traces became empty under the entity restriction",
                 "functionality '" + name + "'"});
        } else {
            result.monolith.functionalities.emplace(name, std::move(kept));
        }
    }
    return result;
}

namespace {

bool fully_named(const Monolith& m) {
    if (m.entities.empty()) {
        return false;
    }
    return std::all_of(m.entities.begin(), m.entities.end(),
                       [](const auto& kv) { return kv.second.has_value(); });
}

} // namespace

CommonSubset common_subset(const Monolith& a, const Monolith& b) {
    CommonSubset out;
    for (const auto& [name, f] : a.functionalities) {
        if (b.functionalities.contains(name)) {
            out.functionalities.insert(name);
        }
    }
    if (fully_named(a) && fully_named(b)) {
        std::unordered_set<std::string> b_names;
        for (const auto& [id, name] : b.entities) {
            b_names.insert(*name);
        }
        for (const auto& [id, name] : a.entities) {
            if (b_names.contains(*name)) {
                out.entities.insert(id);
            }
        }
    } else {
        for (const auto& [id, name] : a.entities) {
            if (b.entities.contains(id)) {
                out.entities.insert(id);
            }
        }
    }
    return out;
}

void check_partition(const Decomposition& d, const std::set<EntityId>& universe) {
    std::set<EntityId> seen;
    for (const auto& [name, members] : d.clusters) {
        if (members.empty()) {
            throw DomainError("INVALID_PARTITION", "cluster '" + name + "' is empty");
        }
        for (EntityId e : members) {
            if (!seen.insert(e).second) {
                throw DomainError("INVALID_PARTITION",
                                  "entity " + std::to_string(e) +
                                      " appears in more than one cluster");
            }
            if (!universe.contains(e)) {
                throw DomainError("INVALID_PARTITION",
                                  "entity " + std::to_string(e) +
                                      " is outside the declared universe");
            }
        }
    }
    if (seen.size() != universe.size()) {
        for (EntityId e : universe) {
            if (!seen.contains(e)) {
                throw DomainError("INVALID_PARTITION",
                                  "entity " + std::to_string(e) +
                                      " is not assigned to any cluster");
            }
        }
    }
}

std::vector<EntityId> entity_order(const Monolith& m) {
    std::vector<EntityId> order;
    order.reserve(m.entities.size());
    for (const auto& [id, name] : m.entities) {
        order.push_back(id);
    }
    return order;
}

Decomposition single_cluster_decomposition(const Monolith& m) {
    Decomposition d;
    if (m.entities.empty()) {
        return d;
    }
    auto& cluster = d.clusters["c0"];
    for (const auto& [id, name] : m.entities) {
        cluster.insert(id);
    }
    return d;
}

Decomposition singleton_decomposition(const Monolith& m) {
    Decomposition d;
    std::size_t i = 0;
    for (const auto& [id, name] : m.entities) {
        d.clusters["c" + std::to_string(i++)] = {id};
    }
    return d;
}

} // namespace monodec

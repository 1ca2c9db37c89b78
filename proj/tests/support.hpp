#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "monodec/model.hpp"

namespace monodec::test {

inline Access R(EntityId e) { return {e, Mode::Read}; }
inline Access W(EntityId e) { return {e, Mode::Write}; }

// Builds small monoliths for test cases; entity map filled from the traces.
class MonolithBuilder {
public:
    MonolithBuilder& trace(const std::string& functionality,
                           std::vector<Access> accesses) {
        auto& f = m_.functionalities[functionality];
        f.name = functionality;
        Trace t;
        t.id = static_cast<std::int64_t>(f.traces.size());
        t.accesses = std::move(accesses);
        f.traces.push_back(std::move(t));
        return *this;
    }

    MonolithBuilder& entity(EntityId id, std::string name) {
        named_.emplace_back(id, std::move(name));
        return *this;
    }

    Monolith build() {
        Monolith m = m_;
        for (const auto& [name, f] : m.functionalities) {
            for (const Trace& t : f.traces) {
                for (const Access& a : t.accesses) {
                    m.entities.try_emplace(a.entity, std::nullopt);
                }
            }
        }
        for (const auto& [id, name] : named_) {
            m.entities[id] = name;
        }
        return m;
    }

private:
    Monolith m_;
    std::vector<std::pair<EntityId, std::string>> named_;
};

// The shared 3-entity example: f1:[(e1,R),(e2,W)], f2:[(e2,R),(e3,W)],
// f3:[(e1,R),(e1,W)].
inline Monolith running_example() {
    return MonolithBuilder{}
        .trace("f1", {R(1), W(2)})
        .trace("f2", {R(2), W(3)})
        .trace("f3", {R(1), W(1)})
        .build();
}

// Random partition of the monolith's entities into at most max_clusters
// non-empty clusters.
inline Decomposition random_decomposition(const Monolith& m, std::mt19937_64& rng,
                                          std::size_t max_clusters = 0) {
    const std::vector<EntityId> entities = entity_order(m);
    const std::size_t n = entities.size();
    const std::size_t k_cap = max_clusters == 0 ? n : std::min(max_clusters, n);
    const std::size_t k = 1 + rng() % k_cap;
    std::map<std::size_t, std::set<EntityId>> groups;
    for (EntityId e : entities) {
        groups[rng() % k].insert(e);
    }
    Decomposition d;
    std::size_t idx = 0;
    for (auto& [label, members] : groups) {
        d.clusters["c" + std::to_string(idx++)] = std::move(members);
    }
    return d;
}

} // namespace monodec::test

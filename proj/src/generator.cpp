#include "monodec/generator.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include "monodec/errors.hpp"

namespace monodec {

namespace {

void validate_params(const GenParams& p) {
    if (p.n_entities < 1) {
        throw DomainError("GEN_PARAMS", "nEntities must be positive");
    }
    if (p.n_functionalities < 1 || p.traces_per_functionality < 1 ||
        p.max_trace_length < 1) {
        throw DomainError("GEN_PARAMS",
                          "functionality/trace/length parameters must be positive");
    }
    if (p.write_ratio < 0.0 || p.write_ratio > 1.0 || p.clusteredness_bias < 0.0 ||
        p.clusteredness_bias > 1.0) {
        throw DomainError("GEN_PARAMS", "probabilities must lie in [0,1]");
    }
    if (p.n_families < 1 || p.n_families > p.n_entities ||
        p.n_families > p.n_functionalities) {
        throw DomainError("GEN_PARAMS",
                          "nFamilies must be in 1..min(nEntities, nFunctionalities)");
    }
}

// Bounded draws on top of the raw engine output; std::uniform_*
// distributions are not pinned by the standard, these are.
struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    std::uint64_t below(std::uint64_t n) { return engine() % n; }
    double unit() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
};

} // namespace

GeneratedWorkload generate_monolith(const GenParams& p) {
    validate_params(p);
    Rng rng(p.seed);

    const int k = p.n_families;
    std::vector<std::vector<EntityId>> family_entities(static_cast<std::size_t>(k));
    for (int e = 1; e <= p.n_entities; ++e) {
        family_entities[static_cast<std::size_t>((e - 1) % k)].push_back(e);
    }

    GeneratedWorkload out;
    for (int e = 1; e <= p.n_entities; ++e) {
        out.monolith.entities.emplace(e, std::nullopt);
    }
    for (int fam = 0; fam < k; ++fam) {
        auto& cluster = out.planted.clusters["c" + std::to_string(fam)];
        cluster.insert(family_entities[static_cast<std::size_t>(fam)].begin(),
                       family_entities[static_cast<std::size_t>(fam)].end());
    }

    auto draw_entity = [&](int family) {
        if (rng.unit() < p.clusteredness_bias) {
            const auto& pool = family_entities[static_cast<std::size_t>(family)];
            return pool[rng.below(pool.size())];
        }
        return static_cast<EntityId>(1 + rng.below(static_cast<std::uint64_t>(
                                             p.n_entities)));
    };
    auto draw_mode = [&]() {
        return rng.unit() < p.write_ratio ? Mode::Write : Mode::Read;
    };

    for (int fi = 0; fi < p.n_functionalities; ++fi) {
        const int family = fi % k;
        Functionality f;
        f.name = "f" + std::to_string(fi);
        for (int ti = 0; ti < p.traces_per_functionality; ++ti) {
            Trace t;
            t.id = ti;
            const auto len =
                1 + rng.below(static_cast<std::uint64_t>(p.max_trace_length));
            for (std::uint64_t a = 0; a < len; ++a) {
                t.accesses.push_back({draw_entity(family), draw_mode()});
            }
            f.traces.push_back(std::move(t));
        }
        out.monolith.functionalities.emplace(f.name, std::move(f));
    }

    // Coverage pass: every entity appears in at least one trace. Untouched
    // entities go to a functionality of their own family so bias-1 block
    // structure survives.
    std::set<EntityId> accessed;
    for (const auto& [name, f] : out.monolith.functionalities) {
        for (const Trace& t : f.traces) {
            for (const Access& a : t.accesses) {
                accessed.insert(a.entity);
            }
        }
    }
    for (int e = 1; e <= p.n_entities; ++e) {
        if (accessed.contains(e)) {
            continue;
        }
        const int family = (e - 1) % k;
        // Functionalities of this family are family, family+k, family+2k, ...
        const auto in_family =
            static_cast<std::uint64_t>((p.n_functionalities - 1 - family) / k + 1);
        const int fi = family + static_cast<int>(rng.below(in_family)) * k;
        Functionality& f = out.monolith.functionalities.at("f" + std::to_string(fi));
        Trace& t = f.traces[rng.below(f.traces.size())];
        t.accesses.push_back({e, draw_mode()});
    }
    return out;
}

} // namespace monodec

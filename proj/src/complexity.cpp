#include "monodec/complexity.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <span>
#include <unordered_map>

#include <json.hpp>

#include "monodec/errors.hpp"

namespace monodec {

namespace {

std::set<Access> prune_span(std::span<const Access> accesses) {
    struct EntityUse {
        std::size_t first_read = SIZE_MAX;
        std::size_t first_write = SIZE_MAX;
    };
    std::map<EntityId, EntityUse> uses;
    for (std::size_t i = 0; i < accesses.size(); ++i) {
        EntityUse& u = uses[accesses[i].entity];
        if (accesses[i].mode == Mode::Read) {
            u.first_read = std::min(u.first_read, i);
        } else {
            u.first_write = std::min(u.first_write, i);
        }
    }
    std::set<Access> pruned;
    for (const auto& [entity, u] : uses) {
        if (u.first_write == SIZE_MAX) {
            pruned.insert({entity, Mode::Read});
        } else {
            pruned.insert({entity, Mode::Write});
            if (u.first_read < u.first_write) {
                pruned.insert({entity, Mode::Read});
            }
        }
    }
    return pruned;
}

// Cluster index per entity, shared by the partitioning passes.
std::map<EntityId, std::size_t> cluster_assignment(const Decomposition& d) {
    std::map<EntityId, std::size_t> assignment;
    std::size_t idx = 0;
    for (const auto& [name, members] : d.clusters) {
        for (EntityId e : members) {
            assignment[e] = idx;
        }
        ++idx;
    }
    return assignment;
}

std::size_t cluster_of(const std::map<EntityId, std::size_t>& assignment, EntityId e,
                       std::string_view functionality) {
    auto it = assignment.find(e);
    if (it == assignment.end()) {
        throw DomainError("UNASSIGNED_ENTITY",
                          "entity " + std::to_string(e) +
                              " is not assigned to any cluster" +
                              (functionality.empty()
                                   ? std::string{}
                                   : " (functionality '" + std::string(functionality) +
                                         "')"));
    }
    return it->second;
}

// Maximal same-cluster runs as [begin, end) index pairs.
std::vector<std::pair<std::size_t, std::size_t>> trace_runs(
    const Trace& t, const std::map<EntityId, std::size_t>& assignment,
    std::string_view functionality) {
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < t.accesses.size(); ++i) {
        const std::size_t c = cluster_of(assignment, t.accesses[i].entity, functionality);
        if (i + 1 == t.accesses.size() ||
            cluster_of(assignment, t.accesses[i + 1].entity, functionality) != c) {
            runs.emplace_back(begin, i + 1);
            begin = i + 1;
        }
    }
    return runs;
}

double aggregate(const std::vector<double>& per_trace, TraceAggregation how) {
    if (per_trace.empty()) {
        return 0.0;
    }
    if (how == TraceAggregation::Max) {
        return *std::max_element(per_trace.begin(), per_trace.end());
    }
    double sum = 0.0;
    for (double v : per_trace) {
        sum += v;
    }
    return sum / static_cast<double>(per_trace.size());
}

} // namespace

TracePartition partition_trace(const Trace& t, const Decomposition& d,
                               std::string_view functionality) {
    const auto assignment = cluster_assignment(d);
    std::vector<std::string> cluster_names;
    cluster_names.reserve(d.clusters.size());
    for (const auto& [name, members] : d.clusters) {
        cluster_names.push_back(name);
    }

    TracePartition partition;
    for (const auto& [begin, end] : trace_runs(t, assignment, functionality)) {
        LocalTransaction lt;
        lt.functionality = std::string(functionality);
        lt.trace_id = t.id;
        lt.cluster = cluster_names[cluster_of(assignment, t.accesses[begin].entity,
                                              functionality)];
        lt.accesses.assign(t.accesses.begin() + static_cast<std::ptrdiff_t>(begin),
                           t.accesses.begin() + static_cast<std::ptrdiff_t>(end));
        if (!partition.local_transactions.empty()) {
            partition.remote_invocations.push_back(
                {t.accesses[begin - 1], t.accesses[begin]});
        }
        partition.local_transactions.push_back(std::move(lt));
    }
    return partition;
}

std::set<Access> prune(const LocalTransaction& lt) {
    return prune_span(lt.accesses);
}

// Per-decomposition scoring state: which functionalities are distributed,
// and for each inverse access, the set (bitmask) of distributed
// functionalities whose pruned access union contains it.
struct ComplexityAnalyzer::DecompositionContext {
    std::map<EntityId, std::size_t> assignment;
    std::vector<char> distributed;
    // Per functionality, per trace, the pruned set of each local transaction.
    std::vector<std::vector<std::vector<std::set<Access>>>> pruned_lts;
    std::size_t mask_blocks = 0;
    // key: (entity order index) * 2 + mode; value: bitmask over distributed
    // functionalities owning that access in their pruned union.
    std::unordered_map<std::size_t, std::vector<std::uint64_t>> owners;
    std::map<EntityId, std::size_t> entity_index;

    std::size_t key(const Access& a) const {
        return entity_index.at(a.entity) * 2 +
               (a.mode == Mode::Write ? 1u : 0u);
    }
};

ComplexityAnalyzer::ComplexityAnalyzer(const Monolith& m, ComplexityOptions opts)
    : monolith_(&m), options_(opts) {
    functionality_names_.reserve(m.functionalities.size());
    for (const auto& [name, f] : m.functionalities) {
        functionality_names_.push_back(name);
    }
    // Eager so concurrent readers never race on the cache.
    const DecompositionContext ctx = build_context(singleton_decomposition(m));
    for (std::size_t fi = 0; fi < functionality_names_.size(); ++fi) {
        std::vector<double> per_trace;
        per_trace.reserve(ctx.pruned_lts[fi].size());
        for (const auto& trace_lts : ctx.pruned_lts[fi]) {
            per_trace.push_back(score_trace(ctx, fi, trace_lts));
        }
        max_complexity_ += aggregate(per_trace, options_.aggregation);
    }
}

ComplexityAnalyzer::DecompositionContext ComplexityAnalyzer::build_context(
    const Decomposition& d) const {
    DecompositionContext ctx;
    ctx.assignment = cluster_assignment(d);
    {
        std::size_t i = 0;
        for (const auto& [id, name] : monolith_->entities) {
            ctx.entity_index[id] = i++;
        }
    }
    const std::size_t nf = functionality_names_.size();
    ctx.distributed.assign(nf, 0);
    ctx.pruned_lts.resize(nf);
    ctx.mask_blocks = (nf + 63) / 64;

    for (std::size_t fi = 0; fi < nf; ++fi) {
        const Functionality& f = monolith_->functionalities.at(functionality_names_[fi]);
        ctx.pruned_lts[fi].reserve(f.traces.size());
        for (const Trace& t : f.traces) {
            std::vector<std::set<Access>> pruned;
            for (const auto& [begin, end] : trace_runs(t, ctx.assignment, f.name)) {
                pruned.push_back(prune_span(
                    std::span<const Access>(t.accesses).subspan(begin, end - begin)));
            }
            if (pruned.size() >= 2) {
                ctx.distributed[fi] = 1;
            }
            ctx.pruned_lts[fi].push_back(std::move(pruned));
        }
    }

    for (std::size_t fi = 0; fi < nf; ++fi) {
        if (!ctx.distributed[fi]) {
            continue;
        }
        for (const auto& trace_lts : ctx.pruned_lts[fi]) {
            for (const auto& pruned : trace_lts) {
                for (const Access& a : pruned) {
                    auto& mask = ctx.owners[ctx.key(a)];
                    mask.resize(ctx.mask_blocks, 0);
                    mask[fi / 64] |= std::uint64_t{1} << (fi % 64);
                }
            }
        }
    }
    return ctx;
}

bool ComplexityAnalyzer::is_distributed(const std::string& functionality,
                                        const Decomposition& d) const {
    auto it = monolith_->functionalities.find(functionality);
    if (it == monolith_->functionalities.end()) {
        throw DomainError("UNKNOWN_FUNCTIONALITY",
                          "no functionality named '" + functionality + "'");
    }
    const auto assignment = cluster_assignment(d);
    for (const Trace& t : it->second.traces) {
        if (trace_runs(t, assignment, functionality).size() >= 2) {
            return true;
        }
    }
    return false;
}

double ComplexityAnalyzer::functionality_complexity(const std::string& functionality,
                                                    const Decomposition& d) const {
    const auto it = std::find(functionality_names_.begin(), functionality_names_.end(),
                              functionality);
    if (it == functionality_names_.end()) {
        throw DomainError("UNKNOWN_FUNCTIONALITY",
                          "no functionality named '" + functionality + "'");
    }
    const DecompositionContext ctx = build_context(d);
    const std::size_t fi =
        static_cast<std::size_t>(std::distance(functionality_names_.begin(), it));

    std::vector<double> per_trace;
    per_trace.reserve(ctx.pruned_lts[fi].size());
    for (const auto& trace_lts : ctx.pruned_lts[fi]) {
        per_trace.push_back(score_trace(ctx, fi, trace_lts));
    }
    return aggregate(per_trace, options_.aggregation);
}

double ComplexityAnalyzer::score_trace(
    const DecompositionContext& ctx, std::size_t fi,
    const std::vector<std::set<Access>>& trace_lts) const {
    if (trace_lts.size() < 2 && !options_.strict_summation) {
        return 0.0;
    }
    std::vector<std::uint64_t> seen(ctx.mask_blocks);
    double trace_total = 0.0;
    for (const auto& pruned : trace_lts) {
        std::fill(seen.begin(), seen.end(), 0);
        for (const Access& a : pruned) {
            const Access inv{a.entity, inverse(a.mode)};
            auto owner_it = ctx.owners.find(ctx.key(inv));
            if (owner_it == ctx.owners.end()) {
                continue;
            }
            for (std::size_t b = 0; b < ctx.mask_blocks; ++b) {
                seen[b] |= owner_it->second[b];
            }
        }
        if (fi / 64 < seen.size()) {
            seen[fi / 64] &= ~(std::uint64_t{1} << (fi % 64));
        }
        std::size_t count = 0;
        for (std::uint64_t block : seen) {
            count += static_cast<std::size_t>(std::popcount(block));
        }
        trace_total += static_cast<double>(count);
    }
    return trace_total;
}

ComplexityReport ComplexityAnalyzer::system_complexity(const Decomposition& d) const {
    const DecompositionContext ctx = build_context(d);
    ComplexityReport report;
    for (std::size_t fi = 0; fi < functionality_names_.size(); ++fi) {
        std::vector<double> per_trace;
        std::size_t lt_total = 0;
        per_trace.reserve(ctx.pruned_lts[fi].size());
        for (const auto& trace_lts : ctx.pruned_lts[fi]) {
            per_trace.push_back(score_trace(ctx, fi, trace_lts));
            lt_total += trace_lts.size();
        }
        const double complexity = aggregate(per_trace, options_.aggregation);
        const std::string& name = functionality_names_[fi];
        report.per_functionality[name] = complexity;
        report.total += complexity;
        FunctionalityComplexityRow row;
        row.name = name;
        row.trace_count = per_trace.size();
        row.mean_local_transactions =
            per_trace.empty() ? 0.0
                              : static_cast<double>(lt_total) /
                                    static_cast<double>(per_trace.size());
        row.complexity = complexity;
        report.rows.push_back(std::move(row));
    }
    report.max_complexity = max_complexity();
    report.uniform =
        report.max_complexity > 0.0 ? report.total / report.max_complexity : 0.0;
    return report;
}

double ComplexityAnalyzer::max_complexity() const {
    return max_complexity_;
}

std::string complexity_report_to_json(const ComplexityReport& r) {
    nlohmann::json root;
    root["perFunctionality"] = r.per_functionality;
    root["total"] = r.total;
    root["uniform"] = r.uniform;
    root["maxComplexity"] = r.max_complexity;
    return root.dump(2) + "\n";
}

std::string complexity_report_to_csv(const ComplexityReport& r) {
    std::string csv = "functionality,traces,meanLocalTransactions,complexity\n";
    char buf[96];
    for (const auto& row : r.rows) {
        std::snprintf(buf, sizeof(buf), ",%zu,%.6f,%.6f\n", row.trace_count,
                      row.mean_local_transactions, row.complexity);
        csv += row.name;
        csv += buf;
    }
    return csv;
}

} // namespace monodec

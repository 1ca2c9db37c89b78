#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "monodec/model.hpp"

namespace monodec {

// A maximal run of consecutive same-cluster accesses within a trace.
struct LocalTransaction {
    std::string functionality;
    std::int64_t trace_id = 0;
    std::string cluster;
    std::vector<Access> accesses;
};

// The boundary between two consecutive accesses in different clusters.
struct RemoteInvocation {
    Access from;
    Access to;
};

struct TracePartition {
    std::vector<LocalTransaction> local_transactions;
    std::vector<RemoteInvocation> remote_invocations;
};

// Splits the linear access sequence at every adjacent pair whose entities
// lie in different clusters. Throws DomainError(UNASSIGNED_ENTITY) if the
// decomposition does not cover an accessed entity.
TracePartition partition_trace(const Trace& t, const Decomposition& d,
                               std::string_view functionality = {});

// The externally relevant accesses of a local transaction: at most one READ
// and one WRITE per entity. Both survive only when a read of the entity
// occurs strictly before its first write; otherwise the write alone does.
std::set<Access> prune(const LocalTransaction& lt);

struct FunctionalityComplexityRow {
    std::string name;
    std::size_t trace_count = 0;
    double mean_local_transactions = 0.0;
    double complexity = 0.0;
};

struct ComplexityReport {
    std::map<std::string, double> per_functionality;
    double total = 0.0;
    double uniform = 0.0;         // total / max_complexity, 0 when that is 0
    double max_complexity = 0.0;  // total of the singleton decomposition
    std::vector<FunctionalityComplexityRow> rows;
};

enum class TraceAggregation { Mean, Max };

struct ComplexityOptions {
    TraceAggregation aggregation = TraceAggregation::Mean;
    // Score single-local-transaction traces by the literal summation instead
    // of 0. Off by default: an unsplit trace needs no redesign.
    bool strict_summation = false;
};

// Evaluates the redesign-complexity metric for decompositions of one
// monolith. Immutable and safe to share across threads once constructed;
// the singleton-decomposition total is cached.
class ComplexityAnalyzer {
public:
    explicit ComplexityAnalyzer(const Monolith& m, ComplexityOptions opts = {});

    const Monolith& monolith() const noexcept { return *monolith_; }
    const ComplexityOptions& options() const noexcept { return options_; }

    // True iff any trace of the functionality splits into >= 2 local
    // transactions under d.
    bool is_distributed(const std::string& functionality, const Decomposition& d) const;

    double functionality_complexity(const std::string& functionality,
                                    const Decomposition& d) const;

    ComplexityReport system_complexity(const Decomposition& d) const;

    // Complexity of the all-singletons decomposition; the normalizer for
    // uniform complexity.
    double max_complexity() const;

private:
    struct DecompositionContext;
    DecompositionContext build_context(const Decomposition& d) const;
    double score_trace(const DecompositionContext& ctx, std::size_t fi,
                       const std::vector<std::set<Access>>& trace_lts) const;

    const Monolith* monolith_;
    ComplexityOptions options_;
    std::vector<std::string> functionality_names_;
    double max_complexity_ = 0.0;  // fixed at construction; see max_complexity()
};

std::string complexity_report_to_json(const ComplexityReport& r);
// CSV row per functionality: name, traces, mean local transactions,
// complexity.
std::string complexity_report_to_csv(const ComplexityReport& r);

} // namespace monodec

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace monodec {

using EntityId = std::int64_t;

enum class Mode { Read, Write };

Mode inverse(Mode m) noexcept;

// One read or write access to a domain entity.
struct Access {
    EntityId entity = 0;
    Mode mode = Mode::Read;

    auto operator<=>(const Access&) const = default;
};

// One observed execution of a functionality: an ordered access sequence.
// The sequence order is the precedence relation; every trace is a linear
// chain.
struct Trace {
    std::int64_t id = 0;
    std::vector<Access> accesses;

    bool operator==(const Trace&) const = default;
};

struct Functionality {
    std::string name;
    std::vector<Trace> traces;

    bool operator==(const Functionality&) const = default;
};

// A monolith is the triple (functionalities, entities, traces); traces live
// inside their functionality. Entity display names are optional.
struct Monolith {
    std::map<std::string, Functionality> functionalities;
    std::map<EntityId, std::optional<std::string>> entities;

    bool operator==(const Monolith&) const = default;
};

// A candidate microservice decomposition: named, disjoint, non-empty
// clusters whose union is the entity universe.
struct Decomposition {
    std::map<std::string, std::set<EntityId>> clusters;

    bool operator==(const Decomposition&) const = default;

    std::set<EntityId> universe() const;
    std::size_t universe_size() const;
};

struct ValidationIssue {
    std::string code;
    std::string message;
    std::string location;

    bool operator==(const ValidationIssue&) const = default;
};

struct ValidationReport {
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> warnings;

    bool accepted() const noexcept { return errors.empty(); }
};

// Issue codes emitted by validate_monolith / restrict_monolith.
inline constexpr std::string_view kNonEmptyTraces = "NONEMPTY_TRACES";
inline constexpr std::string_view kEmptyTrace = "EMPTY_TRACE";
inline constexpr std::string_view kDupTraceId = "DUP_TRACE_ID";
inline constexpr std::string_view kMissingEntity = "MISSING_ENTITY";
inline constexpr std::string_view kUnusedEntity = "UNUSED_ENTITY";
inline constexpr std::string_view kDuplicateTraces = "DUPLICATE_TRACES";
inline constexpr std::string_view kEmptyAfterRestrict = "EMPTY_AFTER_RESTRICT";

ValidationReport validate_monolith(const Monolith& m);

struct RestrictResult {
    Monolith monolith;
    std::vector<ValidationIssue> warnings;
};

// Keeps only the named functionalities and entities. Accesses to dropped
// entities are removed in place (relative order preserved); traces that
// become empty are dropped, and functionalities left without traces are
// dropped with a warning. Keep sets must be subsets of the monolith.
RestrictResult restrict_monolith(const Monolith& m,
                                 const std::set<std::string>& keep_functionalities,
                                 const std::set<EntityId>& keep_entities);

struct CommonSubset {
    std::set<std::string> functionalities;
    // Entity ids from `a`'s universe. When both monoliths name all their
    // entities the match key is the display name, otherwise the id itself;
    // call common_subset(b, a) for the ids valid on the other side.
    std::set<EntityId> entities;
};

CommonSubset common_subset(const Monolith& a, const Monolith& b);

// Throws DomainError(INVALID_PARTITION) unless d's clusters are non-empty,
// pairwise disjoint and cover exactly `universe`. Shared by everything that
// produces or consumes decompositions.
void check_partition(const Decomposition& d, const std::set<EntityId>& universe);

// All entity ids of the monolith, ascending.
std::vector<EntityId> entity_order(const Monolith& m);

// The two degenerate reference decompositions.
Decomposition single_cluster_decomposition(const Monolith& m);
Decomposition singleton_decomposition(const Monolith& m);

} // namespace monodec

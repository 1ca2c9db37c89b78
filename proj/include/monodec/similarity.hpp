#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "monodec/model.hpp"

namespace monodec {

// funct(e) and funct(e, mode): which functionalities touch each entity.
// A functionality is in funct(e, m) iff ANY of its traces contains (e, m).
struct AccessIndex {
    std::vector<EntityId> entities;  // ascending
    std::map<EntityId, std::set<std::string>> by_entity;
    std::map<EntityId, std::set<std::string>> by_entity_read;
    std::map<EntityId, std::set<std::string>> by_entity_write;

    const std::set<std::string>& funct(EntityId e) const;
    const std::set<std::string>& funct(EntityId e, Mode m) const;
};

AccessIndex build_access_index(const Monolith& m);

// Dense |E| x |E| grid of one similarity measure (or a weighted blend).
// Values lie in [0,1]; the diagonal is 1 by convention. Not necessarily
// symmetric: the denominator depends on the first argument.
struct SimilarityMatrix {
    std::vector<EntityId> entities;
    std::vector<double> values;  // row-major

    double at(std::size_t row, std::size_t col) const {
        return values[row * entities.size() + col];
    }
    double& at(std::size_t row, std::size_t col) {
        return values[row * entities.size() + col];
    }
    std::size_t size() const { return entities.size(); }
};

// Pairwise measures. Denominator-empty cases score 0 rather than erroring.
double sm_access(const AccessIndex& idx, EntityId e1, EntityId e2);
double sm_read(const AccessIndex& idx, EntityId e1, EntityId e2);
double sm_write(const AccessIndex& idx, EntityId e1, EntityId e2);

SimilarityMatrix access_matrix(const AccessIndex& idx);
SimilarityMatrix read_matrix(const AccessIndex& idx);
SimilarityMatrix write_matrix(const AccessIndex& idx);

struct SequenceOptions {
    // Count (e,e) adjacencies in sumPairs/maxPairs. Off by default: self
    // pairs carry no co-location signal and the diagonal is fixed anyway.
    bool include_self_pairs = false;
};

// How often two entities are accessed back to back, over all traces of all
// functionalities, normalized by the most frequent pair.
SimilarityMatrix sm_sequence_matrix(const Monolith& m, SequenceOptions opts = {});

// Integer percentages for the four measures, in (access, write, read,
// sequence) order. Valid when non-negative multiples of the step summing
// to 100.
struct Weights {
    int access = 0;
    int write = 0;
    int read = 0;
    int sequence = 0;

    auto operator<=>(const Weights&) const = default;
};

// Throws DomainError WEIGHT_SUM / WEIGHT_GRID.
void validate_weights(const Weights& w, int step);

SimilarityMatrix combine(const SimilarityMatrix& access,
                         const SimilarityMatrix& write,
                         const SimilarityMatrix& read,
                         const SimilarityMatrix& sequence,
                         const Weights& w);

// CSV with a header row/column of entity ids, 6 decimal places.
std::string similarity_to_csv(const SimilarityMatrix& s);

} // namespace monodec

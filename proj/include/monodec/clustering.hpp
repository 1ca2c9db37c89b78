#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "monodec/model.hpp"
#include "monodec/similarity.hpp"

namespace monodec {

// Symmetric, zero-diagonal bridge between similarity and clustering.
struct DistanceMatrix {
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

enum class DistanceMode {
    // Euclidean distance between rows of the similarity matrix; the default,
    // and what feeding a square matrix to the usual clustering stacks does.
    RowEuclidean,
    // 1 - (s(i,j) + s(j,i)) / 2, diagonal forced to 0.
    OneMinusSym,
};

enum class Linkage { Average, Single, Complete };

DistanceMatrix similarity_to_distance(const SimilarityMatrix& s, DistanceMode mode);

// Binary merge tree. Node ids: 0..|E|-1 are leaves (positions in `leaves`),
// |E|+k is the cluster created by merges[k].
struct Dendrogram {
    struct Merge {
        std::size_t left = 0;
        std::size_t right = 0;
        double height = 0.0;
    };
    std::vector<EntityId> leaves;
    std::vector<Merge> merges;
};

// Agglomerative clustering with Lance-Williams updates. Ties break on the
// smallest (row, column) index pair in the current matrix ordering, so the
// result is deterministic across platforms.
Dendrogram agglomerate(const DistanceMatrix& d, Linkage linkage);

// Undo the last n-1 merges; each remaining subtree is a cluster. Clusters
// are named "c0".."c{n-1}" by ascending smallest contained leaf index.
Decomposition cut(const Dendrogram& dg, std::size_t n);

// JSON dump: leaf ordering plus [left, right, height] merge rows, heights
// with 9 significant digits.
std::string dendrogram_to_json(const Dendrogram& dg);

} // namespace monodec

#include "monodec/similarity.hpp"

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <utility>

#include "monodec/errors.hpp"

namespace monodec {

namespace {

const std::set<std::string> kEmptySet;

const std::set<std::string>& lookup(const std::map<EntityId, std::set<std::string>>& m,
                                    EntityId e) {
    auto it = m.find(e);
    return it == m.end() ? kEmptySet : it->second;
}

std::size_t intersection_size(const std::set<std::string>& a,
                              const std::set<std::string>& b) {
    std::size_t n = 0;
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    for (const auto& x : small) {
        if (large.contains(x)) {
            ++n;
        }
    }
    return n;
}

void require_known(const AccessIndex& idx, EntityId e) {
    if (!std::binary_search(idx.entities.begin(), idx.entities.end(), e)) {
        throw DomainError("UNKNOWN_ENTITY",
                          "entity " + std::to_string(e) + " is not in the universe");
    }
}

double ratio_measure(const std::set<std::string>& s1, const std::set<std::string>& s2) {
    if (s1.empty()) {
        return 0.0;
    }
    return static_cast<double>(intersection_size(s1, s2)) /
           static_cast<double>(s1.size());
}

template <typename PairwiseFn>
SimilarityMatrix build_matrix(const AccessIndex& idx, PairwiseFn&& fn) {
    SimilarityMatrix s;
    s.entities = idx.entities;
    const std::size_t n = s.entities.size();
    s.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            s.at(i, j) = i == j ? 1.0 : fn(s.entities[i], s.entities[j]);
        }
    }
    return s;
}

} // namespace

const std::set<std::string>& AccessIndex::funct(EntityId e) const {
    return lookup(by_entity, e);
}

const std::set<std::string>& AccessIndex::funct(EntityId e, Mode m) const {
    return lookup(m == Mode::Read ? by_entity_read : by_entity_write, e);
}

AccessIndex build_access_index(const Monolith& m) {
    AccessIndex idx;
    idx.entities = entity_order(m);
    for (EntityId e : idx.entities) {
        idx.by_entity[e];
        idx.by_entity_read[e];
        idx.by_entity_write[e];
    }
    for (const auto& [name, f] : m.functionalities) {
        for (const Trace& t : f.traces) {
            for (const Access& a : t.accesses) {
                idx.by_entity[a.entity].insert(name);
                (a.mode == Mode::Read ? idx.by_entity_read : idx.by_entity_write)
                    [a.entity].insert(name);
            }
        }
    }
    return idx;
}

double sm_access(const AccessIndex& idx, EntityId e1, EntityId e2) {
    require_known(idx, e1);
    require_known(idx, e2);
    return ratio_measure(idx.funct(e1), idx.funct(e2));
}

double sm_read(const AccessIndex& idx, EntityId e1, EntityId e2) {
    require_known(idx, e1);
    require_known(idx, e2);
    return ratio_measure(idx.funct(e1, Mode::Read), idx.funct(e2, Mode::Read));
}

double sm_write(const AccessIndex& idx, EntityId e1, EntityId e2) {
    require_known(idx, e1);
    require_known(idx, e2);
    return ratio_measure(idx.funct(e1, Mode::Write), idx.funct(e2, Mode::Write));
}

SimilarityMatrix access_matrix(const AccessIndex& idx) {
    return build_matrix(idx, [&](EntityId a, EntityId b) {
        return ratio_measure(idx.funct(a), idx.funct(b));
    });
}

SimilarityMatrix read_matrix(const AccessIndex& idx) {
    return build_matrix(idx, [&](EntityId a, EntityId b) {
        return ratio_measure(idx.funct(a, Mode::Read), idx.funct(b, Mode::Read));
    });
}

SimilarityMatrix write_matrix(const AccessIndex& idx) {
    return build_matrix(idx, [&](EntityId a, EntityId b) {
        return ratio_measure(idx.funct(a, Mode::Write), idx.funct(b, Mode::Write));
    });
}

SimilarityMatrix sm_sequence_matrix(const Monolith& m, SequenceOptions opts) {
    SimilarityMatrix s;
    s.entities = entity_order(m);
    const std::size_t n = s.entities.size();
    s.values.assign(n * n, 0.0);

    std::map<EntityId, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) {
        index[s.entities[i]] = i;
    }

    std::vector<std::int64_t> pair_counts(n * n, 0);
    std::int64_t max_pairs = 0;
    for (const auto& [name, f] : m.functionalities) {
        for (const Trace& t : f.traces) {
            for (std::size_t k = 0; k + 1 < t.accesses.size(); ++k) {
                const std::size_t i = index.at(t.accesses[k].entity);
                const std::size_t j = index.at(t.accesses[k + 1].entity);
                if (i == j && !opts.include_self_pairs) {
                    continue;
                }
                const auto count = ++pair_counts[std::min(i, j) * n + std::max(i, j)];
                max_pairs = std::max(max_pairs, count);
            }
        }
    }

    if (max_pairs > 0) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double v = static_cast<double>(pair_counts[i * n + j]) /
                                 static_cast<double>(max_pairs);
                s.at(i, j) = v;
                s.at(j, i) = v;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        s.at(i, i) = 1.0;
    }
    return s;
}

void validate_weights(const Weights& w, int step) {
    if (step <= 0 || 100 % step != 0) {
        throw DomainError("WEIGHT_GRID",
                          "step must be a positive divisor of 100, got " +
                              std::to_string(step));
    }
    const int components[] = {w.access, w.write, w.read, w.sequence};
    for (int c : components) {
        if (c < 0 || c % step != 0) {
            throw DomainError("WEIGHT_GRID",
                              "weight " + std::to_string(c) +
                                  " is not a non-negative multiple of " +
                                  std::to_string(step));
        }
    }
    const int sum = w.access + w.write + w.read + w.sequence;
    if (sum != 100) {
        throw DomainError("WEIGHT_SUM",
                          "weights must sum to 100, got " + std::to_string(sum));
    }
}

SimilarityMatrix combine(const SimilarityMatrix& access,
                         const SimilarityMatrix& write,
                         const SimilarityMatrix& read,
                         const SimilarityMatrix& sequence,
                         const Weights& w) {
    const SimilarityMatrix* mats[] = {&access, &write, &read, &sequence};
    for (const SimilarityMatrix* mat : mats) {
        if (mat->entities != access.entities) {
            throw DomainError("DIMENSION_MISMATCH",
                              "similarity matrices do not share an entity ordering");
        }
    }
    SimilarityMatrix out;
    out.entities = access.entities;
    out.values.resize(access.values.size());
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        out.values[k] = (w.access * access.values[k] + w.write * write.values[k] +
                         w.read * read.values[k] + w.sequence * sequence.values[k]) /
                        100.0;
    }
    return out;
}

std::string similarity_to_csv(const SimilarityMatrix& s) {
    std::string csv = "entity";
    for (EntityId e : s.entities) {
        csv += "," + std::to_string(e);
    }
    csv += "\n";
    char buf[32];
    for (std::size_t i = 0; i < s.size(); ++i) {
        csv += std::to_string(s.entities[i]);
        for (std::size_t j = 0; j < s.size(); ++j) {
            std::snprintf(buf, sizeof(buf), ",%.6f", s.at(i, j));
            csv += buf;
        }
        csv += "\n";
    }
    return csv;
}

} // namespace monodec

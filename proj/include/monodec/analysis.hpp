#pragma once

#include <map>
#include <string>
#include <vector>

#include "monodec/clustering.hpp"
#include "monodec/complexity.hpp"
#include "monodec/model.hpp"
#include "monodec/similarity.hpp"

namespace monodec {

struct SweepRecord {
    Weights weights;
    int n_clusters = 0;
    double uniform_complexity = 0.0;
    Decomposition decomposition;
};

// Every (access, write, read, sequence) tuple of non-negative multiples of
// `step` summing to 100, lexicographic in that order.
std::vector<Weights> enumerate_weightings(int step);

struct SweepConfig {
    DistanceMode distance_mode = DistanceMode::RowEuclidean;
    Linkage linkage = Linkage::Average;
    ComplexityOptions complexity;
    SequenceOptions sequence;
    int jobs = 0;  // 0: hardware concurrency
};

// The full protocol: one dendrogram per weighting, one record per
// (weighting, N) cell. Record order is weights-lexicographic then N
// ascending, independent of the worker count. Any failing cell aborts with
// context.
std::vector<SweepRecord> sweep(const Monolith& m, int n_min, int n_max, int step,
                               const SweepConfig& config = {});

// Per N, the record with minimal uniform complexity; ties break on the
// lexicographically smallest weights.
std::map<int, SweepRecord> best_per_n(const std::vector<SweepRecord>& records);

enum class InterceptMode {
    None,           // no constant column; full rank on any genuine sweep
    Pseudoinverse,  // constant included; minimum-norm solution via SVD
};

struct RegressionReport {
    // Terms: "A", "W", "R", "S", "N", "const".
    std::map<std::string, double> coefficients;
    std::map<std::string, std::pair<double, double>> confidence_intervals_95;
    double r_squared = 0.0;
    double condition_number = 0.0;
    std::size_t sample_size = 0;
    long long rank = 0;
    InterceptMode intercept = InterceptMode::None;
    double f_statistic = 0.0;
    double f_p_value = 1.0;
    long long f_dof_num = 0;
    long long f_dof_den = 0;
};

// Least squares of uniform complexity on (A, W, R, S, N). Needs >= 7
// records. Under None a rank-deficient design raises
// DomainError(RANK_DEFICIENT) naming the offending dependency.
RegressionReport ols_fit(const std::vector<SweepRecord>& records, InterceptMode mode);

std::string sweep_to_csv(const std::vector<SweepRecord>& records);
std::string best_per_n_to_csv(const std::map<int, SweepRecord>& best);
std::string regression_to_json(const RegressionReport& r);
// Text table: one row per term with coefficient and 95% interval, R2 last.
std::string regression_to_table(const RegressionReport& r);

} // namespace monodec

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crisp/errors.hpp"

namespace crisp {

/// The 2x2 table of counts produced by a thresholded binary classifier on a
/// labelled test set. Cell layout follows the standard notation:
///   a = true 0 predicted 0 (TN),  b = true 1 predicted 0 (FN),
///   c = true 0 predicted 1 (FP),  d = true 1 predicted 1 (TP).
/// Counts are exact integers; proportions are derived on demand. The all-zero
/// matrix is rejected at construction, so every consumer may assume n >= 1.
class ConfusionMatrix {
public:
    ConfusionMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
        : a_(a), b_(b), c_(c), d_(d) {
        if (a < 0 || b < 0 || c < 0 || d < 0)
            throw input_error("confusion matrix cells must be nonnegative");
        if (a + b + c + d == 0)
            throw input_error("confusion matrix must contain at least one observation");
    }

    std::int64_t a() const { return a_; }
    std::int64_t b() const { return b_; }
    std::int64_t c() const { return c_; }
    std::int64_t d() const { return d_; }

    std::int64_t tn() const { return a_; }
    std::int64_t fn() const { return b_; }
    std::int64_t fp() const { return c_; }
    std::int64_t tp() const { return d_; }

    std::int64_t n() const { return a_ + b_ + c_ + d_; }

    /// True class proportions.
    double pi0() const { return static_cast<double>(a_ + c_) / static_cast<double>(n()); }
    double pi1() const { return static_cast<double>(b_ + d_) / static_cast<double>(n()); }
    /// Predicted class proportions.
    double p0() const { return static_cast<double>(a_ + b_) / static_cast<double>(n()); }
    double p1() const { return static_cast<double>(c_ + d_) / static_cast<double>(n()); }

    /// The matrix after swapping the class labels 0 <-> 1 on both axes.
    ConfusionMatrix label_swapped() const { return ConfusionMatrix(d_, c_, b_, a_); }

    bool operator==(const ConfusionMatrix& other) const = default;

private:
    std::int64_t a_, b_, c_, d_;
};

std::string to_string(const ConfusionMatrix& m);

/// One scored test-set record: binary true label, classifier score, optional id.
struct ScoredRecord {
    int label = 0;
    double score = 0.0;
    std::optional<std::string> id;
};

/// A non-empty list of scored records; the empirical score distributions from
/// which thresholding produces confusion matrices. Validated on construction.
class ScoredDataset {
public:
    explicit ScoredDataset(std::vector<ScoredRecord> records);

    const std::vector<ScoredRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }

private:
    std::vector<ScoredRecord> records_;
};

/// Thresholds the dataset: scores strictly greater than t are predicted
/// class 1; ties (score == t) go to class 0.
ConfusionMatrix build_confusion(const ScoredDataset& data, double t);

/// The two length-n binary label vectors a matrix summarizes, in canonical
/// order: a pairs (0,0), b pairs (1,0), c pairs (0,1), d pairs (1,1).
struct LabelVectors {
    std::vector<int> truth;
    std::vector<int> predicted;
};

LabelVectors expand_labels(const ConfusionMatrix& m);

}  // namespace crisp

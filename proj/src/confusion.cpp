#include "crisp/confusion.hpp"

#include <cmath>
#include <sstream>

namespace crisp {

std::string to_string(const ConfusionMatrix& m) {
    std::ostringstream out;
    out << "(a=" << m.a() << ",b=" << m.b() << ",c=" << m.c() << ",d=" << m.d() << ")";
    return out.str();
}

ScoredDataset::ScoredDataset(std::vector<ScoredRecord> records) : records_(std::move(records)) {
    if (records_.empty()) throw input_error("scored dataset must not be empty");
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        if (r.label != 0 && r.label != 1)
            throw input_error("record " + std::to_string(i) + ": true label must be 0 or 1");
        if (!std::isfinite(r.score))
            throw input_error("record " + std::to_string(i) + ": score must be finite");
    }
}

ConfusionMatrix build_confusion(const ScoredDataset& data, double t) {
    if (!std::isfinite(t)) throw input_error("threshold must be finite");
    std::int64_t a = 0, b = 0, c = 0, d = 0;
    for (const auto& r : data.records()) {
        const bool predicted_one = r.score > t;
        if (r.label == 1)
            (predicted_one ? d : b) += 1;
        else
            (predicted_one ? c : a) += 1;
    }
    return ConfusionMatrix(a, b, c, d);
}

LabelVectors expand_labels(const ConfusionMatrix& m) {
    LabelVectors out;
    const auto n = static_cast<std::size_t>(m.n());
    out.truth.reserve(n);
    out.predicted.reserve(n);
    auto append = [&out](std::int64_t count, int truth, int predicted) {
        for (std::int64_t i = 0; i < count; ++i) {
            out.truth.push_back(truth);
            out.predicted.push_back(predicted);
        }
    };
    append(m.a(), 0, 0);
    append(m.b(), 1, 0);
    append(m.c(), 0, 1);
    append(m.d(), 1, 1);
    return out;
}

}  // namespace crisp

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace crisp {

/// Why a measure value does not exist for a given matrix.
enum class UndefinedReason : std::uint8_t {
    ZeroDenominator,  // a denominator in the measure's formula vanishes
    LogOfZeroMass,    // reserved: log of an empty cell outside the 0*log0 convention
    EmptyClass,       // a true class required by the measure has no members
};

std::string_view to_string(UndefinedReason reason);

/// A total-function result: either a finite real or an explicit undefined
/// marker carrying its reason. Never a NaN, never an exception.
class MetricValue {
public:
    static MetricValue defined(double value) { return MetricValue(value); }
    static MetricValue undefined(UndefinedReason reason) { return MetricValue(reason); }

    bool is_defined() const { return defined_; }

    double value() const {
        if (!defined_) throw std::logic_error("MetricValue: value() on undefined result");
        return value_;
    }

    UndefinedReason reason() const {
        if (defined_) throw std::logic_error("MetricValue: reason() on defined result");
        return reason_;
    }

    double value_or(double fallback) const { return defined_ ? value_ : fallback; }

    bool operator==(const MetricValue& other) const {
        if (defined_ != other.defined_) return false;
        return defined_ ? value_ == other.value_ : reason_ == other.reason_;
    }

private:
    explicit MetricValue(double value) : defined_(true), value_(value) {
        if (!std::isfinite(value)) throw std::logic_error("MetricValue: non-finite defined value");
    }
    explicit MetricValue(UndefinedReason reason) : defined_(false), reason_(reason) {}

    bool defined_;
    double value_ = 0.0;
    UndefinedReason reason_ = UndefinedReason::ZeroDenominator;
};

/// True when both sides are defined and within tol, or both undefined.
inline bool equivalent(const MetricValue& x, const MetricValue& y, double tol) {
    if (x.is_defined() != y.is_defined()) return false;
    if (!x.is_defined()) return true;
    return std::fabs(x.value() - y.value()) <= tol;
}

}  // namespace crisp

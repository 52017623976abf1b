#ifndef LFLOW_LABELS_HPP
#define LFLOW_LABELS_HPP

#include "lflow/errors.hpp"
#include "lflow/rational.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace lflow {

/// An interval of the real line; a missing bound is infinite.
struct IntervalSpec {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool open_low = false;
  bool open_high = false;

  static IntervalSpec closed(Rational a, Rational b) {
    if (a > b) throw PreconditionError("interval lower bound exceeds upper bound");
    return {std::move(a), std::move(b), false, false};
  }
  static IntervalSpec at_least(Rational a) { return {std::move(a), std::nullopt, false, false}; }
  static IntervalSpec real_line() { return {}; }

  /// Closed in the topological sense: every finite endpoint is included.
  [[nodiscard]] bool is_closed() const { return !(lo && open_low) && !(hi && open_high); }

  [[nodiscard]] bool empty() const {
    if (!lo || !hi) return false;
    if (*lo > *hi) return true;
    return *lo == *hi && (open_low || open_high);
  }

  [[nodiscard]] bool contains(const Rational& x) const {
    if (lo && (open_low ? x <= *lo : x < *lo)) return false;
    if (hi && (open_high ? x >= *hi : x > *hi)) return false;
    return true;
  }

  [[nodiscard]] IntervalSpec closure() const { return {lo, hi, false, false}; }

  [[nodiscard]] std::string to_string() const {
    std::string s = lo && !open_low ? "[" : "(";
    s += lo ? lflow::to_string(*lo) : "-inf";
    s += ",";
    s += hi ? lflow::to_string(*hi) : "inf";
    s += hi && !open_high ? "]" : ")";
    return s;
  }
};

inline void validate(const IntervalSpec& l) {
  if (l.lo && l.hi && *l.lo > *l.hi) throw PreconditionError("interval lower bound exceeds upper bound");
}

/// Admissible edge values.
class LabelSet {
 public:
  enum class Kind { Finite, Interval, Punctured, NonzeroReals, NonzeroIntegers };

  static LabelSet finite(std::vector<Rational> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.empty()) throw PreconditionError("finite label set is empty");
    LabelSet s(Kind::Finite);
    s.values_ = std::move(values);
    return s;
  }
  static LabelSet interval(IntervalSpec l) {
    validate(l);
    LabelSet s(Kind::Interval);
    s.interval_ = std::move(l);
    return s;
  }
  /// The interval with 0 removed.
  static LabelSet punctured(IntervalSpec l) {
    validate(l);
    LabelSet s(Kind::Punctured);
    s.interval_ = std::move(l);
    return s;
  }
  static LabelSet nonzero_reals() {
    LabelSet s(Kind::NonzeroReals);
    return s;
  }
  static LabelSet nonzero_integers() { return LabelSet(Kind::NonzeroIntegers); }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const std::vector<Rational>& values() const { return values_; }
  [[nodiscard]] const IntervalSpec& interval_spec() const { return interval_; }

  [[nodiscard]] bool contains(const Rational& x) const {
    switch (kind_) {
      case Kind::Finite:
        return std::binary_search(values_.begin(), values_.end(), x);
      case Kind::Interval:
        return interval_.contains(x);
      case Kind::Punctured:
        return x != 0 && interval_.contains(x);
      case Kind::NonzeroReals:
        return x != 0;
      case Kind::NonzeroIntegers:
        return x != 0 && is_integral(x);
    }
    return false;
  }

  [[nodiscard]] bool contains_all(const std::vector<Rational>& xs) const {
    return std::all_of(xs.begin(), xs.end(), [&](const Rational& x) { return contains(x); });
  }

  [[nodiscard]] std::string to_string() const {
    switch (kind_) {
      case Kind::Finite: {
        std::string s = "{";
        for (std::size_t i = 0; i < values_.size(); ++i) s += (i ? "," : "") + lflow::to_string(values_[i]);
        return s + "}";
      }
      case Kind::Interval:
        return interval_.to_string();
      case Kind::Punctured:
        return interval_.to_string() + "\\{0}";
      case Kind::NonzeroReals:
        return "R*";
      case Kind::NonzeroIntegers:
        return "Z*";
    }
    return {};
  }

 private:
  explicit LabelSet(Kind k) : kind_(k) {}
  Kind kind_;
  std::vector<Rational> values_;
  IntervalSpec interval_;
};

}  // namespace lflow

#endif  // LFLOW_LABELS_HPP

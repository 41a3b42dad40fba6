// SPDX-License-Identifier: Apache-2.0
//
// Closed-form real-analytic curve handles t -> gamma(t).
//
// A handle evaluates pointwise in doubles and supplies an outward-rounded
// enclosure of its range over any t-interval; the containment queries in
// geometry.hpp only consume the enclosure side.

#pragma once

#include <cmath>
#include <cstdint>
#include <variant>
#include <vector>

#include "tubelab/interval.hpp"

namespace tubelab {

// gamma(t) = slope*t + offset.
struct AffineCurve {
  double slope{0.0};
  double offset{0.0};
};

// gamma(t) = offset + amplitude*sin(t), amplitude given exactly as a ratio
// so tolerance checks of the form |amplitude| <= 1/k stay in integers.
struct ScaledSineCurve {
  std::int64_t amp_num{0};
  std::int64_t amp_den{1};
  double offset{0.0};

  [[nodiscard]] double amplitude() const {
    return static_cast<double>(amp_num) / static_cast<double>(amp_den);
  }
};

// gamma(t) = offset + sum_j num_sin[j]/den * sin((j+1) t) + num_cos[j]/den * cos((j+1) t).
struct TrigPolyCurve {
  std::vector<std::int64_t> num_sin;
  std::vector<std::int64_t> num_cos;
  std::int64_t den{1};
  double offset{0.0};
};

using Curve = std::variant<AffineCurve, ScaledSineCurve, TrigPolyCurve>;

[[nodiscard]] inline double eval(const AffineCurve& c, double t) {
  return c.slope * t + c.offset;
}

[[nodiscard]] inline double eval(const ScaledSineCurve& c, double t) {
  return c.offset + c.amplitude() * std::sin(t);
}

[[nodiscard]] inline double eval(const TrigPolyCurve& c, double t) {
  double acc = c.offset;
  const double den = static_cast<double>(c.den);
  for (std::size_t j = 0; j < c.num_sin.size(); ++j) {
    acc += static_cast<double>(c.num_sin[j]) / den * std::sin(static_cast<double>(j + 1) * t);
  }
  for (std::size_t j = 0; j < c.num_cos.size(); ++j) {
    acc += static_cast<double>(c.num_cos[j]) / den * std::cos(static_cast<double>(j + 1) * t);
  }
  return acc;
}

[[nodiscard]] inline Interval range(const AffineCurve& c, const Interval& t) {
  return affine_image(t, c.slope, c.offset);
}

[[nodiscard]] inline Interval range(const ScaledSineCurve& c, const Interval& t) {
  return rational(c.amp_num, c.amp_den) * sin(t) + c.offset;
}

[[nodiscard]] inline Interval range(const TrigPolyCurve& c, const Interval& t) {
  Interval acc{c.offset};
  for (std::size_t j = 0; j < c.num_sin.size(); ++j) {
    if (c.num_sin[j] == 0) continue;
    acc = acc + rational(c.num_sin[j], c.den) * sin(t * static_cast<double>(j + 1));
  }
  for (std::size_t j = 0; j < c.num_cos.size(); ++j) {
    if (c.num_cos[j] == 0) continue;
    acc = acc + rational(c.num_cos[j], c.den) * cos(t * static_cast<double>(j + 1));
  }
  return acc;
}

[[nodiscard]] inline double eval(const Curve& c, double t) {
  return std::visit([t](const auto& inner) { return eval(inner, t); }, c);
}

[[nodiscard]] inline Interval range(const Curve& c, const Interval& t) {
  return std::visit([&t](const auto& inner) { return range(inner, t); }, c);
}

}  // namespace tubelab

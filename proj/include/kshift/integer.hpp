#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>

namespace kshift {

/// Arbitrary-precision integer. Expression templates are disabled so the type
/// can be used as an Eigen scalar.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

}  // namespace kshift

namespace Eigen {

template <>
struct NumTraits<kshift::Integer> : GenericNumTraits<kshift::Integer> {
  using Real = kshift::Integer;
  using NonInteger = kshift::Integer;
  using Literal = kshift::Integer;
  using Nested = kshift::Integer;
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 16
  };
};

}  // namespace Eigen

namespace kshift {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntegerMatrix = Matrix<Integer>;
using IntegerVector = Vector<Integer>;

inline std::optional<std::int64_t> to_int64(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min())
    return std::nullopt;
  return x.convert_to<std::int64_t>();
}

inline std::string to_string(const Integer& x) { return x.str(); }

/// Parses an optionally signed decimal literal; nullopt on malformed input.
std::optional<Integer> parse_integer(const std::string& text);

inline int sign(const Integer& x) { return x.sign(); }

// Generic helpers so templated linear algebra works for builtin integers too.
inline bool is_zero(const Integer& x) { return x.is_zero(); }
template <typename T>
bool is_zero(const T& x) {
  return x == T(0);
}

inline Integer abs_value(const Integer& x) { return boost::multiprecision::abs(x); }
template <typename T>
T abs_value(const T& x) {
  return x < T(0) ? T(-x) : x;
}

}  // namespace kshift

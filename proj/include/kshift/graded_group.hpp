#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kshift/error.hpp"
#include "kshift/integer.hpp"

namespace kshift {

using Json = nlohmann::ordered_json;

/// Position of a symbol in the ordered basis of its group.
struct BasisId {
  std::uint32_t value = 0;
  auto operator<=>(const BasisId&) const = default;
};

/// Z/2 degree; 0 or 1.
using Degree = int;

/// Finite integer combination of basis symbols, zero coefficients never stored.
class GroupElement {
 public:
  using Terms = std::map<BasisId, Integer>;

  GroupElement() = default;
  explicit GroupElement(Terms terms);

  static GroupElement basis(BasisId id, Integer coeff = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coeff(BasisId id) const;

  GroupElement& operator+=(const GroupElement& other);
  GroupElement& operator-=(const GroupElement& other);
  friend GroupElement operator+(GroupElement a, const GroupElement& b) { return a += b; }
  friend GroupElement operator-(GroupElement a, const GroupElement& b) { return a -= b; }
  friend GroupElement operator*(const Integer& c, const GroupElement& x);
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  Terms terms_;
};

/// Free abelian group with an ordered basis, a Z/2 degree per basis element
/// and a distinguished degree-0 unit, G = Ze (+) Ǧ. Immutable once built.
class GradedGroup {
 public:
  /// Validates and builds. Throws Error{kMissingUnit, kBadDegree,
  /// kDuplicateSymbol, kUnknownSymbol}.
  static GradedGroup create(std::vector<std::string> basis,
                            const std::map<std::string, Degree>& degrees,
                            const std::string& unit,
                            std::optional<std::vector<std::map<std::string, Integer>>> cone = {});

  std::size_t rank() const { return symbols_.size(); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::string& symbol(BasisId id) const { return symbols_.at(id.value); }
  Degree degree(BasisId id) const { return degrees_.at(id.value); }
  BasisId unit() const { return unit_; }
  std::optional<BasisId> find(std::string_view symbol) const;
  /// Throws Error{kUnknownSymbol}.
  BasisId id(std::string_view symbol) const;

  std::vector<BasisId> basis_ids() const;
  /// Non-unit basis elements, i.e. a basis of Ǧ.
  std::vector<BasisId> check_basis() const;

  bool has_cone() const { return cone_.has_value(); }
  /// Generators of G+ as a monoid; empty when no cone was supplied.
  const std::vector<GroupElement>& cone_generators() const;

  /// Builds an element from symbol names; throws Error{kUnknownSymbol}.
  GroupElement element(const std::map<std::string, Integer>& coeffs) const;

 private:
  GradedGroup() = default;

  std::vector<std::string> symbols_;
  std::vector<Degree> degrees_;
  std::unordered_map<std::string, BasisId> lookup_;
  BasisId unit_;
  std::optional<std::vector<GroupElement>> cone_;
};

/// Reads a group spec document: fields `basis`, `degrees`, `unit`, optional
/// `cone`. Missing degree entries default to 0.
GradedGroup parse_group(const Json& spec);
GradedGroup parse_group_text(std::string_view text);
GradedGroup load_group_file(const std::string& path);
Json to_json(const GradedGroup& group);

/// x = k·e + check with check having zero unit coefficient.
struct UnitSplit {
  Integer k;
  GroupElement check;
  friend bool operator==(const UnitSplit&, const UnitSplit&) = default;
};

UnitSplit split_unit(const GradedGroup& group, const GroupElement& x);

/// Common degree of the symbols of x, nullopt when x mixes degrees.
/// The zero element has degree 0.
std::optional<Degree> degree_of(const GradedGroup& group, const GroupElement& x);

Json integer_to_json(const Integer& x);
/// Accepts JSON integers and decimal strings; throws Error{kParse}.
Integer integer_from_json(const Json& j);

}  // namespace kshift

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kshift/graded_group.hpp"

namespace kshift {

/// Slot position in the Z-indexed tensor product.
using SlotIndex = std::int64_t;

/// Elementary basis tensor of (G,e)^{⊗Z}: a finite-support map from slots to
/// basis symbols, default symbol e. Only non-unit slots are stored, sorted by
/// slot, so the all-unit tensor e^{⊗Z} is the empty tensor.
class PureTensor {
 public:
  struct Entry {
    SlotIndex slot = 0;
    BasisId symbol;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  PureTensor() = default;

  /// Unit entries are dropped.
  static PureTensor from_slots(const std::map<SlotIndex, BasisId>& slots, BasisId unit);

  bool is_all_unit() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  std::optional<SlotIndex> min_slot() const;
  std::optional<SlotIndex> max_slot() const;
  BasisId at(SlotIndex slot, BasisId unit) const;

  /// Moves the content of slot i to slot i + power. Throws Error{kOverflow}.
  PureTensor shifted(SlotIndex power) const;

  /// Canonical order: lexicographic on the slot list, then on the symbol list.
  friend std::strong_ordering operator<=>(const PureTensor& a, const PureTensor& b);
  friend bool operator==(const PureTensor&, const PureTensor&) = default;

 private:
  std::vector<Entry> entries_;
};

Degree tensor_degree(const GradedGroup& group, const PureTensor& t);

/// Finite integer combination of pure tensors; an element of (G,e)^{⊗Z}.
class TensorElement {
 public:
  using Terms = std::map<PureTensor, Integer>;

  TensorElement() = default;
  explicit TensorElement(Terms terms);
  explicit TensorElement(PureTensor t, Integer coeff = 1);

  /// c·e^{⊗Z}.
  static TensorElement unit_tensor(Integer coeff = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Integer coeff(const PureTensor& t) const;

  TensorElement& add_term(const PureTensor& t, const Integer& coeff);
  TensorElement& operator+=(const TensorElement& other);
  TensorElement& operator-=(const TensorElement& other);
  TensorElement operator-() const;

  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(const Integer& c, const TensorElement& t);
  friend bool operator==(const TensorElement&, const TensorElement&) = default;

 private:
  Terms terms_;
};

TensorElement add(const TensorElement& a, const TensorElement& b);
TensorElement scale(const TensorElement& t, const Integer& c);

/// λ^power, where λ moves slot i to slot i + 1.
TensorElement shift(const TensorElement& t, SlotIndex power);

/// t − λ(t).
TensorElement id_minus_shift(const TensorElement& t);

/// Terms of t whose tensor degree is `degree`.
TensorElement degree_part(const GradedGroup& group, const TensorElement& t, Degree degree);

/// Places an odd-length word on slots −(n−1)..(n−1). Throws Error{kBadLength}.
PureTensor embed_finite(const GradedGroup& group, std::span<const BasisId> word);

/// Element of the finite power G^{⊗(2n−1)}: words of one common odd length.
using FiniteTensor = std::map<std::vector<BasisId>, Integer>;
TensorElement embed_finite(const GradedGroup& group, const FiniteTensor& x);

/// Multilinear expansion of ⊗ x_i with x_i = slots[i] where given and e
/// elsewhere.
TensorElement expand_elementary(const GradedGroup& group,
                                const std::map<SlotIndex, GroupElement>& slots);

// Wire format: list of {coeff, entries: {slot: symbol}} records in canonical
// pure-tensor order. Coefficients outside int64 are written as strings.
Json pure_to_json(const GradedGroup& group, const PureTensor& t);
PureTensor pure_from_json(const GradedGroup& group, const Json& entries);
Json to_json(const GradedGroup& group, const TensorElement& t);
/// Throws Error{kParse, kUnknownSymbol}.
TensorElement tensor_from_json(const GradedGroup& group, const Json& j);

std::string to_text(const GradedGroup& group, const PureTensor& t);
std::string to_text(const GradedGroup& group, const TensorElement& t);

}  // namespace kshift

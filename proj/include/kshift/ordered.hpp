#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kshift/tensor.hpp"

namespace kshift {

/// A slot value certified positive: value = Σ generator_coeffs[j]·g_j with
/// every coefficient nonnegative.
struct PositiveSlot {
  GroupElement value;
  std::vector<Integer> generator_coeffs;
};

/// multiplicity · ⊗_i x_i with x_i = slots[i] where listed and e elsewhere.
struct ConeSummand {
  Integer multiplicity = 1;
  std::map<SlotIndex, PositiveSlot> slots;
};

/// Witness that an element lies in G+^{⊗Z}: a sum of elementary tensors of
/// positive slot values.
struct ConeCertificate {
  std::vector<ConeSummand> summands;

  TensorElement expand(const GradedGroup& group) const;
};

/// Checks slot positivity data and that the expansion equals t exactly.
bool verify_certificate(const GradedGroup& group, const ConeCertificate& cert, const TensorElement& t);

/// Nonnegative generator coefficients of x ∈ G, if any are found. Exact when
/// the generators form a Z-basis of G, otherwise a search over coefficient
/// vectors of total size <= bound.
std::optional<std::vector<Integer>> positive_coordinates(const GradedGroup& group, const GroupElement& x,
                                                         std::size_t bound = 32);

enum class MembershipStatus {
  kCertified,
  /// Proven outside the cone: a negative coordinate in the product basis of
  /// unimodular simplicial generators.
  kRejected,
  /// Nothing found within the search bounds; not a proof of non-membership.
  kNotFound,
};

std::string_view status_name(MembershipStatus status);

struct ConeMembership {
  MembershipStatus status = MembershipStatus::kNotFound;
  std::optional<ConeCertificate> certificate;
  std::string method;
};

enum class ConeStrategy {
  /// Generator-coordinate path when the cone is unimodular simplicial,
  /// bounded search otherwise.
  kAuto,
  kSearchOnly,
};

/// Membership of t (supported in [0, window]) in G+^{⊗Z}. The search path uses
/// elementary tensors whose slots are generators or e, with total multiplicity
/// at most coeff_bound. Throws Error{kNoCone, kUnsupportedInput,
/// kHypothesisViolation, kCapExceeded}.
ConeMembership cone_membership(const GradedGroup& group, const TensorElement& t, std::size_t window,
                               std::size_t coeff_bound, ConeStrategy strategy = ConeStrategy::kAuto);

/// Outcome of searching for an element of G+^{⊗Z} whose E^{⊗Z}-coordinates
/// are not all nonnegative.
struct OrderCheckResult {
  bool order_preserving = true;
  /// The generators all have nonnegative basis coordinates, which makes the
  /// verdict a proof rather than a budget-limited observation.
  bool proved = false;
  std::size_t samples_checked = 0;
  std::uint64_t seed = 0;
  std::optional<TensorElement> witness;
  std::optional<ConeCertificate> certificate;
  std::optional<std::pair<PureTensor, Integer>> negative_coordinate;
};

/// Throws Error{kNoCone, kHypothesisViolation}.
OrderCheckResult phi_order_check(const GradedGroup& group, std::size_t window, std::size_t sample_budget,
                                 std::uint64_t seed = 0);

Json to_json(const GradedGroup& group, const ConeCertificate& cert);
Json to_json(const GradedGroup& group, const OrderCheckResult& result);

}  // namespace kshift

#pragma once

#include <optional>

#include "kshift/tensor.hpp"

namespace kshift {

/// Element of H(G,e) = Z e^{⊗Z} + Ǧ⊗G^{⊗N}: a multiple of the all-unit
/// tensor plus a tail whose pure tensors all start at slot 0 with a non-unit
/// symbol.
struct HElement {
  Integer unit_mult = 0;
  TensorElement tail;

  TensorElement to_tensor() const { return TensorElement::unit_tensor(unit_mult) + tail; }
  bool is_zero() const { return unit_mult.is_zero() && tail.is_zero(); }

  HElement& operator+=(const HElement& other);
  friend bool operator==(const HElement&, const HElement&) = default;
};

/// t = (id − λ)(witness) + h, witness with no e^{⊗Z} component.
struct Decomposition {
  TensorElement witness;
  HElement h;

  Decomposition& operator+=(const Decomposition& other);
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Smallest non-unit slot; nullopt for e^{⊗Z}.
std::optional<SlotIndex> min_nonunit_index(const PureTensor& t);

Decomposition decompose_pure(const PureTensor& f);

/// Linear extension of decompose_pure. The H-component is unique; the witness
/// is unique up to Z e^{⊗Z} and normalized to have no all-unit term.
Decomposition decompose(const TensorElement& t);

/// Splits an H(G,e) element into its unit multiple and tail. Throws
/// Error{kUnsupportedInput} when t is not in H(G,e).
HElement as_h_element(const TensorElement& t);

/// k when t = k·e^{⊗Z}, i.e. when t lies in ker(id − λ); nullopt otherwise.
std::optional<Integer> kernel_test(const TensorElement& t);

bool is_in_H(const TensorElement& t);

/// Re-checks t == (id − λ)(d.witness) + d.h exactly.
bool reassembles(const TensorElement& t, const Decomposition& d);

Json to_json(const GradedGroup& group, const Decomposition& d, bool verified);

}  // namespace kshift

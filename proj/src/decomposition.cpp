#include "kshift/decomposition.hpp"

namespace kshift {

HElement& HElement::operator+=(const HElement& other) {
  unit_mult += other.unit_mult;
  tail += other.tail;
  return *this;
}

Decomposition& Decomposition::operator+=(const Decomposition& other) {
  witness += other.witness;
  h += other.h;
  return *this;
}

std::optional<SlotIndex> min_nonunit_index(const PureTensor& t) { return t.min_slot(); }

Decomposition decompose_pure(const PureTensor& f) {
  Decomposition d;
  auto i0 = min_nonunit_index(f);
  if (!i0) {
    d.h.unit_mult = 1;
    return d;
  }
  if (*i0 > 0) {
    // f = (id − λ)(−Σ_{j=1..i0} λ^{−j} f) + λ^{−i0} f
    for (SlotIndex j = 1; j <= *i0; ++j) d.witness.add_term(f.shifted(-j), Integer(-1));
  } else if (*i0 < 0) {
    // f = (id − λ)(Σ_{j=0..−i0−1} λ^{j} f) + λ^{−i0} f
    for (SlotIndex j = 0; j < -*i0; ++j) d.witness.add_term(f.shifted(j), Integer(1));
  }
  d.h.tail = TensorElement(f.shifted(-*i0));
  return d;
}

Decomposition decompose(const TensorElement& t) {
  Decomposition total;
  for (const auto& [p, c] : t.terms()) {
    Decomposition part = decompose_pure(p);
    part.witness = c * part.witness;
    part.h.unit_mult *= c;
    part.h.tail = c * part.h.tail;
    total += part;
  }
  // ker(id − λ) = Z e^{⊗Z}; pin the witness by dropping that component.
  total.witness.add_term(PureTensor{}, -total.witness.coeff(PureTensor{}));
  return total;
}

HElement as_h_element(const TensorElement& t) {
  HElement h;
  for (const auto& [p, c] : t.terms()) {
    auto i0 = min_nonunit_index(p);
    if (!i0) {
      h.unit_mult = c;
    } else if (*i0 == 0) {
      h.tail.add_term(p, c);
    } else {
      throw Error(ErrorCode::kUnsupportedInput, "element is not in H(G,e): a term starts at slot " + std::to_string(*i0));
    }
  }
  return h;
}

std::optional<Integer> kernel_test(const TensorElement& t) {
  if (t.is_zero()) return Integer(0);
  if (t.size() == 1 && t.terms().begin()->first.is_all_unit()) return t.terms().begin()->second;
  return std::nullopt;
}

bool is_in_H(const TensorElement& t) {
  for (const auto& [p, c] : t.terms()) {
    auto i0 = min_nonunit_index(p);
    if (i0 && *i0 != 0) return false;
  }
  return true;
}

bool reassembles(const TensorElement& t, const Decomposition& d) {
  return id_minus_shift(d.witness) + d.h.to_tensor() == t;
}

Json to_json(const GradedGroup& group, const Decomposition& d, bool verified) {
  Json out;
  out["witness"] = to_json(group, d.witness);
  out["h"] = to_json(group, d.h.to_tensor());
  out["h_unit_multiple"] = integer_to_json(d.h.unit_mult);
  out["h_tail"] = to_json(group, d.h.tail);
  out["verified"] = verified;
  return out;
}

}  // namespace kshift

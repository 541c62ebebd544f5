#pragma once

#include <map>
#include <random>
#include <string>

#include "kshift/graded_group.hpp"
#include "kshift/tensor.hpp"

namespace kshift::testing {

inline GradedGroup lamp() {
  return GradedGroup::create({"u", "v"}, {}, "u",
                             std::vector<std::map<std::string, Integer>>{{{"u", 1}, {"v", -1}}, {{"v", 1}}});
}

inline GradedGroup z1() { return GradedGroup::create({"u"}, {}, "u", std::vector<std::map<std::string, Integer>>{{{"u", 1}}}); }

inline GradedGroup z2_standard() {
  return GradedGroup::create({"a", "b"}, {}, "a",
                             std::vector<std::map<std::string, Integer>>{{{"a", 1}}, {{"b", 1}}});
}

inline GradedGroup three_symbol() { return GradedGroup::create({"u", "v", "w"}, {{"w", 1}}, "u"); }

/// Pure tensor from (slot, symbol) pairs.
inline PureTensor pt(const GradedGroup& g, std::initializer_list<std::pair<SlotIndex, const char*>> slots) {
  std::map<SlotIndex, BasisId> m;
  for (const auto& [s, name] : slots) m[s] = g.id(name);
  return PureTensor::from_slots(m, g.unit());
}

inline TensorElement te(const GradedGroup& g, std::initializer_list<std::pair<SlotIndex, const char*>> slots,
                        Integer c = 1) {
  return TensorElement(pt(g, slots), c);
}

/// Coefficients in [-9, 9], up to 5 terms, support in [-4, 4].
inline TensorElement random_element(const GradedGroup& g, std::mt19937_64& rng) {
  TensorElement t;
  const std::size_t terms = rng() % 6;
  for (std::size_t k = 0; k < terms; ++k) {
    std::map<SlotIndex, BasisId> slots;
    for (SlotIndex s = -4; s <= 4; ++s) slots[s] = BasisId{static_cast<std::uint32_t>(rng() % g.rank())};
    const long c = static_cast<long>(rng() % 19) - 9;
    t.add_term(PureTensor::from_slots(slots, g.unit()), c);
  }
  return t;
}

}  // namespace kshift::testing

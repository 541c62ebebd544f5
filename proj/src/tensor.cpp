#include "kshift/tensor.hpp"

#include <algorithm>
#include <charconv>

namespace kshift {

namespace {

SlotIndex checked_add(SlotIndex a, SlotIndex b) {
  SlotIndex out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorCode::kOverflow, "slot index overflow in shift");
  return out;
}

SlotIndex parse_slot(const std::string& key) {
  SlotIndex value = 0;
  const char* first = key.data();
  const char* last = key.data() + key.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || key.empty())
    throw Error(ErrorCode::kParse, "slot key '" + key + "' is not an integer");
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------
// PureTensor

PureTensor PureTensor::from_slots(const std::map<SlotIndex, BasisId>& slots, BasisId unit) {
  PureTensor t;
  for (const auto& [slot, symbol] : slots)
    if (symbol != unit) t.entries_.push_back({slot, symbol});
  return t;
}

std::optional<SlotIndex> PureTensor::min_slot() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.front().slot;
}

std::optional<SlotIndex> PureTensor::max_slot() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.back().slot;
}

BasisId PureTensor::at(SlotIndex slot, BasisId unit) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), slot,
                             [](const Entry& e, SlotIndex s) { return e.slot < s; });
  return (it != entries_.end() && it->slot == slot) ? it->symbol : unit;
}

PureTensor PureTensor::shifted(SlotIndex power) const {
  PureTensor out = *this;
  if (power != 0)
    for (auto& e : out.entries_) e.slot = checked_add(e.slot, power);
  return out;
}

std::strong_ordering operator<=>(const PureTensor& a, const PureTensor& b) {
  const auto& x = a.entries_;
  const auto& y = b.entries_;
  auto by_slot = std::lexicographical_compare_three_way(
      x.begin(), x.end(), y.begin(), y.end(),
      [](const PureTensor::Entry& p, const PureTensor::Entry& q) { return p.slot <=> q.slot; });
  if (by_slot != 0) return by_slot;
  return std::lexicographical_compare_three_way(
      x.begin(), x.end(), y.begin(), y.end(),
      [](const PureTensor::Entry& p, const PureTensor::Entry& q) { return p.symbol <=> q.symbol; });
}

Degree tensor_degree(const GradedGroup& group, const PureTensor& t) {
  Degree d = 0;
  for (const auto& e : t.entries()) d ^= group.degree(e.symbol);
  return d;
}

// ---------------------------------------------------------------------------
// TensorElement

TensorElement::TensorElement(Terms terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
}

TensorElement::TensorElement(PureTensor t, Integer coeff) {
  if (!coeff.is_zero()) terms_.emplace(std::move(t), std::move(coeff));
}

TensorElement TensorElement::unit_tensor(Integer coeff) { return TensorElement(PureTensor{}, std::move(coeff)); }

Integer TensorElement::coeff(const PureTensor& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? Integer(0) : it->second;
}

TensorElement& TensorElement::add_term(const PureTensor& t, const Integer& coeff) {
  if (coeff.is_zero()) return *this;
  auto [it, inserted] = terms_.try_emplace(t, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
  return *this;
}

TensorElement& TensorElement::operator+=(const TensorElement& other) {
  for (const auto& [t, c] : other.terms_) add_term(t, c);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& other) {
  for (const auto& [t, c] : other.terms_) add_term(t, -c);
  return *this;
}

TensorElement TensorElement::operator-() const { return Integer(-1) * *this; }

TensorElement operator*(const Integer& c, const TensorElement& t) {
  if (c.is_zero()) return {};
  TensorElement out = t;
  for (auto& [p, v] : out.terms_) v *= c;
  return out;
}

TensorElement add(const TensorElement& a, const TensorElement& b) { return a + b; }

TensorElement scale(const TensorElement& t, const Integer& c) { return c * t; }

TensorElement shift(const TensorElement& t, SlotIndex power) {
  if (power == 0) return t;
  TensorElement::Terms moved;
  for (const auto& [p, c] : t.terms()) moved.emplace_hint(moved.end(), p.shifted(power), c);
  return TensorElement(std::move(moved));
}

TensorElement id_minus_shift(const TensorElement& t) { return t - shift(t, 1); }

TensorElement degree_part(const GradedGroup& group, const TensorElement& t, Degree degree) {
  TensorElement::Terms kept;
  for (const auto& [p, c] : t.terms())
    if (tensor_degree(group, p) == degree) kept.emplace_hint(kept.end(), p, c);
  return TensorElement(std::move(kept));
}

PureTensor embed_finite(const GradedGroup& group, std::span<const BasisId> word) {
  if (word.size() % 2 == 0)
    throw Error(ErrorCode::kBadLength, "finite tensor word must have odd length, got " + std::to_string(word.size()));
  const auto half = static_cast<SlotIndex>(word.size() / 2);
  std::map<SlotIndex, BasisId> slots;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i].value >= group.rank()) throw Error(ErrorCode::kUnknownSymbol, "symbol id out of range");
    slots[static_cast<SlotIndex>(i) - half] = word[i];
  }
  return PureTensor::from_slots(slots, group.unit());
}

TensorElement embed_finite(const GradedGroup& group, const FiniteTensor& x) {
  TensorElement out;
  std::optional<std::size_t> length;
  for (const auto& [word, c] : x) {
    if (length && *length != word.size())
      throw Error(ErrorCode::kBadLength, "finite tensor mixes word lengths");
    length = word.size();
    out.add_term(embed_finite(group, word), c);
  }
  return out;
}

TensorElement expand_elementary(const GradedGroup& group, const std::map<SlotIndex, GroupElement>& slots) {
  TensorElement acc = TensorElement::unit_tensor();
  for (const auto& [slot, x] : slots) {
    TensorElement next;
    for (const auto& [p, c] : acc.terms()) {
      for (const auto& [symbol, d] : x.terms()) {
        if (symbol == group.unit()) {
          next.add_term(p, c * d);
          continue;
        }
        std::map<SlotIndex, BasisId> entries;
        for (const auto& e : p.entries()) entries[e.slot] = e.symbol;
        entries[slot] = symbol;
        next.add_term(PureTensor::from_slots(entries, group.unit()), c * d);
      }
    }
    acc = std::move(next);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Serialization

Json pure_to_json(const GradedGroup& group, const PureTensor& t) {
  Json entries = Json::object();
  for (const auto& e : t.entries()) entries[std::to_string(e.slot)] = group.symbol(e.symbol);
  return entries;
}

PureTensor pure_from_json(const GradedGroup& group, const Json& entries) {
  if (!entries.is_object()) throw Error(ErrorCode::kParse, "`entries` must map slot indices to symbols");
  std::map<SlotIndex, BasisId> slots;
  for (const auto& [key, symbol] : entries.items()) {
    if (!symbol.is_string()) throw Error(ErrorCode::kParse, "slot symbols must be strings");
    auto [it, inserted] = slots.emplace(parse_slot(key), group.id(symbol.get<std::string>()));
    if (!inserted) throw Error(ErrorCode::kParse, "slot " + key + " given twice");
  }
  return PureTensor::from_slots(slots, group.unit());
}

Json to_json(const GradedGroup& group, const TensorElement& t) {
  Json out = Json::array();
  for (const auto& [p, c] : t.terms()) {
    Json record;
    record["coeff"] = integer_to_json(c);
    record["entries"] = pure_to_json(group, p);
    out.push_back(std::move(record));
  }
  return out;
}

TensorElement tensor_from_json(const GradedGroup& group, const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, "tensor element must be a list of {coeff, entries} records");
  TensorElement out;
  for (const auto& record : j) {
    if (!record.is_object() || !record.contains("coeff"))
      throw Error(ErrorCode::kParse, "tensor record needs `coeff`");
    PureTensor p = record.contains("entries") ? pure_from_json(group, record["entries"]) : PureTensor{};
    out.add_term(p, integer_from_json(record["coeff"]));
  }
  return out;
}

std::string to_text(const GradedGroup& group, const PureTensor& t) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : t.entries()) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(e.slot) + ":" + group.symbol(e.symbol);
  }
  return out + "}";
}

std::string to_text(const GradedGroup& group, const TensorElement& t) {
  if (t.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [p, c] : t.terms()) {
    Integer magnitude = abs_value(c);
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    out += magnitude.str() + "*" + to_text(group, p);
  }
  return out;
}

}  // namespace kshift

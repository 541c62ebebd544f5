#include "kshift/graded_group.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace kshift {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kMissingUnit: return "MissingUnit";
    case ErrorCode::kBadDegree: return "BadDegree";
    case ErrorCode::kDuplicateSymbol: return "DuplicateSymbol";
    case ErrorCode::kUnknownSymbol: return "UnknownSymbol";
    case ErrorCode::kBadLength: return "BadLength";
    case ErrorCode::kHypothesisViolation: return "HypothesisViolation";
    case ErrorCode::kNoCone: return "NoCone";
    case ErrorCode::kUnsupportedInput: return "UnsupportedInput";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kLemmaViolated: return "LemmaViolated";
  }
  return "Error";
}

std::optional<Integer> parse_integer(const std::string& text) {
  std::size_t start = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
  if (start == text.size()) return std::nullopt;
  for (std::size_t i = start; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
  return Integer(text[0] == '+' ? text.substr(1) : text);
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement::GroupElement(Terms terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
}

GroupElement GroupElement::basis(BasisId id, Integer coeff) {
  return GroupElement(Terms{{id, std::move(coeff)}});
}

Integer GroupElement::coeff(BasisId id) const {
  auto it = terms_.find(id);
  return it == terms_.end() ? Integer(0) : it->second;
}

GroupElement& GroupElement::operator+=(const GroupElement& other) {
  for (const auto& [id, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(id, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

GroupElement& GroupElement::operator-=(const GroupElement& other) {
  return *this += Integer(-1) * other;
}

GroupElement operator*(const Integer& c, const GroupElement& x) {
  if (c.is_zero()) return {};
  GroupElement out = x;
  for (auto& [id, v] : out.terms_) v *= c;
  return out;
}

// ---------------------------------------------------------------------------
// GradedGroup

GradedGroup GradedGroup::create(std::vector<std::string> basis,
                                const std::map<std::string, Degree>& degrees,
                                const std::string& unit,
                                std::optional<std::vector<std::map<std::string, Integer>>> cone) {
  GradedGroup g;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto [it, inserted] = g.lookup_.emplace(basis[i], BasisId{static_cast<std::uint32_t>(i)});
    if (!inserted) throw Error(ErrorCode::kDuplicateSymbol, "basis symbol '" + basis[i] + "' repeated");
  }
  g.symbols_ = std::move(basis);
  g.degrees_.assign(g.symbols_.size(), 0);
  for (const auto& [symbol, degree] : degrees) {
    auto it = g.lookup_.find(symbol);
    if (it == g.lookup_.end())
      throw Error(ErrorCode::kUnknownSymbol, "degree given for '" + symbol + "' which is not in the basis");
    if (degree != 0 && degree != 1)
      throw Error(ErrorCode::kBadDegree, "degree of '" + symbol + "' must be 0 or 1");
    g.degrees_[it->second.value] = degree;
  }
  auto unit_it = g.lookup_.find(unit);
  if (unit_it == g.lookup_.end())
    throw Error(ErrorCode::kMissingUnit, "unit '" + unit + "' is not a basis symbol");
  g.unit_ = unit_it->second;
  if (g.degrees_[g.unit_.value] != 0)
    throw Error(ErrorCode::kBadDegree, "unit '" + unit + "' must have degree 0");
  if (cone) {
    std::vector<GroupElement> gens;
    gens.reserve(cone->size());
    for (const auto& coeffs : *cone) gens.push_back(g.element(coeffs));
    g.cone_ = std::move(gens);
  }
  return g;
}

std::optional<BasisId> GradedGroup::find(std::string_view symbol) const {
  auto it = lookup_.find(std::string(symbol));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

BasisId GradedGroup::id(std::string_view symbol) const {
  if (auto found = find(symbol)) return *found;
  throw Error(ErrorCode::kUnknownSymbol, "'" + std::string(symbol) + "' is not a basis symbol");
}

std::vector<BasisId> GradedGroup::basis_ids() const {
  std::vector<BasisId> ids;
  for (std::uint32_t i = 0; i < symbols_.size(); ++i) ids.push_back(BasisId{i});
  return ids;
}

std::vector<BasisId> GradedGroup::check_basis() const {
  std::vector<BasisId> ids;
  for (std::uint32_t i = 0; i < symbols_.size(); ++i)
    if (BasisId{i} != unit_) ids.push_back(BasisId{i});
  return ids;
}

const std::vector<GroupElement>& GradedGroup::cone_generators() const {
  static const std::vector<GroupElement> kEmpty;
  return cone_ ? *cone_ : kEmpty;
}

GroupElement GradedGroup::element(const std::map<std::string, Integer>& coeffs) const {
  GroupElement::Terms terms;
  for (const auto& [symbol, c] : coeffs) terms[id(symbol)] += c;
  return GroupElement(std::move(terms));
}

// ---------------------------------------------------------------------------
// Group spec documents

Json integer_to_json(const Integer& x) {
  if (auto small = to_int64(x)) return *small;
  return x.str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    if (auto parsed = parse_integer(j.get<std::string>())) return *parsed;
  }
  throw Error(ErrorCode::kParse, "expected an integer, got " + j.dump());
}

GradedGroup parse_group(const Json& spec) {
  if (!spec.is_object()) throw Error(ErrorCode::kParse, "group spec must be a JSON object");
  if (!spec.contains("basis") || !spec["basis"].is_array())
    throw Error(ErrorCode::kParse, "group spec needs a `basis` list");
  if (!spec.contains("unit") || !spec["unit"].is_string())
    throw Error(ErrorCode::kMissingUnit, "group spec needs a `unit` symbol");

  std::vector<std::string> basis;
  for (const auto& s : spec["basis"]) {
    if (!s.is_string()) throw Error(ErrorCode::kParse, "basis symbols must be strings");
    basis.push_back(s.get<std::string>());
  }
  std::map<std::string, Degree> degrees;
  if (spec.contains("degrees")) {
    if (!spec["degrees"].is_object()) throw Error(ErrorCode::kParse, "`degrees` must be an object");
    for (const auto& [symbol, d] : spec["degrees"].items()) {
      if (!d.is_number_integer()) throw Error(ErrorCode::kBadDegree, "degree of '" + symbol + "' must be 0 or 1");
      degrees[symbol] = d.get<int>();
    }
  }
  std::optional<std::vector<std::map<std::string, Integer>>> cone;
  if (spec.contains("cone") && !spec["cone"].is_null()) {
    if (!spec["cone"].is_array()) throw Error(ErrorCode::kParse, "`cone` must be a list of coefficient maps");
    cone.emplace();
    for (const auto& gen : spec["cone"]) {
      if (!gen.is_object()) throw Error(ErrorCode::kParse, "cone generators must be coefficient maps");
      std::map<std::string, Integer> coeffs;
      for (const auto& [symbol, c] : gen.items()) coeffs[symbol] = integer_from_json(c);
      cone->push_back(std::move(coeffs));
    }
  }
  return GradedGroup::create(std::move(basis), degrees, spec["unit"].get<std::string>(), std::move(cone));
}

GradedGroup parse_group_text(std::string_view text) {
  Json spec;
  try {
    spec = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  return parse_group(spec);
}

GradedGroup load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open group spec '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_group_text(buffer.str());
}

Json to_json(const GradedGroup& group) {
  Json out;
  out["basis"] = group.symbols();
  Json degrees = Json::object();
  for (auto id : group.basis_ids()) degrees[group.symbol(id)] = group.degree(id);
  out["degrees"] = degrees;
  out["unit"] = group.symbol(group.unit());
  if (group.has_cone()) {
    Json cone = Json::array();
    for (const auto& gen : group.cone_generators()) {
      Json coeffs = Json::object();
      for (const auto& [id, c] : gen.terms()) coeffs[group.symbol(id)] = integer_to_json(c);
      cone.push_back(coeffs);
    }
    out["cone"] = cone;
  }
  return out;
}

// ---------------------------------------------------------------------------

UnitSplit split_unit(const GradedGroup& group, const GroupElement& x) {
  auto terms = x.terms();
  Integer k = 0;
  if (auto it = terms.find(group.unit()); it != terms.end()) {
    k = it->second;
    terms.erase(it);
  }
  return {k, GroupElement(std::move(terms))};
}

std::optional<Degree> degree_of(const GradedGroup& group, const GroupElement& x) {
  std::optional<Degree> degree;
  for (const auto& [id, c] : x.terms()) {
    Degree d = group.degree(id);
    if (degree && *degree != d) return std::nullopt;
    degree = d;
  }
  return degree.value_or(0);
}

}  // namespace kshift

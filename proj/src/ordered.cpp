#include "kshift/ordered.hpp"

#include <functional>
#include <random>
#include <set>

#include "kshift/oracle.hpp"
#include "kshift/smith.hpp"

namespace kshift {

namespace {

constexpr std::size_t kMaxCoordinateWords = std::size_t{1} << 20;
constexpr std::size_t kMaxSearchCandidates = 4096;

IntegerVector coordinates(const GradedGroup& group, const GroupElement& x) {
  IntegerVector v = IntegerVector::Zero(static_cast<Eigen::Index>(group.rank()));
  for (const auto& [id, c] : x.terms()) v(id.value) = c;
  return v;
}

IntegerMatrix generator_matrix(const GradedGroup& group) {
  const auto& gens = group.cone_generators();
  IntegerMatrix c = IntegerMatrix::Zero(static_cast<Eigen::Index>(group.rank()), static_cast<Eigen::Index>(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j) c.col(static_cast<Eigen::Index>(j)) = coordinates(group, gens[j]);
  return c;
}

// Inverse of the generator matrix when the generators are a Z-basis of G.
std::optional<IntegerMatrix> unimodular_inverse(const GradedGroup& group) {
  IntegerMatrix c = generator_matrix(group);
  if (c.rows() != c.cols() || c.rows() == 0) return std::nullopt;
  auto snf = smith_normal_form(c);
  if (snf.rank != c.rows() || !snf.all_factors_one()) return std::nullopt;
  IntegerMatrix identity = IntegerMatrix::Identity(c.rows(), c.rows());
  auto columns = solve_integer(c, identity);
  IntegerMatrix inverse(c.rows(), c.rows());
  for (Eigen::Index j = 0; j < c.rows(); ++j) inverse.col(j) = *columns[static_cast<std::size_t>(j)];
  return inverse;
}

PositiveSlot generator_slot(const GradedGroup& group, std::size_t j) {
  PositiveSlot slot;
  slot.value = group.cone_generators()[j];
  slot.generator_coeffs.assign(group.cone_generators().size(), Integer(0));
  slot.generator_coeffs[j] = 1;
  return slot;
}

void require_cone(const GradedGroup& group) {
  if (!group.has_cone() || group.cone_generators().empty())
    throw Error(ErrorCode::kNoCone, "group spec carries no cone generators");
  if (!positive_coordinates(group, GroupElement::basis(group.unit())))
    throw Error(ErrorCode::kHypothesisViolation, "unit '" + group.symbol(group.unit()) +
                                                     "' is not a nonnegative combination of the cone generators");
}

bool has_negative_coordinate(const GroupElement& x) {
  for (const auto& [id, c] : x.terms())
    if (c.sign() < 0) return true;
  return false;
}

std::optional<std::pair<PureTensor, Integer>> first_negative(const TensorElement& t) {
  for (const auto& [p, c] : t.terms())
    if (c.sign() < 0) return std::make_pair(p, c);
  return std::nullopt;
}

// Exact path: coordinates of t in the product basis of the generators on the
// support range of t. Nonnegative ⇔ t is in the cone.
ConeMembership coordinate_membership(const GradedGroup& group, const TensorElement& t, const IntegerMatrix& inverse) {
  ConeMembership out;
  out.method = "generator-coordinates";
  std::optional<SlotIndex> lo;
  std::optional<SlotIndex> hi;
  for (const auto& [p, c] : t.terms()) {
    if (auto m = p.min_slot()) lo = lo ? std::min(*lo, *m) : *m;
    if (auto m = p.max_slot()) hi = hi ? std::max(*hi, *m) : *m;
  }
  const std::size_t width = lo ? static_cast<std::size_t>(*hi - *lo + 1) : 0;
  std::size_t words = 1;
  for (std::size_t i = 0; i < width; ++i) {
    words *= static_cast<std::size_t>(inverse.cols());
    if (words > kMaxCoordinateWords) throw Error(ErrorCode::kCapExceeded, "support too wide for coordinate expansion");
  }

  std::map<std::vector<std::uint32_t>, Integer> coords;
  for (const auto& [p, c] : t.terms()) {
    std::map<std::vector<std::uint32_t>, Integer> partial{{{}, c}};
    for (std::size_t k = 0; k < width; ++k) {
      BasisId symbol = p.at(*lo + static_cast<SlotIndex>(k), group.unit());
      std::map<std::vector<std::uint32_t>, Integer> next;
      for (const auto& [word, v] : partial)
        for (Eigen::Index j = 0; j < inverse.rows(); ++j) {
          const Integer& a = inverse(j, symbol.value);
          if (a.is_zero()) continue;
          auto longer = word;
          longer.push_back(static_cast<std::uint32_t>(j));
          next[longer] += v * a;
        }
      partial = std::move(next);
    }
    for (const auto& [word, v] : partial) coords[word] += v;
  }

  ConeCertificate cert;
  for (const auto& [word, v] : coords) {
    if (v.is_zero()) continue;
    if (v.sign() < 0) {
      out.status = MembershipStatus::kRejected;
      return out;
    }
    ConeSummand summand;
    summand.multiplicity = v;
    for (std::size_t k = 0; k < word.size(); ++k)
      summand.slots.emplace(*lo + static_cast<SlotIndex>(k), generator_slot(group, word[k]));
    cert.summands.push_back(std::move(summand));
  }
  out.status = MembershipStatus::kCertified;
  out.certificate = std::move(cert);
  return out;
}

IntegerVector dense_in_window(const GradedGroup& group, const TensorElement& t, const WindowBasis& window) {
  IntegerVector v = IntegerVector::Zero(static_cast<Eigen::Index>(window.size()));
  for (const auto& [p, c] : t.terms()) v(static_cast<Eigen::Index>(*window.index_of(p, group.unit()))) += c;
  return v;
}

std::string memo_key(std::size_t k, std::size_t budget, const IntegerVector& r) {
  std::string key = std::to_string(k) + "/" + std::to_string(budget) + ":";
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (r(i).is_zero()) continue;
    key += std::to_string(i) + "=" + r(i).str() + ",";
  }
  return key;
}

// Bounded search for nonnegative multiplicities of candidate elementary
// tensors, by iterative deepening on the total multiplicity.
class CandidateSearch {
 public:
  CandidateSearch(std::vector<IntegerVector> columns, bool nonnegative_columns)
      : columns_(std::move(columns)), nonnegative_(nonnegative_columns), mult_(columns_.size(), 0) {}

  std::optional<std::vector<std::size_t>> run(const IntegerVector& target, std::size_t bound) {
    for (std::size_t total = 0; total <= bound; ++total) {
      std::fill(mult_.begin(), mult_.end(), 0);
      if (dfs(0, target, total)) return mult_;
    }
    return std::nullopt;
  }

 private:
  bool dfs(std::size_t k, const IntegerVector& remaining, std::size_t budget) {
    if (remaining.isZero()) return true;
    if (k == columns_.size() || budget == 0) return false;
    if (nonnegative_)
      for (Eigen::Index i = 0; i < remaining.size(); ++i)
        if (remaining(i).sign() < 0) return false;
    auto key = memo_key(k, budget, remaining);
    if (failed_.contains(key)) return false;
    IntegerVector r = remaining;
    for (std::size_t m = 0; m <= budget; ++m) {
      mult_[k] = m;
      if (dfs(k + 1, r, budget - m)) return true;
      r -= columns_[k];
    }
    mult_[k] = 0;
    failed_.insert(std::move(key));
    return false;
  }

  std::vector<IntegerVector> columns_;
  bool nonnegative_;
  std::vector<std::size_t> mult_;
  std::set<std::string> failed_;
};

ConeMembership search_membership(const GradedGroup& group, const TensorElement& t, std::size_t window,
                                 std::size_t coeff_bound) {
  ConeMembership out;
  out.method = "search";
  const auto& gens = group.cone_generators();
  const std::size_t options = gens.size() + 1;  // e, then each generator
  WindowBasis slots(0, static_cast<SlotIndex>(window), options);
  if (slots.size() > kMaxSearchCandidates)
    throw Error(ErrorCode::kCapExceeded, "too many candidate elementary tensors for the search window");
  WindowBasis coords(0, static_cast<SlotIndex>(window), group.rank());

  bool nonnegative = true;
  for (const auto& g : gens) nonnegative = nonnegative && !has_negative_coordinate(g);

  std::vector<ConeSummand> candidates;
  std::vector<IntegerVector> columns;
  for (std::size_t c = 0; c < slots.size(); ++c) {
    auto word = slots.word(c);
    ConeSummand summand;
    std::map<SlotIndex, GroupElement> values;
    for (std::size_t k = 0; k < word.size(); ++k) {
      if (word[k].value == 0) continue;
      const auto slot = static_cast<SlotIndex>(k);
      summand.slots.emplace(slot, generator_slot(group, word[k].value - 1));
      values.emplace(slot, gens[word[k].value - 1]);
    }
    columns.push_back(dense_in_window(group, expand_elementary(group, values), coords));
    candidates.push_back(std::move(summand));
  }

  CandidateSearch search(std::move(columns), nonnegative);
  auto found = search.run(dense_in_window(group, t, coords), coeff_bound);
  if (!found) return out;
  ConeCertificate cert;
  for (std::size_t c = 0; c < found->size(); ++c) {
    if ((*found)[c] == 0) continue;
    ConeSummand summand = candidates[c];
    summand.multiplicity = static_cast<long>((*found)[c]);
    cert.summands.push_back(std::move(summand));
  }
  out.status = MembershipStatus::kCertified;
  out.certificate = std::move(cert);
  return out;
}

}  // namespace

std::string_view status_name(MembershipStatus status) {
  switch (status) {
    case MembershipStatus::kCertified: return "Certified";
    case MembershipStatus::kRejected: return "Rejected";
    case MembershipStatus::kNotFound: return "NoCertificateFound";
  }
  return "Unknown";
}

TensorElement ConeCertificate::expand(const GradedGroup& group) const {
  TensorElement out;
  for (const auto& summand : summands) {
    std::map<SlotIndex, GroupElement> values;
    for (const auto& [slot, positive] : summand.slots) values.emplace(slot, positive.value);
    out += summand.multiplicity * expand_elementary(group, values);
  }
  return out;
}

bool verify_certificate(const GradedGroup& group, const ConeCertificate& cert, const TensorElement& t) {
  const auto& gens = group.cone_generators();
  for (const auto& summand : cert.summands) {
    if (summand.multiplicity.sign() <= 0) return false;
    for (const auto& [slot, positive] : summand.slots) {
      if (positive.generator_coeffs.size() != gens.size()) return false;
      GroupElement sum;
      for (std::size_t j = 0; j < gens.size(); ++j) {
        if (positive.generator_coeffs[j].sign() < 0) return false;
        sum += positive.generator_coeffs[j] * gens[j];
      }
      if (!(sum == positive.value)) return false;
    }
  }
  return cert.expand(group) == t;
}

std::optional<std::vector<Integer>> positive_coordinates(const GradedGroup& group, const GroupElement& x,
                                                         std::size_t bound) {
  const auto& gens = group.cone_generators();
  if (gens.empty()) return std::nullopt;
  IntegerMatrix c = generator_matrix(group);
  IntegerVector target = coordinates(group, x);

  if (integer_rank(c) == c.cols()) {
    // Independent generators: the rational solution is unique.
    auto solution = solve_integer(c, target);
    if (!solution.front()) return std::nullopt;
    std::vector<Integer> coeffs(solution.front()->data(), solution.front()->data() + solution.front()->size());
    for (const auto& v : coeffs)
      if (v.sign() < 0) return std::nullopt;
    return coeffs;
  }

  std::vector<Integer> coeffs(gens.size(), Integer(0));
  std::function<bool(std::size_t, const IntegerVector&, std::size_t)> dfs =
      [&](std::size_t j, const IntegerVector& remaining, std::size_t budget) -> bool {
    if (remaining.isZero()) return true;
    if (j == gens.size()) return false;
    IntegerVector r = remaining;
    for (std::size_t m = 0; m <= budget; ++m) {
      coeffs[j] = static_cast<long>(m);
      if (dfs(j + 1, r, budget - m)) return true;
      r -= c.col(static_cast<Eigen::Index>(j));
    }
    coeffs[j] = 0;
    return false;
  };
  if (dfs(0, target, bound)) return coeffs;
  return std::nullopt;
}

ConeMembership cone_membership(const GradedGroup& group, const TensorElement& t, std::size_t window,
                               std::size_t coeff_bound, ConeStrategy strategy) {
  require_cone(group);
  for (const auto& [p, c] : t.terms()) {
    if (p.is_all_unit()) continue;
    if (*p.min_slot() < 0 || *p.max_slot() > static_cast<SlotIndex>(window))
      throw Error(ErrorCode::kUnsupportedInput,
                  "element must be supported in [0, " + std::to_string(window) + "]; shift it first");
  }

  ConeMembership out;
  if (strategy == ConeStrategy::kAuto) {
    if (auto inverse = unimodular_inverse(group)) out = coordinate_membership(group, t, *inverse);
  }
  if (out.method.empty()) out = search_membership(group, t, window, coeff_bound);

  if (out.certificate && !verify_certificate(group, *out.certificate, t))
    throw Error(ErrorCode::kLemmaViolated, "cone certificate failed re-expansion");
  return out;
}

OrderCheckResult phi_order_check(const GradedGroup& group, std::size_t window, std::size_t sample_budget,
                                 std::uint64_t seed) {
  require_cone(group);
  const auto& gens = group.cone_generators();
  OrderCheckResult result;
  result.seed = seed;
  result.proved = true;
  for (const auto& g : gens) result.proved = result.proved && !has_negative_coordinate(g);

  auto record = [&](ConeCertificate cert) {
    TensorElement witness = cert.expand(group);
    auto negative = first_negative(witness);
    if (!negative) return false;
    result.order_preserving = false;
    result.proved = false;
    result.negative_coordinate = negative;
    result.witness = std::move(witness);
    result.certificate = std::move(cert);
    return true;
  };

  // Single-slot elementary tensors g ⊗ e ⊗ e ⋯ (slot 0 suffices by shift
  // invariance).
  for (std::size_t j = 0; j < gens.size(); ++j) {
    ConeSummand summand;
    summand.slots.emplace(0, generator_slot(group, j));
    if (record(ConeCertificate{{summand}})) return result;
  }

  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < sample_budget; ++s) {
    ++result.samples_checked;
    ConeCertificate cert;
    const std::size_t terms = 1 + rng() % 3;
    for (std::size_t term = 0; term < terms; ++term) {
      ConeSummand summand;
      summand.multiplicity = static_cast<long>(1 + rng() % 3);
      for (std::size_t k = 0; k <= window; ++k) {
        const std::size_t choice = rng() % (gens.size() + 2);
        if (choice == 0) continue;
        if (choice <= gens.size()) {
          summand.slots.emplace(static_cast<SlotIndex>(k), generator_slot(group, choice - 1));
          continue;
        }
        PositiveSlot slot;
        slot.generator_coeffs.assign(gens.size(), Integer(0));
        for (std::size_t j = 0; j < gens.size(); ++j) {
          slot.generator_coeffs[j] = static_cast<long>(rng() % 3);
          slot.value += slot.generator_coeffs[j] * gens[j];
        }
        if (!slot.value.is_zero()) summand.slots.emplace(static_cast<SlotIndex>(k), std::move(slot));
      }
      cert.summands.push_back(std::move(summand));
    }
    if (record(std::move(cert))) return result;
  }
  return result;
}

// ---------------------------------------------------------------------------

Json to_json(const GradedGroup& group, const ConeCertificate& cert) {
  Json summands = Json::array();
  for (const auto& summand : cert.summands) {
    Json s;
    s["multiplicity"] = integer_to_json(summand.multiplicity);
    Json slots = Json::object();
    for (const auto& [slot, positive] : summand.slots) {
      Json value = Json::object();
      for (const auto& [id, c] : positive.value.terms()) value[group.symbol(id)] = integer_to_json(c);
      Json coeffs = Json::array();
      for (const auto& c : positive.generator_coeffs) coeffs.push_back(integer_to_json(c));
      slots[std::to_string(slot)] = Json{{"value", value}, {"generator_coeffs", coeffs}};
    }
    s["slots"] = slots;
    summands.push_back(std::move(s));
  }
  return Json{{"summands", summands}};
}

Json to_json(const GradedGroup& group, const OrderCheckResult& r) {
  Json out;
  out["verdict"] = r.order_preserving ? "OrderPreserving" : "Counterexample";
  out["proved"] = r.proved;
  out["samples_checked"] = r.samples_checked;
  out["seed"] = r.seed;
  if (r.witness) {
    out["witness"] = to_json(group, *r.witness);
    out["certificate"] = to_json(group, *r.certificate);
    out["negative_coordinate"] = Json{{"entries", pure_to_json(group, r.negative_coordinate->first)},
                                      {"coeff", integer_to_json(r.negative_coordinate->second)}};
  }
  return out;
}

}  // namespace kshift

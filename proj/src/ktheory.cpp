#include "kshift/ktheory.hpp"

#include <algorithm>
#include <sstream>

namespace kshift {

std::vector<PureTensor> enumerate_H_basis(const GradedGroup& group, Degree degree, std::size_t window,
                                          std::size_t cap) {
  std::vector<PureTensor> out;
  if (degree == 0) out.push_back(PureTensor{});
  const auto checks = group.check_basis();
  if (checks.empty()) return out;

  WindowBasis tail(1, static_cast<SlotIndex>(window), group.rank());
  if (tail.size() > cap / checks.size()) throw Error(ErrorCode::kCapExceeded, "H basis enumeration exceeds cap");
  for (BasisId head : checks) {
    for (std::size_t i = 0; i < tail.size(); ++i) {
      auto word = tail.word(i);
      std::map<SlotIndex, BasisId> slots{{0, head}};
      for (std::size_t k = 0; k < word.size(); ++k) slots.emplace(static_cast<SlotIndex>(k + 1), word[k]);
      PureTensor t = PureTensor::from_slots(slots, group.unit());
      if (tensor_degree(group, t) == degree) out.push_back(std::move(t));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t KTheoryResult::free_rank_k0(std::size_t n) const { return enumerate_H_basis(group, 0, n).size(); }

std::size_t KTheoryResult::free_rank_k1(std::size_t n) const { return enumerate_H_basis(group, 1, n).size() + 1; }

bool corollary_check(const GradedGroup& group) {
  for (BasisId id : group.basis_ids())
    if (group.degree(id) == 1) return false;
  return true;
}

KTheoryResult crossed_product_ktheory(const GradedGroup& group, std::size_t window) {
  if (group.rank() == 0 || group.degree(group.unit()) != 0)
    throw Error(ErrorCode::kHypothesisViolation, "group must be free with a degree-0 unit in its basis");

  KTheoryResult result{group, window, {enumerate_H_basis(group, 0, window), false},
                       {enumerate_H_basis(group, 1, window), true}, corollary_check(group), std::nullopt};

  if (group.has_cone()) {
    std::vector<GeneratorPositivity> positivity;
    for (const auto& g : result.k0.h_generators) {
      ConeMembership m;
      try {
        m = cone_membership(group, TensorElement(g), window, 4);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kCapExceeded) throw;
        m.method = "cap-exceeded";
      }
      positivity.push_back({g, std::move(m)});
    }
    result.positivity = std::move(positivity);
  }
  return result;
}

GradedGroup lamplighter_group() {
  return GradedGroup::create({"u", "v"}, {{"u", 0}, {"v", 0}}, "u",
                             std::vector<std::map<std::string, Integer>>{{{"u", 1}, {"v", -1}}, {{"v", 1}}});
}

LamplighterReport lamplighter_demo(std::size_t window, int torsion_window) {
  GradedGroup group = lamplighter_group();
  LamplighterReport report{crossed_product_ktheory(group, window), {}, {}, {}};

  for (int n = 0; n <= torsion_window; ++n) {
    TorsionCertificate cert;
    cert.window = n;
    cert.cokernel = half_line_cokernel(group, n, std::nullopt);
    cert.enumerated = enumerate_H_basis(group, 0, static_cast<std::size_t>(n)).size() +
                      enumerate_H_basis(group, 1, static_cast<std::size_t>(n)).size();
    report.torsion.push_back(std::move(cert));
  }

  const BasisId u = group.id("u");
  const BasisId v = group.id("v");
  auto single = [&](BasisId s) { return TensorElement(PureTensor::from_slots({{0, s}}, u)); };
  std::vector<std::pair<std::string, TensorElement>> samples{
      {"e^Z = [1]", TensorElement::unit_tensor()},
      {"{0:v} = (0,1) at slot 0", single(v)},
      {"e^Z - {0:v} = (1,0) at slot 0", TensorElement::unit_tensor() - single(v)},
      {"{0:v} - e^Z = (-1,0) at slot 0", single(v) - TensorElement::unit_tensor()},
  };
  for (auto& [label, t] : samples) {
    ConeMembership m = cone_membership(group, t, 1, 4);
    report.samples.push_back({label, std::move(t), std::move(m)});
  }

  const auto& k = report.ktheory;
  report.narrative = {
      "Lamplighter group Z2 wr Z: C*(Z2 wr Z) = (C^2)^{(x)Z} x| Z under the shift.",
      "K0(C^2) = Z^2 with cone Z+^2 and unit (1,1); K1(C^2) = 0.",
      "The unit must be a basis element, so Z^2 is written in the basis u = (1,1), v = (0,1);"
      " the standard basis vectors are u - v and v.",
      "K1 has no degree-1 part, so K1 = Z, generated by the psi-summand (rank " +
          std::to_string(k.k1.rank()) + ").",
      "K0 = H(Z^2,(1,1)); windowed rank at window " + std::to_string(k.window) + " is " +
          std::to_string(k.k0.rank()) + " = 1 + 2^" + std::to_string(k.window) + ".",
      "Positive cone of K0 is H(Z^2,(1,1)) intersected with the tensor-product cone.",
  };
  return report;
}

// ---------------------------------------------------------------------------

namespace {

Json generators_json(const GradedGroup& group, const std::vector<PureTensor>& gens) {
  Json out = Json::array();
  for (const auto& g : gens) out.push_back(pure_to_json(group, g));
  return out;
}

Json membership_json(const GradedGroup& group, const ConeMembership& m) {
  Json out{{"status", std::string(status_name(m.status))}, {"method", m.method}};
  if (m.certificate) out["certificate"] = to_json(group, *m.certificate);
  return out;
}

}  // namespace

Json to_json(const KTheoryResult& r) {
  Json out;
  out["window"] = r.window;
  out["k0"] = Json{{"rank", r.k0.rank()}, {"generators", generators_json(r.group, r.k0.h_generators)}};
  out["k1"] = Json{{"rank", r.k1.rank()},
                   {"generators", generators_json(r.group, r.k1.h_generators)},
                   {"psi_summand", r.k1.psi_summand}};
  out["corollary_applies"] = r.corollary_applies;
  if (r.positivity) {
    Json pos = Json::array();
    for (const auto& p : *r.positivity)
      pos.push_back(Json{{"generator", pure_to_json(r.group, p.generator)},
                         {"membership", membership_json(r.group, p.membership)}});
    out["ordered"] = Json{{"k0_positivity", pos}};
  }
  return out;
}

Json to_json(const LamplighterReport& report) {
  Json out = to_json(report.ktheory);
  Json torsion = Json::array();
  for (const auto& t : report.torsion) {
    Json factors = Json::array();
    for (const auto& f : t.cokernel.torsion) factors.push_back(integer_to_json(f));
    torsion.push_back(Json{{"window", t.window},
                           {"cokernel_rank", t.cokernel.rank},
                           {"enumerated_rank", t.enumerated},
                           {"torsion", factors},
                           {"torsion_free", t.torsion_free()}});
  }
  out["torsion_certification"] = torsion;
  Json samples = Json::array();
  for (const auto& s : report.samples)
    samples.push_back(Json{{"label", s.label},
                           {"element", to_json(report.ktheory.group, s.element)},
                           {"membership", membership_json(report.ktheory.group, s.membership)}});
  out["positivity_samples"] = samples;
  out["narrative"] = report.narrative;
  return out;
}

std::string to_text(const KTheoryResult& r) {
  std::ostringstream os;
  os << "window " << r.window << "\n";
  os << "K0 rank " << r.k0.rank() << "\n";
  for (const auto& g : r.k0.h_generators) os << "  " << to_text(r.group, g) << "\n";
  os << "K1 rank " << r.k1.rank() << "\n";
  for (const auto& g : r.k1.h_generators) os << "  " << to_text(r.group, g) << "\n";
  if (r.k1.psi_summand) os << "  psi-summand (maps onto Z e^Z)\n";
  os << "corollary applies: " << (r.corollary_applies ? "yes" : "no") << "\n";
  return os.str();
}

std::string to_text(const LamplighterReport& report) {
  std::ostringstream os;
  for (const auto& line : report.narrative) os << line << "\n";
  os << "\n" << to_text(report.ktheory) << "\n";
  for (const auto& t : report.torsion)
    os << "window " << t.window << ": cokernel rank " << t.cokernel.rank << ", enumerated " << t.enumerated
       << (t.torsion_free() ? ", torsion-free" : ", TORSION") << "\n";
  os << "\n";
  for (const auto& s : report.samples)
    os << s.label << ": " << status_name(s.membership.status) << " (" << s.membership.method << ")\n";
  return os.str();
}

}  // namespace kshift

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kshift/oracle.hpp"
#include "kshift/ordered.hpp"
#include "kshift/tensor.hpp"

namespace kshift {

/// Basis of the degree-`degree` part of H(G,e) in the window [0, window]:
/// e^{⊗Z} (degree 0 only) and the tensors with a non-unit symbol at slot 0 and
/// support in [0, window]. Sorted canonically. Throws Error{kCapExceeded}.
std::vector<PureTensor> enumerate_H_basis(const GradedGroup& group, Degree degree, std::size_t window,
                                          std::size_t cap = std::size_t{1} << 22);

/// Windowed free presentation of one K-group.
struct KGroupPresentation {
  std::vector<PureTensor> h_generators;
  /// K1 only: the extra Z mapping onto Z[1]^{⊗Z} under ψ.
  bool psi_summand = false;

  std::size_t rank() const { return h_generators.size() + (psi_summand ? 1 : 0); }
};

struct GeneratorPositivity {
  PureTensor generator;
  ConeMembership membership;
};

struct KTheoryResult {
  GradedGroup group;
  std::size_t window = 0;
  KGroupPresentation k0;
  KGroupPresentation k1;
  bool corollary_applies = false;
  /// Present when the group carries a cone: membership of each K0 generator
  /// in H(G,e)+.
  std::optional<std::vector<GeneratorPositivity>> positivity;

  std::size_t free_rank_k0(std::size_t n) const;
  std::size_t free_rank_k1(std::size_t n) const;
};

bool corollary_check(const GradedGroup& group);

/// Throws Error{kHypothesisViolation}.
KTheoryResult crossed_product_ktheory(const GradedGroup& group, std::size_t window);

/// Z^2 in the basis u = (1,1), v = (0,1), unit u, cone the standard Z+^2.
GradedGroup lamplighter_group();

struct TorsionCertificate {
  int window = 0;
  CokernelReport cokernel;
  std::size_t enumerated = 0;
  bool torsion_free() const { return cokernel.torsion.empty(); }
  bool matches() const { return cokernel.rank == enumerated; }
};

struct PositivitySample {
  std::string label;
  TensorElement element;
  ConeMembership membership;
};

struct LamplighterReport {
  KTheoryResult ktheory;
  std::vector<TorsionCertificate> torsion;
  std::vector<PositivitySample> samples;
  std::vector<std::string> narrative;
};

/// torsion_window bounds the SNF certification windows (1..torsion_window).
LamplighterReport lamplighter_demo(std::size_t window, int torsion_window = 3);

Json to_json(const KTheoryResult& result);
Json to_json(const LamplighterReport& report);
std::string to_text(const KTheoryResult& result);
std::string to_text(const LamplighterReport& report);

}  // namespace kshift

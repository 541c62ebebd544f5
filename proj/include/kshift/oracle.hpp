#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kshift/decomposition.hpp"
#include "kshift/smith.hpp"
#include "kshift/tensor.hpp"

namespace kshift {

/// All pure tensors supported in the slot interval [lo, hi], enumerated as
/// words over the basis with slot `lo` most significant. An empty interval
/// (lo > hi) has exactly one word, e^{⊗Z}.
class WindowBasis {
 public:
  WindowBasis(SlotIndex lo, SlotIndex hi, std::size_t alphabet);

  SlotIndex lo() const { return lo_; }
  SlotIndex hi() const { return hi_; }
  std::size_t slots() const { return slots_; }
  std::size_t size() const { return size_; }

  std::vector<BasisId> word(std::size_t index) const;
  std::size_t index(std::span<const BasisId> word) const;
  PureTensor tensor(std::size_t index, BasisId unit) const;
  /// nullopt when t has a non-unit slot outside [lo, hi].
  std::optional<std::size_t> index_of(const PureTensor& t, BasisId unit) const;

 private:
  SlotIndex lo_;
  SlotIndex hi_;
  std::size_t alphabet_;
  std::size_t slots_;
  std::size_t size_;
};

/// Safety caps for dense oracle systems.
struct OracleLimits {
  std::size_t max_codomain_dim = 20000;
  std::size_t max_dense_entries = 8'000'000;
};

/// Matrix of id − λ from tensors on [lo, hi] to tensors on [lo, hi + 1].
struct WindowedMap {
  WindowBasis domain;
  WindowBasis codomain;
  IntegerMatrix matrix;
};

/// Domain [lo, hi], codomain [lo, hi + 1]. Throws Error{kCapExceeded}.
WindowedMap windowed_id_minus_shift(const GradedGroup& group, SlotIndex lo, SlotIndex hi,
                                    const OracleLimits& limits = {});

/// Codomain-basis indices of the H(G,e) basis tensors lying in `window`:
/// the all-unit tensor plus tensors with unit slots < 0 and a non-unit slot 0.
std::vector<std::size_t> h_basis_indices(const GradedGroup& group, const WindowBasis& window);

/// Independent computation of H-components: solves f = (id − λ)z + w over Z in
/// the ambient window [lo, hi] by Smith normal form, with w ranging over the
/// H(G,e) basis there. Throws Error{kLemmaViolated} if some f has no solution
/// or the H-part is not unique.
std::vector<HElement> oracle_h_components(const GradedGroup& group, std::span<const PureTensor> fs, SlotIndex lo,
                                          SlotIndex hi, const OracleLimits& limits = {});

struct FactorSummary {
  std::size_t count = 0;
  std::vector<Integer> non_unit;
  bool all_one() const { return non_unit.empty(); }
};

struct LemmaReport {
  int lemma = 0;
  int window = 0;
  bool passed = true;
  std::size_t equations = 0;
  std::size_t unknowns = 0;
  std::size_t kernel_rank = 0;
  bool kernel_is_expected = false;
  FactorSummary factors;

  // Image and complement checks; verify_lemma3 only.
  std::size_t image_rank = 0;
  std::size_t h_rank = 0;
  std::size_t combined_rank = 0;
  FactorSummary combined_factors;
  bool half_line_spans = false;
  std::size_t roundtrip_checked = 0;
  std::size_t roundtrip_failures = 0;
  std::size_t agreement_checked = 0;
  std::size_t agreement_mismatches = 0;

  std::vector<std::string> failures;
  double elapsed_ms = 0.0;

  void fail(std::string why) {
    passed = false;
    failures.push_back(std::move(why));
  }
};

/// Solution space of y⊗e − e⊗y = k·e^{⊗n+1} + x over y ∈ G^{⊗n}, k ∈ Z,
/// x ∈ Ǧ⊗G^{⊗n}; passes iff it is Z·(e^{⊗n}, 0, 0).
LemmaReport verify_lemma1(const GradedGroup& group, int n, const OracleLimits& limits = {});

/// Solution space of (id − λ)z = w with z on [−n, n] and w in the H(G,e) part
/// of [−n, n+1]; passes iff it is Z·(e^{⊗Z}, 0).
LemmaReport verify_lemma2(const GradedGroup& group, int n, const OracleLimits& limits = {});

/// ker(id − λ) on [−n, n] is Z·e^{⊗Z}; image and H(G,e) meet trivially and
/// their sum is saturated in [−n, n+1]; they span the half-line window
/// [0, 2n+1] over Z; decompose() reassembles every codomain tensor and agrees
/// with the SNF cokernel representative on every tensor of [−n, n].
LemmaReport verify_lemma3(const GradedGroup& group, int n, const OracleLimits& limits = {});

/// Cokernel of id − λ from [0, n−1] to [0, n], optionally restricted to one
/// degree. This is the oracle model of the windowed part of H(G,e).
struct CokernelReport {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
  std::size_t kernel_rank = 0;
};
CokernelReport half_line_cokernel(const GradedGroup& group, int n, std::optional<Degree> degree,
                                  const OracleLimits& limits = {});

Json to_json(const LemmaReport& report, bool with_timing);

}  // namespace kshift

#include "kshift/oracle.hpp"

#include <chrono>

namespace kshift {

namespace {

constexpr std::size_t kMaxWindowWords = std::size_t{1} << 40;

std::size_t checked_power(std::size_t base, std::size_t exponent) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && out > kMaxWindowWords / base)
      throw Error(ErrorCode::kCapExceeded, "window has more than 2^40 tensors");
    out *= base;
  }
  return out;
}

void check_dense(std::size_t rows, std::size_t cols, const OracleLimits& limits, const char* what) {
  if (rows > limits.max_codomain_dim && rows > 0)
    throw Error(ErrorCode::kCapExceeded, std::string(what) + ": " + std::to_string(rows) +
                                             " rows exceeds the codomain cap of " +
                                             std::to_string(limits.max_codomain_dim));
  if (cols != 0 && rows > limits.max_dense_entries / cols)
    throw Error(ErrorCode::kCapExceeded, std::string(what) + ": " + std::to_string(rows) + "x" +
                                             std::to_string(cols) + " dense system exceeds the entry cap");
}

FactorSummary summarize(const std::vector<Integer>& factors) {
  FactorSummary s;
  s.count = factors.size();
  for (const auto& d : factors)
    if (d != 1) s.non_unit.push_back(d);
  return s;
}

// Kernel is exactly Z·(unit vector at `expected`).
bool kernel_is_axis(const std::vector<IntegerVector>& kernel, Eigen::Index expected) {
  if (kernel.size() != 1) return false;
  const auto& v = kernel.front();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i == expected) {
      if (abs_value(v(i)) != 1) return false;
    } else if (!v(i).is_zero()) {
      return false;
    }
  }
  return true;
}

std::size_t all_unit_index(const WindowBasis& basis, BasisId unit) {
  std::vector<BasisId> word(basis.slots(), unit);
  return basis.index(word);
}

Degree word_degree(const GradedGroup& group, const std::vector<BasisId>& word) {
  Degree d = 0;
  for (auto id : word) d ^= group.degree(id);
  return d;
}

double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// Lifts H-basis coordinates back to an HElement.
HElement h_from_coordinates(const WindowBasis& ambient, const std::vector<std::size_t>& h_indices,
                            const IntegerVector& coords, BasisId unit) {
  HElement h;
  for (std::size_t k = 0; k < h_indices.size(); ++k) {
    const Integer& c = coords(static_cast<Eigen::Index>(k));
    if (c.is_zero()) continue;
    PureTensor t = ambient.tensor(h_indices[k], unit);
    if (t.is_all_unit())
      h.unit_mult += c;
    else
      h.tail.add_term(t, c);
  }
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// WindowBasis

WindowBasis::WindowBasis(SlotIndex lo, SlotIndex hi, std::size_t alphabet)
    : lo_(lo),
      hi_(hi),
      alphabet_(alphabet),
      slots_(hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0),
      size_(checked_power(alphabet, slots_)) {}

std::vector<BasisId> WindowBasis::word(std::size_t index) const {
  std::vector<BasisId> w(slots_);
  for (std::size_t k = slots_; k-- > 0;) {
    w[k] = BasisId{static_cast<std::uint32_t>(index % alphabet_)};
    index /= alphabet_;
  }
  return w;
}

std::size_t WindowBasis::index(std::span<const BasisId> word) const {
  std::size_t out = 0;
  for (auto id : word) out = out * alphabet_ + id.value;
  return out;
}

PureTensor WindowBasis::tensor(std::size_t index, BasisId unit) const {
  auto w = word(index);
  std::map<SlotIndex, BasisId> slots;
  for (std::size_t k = 0; k < w.size(); ++k) slots[lo_ + static_cast<SlotIndex>(k)] = w[k];
  return PureTensor::from_slots(slots, unit);
}

std::optional<std::size_t> WindowBasis::index_of(const PureTensor& t, BasisId unit) const {
  std::vector<BasisId> w(slots_, unit);
  for (const auto& e : t.entries()) {
    if (e.slot < lo_ || e.slot > hi_) return std::nullopt;
    w[static_cast<std::size_t>(e.slot - lo_)] = e.symbol;
  }
  return index(w);
}

// ---------------------------------------------------------------------------
// Matrices

WindowedMap windowed_id_minus_shift(const GradedGroup& group, SlotIndex lo, SlotIndex hi,
                                    const OracleLimits& limits) {
  const std::size_t alphabet = group.rank();
  WindowBasis domain(lo, hi, alphabet);
  WindowBasis codomain(lo, hi + 1, alphabet);
  check_dense(codomain.size(), domain.size(), limits, "id - shift matrix");

  IntegerMatrix m = IntegerMatrix::Zero(static_cast<Eigen::Index>(codomain.size()),
                                        static_cast<Eigen::Index>(domain.size()));
  const std::size_t unit = group.unit().value;
  const std::size_t top = domain.size();  // alphabet^slots
  for (std::size_t d = 0; d < domain.size(); ++d) {
    // d itself, with slot hi+1 = e; and λd, which has slot lo = e.
    const auto same = static_cast<Eigen::Index>(d * alphabet + unit);
    const auto moved = static_cast<Eigen::Index>(unit * top + d);
    const auto col = static_cast<Eigen::Index>(d);
    m(same, col) += 1;
    m(moved, col) -= 1;
  }
  return {domain, codomain, std::move(m)};
}

std::vector<std::size_t> h_basis_indices(const GradedGroup& group, const WindowBasis& window) {
  std::vector<std::size_t> out;
  const BasisId unit = group.unit();
  for (std::size_t i = 0; i < window.size(); ++i) {
    auto w = window.word(i);
    bool is_h = true;
    bool all_unit = true;
    for (std::size_t k = 0; k < w.size(); ++k) {
      SlotIndex slot = window.lo() + static_cast<SlotIndex>(k);
      if (w[k] != unit) all_unit = false;
      if (slot < 0 && w[k] != unit) is_h = false;
    }
    if (!all_unit) {
      // Slot 0 must be present and non-unit.
      if (window.lo() > 0 || window.hi() < 0) is_h = false;
      else if (w[static_cast<std::size_t>(-window.lo())] == unit) is_h = false;
    }
    if (all_unit || is_h) out.push_back(i);
  }
  return out;
}

namespace {

IntegerMatrix with_indicator_columns(const IntegerMatrix& m, const std::vector<std::size_t>& rows,
                                     const Integer& value) {
  IntegerMatrix out(m.rows(), m.cols() + static_cast<Eigen::Index>(rows.size()));
  out.leftCols(m.cols()) = m;
  out.rightCols(static_cast<Eigen::Index>(rows.size())).setZero();
  for (std::size_t k = 0; k < rows.size(); ++k)
    out(static_cast<Eigen::Index>(rows[k]), m.cols() + static_cast<Eigen::Index>(k)) = value;
  return out;
}

}  // namespace

std::vector<HElement> oracle_h_components(const GradedGroup& group, std::span<const PureTensor> fs, SlotIndex lo,
                                          SlotIndex hi, const OracleLimits& limits) {
  auto map = windowed_id_minus_shift(group, lo, hi - 1, limits);
  const WindowBasis& ambient = map.codomain;
  auto h_indices = h_basis_indices(group, ambient);
  check_dense(ambient.size(), map.domain.size() + h_indices.size() + fs.size(), limits, "cokernel system");
  IntegerMatrix system = with_indicator_columns(map.matrix, h_indices, Integer(1));

  IntegerMatrix rhs = IntegerMatrix::Zero(system.rows(), static_cast<Eigen::Index>(fs.size()));
  for (std::size_t k = 0; k < fs.size(); ++k) {
    auto row = ambient.index_of(fs[k], group.unit());
    if (!row)
      throw Error(ErrorCode::kUnsupportedInput, "tensor " + to_text(group, fs[k]) + " lies outside the ambient window");
    rhs(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(k)) = 1;
  }

  Eigen::Index rank = 0;
  auto solutions = solve_integer(system, rhs, &rank);
  // The only relation among the columns is (id − λ)e^{⊗Z} = 0, so the H-part
  // of any solution is unique.
  if (system.cols() - rank != 1)
    throw Error(ErrorCode::kLemmaViolated, "cokernel system has nullity " + std::to_string(system.cols() - rank));

  std::vector<HElement> out;
  const auto z_cols = static_cast<Eigen::Index>(map.domain.size());
  for (std::size_t k = 0; k < fs.size(); ++k) {
    if (!solutions[k])
      throw Error(ErrorCode::kLemmaViolated, "tensor " + to_text(group, fs[k]) + " is not in image + H");
    IntegerVector w = solutions[k]->tail(solutions[k]->size() - z_cols);
    out.push_back(h_from_coordinates(ambient, h_indices, w, group.unit()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lemma checks

LemmaReport verify_lemma1(const GradedGroup& group, int n, const OracleLimits& limits) {
  if (n < 1) throw Error(ErrorCode::kUnsupportedInput, "lemma 1 needs n >= 1");
  auto start = std::chrono::steady_clock::now();
  LemmaReport report;
  report.lemma = 1;
  report.window = n;

  const std::size_t alphabet = group.rank();
  const std::size_t unit = group.unit().value;
  WindowBasis ys(1, n, alphabet);
  WindowBasis rows(0, n, alphabet);
  std::vector<std::size_t> xs;
  for (std::size_t w = 0; w < rows.size(); ++w)
    if (w / ys.size() != unit) xs.push_back(w);

  const std::size_t cols = ys.size() + 1 + xs.size();
  check_dense(rows.size(), cols, limits, "lemma 1 system");
  IntegerMatrix m = IntegerMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t y = 0; y < ys.size(); ++y) {
    m(static_cast<Eigen::Index>(y * alphabet + unit), static_cast<Eigen::Index>(y)) += 1;    // y ⊗ e
    m(static_cast<Eigen::Index>(unit * ys.size() + y), static_cast<Eigen::Index>(y)) -= 1;  // e ⊗ y
  }
  const auto k_col = static_cast<Eigen::Index>(ys.size());
  m(static_cast<Eigen::Index>(all_unit_index(rows, group.unit())), k_col) = -1;
  for (std::size_t k = 0; k < xs.size(); ++k)
    m(static_cast<Eigen::Index>(xs[k]), k_col + 1 + static_cast<Eigen::Index>(k)) = -1;

  auto snf = smith_normal_form(m, {.left = false, .right = true});
  auto kernel = snf.kernel_basis();
  report.equations = rows.size();
  report.unknowns = cols;
  report.kernel_rank = kernel.size();
  report.factors = summarize(snf.invariant_factors);
  report.kernel_is_expected =
      kernel_is_axis(kernel, static_cast<Eigen::Index>(all_unit_index(ys, group.unit())));
  if (!report.kernel_is_expected)
    report.fail("solution space is not Z(e^n, 0, 0); rank " + std::to_string(kernel.size()));
  report.elapsed_ms = millis_since(start);
  return report;
}

LemmaReport verify_lemma2(const GradedGroup& group, int n, const OracleLimits& limits) {
  if (n < 1) throw Error(ErrorCode::kUnsupportedInput, "lemma 2 needs n >= 1");
  auto start = std::chrono::steady_clock::now();
  LemmaReport report;
  report.lemma = 2;
  report.window = n;

  auto map = windowed_id_minus_shift(group, -n, n, limits);
  auto h_indices = h_basis_indices(group, map.codomain);
  check_dense(map.codomain.size(), map.domain.size() + h_indices.size(), limits, "lemma 2 system");
  IntegerMatrix system = with_indicator_columns(map.matrix, h_indices, Integer(-1));

  auto snf = smith_normal_form(system, {.left = false, .right = true});
  auto kernel = snf.kernel_basis();
  report.equations = static_cast<std::size_t>(system.rows());
  report.unknowns = static_cast<std::size_t>(system.cols());
  report.kernel_rank = kernel.size();
  report.factors = summarize(snf.invariant_factors);
  report.kernel_is_expected =
      kernel_is_axis(kernel, static_cast<Eigen::Index>(all_unit_index(map.domain, group.unit())));
  if (!report.kernel_is_expected)
    report.fail("solution space is not Z(e^Z, 0); rank " + std::to_string(kernel.size()));
  report.elapsed_ms = millis_since(start);
  return report;
}

LemmaReport verify_lemma3(const GradedGroup& group, int n, const OracleLimits& limits) {
  if (n < 1) throw Error(ErrorCode::kUnsupportedInput, "lemma 3 needs n >= 1");
  auto start = std::chrono::steady_clock::now();
  LemmaReport report;
  report.lemma = 3;
  report.window = n;
  const BasisId unit = group.unit();

  // (i) kernel of id − λ.
  auto map = windowed_id_minus_shift(group, -n, n, limits);
  auto snf = smith_normal_form(map.matrix, {.left = false, .right = true});
  auto kernel = snf.kernel_basis();
  report.equations = map.codomain.size();
  report.unknowns = map.domain.size();
  report.kernel_rank = kernel.size();
  report.factors = summarize(snf.invariant_factors);
  report.kernel_is_expected =
      kernel_is_axis(kernel, static_cast<Eigen::Index>(all_unit_index(map.domain, unit)));
  if (!report.kernel_is_expected) report.fail("ker(id - shift) is not Z e^Z");
  if (!report.factors.all_one()) report.fail("id - shift has torsion cokernel on the window");

  // (ii) directness and saturation on the window.
  auto h_indices = h_basis_indices(group, map.codomain);
  IntegerMatrix h_cols = with_indicator_columns(IntegerMatrix(map.matrix.rows(), 0), h_indices, Integer(1));
  IntegerMatrix combined = with_indicator_columns(map.matrix, h_indices, Integer(1));
  auto combined_snf = smith_normal_form(combined);
  report.image_rank = static_cast<std::size_t>(snf.rank);
  report.h_rank = static_cast<std::size_t>(integer_rank(h_cols));
  report.combined_rank = static_cast<std::size_t>(combined_snf.rank);
  report.combined_factors = summarize(combined_snf.invariant_factors);
  if (report.combined_rank != report.image_rank + report.h_rank) report.fail("image and H(G,e) intersect");
  if (!report.combined_factors.all_one()) report.fail("image + H(G,e) is not saturated");

  // Spanning over Z on the half-line window, which decompose() never leaves.
  {
    auto half = windowed_id_minus_shift(group, 0, 2 * static_cast<SlotIndex>(n), limits);
    auto half_h = h_basis_indices(group, half.codomain);
    auto half_snf = smith_normal_form(with_indicator_columns(half.matrix, half_h, Integer(1)));
    report.half_line_spans =
        half_snf.rank == static_cast<Eigen::Index>(half.codomain.size()) && half_snf.all_factors_one();
    if (!report.half_line_spans) report.fail("image + H(G,e) does not span the half-line window");
  }

  // Constructive decomposition of every codomain tensor.
  for (std::size_t i = 0; i < map.codomain.size(); ++i) {
    TensorElement f(map.codomain.tensor(i, unit));
    auto d = decompose(f);
    ++report.roundtrip_checked;
    bool ok = reassembles(f, d) && is_in_H(d.h.to_tensor()) && d.witness.coeff(PureTensor{}).is_zero();
    if (!ok) ++report.roundtrip_failures;
  }
  if (report.roundtrip_failures != 0)
    report.fail(std::to_string(report.roundtrip_failures) + " codomain tensors fail to reassemble");

  // Constructive H-component against the SNF cokernel representative.
  std::vector<PureTensor> fs;
  for (std::size_t i = 0; i < map.domain.size(); ++i) fs.push_back(map.domain.tensor(i, unit));
  auto oracle = oracle_h_components(group, fs, -n, 2 * static_cast<SlotIndex>(n), limits);
  for (std::size_t k = 0; k < fs.size(); ++k) {
    ++report.agreement_checked;
    if (!(decompose(TensorElement(fs[k])).h == oracle[k])) ++report.agreement_mismatches;
  }
  if (report.agreement_mismatches != 0)
    report.fail(std::to_string(report.agreement_mismatches) + " H-components disagree with the SNF oracle");

  report.elapsed_ms = millis_since(start);
  return report;
}

CokernelReport half_line_cokernel(const GradedGroup& group, int n, std::optional<Degree> degree,
                                  const OracleLimits& limits) {
  if (n < 0) throw Error(ErrorCode::kUnsupportedInput, "window must be nonnegative");
  auto map = windowed_id_minus_shift(group, 0, static_cast<SlotIndex>(n) - 1, limits);
  IntegerMatrix m;
  if (degree) {
    std::vector<Eigen::Index> rows;
    std::vector<Eigen::Index> cols;
    for (std::size_t i = 0; i < map.codomain.size(); ++i)
      if (word_degree(group, map.codomain.word(i)) == *degree) rows.push_back(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < map.domain.size(); ++j)
      if (word_degree(group, map.domain.word(j)) == *degree) cols.push_back(static_cast<Eigen::Index>(j));
    m = map.matrix(rows, cols);
  } else {
    m = std::move(map.matrix);
  }
  auto snf = smith_normal_form(m);
  CokernelReport out;
  out.rank = static_cast<std::size_t>(snf.cokernel_rank());
  out.torsion = snf.cokernel_torsion();
  out.kernel_rank = static_cast<std::size_t>(m.cols() - snf.rank);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Json factors_json(const FactorSummary& s) {
  Json out;
  out["count"] = s.count;
  Json non_unit = Json::array();
  for (const auto& d : s.non_unit) non_unit.push_back(integer_to_json(d));
  out["non_unit"] = non_unit;
  out["all_one"] = s.all_one();
  return out;
}

}  // namespace

Json to_json(const LemmaReport& r, bool with_timing) {
  Json out;
  out["lemma"] = r.lemma;
  out["window"] = r.window;
  out["passed"] = r.passed;
  out["equations"] = r.equations;
  out["unknowns"] = r.unknowns;
  out["kernel_rank"] = r.kernel_rank;
  out["kernel_is_expected"] = r.kernel_is_expected;
  out["invariant_factors"] = factors_json(r.factors);
  if (r.lemma == 3) {
    out["image_rank"] = r.image_rank;
    out["h_rank"] = r.h_rank;
    out["combined_rank"] = r.combined_rank;
    out["intersection_rank"] = r.image_rank + r.h_rank - r.combined_rank;
    out["combined_invariant_factors"] = factors_json(r.combined_factors);
    out["half_line_spans"] = r.half_line_spans;
    out["roundtrip_checked"] = r.roundtrip_checked;
    out["roundtrip_failures"] = r.roundtrip_failures;
    out["agreement_checked"] = r.agreement_checked;
    out["agreement_mismatches"] = r.agreement_mismatches;
  }
  out["failures"] = r.failures;
  if (with_timing) out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

}  // namespace kshift

#include "kshift/cli.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <sstream>

#include "kshift/decomposition.hpp"
#include "kshift/ktheory.hpp"
#include "kshift/oracle.hpp"
#include "kshift/ordered.hpp"

namespace kshift {

namespace {

Json read_json(std::istream& in, const std::string& what) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kParse, what + " is not valid JSON");
  return j;
}

Json read_element_json(const RunConfig& config, std::istream& in) {
  if (config.element_path.empty()) return read_json(in, "standard input");
  std::ifstream file(config.element_path);
  if (!file) throw Error(ErrorCode::kParse, "cannot open element file " + config.element_path);
  return read_json(file, config.element_path);
}

GradedGroup require_group(const RunConfig& config) {
  if (config.group_path.empty()) throw Error(ErrorCode::kParse, "--group is required for " + config.subcommand);
  return load_group_file(config.group_path);
}

std::size_t window_or(const RunConfig& config, std::size_t fallback) {
  std::size_t w = config.window.value_or(fallback);
  if (w > kMaxWindow) throw Error(ErrorCode::kCapExceeded, "window exceeds cap " + std::to_string(kMaxWindow));
  return w;
}

void emit(std::ostream& out, const RunConfig& config, Json body, const std::string& text) {
  if (config.format == "text") {
    out << text;
    return;
  }
  Json doc{{"schema_version", kSchemaVersion}, {"command", config.subcommand}};
  for (auto& [k, v] : body.items()) doc[k] = std::move(v);
  out << doc.dump(2) << "\n";
}

int run_decompose(const RunConfig& config, std::istream& in, std::ostream& out) {
  GradedGroup group = require_group(config);
  TensorElement t = tensor_from_json(group, read_element_json(config, in));
  Decomposition d = decompose(t);
  bool verified = reassembles(t, d);
  std::ostringstream text;
  text << "input:   " << to_text(group, t) << "\n"
       << "witness: " << to_text(group, d.witness) << "\n"
       << "h:       " << to_text(group, d.h.to_tensor()) << "\n"
       << "verified: " << (verified ? "yes" : "no") << "\n";
  emit(out, config, to_json(group, d, verified), text.str());
  return verified ? 0 : 1;
}

int run_ktheory(const RunConfig& config, std::ostream& out) {
  GradedGroup group = require_group(config);
  KTheoryResult r = crossed_product_ktheory(group, window_or(config, 2));
  emit(out, config, to_json(r), to_text(r));
  return 0;
}

int run_verify(const RunConfig& config, std::ostream& out) {
  GradedGroup group = require_group(config);
  std::vector<int> lemmas;
  if (config.lemma == "all") lemmas = {1, 2, 3};
  else if (config.lemma == "1" || config.lemma == "2" || config.lemma == "3") lemmas = {std::stoi(config.lemma)};
  else throw Error(ErrorCode::kParse, "--lemma must be 1, 2, 3 or all");
  if (config.max_window < 1 || static_cast<std::size_t>(config.max_window) > kMaxWindow)
    throw Error(ErrorCode::kCapExceeded, "--max-window must be in [1, " + std::to_string(kMaxWindow) + "]");

  std::vector<std::pair<int, int>> jobs;
  for (int n = 1; n <= config.max_window; ++n)
    for (int lemma : lemmas) jobs.emplace_back(lemma, n);

  auto run_one = [&group](int lemma, int n) {
    switch (lemma) {
      case 1: return verify_lemma1(group, n);
      case 2: return verify_lemma2(group, n);
      default: return verify_lemma3(group, n);
    }
  };

  // Results are collected in job order whatever the scheduling.
  std::vector<LemmaReport> reports(jobs.size());
  const std::size_t width = std::max(1u, config.jobs);
  for (std::size_t start = 0; start < jobs.size(); start += width) {
    std::vector<std::future<LemmaReport>> batch;
    for (std::size_t i = start; i < std::min(jobs.size(), start + width); ++i)
      batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, run_one, jobs[i].first,
                                 jobs[i].second));
    for (std::size_t i = 0; i < batch.size(); ++i) reports[start + i] = batch[i].get();
  }

  bool passed = true;
  Json list = Json::array();
  std::ostringstream text;
  for (const auto& r : reports) {
    passed = passed && r.passed;
    list.push_back(to_json(r, config.timings));
    text << "lemma " << r.lemma << " window " << r.window << ": " << (r.passed ? "PASS" : "FAIL") << " (kernel rank "
         << r.kernel_rank << ")\n";
    for (const auto& f : r.failures) text << "  " << f << "\n";
  }
  text << (passed ? "all passed\n" : "FAILED\n");
  emit(out, config, Json{{"group", to_json(group)}, {"passed", passed}, {"reports", list}}, text.str());
  return passed ? 0 : 1;
}

int run_order_check(const RunConfig& config, std::ostream& out) {
  GradedGroup group = require_group(config);
  if (config.budget == 0 || config.budget > kMaxBudget)
    throw Error(ErrorCode::kCapExceeded, "--budget must be in [1, " + std::to_string(kMaxBudget) + "]");
  OrderCheckResult r = phi_order_check(group, window_or(config, 2), config.budget, config.seed);
  std::ostringstream text;
  text << (r.order_preserving ? "OrderPreserving" : "Counterexample") << (r.proved ? " (proved)" : "")
       << ", samples " << r.samples_checked << ", seed " << r.seed << "\n";
  if (r.witness) {
    text << "witness: " << to_text(group, *r.witness) << "\n"
         << "negative coordinate: " << r.negative_coordinate->second.str() << " at "
         << to_text(group, r.negative_coordinate->first) << "\n";
  }
  emit(out, config, to_json(group, r), text.str());
  return 0;
}

int run_lamplighter(const RunConfig& config, std::ostream& out) {
  LamplighterReport r = lamplighter_demo(window_or(config, 3));
  emit(out, config, to_json(r), to_text(r));
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    if (config.format != "json" && config.format != "text")
      throw Error(ErrorCode::kParse, "--format must be json or text");
    if (config.subcommand == "decompose") return run_decompose(config, in, out);
    if (config.subcommand == "ktheory") return run_ktheory(config, out);
    if (config.subcommand == "verify") return run_verify(config, out);
    if (config.subcommand == "order-check") return run_order_check(config, out);
    if (config.subcommand == "lamplighter") return run_lamplighter(config, out);
    throw Error(ErrorCode::kParse, "unknown subcommand '" + config.subcommand + "'");
  } catch (const Error& e) {
    err << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return e.code() == ErrorCode::kLemmaViolated ? 1 : 2;
  }
}

}  // namespace kshift

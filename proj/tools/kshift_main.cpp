#include <iostream>

#include <CLI11.hpp>

#include "kshift/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Shift crossed products: H(G,e) decompositions, K-theory and lemma checks"};
  app.require_subcommand(1);
  kshift::RunConfig config;

  auto add_group = [&](CLI::App* sub) { sub->add_option("--group", config.group_path, "group spec JSON file"); };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", config.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };
  auto add_window = [&](CLI::App* sub) { sub->add_option("--window", config.window, "window size"); };

  auto* decompose = app.add_subcommand("decompose", "split an element into image and H(G,e) parts");
  add_group(decompose);
  add_format(decompose);
  decompose->add_option("--element", config.element_path, "element file (default: standard input)");

  auto* ktheory = app.add_subcommand("ktheory", "windowed K-theory of the shift crossed product");
  add_group(ktheory);
  add_window(ktheory);
  add_format(ktheory);

  auto* verify = app.add_subcommand("verify", "check the lemmas on windowed truncations");
  add_group(verify);
  add_format(verify);
  verify->add_option("--lemma", config.lemma, "1, 2, 3 or all");
  verify->add_option("--max-window", config.max_window, "largest window n");
  verify->add_option("--jobs", config.jobs, "parallel jobs");
  verify->add_flag("--timings", config.timings, "include timings in the report");

  auto* order = app.add_subcommand("order-check", "search for a positive element with a negative coordinate");
  add_group(order);
  add_window(order);
  add_format(order);
  order->add_option("--budget", config.budget, "number of random samples");
  order->add_option("--seed", config.seed, "random seed");

  auto* lamp = app.add_subcommand("lamplighter", "K-theory of the lamplighter group C*-algebra");
  add_window(lamp);
  add_format(lamp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  return kshift::run(config, std::cin, std::cout, std::cerr);
}

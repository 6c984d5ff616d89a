#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dicer/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Lattice polytope slicing, sharpness and cellular resolution workbench"};
  app.require_subcommand(1);

  dicer::RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool field, bool morse_opts) {
    sub->add_option("input", cfg.input, "polytope/ideal file or fixture:NAME")->required();
    sub->add_option("--format", cfg.format, "output format (text, json)");
    sub->add_option("--out", cfg.out, "write the report to a file");
    if (field) sub->add_option("--field", cfg.field, "coefficient field: q or gf:P");
    if (morse_opts)
      sub->add_flag("--strict-reverify,!--no-strict-reverify", cfg.strict_reverify,
                    "re-check matchings after every glue step");
    sub->callback([&cfg, sub]() { cfg.command = sub->get_name(); });
  };

  add_common(app.add_subcommand("diced", "decide whether integer slicing keeps lattice vertices"),
             false, false);
  add_common(app.add_subcommand("sharp", "decide sharpness and total sharpness"), false, false);
  add_common(app.add_subcommand("subdivide", "slice by integer coordinate hyperplanes"), false,
             false);
  add_common(app.add_subcommand("morse", "build and verify the collapsing matching"), false, true);
  add_common(app.add_subcommand("resolve", "verify the minimal cellular resolution"), true, true);
  add_common(app.add_subcommand("oracle", "Betti numbers straight from the definition"), true,
             false);
  add_common(app.add_subcommand("verify-fine-mixed",
                                "check a fine mixed subdivision and its resolution"),
             true, true);
  add_common(app.add_subcommand("export", "write an svg or off figure of the sliced polytope"),
             false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  return dicer::run(cfg, std::cout, std::cerr);
}

/* Copyright 2026 The VLF Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "cli_common.hpp"
#include "vlf/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Medical instructional video QA toolkit: dataset generation, localization, "
               "evaluation and review."};
  app.require_subcommand(1);
  app.fallthrough();

  vlf::cli::Globals globals;
  app.add_option("--seed", globals.seed, "Seed for every random draw")->default_val(0);
  app.add_option("--state-dir", globals.state_dir, "State directory (review set and judgments)")
      ->envname("VLF_DATA_DIR")
      ->default_val("vlf_data");
  app.add_flag("--json", globals.json, "Print reports as JSON");

  vlf::cli::register_data_commands(app, globals);
  vlf::cli::register_model_commands(app, globals);
  vlf::cli::register_eval_commands(app, globals);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const vlf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

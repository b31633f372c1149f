#pragma once

#include "jks/quiver.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace jks::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2, kNonRegular = 3 };

struct QuiverInput {
  Quiver quiver;
  DimVector dimension;
  Stability stability;
};

// Throws Error(ParseError) for malformed JSON and Error(ValidationError) when a rule fails.
QuiverInput parse_quiver_json(const std::string& text);
QuiverInput parse_quiver_file(const std::string& path);

// Runs one command; args exclude the program name. The report goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jks::cli

#pragma once

#include <string>
#include <vector>

namespace ervl {

// Outcome of one exact identity check. `witness` carries either the summary
// of what was verified or the first counterexample found.
struct Certificate {
  std::string identity;
  int n = 0;
  std::string x;
  bool passed = true;
  std::string witness;

  // {"identity", "n", "x", "status", "witness"} with status "pass"/"fail".
  std::string to_json(int indent = -1) const;
};

std::string certificates_to_json(const std::vector<Certificate>& certs, int indent = 2);

bool all_passed(const std::vector<Certificate>& certs);

}  // namespace ervl

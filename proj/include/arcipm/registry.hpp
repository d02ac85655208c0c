#pragma once

#include <map>
#include <string>
#include <vector>

#include "arcipm/nlp_model.hpp"

namespace arcipm {

/// Built-in benchmark problems, hand-encoded from the Hock-Schittkowski and
/// Boggs-Tolle collections.
class ProblemRegistry {
 public:
  ProblemRegistry();

  /// Throws UnknownProblem listing the available names.
  const ProblemDef& get(const std::string& name) const;
  bool contains(const std::string& name) const;
  ProblemTag tag(const std::string& name) const;

  /// Sorted problem names.
  std::vector<std::string> names() const;
  std::vector<std::string> names_with_tag(ProblemTag tag) const;

 private:
  void add(ProblemDef prob);

  std::map<std::string, ProblemDef> entries_;
  std::map<std::string, ProblemTag> tags_;
};

/// Process-wide registry, built on first use.
const ProblemRegistry& registry();

const ProblemDef& registry_get(const std::string& name);

}  // namespace arcipm

#pragma once

#include <string>
#include <vector>

#include "treebraid/tree.hpp"

namespace treebraid::testing {

std::string data_path(const std::string& file);
LabeledTree load_fixture(const std::string& name);

// A fixture made n-sufficient, with the input labels carried along.
struct Instance {
  RootedPlaneTree tree;
  int n = 0;
  std::vector<Vertex> image;  // input T-order id -> id in `tree`
  std::vector<std::string> labels;

  Vertex at(const std::string& label) const;
};

Instance prepare(const std::string& name, int n);
Instance prepare(const LabeledTree& input, int n);

}  // namespace treebraid::testing

#include "fixtures.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace treebraid::testing {

std::string data_path(const std::string& file) { return std::string(TREEBRAID_TEST_DATA) + "/" + file; }

LabeledTree load_fixture(const std::string& name) {
  std::ifstream in(data_path(name + ".tree"));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tree(ss.str());
}

Vertex Instance::at(const std::string& label) const {
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] == label) return image[v];
  }
  throw std::runtime_error("no vertex labeled " + label);
}

Instance prepare(const LabeledTree& input, int n) {
  Instance out;
  out.n = n;
  out.labels = input.labels;
  if (is_n_sufficient(input.tree, n)) {
    out.tree = input.tree;
    out.image.resize(input.tree.size());
    std::iota(out.image.begin(), out.image.end(), Vertex{0});
  } else {
    Subdivision s = subdivide_for(input.tree, n);
    out.tree = std::move(s.tree);
    out.image = std::move(s.image);
  }
  return out;
}

Instance prepare(const std::string& name, int n) { return prepare(load_fixture(name), n); }

}  // namespace treebraid::testing

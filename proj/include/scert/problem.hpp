#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scert/ensemble.hpp"

namespace scert {

struct RenderWindow {
  double xmin = -3.0, xmax = 3.0, ymin = -3.0, ymax = 3.0;
};

// A problem document: one classifier, or several members forming a weighted ensemble.
struct ProblemFile {
  std::string description;
  std::size_t dimension = 0;
  std::size_t classes = 0;
  std::vector<ClassifierAtPoint> members;
  std::optional<Vector> weights;  // as written, before normalization
  std::optional<RenderWindow> window;

  bool is_ensemble() const { return members.size() >= 2; }
  EnsembleSpec ensemble() const;
};

// Throws Error(parse_error) with a line/column or a JSON-pointer location.
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);
std::string serialize_problem(const ProblemFile& problem);
bool same_problem(const ProblemFile& a, const ProblemFile& b);
bool same_body(const ConvexBody& a, const ConvexBody& b);

std::string read_text_file(const std::string& path);

}  // namespace scert

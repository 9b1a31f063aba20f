#ifndef ORUGA_DOT_HPP
#define ORUGA_DOT_HPP

#include "oruga/construction.hpp"

#include <string>
#include <vector>

namespace oruga {

struct DotStyle {
  std::string graph_name = "construction";
  std::string font = "Helvetica";
  // token -> constructor edges point upwards, as in hand-drawn figures
  bool bottom_to_top = true;
};

/// Graphviz text for one or more constructions sharing tokens by id.
/// Tokens are boxes labelled "id : type"; each constructor application is a
/// point labelled with the constructor name, fed by edges carrying 1-based
/// argument indices and pointing at its output token.
std::string export_dot(const std::vector<Construction>& constructions,
                       const DotStyle& style = {});

} // namespace oruga

#endif

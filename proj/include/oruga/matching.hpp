#ifndef ORUGA_MATCHING_HPP
#define ORUGA_MATCHING_HPP

#include "oruga/construction.hpp"
#include "oruga/typesys.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oruga {

/// A pattern is a construction whose tokens act as typed variables.
using Pattern = Construction;

enum class MatchMode {
  // Shape-identical: Source to Source, Reference to Reference, Apply to Apply.
  Exact,
  // Pattern leaves may stand for whole sub-trees of the construction.
  Prefix,
};

struct MatchOptions {
  MatchMode mode = MatchMode::Exact;
  bool injective = true;
};

struct Matching {
  /// pattern token id -> construction token
  std::map<std::string, Token> map;
  MatchMode mode = MatchMode::Exact;

  friend bool operator==(const Matching&, const Matching&) = default;
};

using Anchor = std::pair<std::string, std::string>; // pattern id, construction id

/// Matches `p` with its root placed on the root of `c`.
std::optional<Matching> find_match(const Construction& c, const Pattern& p,
                                   const TypeSystem& ts, MatchOptions options = {});

/// Matches `p` anywhere in `c` such that every anchor (pattern id ->
/// construction id) holds. With no anchors this is find_match. Placements
/// are tried in preorder, so the first matching found is returned.
/// Throws UnboundToken for anchors naming unknown ids.
std::optional<Matching> find_match_anchored(const Construction& c, const Pattern& p,
                                            const TypeSystem& ts, MatchOptions options,
                                            const std::vector<Anchor>& anchors);

/// Every matching of `p` placed at any binding site of `c` that respects the
/// anchors, in preorder of placement.
std::vector<Matching> find_all_matches(const Construction& c, const Pattern& p,
                                       const TypeSystem& ts, MatchOptions options,
                                       const std::vector<Anchor>& anchors);

using FreshIdFn = std::function<std::string(const std::string& pattern_id)>;

struct Instantiation {
  Construction construction;
  /// pattern token id -> token placed in the construction
  std::map<std::string, Token> tokens;
  std::vector<Token> fresh;
};

/// Builds a construction shaped like `p`. Bound pattern tokens take the bound
/// identity and the lower of the two types; unbound ones get fresh ids and
/// the pattern's type. Throws TypeClash for incomparable or foreign types.
Instantiation instantiate_with_bindings(const Pattern& p,
                                        const std::map<std::string, Token>& binding,
                                        const TypeSystem& ts, const FreshIdFn& fresh_id);

Construction instantiate(const Pattern& p, const std::map<std::string, Token>& binding,
                         const TypeSystem& ts, const FreshIdFn& fresh_id);

} // namespace oruga

#endif
